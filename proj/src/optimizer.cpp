#include "l2dwk/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace l2dwk {

QuadraticObjective::QuadraticObjective(std::vector<double> linear, Matrix quadratic)
    : q(std::move(linear)), H(std::move(quadratic)) {
    if (H.n_rows != H.n_cols || H.n_rows != static_cast<int>(q.size()))
        throw std::invalid_argument("QuadraticObjective: H must be LxL matching q");
    for (int i = 0; i < H.n_rows; ++i)
        for (int j = i + 1; j < H.n_cols; ++j) {
            const double s = 0.5 * (H.at(i, j) + H.at(j, i));
            H.at(i, j) = s;
            H.at(j, i) = s;
        }
}

double QuadraticObjective::value(const std::vector<double>& w) const {
    double v = 0.0;
    for (int i = 0; i < size(); ++i) {
        double hw = 0.0;
        for (int j = 0; j < size(); ++j) hw += H.at(i, j) * w[j];
        v += w[i] * (q[i] + hw);
    }
    return v;
}

std::vector<double> QuadraticObjective::gradient(const std::vector<double>& w) const {
    std::vector<double> g(q);
    for (int i = 0; i < size(); ++i) {
        double hw = 0.0;
        for (int j = 0; j < size(); ++j) hw += H.at(i, j) * w[j];
        g[i] += 2.0 * hw;
    }
    return g;
}

void SolverOptions::validate() const {
    if (max_iters < 1 || restarts < 1 || !(step_tolerance > 0.0) || !(objective_tolerance > 0.0))
        throw std::invalid_argument("SolverOptions: all options must be positive");
}

ClassifierWeights project_simplex(const std::vector<double>& v) {
    if (v.empty()) throw std::invalid_argument("project_simplex: empty vector");
    const int l = static_cast<int>(v.size());
    std::vector<double> u(v);
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumsum = 0.0;
    double tau = 0.0;
    for (int j = 0; j < l; ++j) {
        cumsum += u[j];
        const double candidate = (cumsum - 1.0) / (j + 1);
        if (u[j] - candidate > 0.0) tau = candidate;
    }
    ClassifierWeights out{std::vector<double>(l)};
    double sum = 0.0;
    for (int j = 0; j < l; ++j) {
        out.w[j] = std::max(v[j] - tau, 0.0);
        sum += out.w[j];
    }
    for (double& x : out.w) x /= sum;
    return out;
}

namespace {

double l2_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

std::vector<double> vertex(int l, int j) {
    std::vector<double> v(l, 0.0);
    v[j] = 1.0;
    return v;
}

/// One projected-gradient descent run. Returns the number of accepted steps.
int descend(const QuadraticObjective& obj, const SolverOptions& opts, double step0,
            std::vector<double>& w, double& f) {
    int accepted = 0;
    for (int it = 0; it < opts.max_iters; ++it) {
        const std::vector<double> g = obj.gradient(w);
        double step = step0;
        bool moved = false;
        std::vector<double> candidate;
        double f_candidate = f;
        while (step > 1e-18) {
            std::vector<double> shifted(w);
            for (int j = 0; j < obj.size(); ++j) shifted[j] -= step * g[j];
            candidate = project_simplex(shifted).w;
            f_candidate = obj.value(candidate);
            double directional = 0.0;
            for (int j = 0; j < obj.size(); ++j) directional += g[j] * (candidate[j] - w[j]);
            if (f_candidate <= f + 1e-4 * directional) {
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
        double displacement = 0.0;
        for (int j = 0; j < obj.size(); ++j)
            displacement += std::abs(candidate[j] - w[j]);
        const double improvement = f - f_candidate;
        w = std::move(candidate);
        f = f_candidate;
        ++accepted;
        if (displacement <= opts.step_tolerance || improvement <= opts.objective_tolerance) break;
    }
    return accepted;
}

}  // namespace

double smallest_eigenvalue_estimate(const Matrix& h) {
    const int l = h.n_rows;
    const auto apply = [&](const std::vector<double>& v, double shift,
                           double sign) -> std::vector<double> {
        // (shift I + sign * H) v
        std::vector<double> out(l, 0.0);
        for (int i = 0; i < l; ++i) {
            double s = shift * v[i];
            for (int j = 0; j < l; ++j) s += sign * h.at(i, j) * v[j];
            out[i] = s;
        }
        return out;
    };
    const auto dominant = [&](double shift, double sign) -> double {
        std::vector<double> v(l);
        for (int i = 0; i < l; ++i) v[i] = 1.0 + static_cast<double>(i) / l;
        double norm = l2_norm(v);
        for (double& x : v) x /= norm;
        double rayleigh = 0.0;
        for (int it = 0; it < 600; ++it) {
            std::vector<double> next = apply(v, shift, sign);
            norm = l2_norm(next);
            if (norm < 1e-300) return 0.0;
            for (double& x : next) x /= norm;
            double r = 0.0;
            const std::vector<double> hv = apply(next, shift, sign);
            for (int i = 0; i < l; ++i) r += next[i] * hv[i];
            if (it > 30 && std::abs(r - rayleigh) <= 1e-14 * (std::abs(r) + 1.0)) {
                rayleigh = r;
                break;
            }
            rayleigh = r;
            v = std::move(next);
        }
        return rayleigh;
    };
    // Spectral radius bound first, then the largest eigenvalue of mu*I - H
    // gives mu - lambda_min.
    const double mu = std::abs(dominant(0.0, 1.0));
    const double shifted = dominant(mu, -1.0);
    return mu - shifted;
}

std::pair<ClassifierWeights, double> solve_simplex_qp(const QuadraticObjective& obj,
                                                      const SolverOptions& opts,
                                                      SolverDiagnostics* diag) {
    opts.validate();
    const int l = obj.size();
    if (l < 1) throw std::invalid_argument("solve_simplex_qp: empty objective");
    for (double x : obj.q)
        if (!std::isfinite(x)) throw std::invalid_argument("solve_simplex_qp: non-finite q");
    for (double x : obj.H.data)
        if (!std::isfinite(x)) throw std::invalid_argument("solve_simplex_qp: non-finite H");

    double frob = 0.0;
    for (double x : obj.H.data) frob += x * x;
    const double step0 = 1.0 / (std::sqrt(frob) + l2_norm(obj.q) + 1.0);

    // Start list: barycenter, best-linear vertex, remaining vertices in index
    // order, then seeded random simplex points up to `restarts`.
    std::vector<std::vector<double>> starts;
    starts.push_back(std::vector<double>(l, 1.0 / l));
    const int best_vertex = static_cast<int>(
        std::min_element(obj.q.begin(), obj.q.end()) - obj.q.begin());
    starts.push_back(vertex(l, best_vertex));
    for (int j = 0; j < l && static_cast<int>(starts.size()) < opts.restarts; ++j) {
        if (j == best_vertex) continue;
        starts.push_back(vertex(l, j));
    }
    Rng rng(opts.seed);
    while (static_cast<int>(starts.size()) < opts.restarts) {
        std::vector<double> p(l);
        double sum = 0.0;
        for (int j = 0; j < l; ++j) {
            p[j] = -std::log(1.0 - rng.unit());
            sum += p[j];
        }
        for (double& x : p) x /= sum;
        starts.push_back(std::move(p));
    }
    if (static_cast<int>(starts.size()) > opts.restarts) starts.resize(opts.restarts);

    std::vector<double> best_w;
    double best_f = 0.0;
    int total_steps = 0;
    for (const std::vector<double>& start : starts) {
        std::vector<double> w = project_simplex(start).w;
        double f = obj.value(w);
        total_steps += descend(obj, opts, step0, w, f);
        if (best_w.empty() || f < best_f ||
            (f == best_f && std::lexicographical_compare(w.begin(), w.end(), best_w.begin(),
                                                         best_w.end()))) {
            best_w = std::move(w);
            best_f = f;
        }
    }

    if (diag) {
        diag->iterations = total_steps;
        diag->restarts = static_cast<int>(starts.size());
        diag->min_eigenvalue = smallest_eigenvalue_estimate(obj.H);
        diag->hessian_psd = diag->min_eigenvalue >= -1e-8;
        diag->objective = best_f;
    }
    return {ClassifierWeights{std::move(best_w)}, best_f};
}

std::pair<ClassifierWeights, double> brute_force_simplex(const QuadraticObjective& obj,
                                                         double grid_step) {
    const int l = obj.size();
    if (l > 4) throw std::invalid_argument("brute_force_simplex: L must be <= 4");
    if (!(grid_step > 0.0)) throw std::invalid_argument("brute_force_simplex: bad grid step");
    const long ticks = std::lround(1.0 / grid_step);
    if (ticks < 1 || std::abs(ticks * grid_step - 1.0) > 1e-9)
        throw std::invalid_argument("brute_force_simplex: grid_step must divide 1");

    std::vector<double> w(l, 0.0);
    std::vector<double> best_w;
    double best_f = 0.0;
    std::vector<long> k(l, 0);
    // Enumerate compositions of `ticks` into l nonnegative parts.
    const std::function<void(int, long)> recurse = [&](int pos, long remaining) {
        if (pos == l - 1) {
            k[pos] = remaining;
            for (int j = 0; j < l; ++j) w[j] = static_cast<double>(k[j]) * grid_step;
            const double f = obj.value(w);
            if (best_w.empty() || f < best_f ||
                (f == best_f && std::lexicographical_compare(w.begin(), w.end(), best_w.begin(),
                                                             best_w.end()))) {
                best_f = f;
                best_w = w;
            }
            return;
        }
        for (long c = 0; c <= remaining; ++c) {
            k[pos] = c;
            recurse(pos + 1, remaining - c);
        }
    };
    recurse(0, ticks);
    return {ClassifierWeights{std::move(best_w)}, best_f};
}

}  // namespace l2dwk
