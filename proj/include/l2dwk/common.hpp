#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace l2dwk {

/// Dense row-major matrix of doubles. Small helper type; the library works
/// at desk scale (L up to a few hundred, N up to a few thousand).
struct Matrix {
    int n_rows = 0;
    int n_cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(int rows, int cols, double fill = 0.0)
        : n_rows(rows), n_cols(cols), data(static_cast<size_t>(rows) * cols, fill) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative dimensions");
    }

    double& at(int i, int j) { return data[static_cast<size_t>(i) * n_cols + j]; }
    double at(int i, int j) const { return data[static_cast<size_t>(i) * n_cols + j]; }

    const double* row(int i) const { return data.data() + static_cast<size_t>(i) * n_cols; }
    double* row(int i) { return data.data() + static_cast<size_t>(i) * n_cols; }
};

/// SplitMix64 step; used to derive independent per-index seeds from a master
/// seed so that work items can run in any order.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t seed, uint64_t index, uint64_t salt = 0) {
    return splitmix64(splitmix64(seed ^ (salt * 0x9e3779b97f4a7c15ULL)) + index);
}

/// Deterministic RNG. Wraps xorshift-style SplitMix64 state directly instead
/// of std distributions, whose outputs are implementation-defined; every draw
/// here is reproducible across platforms and standard libraries.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(splitmix64(seed ^ 0x5851f42d4c957f2dULL)) {}

    uint64_t next() {
        state_ = splitmix64(state_);
        return state_;
    }

    /// Unbiased draw in [0, n) by rejection.
    uint64_t below(uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % n;
    }

    /// Uniform double in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller (std::normal_distribution is
    /// implementation-defined, so it is not used).
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 <= 0.0) u1 = unit();
        const double u2 = unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            const size_t j = static_cast<size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Throws unless v is a simplex vector: entries >= 0 and sum within 1e-9 of 1.
void require_simplex(const std::vector<double>& v, const char* what);

/// Writes content to path atomically (temp file in the same directory, then
/// rename) so interrupted runs never leave partial artifacts.
void atomic_write_text(const std::string& path, const std::string& content);

std::string read_text_file(const std::string& path);

/// Formats a double so it parses back to the identical bits.
std::string format_double(double v);

}  // namespace l2dwk
