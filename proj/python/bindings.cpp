#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "l2dwk/bench.hpp"

namespace py = pybind11;
using namespace l2dwk;

namespace {

std::vector<std::vector<double>> matrix_to_list(const Matrix& m) {
    std::vector<std::vector<double>> out(m.n_rows, std::vector<double>(m.n_cols));
    for (int i = 0; i < m.n_rows; ++i)
        for (int j = 0; j < m.n_cols; ++j) out[i][j] = m.at(i, j);
    return out;
}

PredictionMatrix predictions_from_list(const std::vector<std::vector<int>>& rows,
                                       int class_count) {
    if (rows.empty() || rows[0].empty())
        throw std::invalid_argument("predictions: need a nonempty matrix");
    PredictionMatrix preds(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()),
                           class_count);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size())
            throw std::invalid_argument("predictions: ragged rows");
        for (size_t j = 0; j < rows[i].size(); ++j) {
            if (rows[i][j] < 0 || rows[i][j] >= class_count)
                throw std::invalid_argument("predictions: class index out of range");
            preds.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
        }
    }
    return preds;
}

OracleMatrix oracle_from_list(const std::vector<std::vector<int>>& rows) {
    if (rows.empty() || rows[0].empty())
        throw std::invalid_argument("oracle: need a nonempty matrix");
    OracleMatrix o(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size()) throw std::invalid_argument("oracle: ragged rows");
        for (size_t j = 0; j < rows[i].size(); ++j) {
            if (rows[i][j] != 1 && rows[i][j] != -1)
                throw std::invalid_argument("oracle entries must be +1 or -1");
            o.at(static_cast<int>(i), static_cast<int>(j)) = static_cast<int8_t>(rows[i][j]);
        }
    }
    return o;
}

Dataset dataset_from_arrays(const std::vector<std::vector<double>>& features,
                            const std::vector<int>& labels, int class_count) {
    if (features.empty() || features[0].empty())
        throw std::invalid_argument("dataset: need a nonempty feature matrix");
    if (features.size() != labels.size())
        throw std::invalid_argument("dataset: labels length != feature rows");
    Dataset ds;
    ds.features = Matrix(static_cast<int>(features.size()), static_cast<int>(features[0].size()));
    for (size_t i = 0; i < features.size(); ++i) {
        if (features[i].size() != features[0].size())
            throw std::invalid_argument("dataset: ragged feature rows");
        for (size_t j = 0; j < features[i].size(); ++j)
            ds.features.at(static_cast<int>(i), static_cast<int>(j)) = features[i][j];
    }
    ds.labels = labels;
    ds.class_count = class_count;
    for (int l : labels)
        if (l < 0 || l >= class_count) throw std::invalid_argument("dataset: label out of range");
    for (int j = 0; j < ds.cols(); ++j) {
        ds.feature_names.push_back("f" + std::to_string(j));
        ds.feature_codecs.emplace_back();
    }
    for (int c = 0; c < class_count; ++c) ds.label_values.push_back(std::to_string(c));
    return ds;
}

}  // namespace

PYBIND11_MODULE(l2dwk, m) {
    m.doc() = "Classifier-ensemble combination: accuracy + weighted-kernel diversity";

    py::class_<Dataset>(m, "Dataset")
        .def_property_readonly("features", [](const Dataset& d) { return matrix_to_list(d.features); })
        .def_readonly("labels", &Dataset::labels)
        .def_readonly("class_count", &Dataset::class_count)
        .def_readonly("feature_names", &Dataset::feature_names)
        .def_property_readonly("rows", &Dataset::rows)
        .def_property_readonly("cols", &Dataset::cols);

    py::class_<FoldPlan>(m, "FoldPlan")
        .def_readonly("fold_of", &FoldPlan::fold_of)
        .def_readonly("k", &FoldPlan::k)
        .def_readonly("seed", &FoldPlan::seed);

    m.def("dataset_from_arrays", &dataset_from_arrays, py::arg("features"), py::arg("labels"),
          py::arg("class_count"));
    m.def("load_csv", &load_csv, py::arg("path"), py::arg("label_column") = -1);
    m.def("save_csv", &save_csv, py::arg("dataset"), py::arg("path"));
    m.def("stratified_kfold", &stratified_kfold, py::arg("dataset"), py::arg("k"), py::arg("seed"));
    m.def("fold_train_indices", &fold_train_indices);
    m.def("fold_test_indices", &fold_test_indices);
    m.def("subset", &subset);
    m.def("bootstrap", &bootstrap, py::arg("dataset"), py::arg("seed"));
    m.def("make_blobs", &make_blobs, py::arg("n_per_class"), py::arg("centers"), py::arg("spread"),
          py::arg("seed"));

    py::enum_<PoolMethod>(m, "PoolMethod")
        .value("bagging", PoolMethod::bagging)
        .value("random_subspace", PoolMethod::random_subspace);

    py::class_<PoolParams>(m, "PoolParams")
        .def(py::init<>())
        .def_readwrite("trees", &PoolParams::trees)
        .def_readwrite("method", &PoolParams::method)
        .def_readwrite("mtry", &PoolParams::mtry)
        .def_readwrite("max_depth", &PoolParams::max_depth)
        .def_readwrite("min_leaf", &PoolParams::min_leaf);

    py::class_<ClassifierPool>(m, "ClassifierPool")
        .def_property_readonly("size", &ClassifierPool::size)
        .def_readonly("class_count", &ClassifierPool::class_count)
        .def_readonly("n_features", &ClassifierPool::n_features)
        .def_readonly("seed", &ClassifierPool::seed);

    m.def("train_pool", &train_pool, py::arg("dataset"), py::arg("params"), py::arg("seed"));
    m.def("pool_predict", &pool_predict);
    m.def("save_pool", &save_pool);
    m.def("load_pool", &load_pool);

    py::class_<PredictionMatrix>(m, "PredictionMatrix")
        .def_readonly("class_count", &PredictionMatrix::class_count)
        .def_property_readonly("rows", [](const PredictionMatrix& p) { return p.n_rows; })
        .def_property_readonly("cols", [](const PredictionMatrix& p) { return p.n_cols; })
        .def("tolist", [](const PredictionMatrix& p) {
            std::vector<std::vector<int>> out(p.n_rows, std::vector<int>(p.n_cols));
            for (int i = 0; i < p.n_rows; ++i)
                for (int j = 0; j < p.n_cols; ++j) out[i][j] = p.at(i, j);
            return out;
        });
    m.def("predictions_from_list", &predictions_from_list, py::arg("rows"), py::arg("class_count"));

    py::class_<OracleMatrix>(m, "OracleMatrix")
        .def_property_readonly("rows", [](const OracleMatrix& o) { return o.n_rows; })
        .def_property_readonly("cols", [](const OracleMatrix& o) { return o.n_cols; })
        .def("tolist", [](const OracleMatrix& o) {
            std::vector<std::vector<int>> out(o.n_rows, std::vector<int>(o.n_cols));
            for (int i = 0; i < o.n_rows; ++i)
                for (int j = 0; j < o.n_cols; ++j) out[i][j] = o.at(i, j);
            return out;
        });
    m.def("oracle_from_list", &oracle_from_list);

    py::class_<ClassifierWeights>(m, "ClassifierWeights")
        .def(py::init([](std::vector<double> w) { return ClassifierWeights{std::move(w)}; }))
        .def_readonly("w", &ClassifierWeights::w)
        .def_static("uniform", &ClassifierWeights::uniform);

    py::class_<KernelWeights>(m, "KernelWeights")
        .def(py::init([](std::vector<double> a) { return KernelWeights{std::move(a)}; }))
        .def_readonly("alpha", &KernelWeights::alpha)
        .def_static("uniform", &KernelWeights::uniform);

    m.def("oracle_matrix", &oracle_matrix);
    m.def("margins", &margins);
    m.def("accuracy_vector", &accuracy_vector);
    m.def("weighted_vote", [](const std::vector<int>& preds_row, const ClassifierWeights& w,
                              int class_count) {
        return weighted_vote(preds_row.data(), static_cast<int>(preds_row.size()), w, class_count);
    });
    m.def("ensemble_error", &ensemble_error);
    m.def("save_prediction_csv", &save_prediction_csv);
    m.def("load_prediction_csv", &load_prediction_csv, py::arg("path"), py::arg("class_count") = 0);
    m.def("save_oracle_csv", &save_oracle_csv);
    m.def("load_oracle_csv", &load_oracle_csv);

    py::class_<KernelSpec>(m, "KernelSpec")
        .def_static("linear", &KernelSpec::linear, py::arg("c") = 0.0)
        .def_static("gaussian", &KernelSpec::gaussian, py::arg("sigma") = 1.0)
        .def_static("polynomial", &KernelSpec::polynomial, py::arg("c") = 1.0,
                    py::arg("degree") = 2)
        .def_property_readonly("name", &KernelSpec::name);

    m.def("kernel_eval", &kernel_eval);
    m.def("weighted_gram",
          [](const KernelSpec& s, const KernelWeights& a, const OracleMatrix& o) {
              return matrix_to_list(weighted_gram(s, a, o));
          });
    m.def("weighted_ones_row", &weighted_ones_row);

    py::enum_<DiversityKind>(m, "DiversityKind")
        .value("disagreement", DiversityKind::disagreement)
        .value("double_fault", DiversityKind::double_fault);

    py::class_<DiversityMatrix>(m, "DiversityMatrix")
        .def_readonly("kind", &DiversityMatrix::kind)
        .def_readonly("kernelized", &DiversityMatrix::kernelized)
        .def("tolist", [](const DiversityMatrix& d) { return matrix_to_list(d.entries); });

    m.def("disagreement_matrix", &disagreement_matrix);
    m.def("double_fault_matrix", &double_fault_matrix);
    m.def("kernel_disagreement", &kernel_disagreement);
    m.def("kernel_double_fault", &kernel_double_fault);
    m.def("div_value", &div_value);

    py::class_<SolverOptions>(m, "SolverOptions")
        .def(py::init<>())
        .def_readwrite("max_iters", &SolverOptions::max_iters)
        .def_readwrite("step_tolerance", &SolverOptions::step_tolerance)
        .def_readwrite("objective_tolerance", &SolverOptions::objective_tolerance)
        .def_readwrite("restarts", &SolverOptions::restarts)
        .def_readwrite("seed", &SolverOptions::seed);

    py::class_<QuadraticObjective>(m, "QuadraticObjective")
        .def(py::init([](std::vector<double> q, const std::vector<std::vector<double>>& h) {
            const int l = static_cast<int>(q.size());
            Matrix hm(l, l);
            if (static_cast<int>(h.size()) != l)
                throw std::invalid_argument("H must be LxL matching q");
            for (int i = 0; i < l; ++i) {
                if (static_cast<int>(h[i].size()) != l)
                    throw std::invalid_argument("H must be LxL matching q");
                for (int j = 0; j < l; ++j) hm.at(i, j) = h[i][j];
            }
            return QuadraticObjective(std::move(q), std::move(hm));
        }))
        .def_readonly("q", &QuadraticObjective::q)
        .def_property_readonly("H", [](const QuadraticObjective& o) { return matrix_to_list(o.H); })
        .def("value", &QuadraticObjective::value);

    m.def("project_simplex", &project_simplex);
    m.def("solve_simplex_qp", [](const QuadraticObjective& obj, const SolverOptions& opts) {
        return solve_simplex_qp(obj, opts);
    }, py::arg("objective"), py::arg("options") = SolverOptions());
    m.def("brute_force_simplex", &brute_force_simplex);

    py::enum_<UpdateRule>(m, "UpdateRule")
        .value("hinge", UpdateRule::hinge)
        .value("exp", UpdateRule::exp);

    py::enum_<StopReason>(m, "StopReason")
        .value("max_iters", StopReason::max_iters)
        .value("alpha_converged", StopReason::alpha_converged)
        .value("zero_error", StopReason::zero_error);

    py::class_<L2DWKConfig>(m, "L2DWKConfig")
        .def(py::init<>())
        .def_readwrite("lambda_", &L2DWKConfig::lambda)
        .def_readwrite("kernel", &L2DWKConfig::kernel)
        .def_readwrite("diversity", &L2DWKConfig::diversity)
        .def_readwrite("df_negate", &L2DWKConfig::df_negate)
        .def_readwrite("update", &L2DWKConfig::update)
        .def_readwrite("max_iters", &L2DWKConfig::max_iters)
        .def_readwrite("alpha_tolerance", &L2DWKConfig::alpha_tolerance)
        .def_readwrite("early_stop", &L2DWKConfig::early_stop)
        .def_readwrite("ridge", &L2DWKConfig::ridge)
        .def_readwrite("solver", &L2DWKConfig::solver);

    py::class_<IterationRecord>(m, "IterationRecord")
        .def_readonly("t", &IterationRecord::t)
        .def_readonly("vote_error", &IterationRecord::vote_error)
        .def_readonly("margin_error", &IterationRecord::margin_error)
        .def_readonly("alpha_change", &IterationRecord::alpha_change)
        .def_readonly("objective", &IterationRecord::objective)
        .def_readonly("hessian_psd", &IterationRecord::hessian_psd)
        .def_readonly("solver_iterations", &IterationRecord::solver_iterations)
        .def_readonly("solver_restarts", &IterationRecord::solver_restarts)
        .def_readonly("alpha_sum", &IterationRecord::alpha_sum)
        .def_readonly("alpha_min", &IterationRecord::alpha_min);

    py::class_<TrainReport>(m, "TrainReport")
        .def_readonly("iterations", &TrainReport::iterations)
        .def_readonly("final_w", &TrainReport::final_w)
        .def_readonly("final_alpha", &TrainReport::final_alpha)
        .def_readonly("stop_reason", &TrainReport::stop_reason);

    m.def("build_objective", &build_objective);
    m.def("qpd", &qpd, py::arg("oracle"), py::arg("lambda_"), py::arg("kind"), py::arg("options"),
          py::arg("df_negate") = false, py::arg("ridge") = 0.0);
    m.def("hinge_alpha_star", &hinge_alpha_star);
    m.def("exp_alpha_star", &exp_alpha_star);
    m.def("update_alpha", &update_alpha);
    m.def("run_l2dwk", &run_l2dwk, py::arg("predictions"), py::arg("labels"), py::arg("config"));

    py::class_<BenchConfig>(m, "BenchConfig")
        .def(py::init<>())
        .def_readwrite("dataset_name", &BenchConfig::dataset_name)
        .def_readwrite("folds", &BenchConfig::folds)
        .def_readwrite("methods", &BenchConfig::methods)
        .def_readwrite("seed", &BenchConfig::seed)
        .def_readwrite("pool", &BenchConfig::pool)
        .def_readwrite("combine", &BenchConfig::combine)
        .def_readwrite("kernel_c", &BenchConfig::kernel_c)
        .def_readwrite("poly_c", &BenchConfig::poly_c)
        .def_readwrite("sigma", &BenchConfig::sigma)
        .def_readwrite("degree", &BenchConfig::degree)
        .def_readwrite("timing", &BenchConfig::timing);

    py::class_<BenchRow>(m, "BenchRow")
        .def_readonly("dataset", &BenchRow::dataset)
        .def_readonly("fold", &BenchRow::fold)
        .def_readonly("method", &BenchRow::method)
        .def_readonly("test_accuracy", &BenchRow::test_accuracy)
        .def_readonly("train_seconds", &BenchRow::train_seconds)
        .def_readonly("effective_l", &BenchRow::effective_l);

    py::class_<BenchAggregate>(m, "BenchAggregate")
        .def_readonly("method", &BenchAggregate::method)
        .def_readonly("mean_accuracy", &BenchAggregate::mean_accuracy)
        .def_readonly("stddev_accuracy", &BenchAggregate::stddev_accuracy);

    py::class_<BenchReport>(m, "BenchReport")
        .def_readonly("rows", &BenchReport::rows)
        .def_readonly("aggregates", &BenchReport::aggregates);

    m.def("run_bench", &run_bench);
    m.def("bench_csv", &bench_csv);
}
