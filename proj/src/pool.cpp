#include "l2dwk/pool.hpp"

#include <cmath>
#include <sstream>

namespace l2dwk {

std::string to_string(PoolMethod m) {
    return m == PoolMethod::bagging ? "bagging" : "random_subspace";
}

PoolMethod pool_method_from_string(const std::string& name) {
    if (name == "bagging") return PoolMethod::bagging;
    if (name == "random_subspace") return PoolMethod::random_subspace;
    throw std::invalid_argument("unknown pool method '" + name +
                                "' (expected bagging|random_subspace)");
}

ClassifierPool train_pool(const Dataset& ds, const PoolParams& params, uint64_t seed) {
    if (params.trees < 1) throw std::invalid_argument("train_pool: need at least 1 tree");
    if (ds.rows() < 1) throw std::invalid_argument("train_pool: empty dataset");

    ClassifierPool pool;
    pool.method = params.method;
    pool.seed = seed;
    pool.n_features = ds.cols();
    pool.class_count = ds.class_count;
    pool.tree_params.max_depth = params.max_depth;
    pool.tree_params.min_leaf = params.min_leaf;
    pool.tree_params.mtry = 0;
    if (params.method == PoolMethod::random_subspace) {
        pool.tree_params.mtry =
            params.mtry > 0 ? params.mtry
                            : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(ds.cols()))));
    }
    pool.mtry = pool.tree_params.mtry;

    pool.trees.reserve(params.trees);
    for (int i = 0; i < params.trees; ++i) {
        const Dataset boot = bootstrap(ds, derive_seed(seed, static_cast<uint64_t>(i), 1));
        pool.trees.push_back(
            train_tree(boot, pool.tree_params, derive_seed(seed, static_cast<uint64_t>(i), 2)));
    }
    return pool;
}

PredictionMatrix pool_predict(const ClassifierPool& pool, const Dataset& ds) {
    if (ds.rows() < 1) throw std::invalid_argument("pool_predict: empty dataset");
    if (ds.cols() != pool.n_features)
        throw std::invalid_argument("pool_predict: dataset arity " + std::to_string(ds.cols()) +
                                    " does not match pool arity " +
                                    std::to_string(pool.n_features));
    PredictionMatrix preds(ds.rows(), pool.size(), pool.class_count);
    for (int j = 0; j < pool.size(); ++j)
        for (int i = 0; i < ds.rows(); ++i)
            preds.at(i, j) = predict_tree(pool.trees[j], ds.features.row(i), ds.cols());
    return preds;
}

namespace {
constexpr const char* kPoolMagic = "l2dwk-pool";
constexpr const char* kPoolVersion = "v1";
}  // namespace

void save_pool(const ClassifierPool& pool, const std::string& path) {
    std::ostringstream out;
    out << kPoolMagic << ' ' << kPoolVersion << '\n';
    out << "method " << to_string(pool.method) << '\n';
    out << "seed " << pool.seed << '\n';
    out << "trees " << pool.size() << " classes " << pool.class_count << " features "
        << pool.n_features << '\n';
    out << "mtry " << pool.mtry << " max_depth " << pool.tree_params.max_depth << " min_leaf "
        << pool.tree_params.min_leaf << '\n';
    for (int t = 0; t < pool.size(); ++t) {
        const DecisionTree& tree = pool.trees[t];
        out << "tree " << t << " nodes " << tree.nodes.size() << " root " << tree.root << '\n';
        for (const TreeNode& node : tree.nodes) {
            if (node.feature >= 0) {
                out << "split " << node.feature << ' ' << format_double(node.threshold) << ' '
                    << node.left << ' ' << node.right << '\n';
            } else {
                out << "leaf";
                for (int64_t c : node.counts) out << ' ' << c;
                out << '\n';
            }
        }
    }
    out << "end\n";
    atomic_write_text(path, out.str());
}

ClassifierPool load_pool(const std::string& path) {
    std::istringstream in(read_text_file(path));
    const auto fail = [&path](const std::string& why) -> std::runtime_error {
        return std::runtime_error(path + ": " + why);
    };
    std::string magic, version;
    if (!(in >> magic >> version)) throw fail("not a pool file");
    if (magic != kPoolMagic) throw fail("not a pool file (bad magic '" + magic + "')");
    if (version != kPoolVersion)
        throw fail("unsupported pool format version '" + version + "' (expected " +
                   std::string(kPoolVersion) + ")");

    ClassifierPool pool;
    std::string key, method_name;
    int n_trees = 0;
    if (!(in >> key >> method_name) || key != "method") throw fail("missing method line");
    pool.method = pool_method_from_string(method_name);
    if (!(in >> key >> pool.seed) || key != "seed") throw fail("missing seed line");
    std::string k2, k3;
    if (!(in >> key >> n_trees >> k2 >> pool.class_count >> k3 >> pool.n_features) ||
        key != "trees" || k2 != "classes" || k3 != "features")
        throw fail("missing dimensions line");
    if (!(in >> key >> pool.mtry >> k2 >> pool.tree_params.max_depth >> k3 >>
          pool.tree_params.min_leaf) ||
        key != "mtry" || k2 != "max_depth" || k3 != "min_leaf")
        throw fail("missing parameters line");
    pool.tree_params.mtry = pool.mtry;
    if (n_trees < 1 || pool.class_count < 1 || pool.n_features < 1)
        throw fail("bad dimensions");

    pool.trees.reserve(n_trees);
    for (int t = 0; t < n_trees; ++t) {
        int index = 0;
        size_t n_nodes = 0;
        DecisionTree tree;
        tree.n_features = pool.n_features;
        tree.class_count = pool.class_count;
        if (!(in >> key >> index >> k2 >> n_nodes >> k3 >> tree.root) || key != "tree" ||
            k2 != "nodes" || k3 != "root")
            throw fail("truncated file: expected tree " + std::to_string(t));
        if (n_nodes < 1 || tree.root < 0 || static_cast<size_t>(tree.root) >= n_nodes)
            throw fail("bad tree header for tree " + std::to_string(t));
        tree.nodes.resize(n_nodes);
        for (size_t n = 0; n < n_nodes; ++n) {
            if (!(in >> key)) throw fail("truncated file inside tree " + std::to_string(t));
            TreeNode& node = tree.nodes[n];
            if (key == "split") {
                if (!(in >> node.feature >> node.threshold >> node.left >> node.right))
                    throw fail("bad split node in tree " + std::to_string(t));
                if (node.feature < 0 || node.feature >= pool.n_features || node.left < 0 ||
                    node.right < 0 || static_cast<size_t>(node.left) >= n_nodes ||
                    static_cast<size_t>(node.right) >= n_nodes)
                    throw fail("split node out of range in tree " + std::to_string(t));
            } else if (key == "leaf") {
                node.feature = -1;
                node.counts.resize(pool.class_count);
                int64_t total = 0;
                for (int c = 0; c < pool.class_count; ++c) {
                    if (!(in >> node.counts[c])) throw fail("bad leaf in tree " + std::to_string(t));
                    total += node.counts[c];
                }
                if (total < 1) throw fail("empty leaf in tree " + std::to_string(t));
            } else {
                throw fail("unexpected token '" + key + "' in tree " + std::to_string(t));
            }
        }
        pool.trees.push_back(std::move(tree));
    }
    if (!(in >> key) || key != "end") throw fail("truncated file: missing end marker");
    return pool;
}

}  // namespace l2dwk
