#include <doctest.h>

#include "l2dwk/pool.hpp"
#include "test_util.hpp"

using namespace l2dwk;
using testutil::TempDir;

namespace {

Dataset from_rows(const std::vector<std::vector<double>>& rows, const std::vector<int>& labels,
                  int class_count) {
    Dataset ds;
    ds.features = Matrix(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j)
            ds.features.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    ds.labels = labels;
    ds.class_count = class_count;
    for (int j = 0; j < ds.cols(); ++j) {
        ds.feature_names.push_back("f" + std::to_string(j));
        ds.feature_codecs.emplace_back();
    }
    for (int c = 0; c < class_count; ++c) ds.label_values.push_back(std::to_string(c));
    return ds;
}

double training_accuracy(const DecisionTree& tree, const Dataset& ds) {
    int correct = 0;
    for (int r = 0; r < ds.rows(); ++r)
        if (predict_tree(tree, ds.features.row(r), ds.cols()) == ds.labels[r]) ++correct;
    return static_cast<double>(correct) / ds.rows();
}

}  // namespace

TEST_CASE("one perfectly separating feature gives a depth-1 tree") {
    const Dataset ds = from_rows({{0.0, 5.0}, {1.0, 5.0}, {10.0, 5.0}, {11.0, 5.0}},
                                 {0, 0, 1, 1}, 2);
    const DecisionTree tree = train_tree(ds, TreeParams{}, 0);
    CHECK(tree.nodes.size() == 3);  // root split + two leaves
    CHECK(tree.nodes[tree.root].feature == 0);
    CHECK(training_accuracy(tree, ds) == 1.0);
}

TEST_CASE("pure dataset trains to a single leaf") {
    const Dataset ds = from_rows({{1.0}, {2.0}, {3.0}}, {1, 1, 1}, 2);
    const DecisionTree tree = train_tree(ds, TreeParams{}, 0);
    CHECK(tree.nodes.size() == 1);
    CHECK(tree.nodes[0].feature == -1);
    CHECK(predict_tree(tree, ds.features.row(0), 1) == 1);
}

TEST_CASE("gini splitting solves XOR at depth 2") {
    const Dataset ds = from_rows(
        {{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0},
         {0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}},
        {0, 1, 1, 0, 0, 1, 1, 0}, 2);
    TreeParams params;
    params.max_depth = 2;
    const DecisionTree tree = train_tree(ds, params, 0);
    CHECK(training_accuracy(tree, ds) == 1.0);
}

TEST_CASE("predict_tree leaf argmax and tie rules") {
    DecisionTree leaf;
    leaf.n_features = 2;
    leaf.class_count = 2;
    leaf.nodes.push_back(TreeNode{-1, 0.0, -1, -1, {3, 5}});
    const double x[2] = {0.0, 0.0};
    CHECK(predict_tree(leaf, x, 2) == 1);

    leaf.nodes[0].counts = {4, 4};
    CHECK(predict_tree(leaf, x, 2) == 0);  // tie toward the smaller class

    CHECK_THROWS_AS(predict_tree(leaf, x, 3), std::invalid_argument);
}

TEST_CASE("values exactly at the threshold route left") {
    DecisionTree tree;
    tree.n_features = 1;
    tree.class_count = 2;
    tree.nodes.push_back(TreeNode{0, 2.5, 1, 2, {}});
    tree.nodes.push_back(TreeNode{-1, 0.0, -1, -1, {5, 0}});  // left: class 0
    tree.nodes.push_back(TreeNode{-1, 0.0, -1, -1, {0, 5}});  // right: class 1
    const double at_threshold[1] = {2.5};
    const double above[1] = {2.5000001};
    CHECK(predict_tree(tree, at_threshold, 1) == 0);
    CHECK(predict_tree(tree, above, 1) == 1);
}

TEST_CASE("train_pool basics and determinism") {
    const Dataset ds = make_blobs(20, {{0.0, 0.0}, {4.0, 4.0}}, 1.0, 5);

    PoolParams one;
    one.trees = 1;
    const ClassifierPool single = train_pool(ds, one, 11);
    CHECK(single.size() == 1);
    CHECK(single.mtry == 0);

    PoolParams many;
    many.trees = 301;
    many.max_depth = 3;
    const ClassifierPool pool = train_pool(ds, many, 11);
    CHECK(pool.size() == 301);

    TempDir tmp;
    const ClassifierPool again = train_pool(ds, many, 11);
    save_pool(pool, tmp.file("a.pool"));
    save_pool(again, tmp.file("b.pool"));
    CHECK(read_text_file(tmp.file("a.pool")) == read_text_file(tmp.file("b.pool")));

    PoolParams rs;
    rs.trees = 5;
    rs.method = PoolMethod::random_subspace;
    const ClassifierPool subspace = train_pool(ds, rs, 3);
    CHECK(subspace.mtry == 2);  // ceil(sqrt(2))
}

TEST_CASE("pool_predict columns come from the matching trees") {
    ClassifierPool pool;
    pool.n_features = 2;
    pool.class_count = 2;
    DecisionTree leaf;
    leaf.n_features = 2;
    leaf.class_count = 2;
    leaf.nodes.push_back(TreeNode{-1, 0.0, -1, -1, {0, 7}});
    pool.trees.push_back(leaf);

    const Dataset ds = from_rows({{0.0, 0.0}, {1.0, 1.0}, {2.0, 2.0}}, {0, 0, 0}, 2);
    const PredictionMatrix preds = pool_predict(pool, ds);
    CHECK(preds.n_rows == 3);
    CHECK(preds.n_cols == 1);
    for (int i = 0; i < 3; ++i) CHECK(preds.at(i, 0) == 1);

    pool.trees.push_back(leaf);  // duplicated tree: identical columns
    const PredictionMatrix two = pool_predict(pool, ds);
    for (int i = 0; i < 3; ++i) CHECK(two.at(i, 0) == two.at(i, 1));

    Dataset empty;
    empty.features = Matrix(0, 2);
    empty.class_count = 2;
    CHECK_THROWS_AS(pool_predict(pool, empty), std::invalid_argument);

    const Dataset wrong_arity = from_rows({{0.0}}, {0}, 2);
    CHECK_THROWS_AS(pool_predict(pool, wrong_arity), std::invalid_argument);
}

TEST_CASE("pool save/load round trip reproduces predictions exactly") {
    const Dataset ds = make_blobs(25, {{0.0, 0.0}, {3.0, 3.0}, {0.0, 6.0}}, 1.2, 21);
    PoolParams params;
    params.trees = 17;
    const ClassifierPool pool = train_pool(ds, params, 77);

    TempDir tmp;
    const std::string path = tmp.file("pool.txt");
    save_pool(pool, path);
    const ClassifierPool loaded = load_pool(path);

    const Dataset probe = make_blobs(10, {{0.0, 0.0}, {3.0, 3.0}, {0.0, 6.0}}, 2.0, 22);
    const PredictionMatrix a = pool_predict(pool, probe);
    const PredictionMatrix b = pool_predict(loaded, probe);
    CHECK(a.entries == b.entries);
}

TEST_CASE("pool loader rejects truncated and wrong-version files") {
    const Dataset ds = make_blobs(10, {{0.0}, {5.0}}, 0.5, 2);
    PoolParams params;
    params.trees = 3;
    const ClassifierPool pool = train_pool(ds, params, 1);

    TempDir tmp;
    const std::string path = tmp.file("pool.txt");
    save_pool(pool, path);
    const std::string full = read_text_file(path);

    const std::string cut = tmp.file("cut.txt");
    testutil::write_file(cut, full.substr(0, full.size() / 2));
    CHECK_THROWS_AS(load_pool(cut), std::runtime_error);

    // a clean truncation (drop the end marker and the last node line)
    std::string short_file = full;
    short_file.resize(short_file.rfind("end\n"));
    short_file.resize(short_file.rfind('\n', short_file.size() - 2) + 1);
    const std::string clean_cut = tmp.file("clean_cut.txt");
    testutil::write_file(clean_cut, short_file);
    CHECK_THROWS_WITH_AS(load_pool(clean_cut), doctest::Contains("truncated"),
                         std::runtime_error);

    const std::string versioned = tmp.file("v9.txt");
    std::string bumped = full;
    bumped.replace(bumped.find("v1"), 2, "v9");
    testutil::write_file(versioned, bumped);
    CHECK_THROWS_WITH_AS(load_pool(versioned), doctest::Contains("version"), std::runtime_error);

    testutil::write_file(tmp.file("junk.txt"), "not a pool\n");
    CHECK_THROWS_AS(load_pool(tmp.file("junk.txt")), std::runtime_error);
}

TEST_CASE("bagging majority vote beats the average single tree on training data") {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        // overlapping blobs so single trees stay imperfect
        const Dataset ds =
            make_blobs(40, {{0.0, 0.0}, {2.0, 2.0}, {0.0, 3.0}}, 1.4, 100 + seed);
        PoolParams params;
        params.trees = 15;
        params.max_depth = 3;
        const ClassifierPool pool = train_pool(ds, params, seed);
        const PredictionMatrix preds = pool_predict(pool, ds);

        const ClassifierWeights uniform = ClassifierWeights::uniform(pool.size());
        const double vote_acc = 1.0 - ensemble_error(preds, ds.labels, uniform);

        double tree_acc_sum = 0.0;
        for (int j = 0; j < pool.size(); ++j) {
            int correct = 0;
            for (int i = 0; i < ds.rows(); ++i)
                if (preds.at(i, j) == ds.labels[i]) ++correct;
            tree_acc_sum += static_cast<double>(correct) / ds.rows();
        }
        const double mean_tree_acc = tree_acc_sum / pool.size();
        CHECK(vote_acc >= mean_tree_acc);
    }
}
