#include <doctest.h>

#include "l2dwk/oracle.hpp"
#include "test_util.hpp"

using namespace l2dwk;
using testutil::TempDir;

TEST_CASE("oracle_matrix marks correctness entrywise") {
    PredictionMatrix preds(2, 1, 2);
    preds.at(0, 0) = 0;
    preds.at(1, 0) = 1;
    const std::vector<int> labels = {0, 0};
    const OracleMatrix o = oracle_matrix(preds, labels);
    CHECK(o.at(0, 0) == 1);
    CHECK(o.at(1, 0) == -1);

    PredictionMatrix all(3, 2, 2);
    for (int i = 0; i < 3; ++i) {
        all.at(i, 0) = i % 2;       // equals labels everywhere
        all.at(i, 1) = 1 - i % 2;   // never equals labels
    }
    const OracleMatrix o2 = oracle_matrix(all, {0, 1, 0});
    for (int i = 0; i < 3; ++i) {
        CHECK(o2.at(i, 0) == 1);
        CHECK(o2.at(i, 1) == -1);
    }

    CHECK_THROWS_AS(oracle_matrix(all, {0, 1}), std::invalid_argument);
}

TEST_CASE("margins from hand-computed dot products") {
    OracleMatrix o(3, 3);
    // row 0: [+1, -1, +1]; row 1: all +1; row 2: [+1, +1, -1]
    o.at(0, 1) = -1;
    o.at(2, 2) = -1;

    const ClassifierWeights half{{0.5, 0.25, 0.25}};
    const std::vector<double> m = margins(o, half);
    CHECK(m[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m[2] == doctest::Approx(0.5).epsilon(1e-12));

    OracleMatrix cancel(1, 2);
    cancel.at(0, 1) = -1;
    const std::vector<double> zero = margins(cancel, ClassifierWeights{{0.5, 0.5}});
    CHECK(zero[0] == doctest::Approx(0.0));
}

TEST_CASE("margin equals correct-mass minus wrong-mass computed independently") {
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const OracleMatrix o = testutil::random_oracle(rng, 30, 7);
        const ClassifierWeights w{testutil::random_simplex(rng, 7)};
        const std::vector<double> m = margins(o, w);
        for (int i = 0; i < o.n_rows; ++i) {
            double correct = 0.0, wrong = 0.0;
            for (int j = 0; j < o.n_cols; ++j)
                (o.at(i, j) > 0 ? correct : wrong) += w.w[j];
            CHECK(m[i] == doctest::Approx(correct - wrong).epsilon(1e-12));
            CHECK(m[i] >= -1.0 - 1e-12);
            CHECK(m[i] <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("accuracy_vector is the signed accuracy") {
    OracleMatrix o(4, 3);
    for (int i = 0; i < 4; ++i) o.at(i, 1) = -1;          // always wrong
    o.at(0, 2) = -1;
    o.at(1, 2) = -1;                                      // half wrong
    const std::vector<double> p = accuracy_vector(o);
    CHECK(p[0] == doctest::Approx(1.0));
    CHECK(p[1] == doctest::Approx(-1.0));
    CHECK(p[2] == doctest::Approx(0.0));
}

TEST_CASE("accuracy_vector equals 2 * counted accuracy - 1") {
    Rng rng(77);
    const OracleMatrix o = testutil::random_oracle(rng, 53, 9);
    const std::vector<double> p = accuracy_vector(o);
    for (int j = 0; j < o.n_cols; ++j) {
        int correct = 0;
        for (int i = 0; i < o.n_rows; ++i)
            if (o.at(i, j) > 0) ++correct;
        const double conventional = static_cast<double>(correct) / o.n_rows;
        CHECK(p[j] == doctest::Approx(2.0 * conventional - 1.0).epsilon(1e-12));
    }
}

TEST_CASE("weighted_vote mass and tie rules") {
    const int preds_two[2] = {0, 1};
    CHECK(weighted_vote(preds_two, 2, ClassifierWeights{{0.7, 0.3}}, 2) == 0);
    CHECK(weighted_vote(preds_two, 2, ClassifierWeights{{0.5, 0.5}}, 2) == 0);  // tie -> smaller

    // mass(2) = 0.4 < mass(0) = 0.6
    const int preds_three[3] = {2, 2, 0};
    CHECK(weighted_vote(preds_three, 3, ClassifierWeights{{0.2, 0.2, 0.6}}, 3) == 0);
}

TEST_CASE("ensemble_error counts misvoted rows") {
    PredictionMatrix perfect(4, 3, 2);
    const std::vector<int> labels = {0, 0, 0, 0};
    const ClassifierWeights u = ClassifierWeights::uniform(3);
    CHECK(ensemble_error(perfect, labels, u) == 0.0);

    PredictionMatrix wrong(4, 3, 2);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 3; ++j) wrong.at(i, j) = 1;
    CHECK(ensemble_error(wrong, labels, u) == 1.0);

    PredictionMatrix quarter = perfect;
    for (int j = 0; j < 3; ++j) quarter.at(2, j) = 1;  // one row unanimously wrong
    CHECK(ensemble_error(quarter, labels, u) == doctest::Approx(0.25));
}

TEST_CASE("binary label inversion flips the vote error") {
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        PredictionMatrix preds(21, 5, 2);
        std::vector<int> labels(21);
        for (int i = 0; i < 21; ++i) {
            labels[i] = static_cast<int>(rng.below(2));
            for (int j = 0; j < 5; ++j) preds.at(i, j) = static_cast<int>(rng.below(2));
        }
        const ClassifierWeights w{testutil::random_simplex(rng, 5)};  // continuous: no vote ties
        std::vector<int> inverted(labels);
        for (int& y : inverted) y = 1 - y;
        const double err = ensemble_error(preds, labels, w);
        const double err_inv = ensemble_error(preds, inverted, w);
        CHECK(err + err_inv == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("prediction and oracle CSV round trips") {
    TempDir tmp;
    Rng rng(8);
    PredictionMatrix preds(6, 4, 3);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 4; ++j) preds.at(i, j) = static_cast<int>(rng.below(3));
    const std::string ppath = tmp.file("preds.csv");
    save_prediction_csv(preds, ppath);
    const PredictionMatrix loaded = load_prediction_csv(ppath, 3);
    CHECK(loaded.entries == preds.entries);
    CHECK(loaded.class_count == 3);

    const OracleMatrix o = testutil::random_oracle(rng, 6, 4);
    const std::string opath = tmp.file("oracle.csv");
    save_oracle_csv(o, opath);
    const OracleMatrix oloaded = load_oracle_csv(opath);
    CHECK(oloaded.entries == o.entries);

    testutil::write_file(tmp.file("bad.csv"), "1,2\n0,5\n");
    CHECK_THROWS_AS(load_oracle_csv(tmp.file("bad.csv")), std::runtime_error);
}
