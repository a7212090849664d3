#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>

#include "sklr/dataset.hpp"
#include "sklr/errors.hpp"
#include "cpp/helpers.hpp"

using namespace sklr;

namespace {

struct TempCsv {
    std::string path;
    explicit TempCsv(const std::string& content) {
        static int counter = 0;
        path = "sklr_test_" + std::to_string(counter++) + ".csv";
        std::ofstream out(path);
        out << content;
    }
    ~TempCsv() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("load_csv maps the smaller label to -1") {
    TempCsv f("a,b,y\n1,2,0\n3,4,1\n5,6,0\n");
    Dataset d = load_csv(f.path, "y");
    CHECK(d.n == 3);
    CHECK(d.p == 2);
    CHECK(d.labels[0] == -1);
    CHECK(d.labels[1] == +1);
    CHECK(d.labels[2] == -1);
    CHECK(d.features[2] == 3.0);
}

TEST_CASE("load_csv keeps an existing -1/+1 coding") {
    TempCsv f("x,y\n0.5,-1\n0.7,1\n");
    Dataset d = load_csv(f.path, "y");
    CHECK(d.labels[0] == -1);
    CHECK(d.labels[1] == +1);
}

TEST_CASE("load_csv accepts a label column index") {
    TempCsv f("y,x\n1,0.5\n0,0.7\n");
    Dataset d = load_csv(f.path, "0");
    CHECK(d.labels[0] == +1);
    CHECK(d.p == 1);
    CHECK(d.features[0] == 0.5);
}

TEST_CASE("load_csv errors name the offending cell") {
    TempCsv f("a,y\n1,0\nfoo,1\n2,0\n");
    CHECK_THROWS_WITH_AS(load_csv(f.path, "y"),
                         doctest::Contains("row 3"), input_error);
}

TEST_CASE("load_csv rejects label columns without exactly two values") {
    TempCsv three("a,y\n1,0\n2,1\n3,2\n");
    CHECK_THROWS_AS(load_csv(three.path, "y"), input_error);
    TempCsv one("a,y\n1,0\n2,0\n");
    CHECK_THROWS_AS(load_csv(one.path, "y"), input_error);
}

TEST_CASE("load_csv rejects missing files and empty files") {
    CHECK_THROWS_AS(load_csv("does_not_exist.csv", "y"), input_error);
    TempCsv empty("");
    CHECK_THROWS_AS(load_csv(empty.path, "y"), input_error);
}

TEST_CASE("scaling maps training features onto [0,1]") {
    Dataset d(3, 1, {2, 4, 6}, {-1, +1, -1});
    ScalingParams s = fit_scaling(d);
    Dataset scaled = apply_scaling(d, s);
    CHECK(scaled.features[0] == doctest::Approx(0.0));
    CHECK(scaled.features[1] == doctest::Approx(0.5));
    CHECK(scaled.features[2] == doctest::Approx(1.0));
}

TEST_CASE("constant features scale to zero") {
    Dataset d(2, 1, {5, 5}, {-1, +1});
    Dataset scaled = apply_scaling(d, fit_scaling(d));
    CHECK(scaled.features[0] == 0.0);
    CHECK(scaled.features[1] == 0.0);
}

TEST_CASE("test-time scaling does not clip out-of-range values") {
    Dataset train(3, 1, {2, 4, 6}, {-1, +1, -1});
    ScalingParams s = fit_scaling(train);
    std::vector<double> out;
    apply_scaling_row(std::vector<double>{8.0}, s, out);
    CHECK(out[0] == doctest::Approx(1.5));
}

TEST_CASE("scaling round trip keeps random features inside [0,1]") {
    Dataset d = testing::random_instance(40, 3, 99);
    Dataset scaled = apply_scaling(d, fit_scaling(d));
    for (double v : scaled.features) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("stratified k-fold balances classes and partitions indices") {
    Dataset d = testing::make_blobs(5, 5, 2, 1.0, 7);
    FoldPlan plan = stratified_kfold(d, 5, 42);
    std::set<std::size_t> seen;
    for (int fold = 0; fold < 5; ++fold) {
        auto idx = plan.fold_indices(fold);
        CHECK(idx.size() == 2);
        int pos = 0;
        for (auto i : idx) {
            CHECK(seen.insert(i).second);  // partition: no index twice
            if (d.labels[i] == 1) ++pos;
        }
        CHECK(pos == 1);  // exactly one per class per fold
    }
    CHECK(seen.size() == d.n);
}

TEST_CASE("k-fold is deterministic for a fixed seed") {
    Dataset d = testing::make_blobs(20, 15, 3, 0.8, 3);
    FoldPlan a = stratified_kfold(d, 5, 11);
    FoldPlan b = stratified_kfold(d, 5, 11);
    CHECK(a.assignments == b.assignments);
}

TEST_CASE("k-fold rejects classes smaller than k") {
    Dataset d = testing::make_blobs(3, 10, 2, 1.0, 5);
    CHECK_THROWS_AS(stratified_kfold(d, 5, 0), input_error);
}

TEST_CASE("validation split takes round(fraction*N) points, stratified") {
    Dataset d = testing::make_blobs(50, 50, 2, 1.0, 21);
    auto [train, val] = validation_split(d, 0.05, 9);
    CHECK(val.n == 5);
    CHECK(train.n == 95);
    CHECK(val.n_pos >= 1);
    CHECK(val.n_neg >= 1);
    train.require_both_classes();
}

TEST_CASE("validation split of 4 points at one half is 2/2") {
    Dataset d = testing::make_blobs(2, 2, 2, 1.0, 21);
    auto [train, val] = validation_split(d, 0.5, 1);
    CHECK(val.n == 2);
    CHECK(train.n == 2);
    train.require_both_classes();
}

TEST_CASE("tiny validation split keeps the training classes intact") {
    Dataset d = testing::make_blobs(5, 5, 2, 1.0, 4);
    auto [train, val] = validation_split(d, 0.05, 2);
    CHECK(val.n >= 1);
    train.require_both_classes();
}

TEST_CASE("validation split is deterministic per seed") {
    Dataset d = testing::make_blobs(30, 20, 2, 1.0, 8);
    auto [t1, v1] = validation_split(d, 0.2, 5);
    auto [t2, v2] = validation_split(d, 0.2, 5);
    CHECK(t1.features == t2.features);
    CHECK(v1.labels == v2.labels);
}

TEST_CASE("dataset rejects non-finite features and bad labels") {
    CHECK_THROWS_AS(Dataset(1, 1, {std::numeric_limits<double>::quiet_NaN()}, {1}),
                    input_error);
    CHECK_THROWS_AS(Dataset(1, 1, {0.0}, {2}), input_error);
}
