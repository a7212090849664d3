#include <doctest.h>

#include <cmath>
#include <vector>

#include "sklr/errors.hpp"
#include "sklr/kernel.hpp"
#include "cpp/helpers.hpp"

using namespace sklr;

TEST_CASE("gaussian kernel values") {
    auto g = KernelSpec::gaussian(1.0);
    std::vector<double> a{0.3, 0.7}, b{0.3, 0.7};
    CHECK(kernel_eval(g, a, b) == doctest::Approx(1.0));

    // squared distance 2 -> exp(-1)
    std::vector<double> c{0.0, 0.0}, e{1.0, 1.0};
    CHECK(kernel_eval(g, c, e) == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("linear and polynomial kernels") {
    std::vector<double> a{1, 2}, b{3, 4};
    CHECK(kernel_eval(KernelSpec::linear(), a, b) == doctest::Approx(11.0));
    CHECK(kernel_eval(KernelSpec::polynomial(2, 1.0), a, b) == doctest::Approx(144.0));
}

TEST_CASE("kernel dimension mismatch throws") {
    std::vector<double> a{1, 2}, b{3};
    CHECK_THROWS_AS(kernel_eval(KernelSpec::linear(), a, b), input_error);
}

TEST_CASE("invalid kernel parameters are rejected") {
    CHECK_THROWS_AS(KernelSpec::gaussian(0.0), input_error);
    CHECK_THROWS_AS(KernelSpec::polynomial(0, 1.0), input_error);
}

TEST_CASE("full cache is symmetric and has a unit gaussian diagonal") {
    Dataset d = testing::random_instance(40, 3, 17);
    KernelCache cache(KernelSpec::gaussian(1.0), d);
    REQUIRE(cache.full_mode());
    for (std::size_t i = 0; i < d.n; ++i) {
        CHECK(cache.diag(i) == 1.0);
        auto ri = cache.row(i);
        CHECK(ri[i] == cache.diag(i));
        for (std::size_t j = 0; j < i; ++j)
            CHECK(ri[j] == cache.row(j)[i]);  // exact bit equality
    }
}

TEST_CASE("LRU mode returns the same rows as full mode, bit for bit") {
    Dataset d = testing::random_instance(30, 2, 23);
    KernelCache full(KernelSpec::gaussian(0.7), d, /*full_threshold=*/100);
    KernelCache lru(KernelSpec::gaussian(0.7), d, /*full_threshold=*/4);
    REQUIRE(!lru.full_mode());
    for (std::size_t i = 0; i < d.n; ++i) {
        auto a = full.row(i);
        auto b = lru.row(i);
        for (std::size_t j = 0; j < d.n; ++j) CHECK(a[j] == b[j]);
    }
}

TEST_CASE("LRU cache hits are observable") {
    Dataset d = testing::random_instance(20, 2, 5);
    KernelCache lru(KernelSpec::gaussian(1.0), d, /*full_threshold=*/4);
    lru.row(3);
    CHECK(lru.misses() == 1);
    lru.row(3);
    CHECK(lru.hits() == 1);
    // evict by touching more rows than the capacity
    for (std::size_t i = 0; i < d.n; ++i) lru.row(i);
    CHECK(lru.misses() > 1);
}

TEST_CASE("gaussian matrices are numerically PSD on small samples") {
    // smallest eigenvalue by power iteration on s*I - K, with s a Gershgorin
    // upper bound on the largest eigenvalue
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        Dataset d = testing::random_instance(25 + 5 * seed, 3, seed);
        KernelCache cache(KernelSpec::gaussian(1.0), d);
        const std::size_t n = d.n;
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double row_sum = 0.0;
            const auto row = cache.row(i);
            for (std::size_t j = 0; j < n; ++j) row_sum += std::abs(row[j]);
            s = std::max(s, row_sum);
        }
        Rng rng(seed * 77 + 1);
        std::vector<double> x(n), next(n);
        for (auto& v : x) v = rng.gaussian();
        double mu = 0.0;
        for (int it = 0; it < 300; ++it) {
            double norm = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double acc = s * x[i];
                const auto row = cache.row(i);
                for (std::size_t j = 0; j < n; ++j) acc -= row[j] * x[j];
                next[i] = acc;
                norm += acc * acc;
            }
            norm = std::sqrt(norm);
            mu = norm;
            for (std::size_t i = 0; i < n; ++i) x[i] = next[i] / norm;
        }
        const double lambda_min = s - mu;
        CHECK(lambda_min >= -1e-8);
    }
}
