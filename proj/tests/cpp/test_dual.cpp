#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sklr/dual.hpp"
#include "sklr/errors.hpp"
#include "sklr/oracle.hpp"
#include "sklr/rng.hpp"
#include "sklr/solver.hpp"
#include "cpp/helpers.hpp"

using namespace sklr;

TEST_CASE("entropy term values and symmetry") {
    CHECK(entropy_G(0.5) == doctest::Approx(-std::log(2.0)));
    CHECK(entropy_G(0.25) == doctest::Approx(0.25 * std::log(0.25) + 0.75 * std::log(0.75)));
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        const double d = rng.uniform(1e-6, 1.0 - 1e-6);
        CHECK(entropy_G(d) == doctest::Approx(entropy_G(1.0 - d)).epsilon(1e-12));
        CHECK(entropy_G(d) < 0.0);
        CHECK(entropy_G(d) >= -std::log(2.0) - 1e-15);
    }
    CHECK_THROWS_AS(entropy_G(0.0), std::domain_error);
    CHECK_THROWS_AS(entropy_G(1.0), std::domain_error);
}

TEST_CASE("entropy derivative is the logit") {
    CHECK(entropy_Gp(0.5) == 0.0);
    CHECK(entropy_Gp(0.9) == doctest::Approx(std::log(9.0)));
    Rng rng(2);
    for (int i = 0; i < 100; ++i) {
        const double d = rng.uniform(1e-4, 1.0 - 1e-4);
        CHECK(entropy_Gp(d) == doctest::Approx(-entropy_Gp(1.0 - d)).epsilon(1e-10));
    }
    CHECK_THROWS_AS(entropy_Gp(-0.1), std::domain_error);
}

TEST_CASE("entropy second derivative is at least 4") {
    CHECK(entropy_Gpp(0.5) == doctest::Approx(4.0));
    CHECK(entropy_Gpp(0.1) == doctest::Approx(1.0 / 0.09));
    Rng rng(3);
    for (int i = 0; i < 1000; ++i)
        CHECK(entropy_Gpp(rng.uniform(1e-6, 1.0 - 1e-6)) >= 4.0);
    CHECK_THROWS_AS(entropy_Gpp(1.5), std::domain_error);
}

TEST_CASE("entropy_G_diff matches the direct difference") {
    Rng rng(4);
    for (int i = 0; i < 200; ++i) {
        const double d = rng.uniform(0.05, 0.95);
        const double head = rng.uniform(-0.04, 0.04);
        CHECK(entropy_G_diff(d, head) ==
              doctest::Approx(entropy_G(d + head) - entropy_G(d)).epsilon(1e-9));
    }
}

namespace {

// two-point instance with y = (+1,-1); the points sit far apart, so the
// gaussian kernel matrix is numerically the identity
struct TwoPoint {
    Dataset d;
    KernelCache cache;
    Hyperparams h;

    explicit TwoPoint(double C, double lambda = 0.0)
        : d(2, 1, {0.0, 1000.0}, {+1, -1}), cache(KernelSpec::gaussian(1.0), d) {
        h.C = C;
        h.lambda = lambda;
    }

    DualState state(double a1, double a2) { return make_state(d, cache, {a1, a2}, h); }
};

} // namespace

TEST_CASE("objective matches the hand value on the identity-kernel instance") {
    const double C = 2.0;
    TwoPoint tp(C);
    DualState s = tp.state(C / 2, C / 2);
    CHECK(objective(s, tp.h) ==
          doctest::Approx(C * C / 4.0 - 2.0 * C * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("lambda enters the objective linearly") {
    Dataset d = testing::random_instance(12, 2, 31);
    KernelCache cache(KernelSpec::gaussian(1.0), d);
    Hyperparams h0;
    h0.C = 3.0;
    std::vector<double> alpha = init_alpha(d, h0);
    double sum = 0.0;
    for (double a : alpha) sum += a;

    DualState s = make_state(d, cache, alpha, h0);
    Hyperparams h1 = h0;
    h1.lambda = 1.0;
    CHECK(objective(s, h1) - objective(s, h0) == doctest::Approx(-sum).epsilon(1e-12));
}

TEST_CASE("a lambda increase shifts every gradient component down by the same amount") {
    Dataset d = testing::random_instance(10, 2, 32);
    KernelCache cache(KernelSpec::gaussian(1.0), d);
    Hyperparams h;
    h.C = 2.0;
    DualState s = make_state(d, cache, init_alpha(d, h), h);
    Hyperparams h2 = h;
    h2.lambda = 0.7;
    for (std::size_t i = 0; i < d.n; ++i)
        CHECK(gradient_component(s, h, i) - gradient_component(s, h2, i) ==
              doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("gradient components agree with central differences of the free objective") {
    Dataset d = testing::random_instance(8, 2, 33);
    KernelCache cache(KernelSpec::gaussian(1.0), d);
    Hyperparams h;
    h.C = 1.0;
    h.lambda = 0.1;
    Rng rng(5);
    std::vector<double> alpha(d.n);
    for (auto& a : alpha) a = rng.uniform(0.2, 0.8);
    // make_state requires box feasibility only; the equality constraint is
    // irrelevant for a pointwise derivative check
    DualState s = make_state(d, cache, alpha, h);
    const KernelSpec spec = KernelSpec::gaussian(1.0);
    const double eps = 1e-6;
    for (std::size_t i = 0; i < d.n; ++i) {
        auto plus = alpha, minus = alpha;
        plus[i] += eps;
        minus[i] -= eps;
        const double fd = (oracle_objective(d, spec, h, plus) -
                           oracle_objective(d, spec, h, minus)) / (2 * eps);
        CHECK(gradient_component(s, h, i) == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("gradient vanishes at alpha = C/2 when m cancels and lambda = 0") {
    // four points arranged so m_0 = 0 by symmetry: two identical positives
    // and two identical negatives at the same location
    Dataset d(4, 1, {0.5, 0.5, 0.5, 0.5}, {+1, +1, -1, -1});
    KernelCache cache(KernelSpec::gaussian(1.0), d);
    Hyperparams h;
    h.C = 2.0;
    DualState s = make_state(d, cache, {1.0, 1.0, 1.0, 1.0}, h);
    CHECK(s.m[0] == doctest::Approx(0.0));
    CHECK(gradient_component(s, h, 0) == doctest::Approx(0.0));
}

TEST_CASE("index sets: interior points belong to both") {
    Dataset d = testing::random_instance(10, 2, 34);
    KernelCache cache(KernelSpec::gaussian(1.0), d);
    Hyperparams h;
    h.C = 1.0;
    std::vector<double> alpha(d.n, 0.5);
    DualState s = make_state(d, cache, alpha, h);
    IndexSets sets = index_sets(s, h);
    CHECK(sets.up.size() == d.n);
    CHECK(sets.low.size() == d.n);
}

TEST_CASE("index sets at the exact bounds") {
    Dataset d(2, 1, {0.1, 0.9}, {+1, -1});
    KernelCache cache(KernelSpec::gaussian(1.0), d);
    Hyperparams h;
    h.C = 1.0;

    // alpha_0 = gamma exactly, y_0 = +1: in I_up, not in I_low
    DualState s = make_state(d, cache, {h.lo(), 0.5}, h);
    IndexSets sets = index_sets(s, h);
    CHECK(std::count(sets.up.begin(), sets.up.end(), 0u) == 1);
    CHECK(std::count(sets.low.begin(), sets.low.end(), 0u) == 0);

    // alpha_0 = C - gamma exactly, y_0 = +1: in I_low, not in I_up
    DualState s2 = make_state(d, cache, {h.hi(), 0.5}, h);
    IndexSets sets2 = index_sets(s2, h);
    CHECK(std::count(sets2.up.begin(), sets2.up.end(), 0u) == 0);
    CHECK(std::count(sets2.low.begin(), sets2.low.end(), 0u) == 1);
}

TEST_CASE("kkt residual is positive off-optimum and permutation invariant") {
    Dataset d = testing::random_instance(9, 2, 35);
    KernelCache cache(KernelSpec::gaussian(1.0), d);
    Hyperparams h;
    h.C = 1.0;
    DualState s = make_state(d, cache, init_alpha(d, h), h);
    const double r = kkt_residual(s, h);
    CHECK(r > 0.0);

    // permute the data points; the residual is a set quantity
    std::vector<std::size_t> perm(d.n);
    for (std::size_t i = 0; i < d.n; ++i) perm[i] = d.n - 1 - i;
    Dataset dp = d.subset(perm);
    KernelCache cache_p(KernelSpec::gaussian(1.0), dp);
    std::vector<double> alpha_p(d.n);
    for (std::size_t i = 0; i < d.n; ++i) alpha_p[i] = s.alpha[perm[i]];
    DualState sp = make_state(dp, cache_p, alpha_p, h);
    CHECK(kkt_residual(sp, h) == doctest::Approx(r).epsilon(1e-12));
}

TEST_CASE("unbalanced two-point state has a positive residual") {
    TwoPoint tp(1.0);
    DualState s = tp.state(0.7, 0.2);
    CHECK(kkt_residual(s, tp.h) > 0.0);
}

TEST_CASE("cached m stays consistent with a from-scratch recomputation") {
    Dataset d = testing::random_instance(15, 3, 36);
    KernelCache cache(KernelSpec::gaussian(1.0), d);
    Hyperparams h;
    h.C = 2.0;
    DualState s = make_state(d, cache, init_alpha(d, h), h);
    SolveReport rep = smo_train(s, h);
    CHECK(rep.termination == Termination::converged);

    std::vector<double> cached = s.m;
    s.refresh(h);
    for (std::size_t i = 0; i < d.n; ++i)
        CHECK(cached[i] == doctest::Approx(s.m[i]).epsilon(1e-8));
}

TEST_CASE("strict midpoint convexity of the objective") {
    Dataset d = testing::random_instance(10, 2, 37);
    KernelCache cache(KernelSpec::gaussian(1.0), d);
    Hyperparams h;
    h.C = 1.0;
    h.lambda = 0.05;
    Rng rng(6);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> a(d.n), b(d.n), mid(d.n);
        for (std::size_t i = 0; i < d.n; ++i) {
            a[i] = rng.uniform(0.1, 0.9);
            b[i] = rng.uniform(0.1, 0.9);
            mid[i] = 0.5 * (a[i] + b[i]);
        }
        if (a == b) continue;
        DualState sa = make_state(d, cache, a, h);
        DualState sb = make_state(d, cache, b, h);
        DualState sm = make_state(d, cache, mid, h);
        CHECK(objective(sm, h) <
              0.5 * (objective(sa, h) + objective(sb, h)) + 1e-12);
    }
}

TEST_CASE("entropy part of the objective stays in its analytic range") {
    Dataset d = testing::random_instance(12, 2, 38);
    KernelCache cache(KernelSpec::gaussian(1.0), d);
    Hyperparams h;
    h.C = 1.5;
    Rng rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> a(d.n);
        for (auto& v : a) v = rng.uniform(h.lo(), h.hi());
        double ent = 0.0;
        for (double v : a) ent += entropy_G(v / h.C);
        ent *= h.C;
        CHECK(ent >= -h.C * static_cast<double>(d.n) * std::log(2.0) - 1e-12);
        CHECK(ent < 0.0);
    }
}
