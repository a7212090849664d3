#ifndef SKLR_TEST_HELPERS_HPP
#define SKLR_TEST_HELPERS_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "sklr/dataset.hpp"
#include "sklr/rng.hpp"

namespace sklr::testing {

// Two overlapping gaussian blobs in [0,1]^p after min-max scaling; the
// workhorse dataset for solver and tuning tests.
inline Dataset make_blobs(std::size_t n_pos, std::size_t n_neg, std::size_t p,
                          double separation, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> x;
    std::vector<int> y;
    for (std::size_t i = 0; i < n_pos + n_neg; ++i) {
        const bool pos = i < n_pos;
        for (std::size_t f = 0; f < p; ++f) {
            const double center = pos ? separation : -separation;
            x.push_back((f == 0 ? center : 0.0) + rng.gaussian());
        }
        y.push_back(pos ? +1 : -1);
    }
    Dataset d(n_pos + n_neg, p, std::move(x), std::move(y));
    return apply_scaling(d, fit_scaling(d));
}

// Random points in [0,1]^p labeled by a random hyperplane with flip noise;
// classes overlap, which keeps the box-free optimum well inside (0, C).
inline Dataset random_instance(std::size_t n, std::size_t p, std::uint64_t seed,
                               double flip_prob = 0.15) {
    Rng rng(seed);
    for (;;) {
        std::vector<double> x(n * p);
        for (auto& v : x) v = rng.uniform();
        std::vector<double> w(p);
        for (auto& v : w) v = rng.gaussian();
        std::vector<int> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            double dot = 0.0, mid = 0.0;
            for (std::size_t f = 0; f < p; ++f) {
                dot += w[f] * x[i * p + f];
                mid += w[f] * 0.5;
            }
            y[i] = dot >= mid ? +1 : -1;
            if (rng.uniform() < flip_prob) y[i] = -y[i];
        }
        Dataset d(n, p, std::move(x), std::move(y));
        if (d.n_pos >= 2 && d.n_neg >= 2) return d;
    }
}

// Imbalanced variant used by the saturation and lambda-bound tests.
inline Dataset imbalanced_instance(std::size_t n_min, std::size_t n_maj, std::size_t p,
                                   std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> x;
    std::vector<int> y;
    for (std::size_t i = 0; i < n_min + n_maj; ++i) {
        const bool minority = i < n_min;
        for (std::size_t f = 0; f < p; ++f)
            x.push_back(rng.uniform() * 0.6 + (minority ? 0.4 : 0.0));
        y.push_back(minority ? -1 : +1);
    }
    return Dataset(n_min + n_maj, p, std::move(x), std::move(y));
}

} // namespace sklr::testing

#endif
