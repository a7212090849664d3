#ifndef SKLR_DUAL_HPP
#define SKLR_DUAL_HPP

#include <cstddef>
#include <vector>

#include "sklr/dataset.hpp"
#include "sklr/kernel.hpp"

namespace sklr {

/// Solver hyperparameters. gamma is the margin of the auxiliary box
/// [gamma, C - gamma] that keeps the entropy term computable.
struct Hyperparams {
    double C = 1.0;
    double lambda = 0.0;
    double gamma = 1e-5;
    double kkt_tol = 1e-5;
    long max_iter = 10000;
    double selection_threshold = 1e-5;

    double lo() const { return gamma; }        // 0-bar
    double hi() const { return C - gamma; }    // C-bar

    /// Throws input_error if C <= 0, lambda < 0, kkt_tol <= 0 or gamma >= C/2.
    void validate() const;
};

// Entropy term G(d) = d log d + (1-d) log(1-d) and its derivatives.
// All three throw std::domain_error outside the open interval (0,1).
double entropy_G(double delta);
double entropy_Gp(double delta);   // log(d/(1-d)), strictly increasing
double entropy_Gpp(double delta);  // 1/(d(1-d)) >= 4

/// Accurate G(delta + h) - G(delta); both delta and delta+h in (0,1).
/// Uses log1p so the result keeps full relative accuracy for small h,
/// which the sufficient-decrease audit depends on.
double entropy_G_diff(double delta, double h);

/// The solver's mutable core: the current alpha vector plus the cached
/// linear term m_s = sum_t alpha_t y_t K_st. Single-owner mutable.
struct DualState {
    const Dataset* data = nullptr;
    KernelCache* cache = nullptr;
    std::vector<double> alpha;
    std::vector<double> m;
    std::vector<double> gp;     // cached Gp(alpha_i / C)
    long iterations = 0;

    std::size_t size() const { return alpha.size(); }
    int y(std::size_t i) const { return data->labels[i]; }

    /// Builds m (and gp) from scratch; O(N^2) kernel accesses.
    void refresh(const Hyperparams& h);
};

/// Creates a state from a feasible alpha and computes the caches.
DualState make_state(const Dataset& d, KernelCache& cache,
                     std::vector<double> alpha, const Hyperparams& h);

/// f(alpha) = 1/2 sum_i alpha_i y_i m_i + C sum_i G(alpha_i/C) - lambda sum_i alpha_i.
double objective(const DualState& s, const Hyperparams& h);

/// grad f(alpha)_i = y_i m_i + Gp(alpha_i/C) - lambda.
double gradient_component(const DualState& s, const Hyperparams& h, std::size_t i);

struct IndexSets {
    std::vector<std::size_t> up;
    std::vector<std::size_t> low;
};

/// Strict comparisons against the box bounds; interior points land in both sets.
IndexSets index_sets(const DualState& s, const Hyperparams& h);

/// max over I_up of -y grad f minus min over I_low of the same; <= kkt_tol
/// means optimal. Throws contract_error when either set is empty.
double kkt_residual(const DualState& s, const Hyperparams& h);

} // namespace sklr

#endif
