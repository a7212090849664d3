#ifndef SKLR_SUBPROBLEM_HPP
#define SKLR_SUBPROBLEM_HPP

#include <cstddef>

#include "sklr/dual.hpp"

namespace sklr {

/// Feasible steplength range for the pair update; always contains 0.
struct StepInterval {
    double t_lo = 0.0;
    double t_hi = 0.0;
};

/// Intersection of the two box constraints on
/// alpha_i + t*y_i and alpha_j - t*y_j.
StepInterval step_interval(double alpha_i, double alpha_j, int y_i, int y_j,
                           const Hyperparams& h);

struct PhiDerivs {
    double phi1 = 0.0;   // phi'(t)
    double phi2 = 0.0;   // phi''(t), >= 8/C
};

/// First and second derivative of the 1-D restriction phi at steplength t.
/// Both shifted alphas must stay strictly inside (0, C); the caller clips t
/// to the StepInterval first.
PhiDerivs phi_derivs(const DualState& s, const Hyperparams& h,
                     std::size_t i, std::size_t j, double t);

struct StepResult {
    double t = 0.0;
    int newton_iterations = 0;
};

/// Exact minimizer of phi over the step interval, to |phi'| <= 1e-10 when
/// interior. Requires a violating pair (phi'(0) < 0); anything else is a
/// solver-logic contract violation.
StepResult solve_1d(const DualState& s, const Hyperparams& h,
                    std::size_t i, std::size_t j);

/// Exact objective change f(alpha + step) - f(alpha) for the pair update,
/// evaluated without the full sum (used by the decrease audit).
double objective_delta(const DualState& s, const Hyperparams& h,
                       std::size_t i, std::size_t j, double t);

/// Same, for explicit per-coordinate changes (the solver's applied deltas
/// after clamping to the box).
double objective_delta_pair(const DualState& s, const Hyperparams& h,
                            std::size_t i, std::size_t j, double dai, double daj);

} // namespace sklr

#endif
