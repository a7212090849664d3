#ifndef SKLR_SOLVER_HPP
#define SKLR_SOLVER_HPP

#include <string>
#include <vector>

#include "sklr/dual.hpp"
#include "sklr/wss.hpp"

namespace sklr {

enum class Termination { converged, max_iter };

struct SolveReport {
    long iterations = 0;
    double kkt_residual_final = 0.0;
    double objective_final = 0.0;
    Termination termination = Termination::converged;
    double wall_time = 0.0;            // seconds
    WssKind wss_kind = WssKind::second_order;
    long decrease_audit_violations = 0;

    std::string termination_name() const {
        return termination == Termination::converged ? "converged" : "max_iter";
    }
};

/// Feasible starting point: alpha_i = 1/n_class when both class values fit
/// in [gamma, C-gamma]; otherwise the majority class starts at gamma and the
/// minority at gamma * n_maj / n_min. Either way sum alpha_i y_i = 0 exactly.
std::vector<double> init_alpha(const Dataset& d, const Hyperparams& h);

struct SmoOptions {
    WssKind wss = WssKind::second_order;
    bool audit = false;   // assert the sufficient-decrease inequality per step
};

/// The SMO loop: select a violating pair, solve the 1-D subproblem, update
/// alpha and the cached linear term via two kernel rows, repeat until the
/// KKT residual is <= kkt_tol or max_iter is hit. Convergence is declared
/// only after the residual is re-verified on a from-scratch gradient.
SolveReport smo_train(DualState& s, const Hyperparams& h, const SmoOptions& opt = {});

/// Convenience: build cache + state + run. The cache must outlive the state.
DualState smo_train(const Dataset& d, KernelCache& cache, const Hyperparams& h,
                    SolveReport& report, const SmoOptions& opt = {});

} // namespace sklr

#endif
