#ifndef SKLR_ORACLE_HPP
#define SKLR_ORACLE_HPP

#include <vector>

#include "sklr/dataset.hpp"
#include "sklr/dual.hpp"
#include "sklr/kernel.hpp"

namespace sklr {

// Reference solvers for small instances, independent of the SMO path.
// They solve the box-free problem (the true optimum is strictly interior),
// so agreement with the boxed SMO answer is up to the gamma margin.

struct OracleSolution {
    std::vector<double> alpha;
    double psi = 0.0;            // multiplier of the equality constraint
    double kkt_norm = 0.0;       // final infinity norm of the residual F
    int newton_iterations = 0;
};

/// Damped Newton on F(alpha, psi) = (grad f + psi y, y^T alpha) = 0 with the
/// line search keeping alpha strictly inside (0, C)^N. Dense linear algebra;
/// intended for N <= 200. Throws contract_error on non-convergence.
OracleSolution kkt_newton_solve(const Dataset& d, const KernelSpec& kernel,
                                const Hyperparams& h);

/// Two opposite-label points: the constraint forces alpha_1 = alpha_2 = a,
/// found by golden-section minimization of the reduced objective to 1e-10.
std::vector<double> reduced_1d_oracle(const Dataset& d, const KernelSpec& kernel,
                                      const Hyperparams& h);

/// Objective of the box-free problem at an arbitrary point in (0,C)^N
/// (ignores the equality constraint; used by finite-difference checks).
double oracle_objective(const Dataset& d, const KernelSpec& kernel,
                        const Hyperparams& h, const std::vector<double>& alpha);

} // namespace sklr

#endif
