#ifndef SKLR_MODEL_HPP
#define SKLR_MODEL_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sklr/dataset.hpp"
#include "sklr/dual.hpp"
#include "sklr/kernel.hpp"

namespace sklr {

/// Sparse prediction artifact: the points whose alpha survived the selection
/// threshold, their coefficients beta_i = alpha_i y_i, the intercept and the
/// preprocessing needed to score raw feature vectors.
struct TrainedModel {
    static constexpr int kSchemaVersion = 1;

    KernelSpec kernel;
    ScalingParams scaling;
    std::vector<std::vector<double>> support_points;  // scaled coordinates
    std::vector<double> coefficients;                 // beta_i = alpha_i * y_i
    double intercept = 0.0;
    Hyperparams hyperparams;
    double selection_ratio = 0.0;
    std::size_t n_train = 0;
    bool converged = true;
};

struct PrimalDiagnostics {
    double omega_norm_sq = 0.0;
    double rho_recovered = 0.0;
    double b_recovered = 0.0;
    double rho_residual = 0.0;   // max deviation over i of the recovered system
};

/// Intercept of the decision function sum_i beta_i K(x_i, x) - b, recovered
/// from the KKT interval of the -y grad f values. At a tol-converged state
/// the interval width is <= kkt_tol, so its midpoint is accurate to that
/// tolerance. (The interval brackets the multiplier of the equality
/// constraint, which equals minus the decision-function intercept.)
double compute_intercept(const DualState& s, const Hyperparams& h);

/// Keeps exactly the points with alpha_i > selection_threshold. A model with
/// zero support points is still valid and predicts from the intercept alone.
TrainedModel finalize(const Dataset& d, const DualState& s, const Hyperparams& h,
                      const ScalingParams& scaling);

/// Applies scaling, then sum_i beta_i Ker(x_i, x) - b.
double decision_value(const TrainedModel& m, std::span<const double> x_raw);

/// P(+1 | x) through a saturation-safe sigmoid.
double predict_proba(const TrainedModel& m, std::span<const double> x_raw);

double stable_sigmoid(double z);

/// Least-squares recovery of (rho, b) from the stationarity system
/// rho - y_i m_i + y_i b = Gp(alpha_i/C); at a converged state rho == lambda.
PrimalDiagnostics primal_diagnostics(const DualState& s, const Hyperparams& h);

void save_model(const TrainedModel& m, const std::string& path);
TrainedModel load_model(const std::string& path);

std::string model_to_json(const TrainedModel& m);
TrainedModel model_from_json(const std::string& text);

} // namespace sklr

#endif
