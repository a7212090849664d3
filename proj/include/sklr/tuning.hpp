#ifndef SKLR_TUNING_HPP
#define SKLR_TUNING_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sklr/dataset.hpp"
#include "sklr/dual.hpp"
#include "sklr/kernel.hpp"
#include "sklr/model.hpp"
#include "sklr/solver.hpp"

namespace sklr {

struct GridCell {
    int fold = 0;
    double C = 1.0;
    double lambda = 0.0;
    double val_accuracy = 0.0;
    double test_accuracy = -1.0;   // filled for the retrained cell only
    double selection_ratio = 0.0;
    long iterations = 0;
    double seconds = 0.0;
    bool converged = true;
};

struct FoldOutcome {
    double C = 0.0;
    double lambda = 0.0;
    double test_accuracy = 0.0;
    double selection_ratio = 0.0;
};

struct CvResult {
    std::vector<GridCell> cells;        // every evaluated (fold, C, lambda)
    std::vector<FoldOutcome> folds;     // chosen cell + holdout score per fold
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0;          // population std over folds
    double mean_selection_ratio = 0.0;
    std::string selection_rule;
};

enum class SelectionRule { best_accuracy, sparsest_of_top3 };

enum class LambdaMode { grid, choice, fixed };

struct GridSearchConfig {
    KernelSpec kernel;
    Hyperparams base;                  // gamma/tol/max_iter/threshold defaults
    std::vector<double> c_values;      // defaults to c_grid()
    LambdaMode lambda_mode = LambdaMode::grid;
    double fixed_lambda = 0.0;         // used when lambda_mode == fixed
    int n_lambda = 10;
    SelectionRule rule = SelectionRule::best_accuracy;
    double val_fraction = 0.05;
    int threads = 1;
    WssKind wss = WssKind::second_order;
};

/// {10^r : -4 <= r <= 4}.
std::vector<double> c_grid();

/// n equally spaced values on [0, C], endpoints included.
std::vector<double> lambda_grid(double C, int n = 10);

/// The lambda-choice heuristic, lambda = C/10.
double lambda_choice(double C);

/// Saturation threshold from the lambda = 0 solution alpha0:
/// max over the minority class (every point when classes are balanced) of
/// sum_j (C-bar - alpha0_j) y_j K_ji, on the problem relabeled so the
/// minority class is the -1 class. Requires gamma < C - max minority alpha0.
double lambda_upper_bound(const Dataset& d, const KernelSpec& kernel, double C,
                          double gamma, const std::vector<double>& alpha0);

struct SaturationDiag {
    double sum_alpha = 0.0;
    double limit = 0.0;   // 2 C n_min
};

/// Solves at h.lambda and reports sum alpha_i against the large-lambda limit.
SaturationDiag saturation_diagnostic(const Dataset& d, const KernelSpec& kernel,
                                     const Hyperparams& h);

/// Per-fold protocol: carve a validation set from the training part, score
/// every grid cell on it, pick by the selection rule, retrain on the whole
/// training part, evaluate on the held-out fold.
CvResult kfold_grid_search(const Dataset& d, int k_folds, const GridSearchConfig& cfg,
                           std::uint64_t seed);

/// Among the 3 highest-accuracy cells (fewer if less than 3 exist), the one
/// with the lowest selection ratio; ties by higher accuracy, then smaller
/// lambda, then smaller C.
GridCell sparsest_of_top3(const std::vector<GridCell>& cells);

GridCell pick_cell(const std::vector<GridCell>& cells, SelectionRule rule);

/// Accuracy of a model over a labeled dataset (raw, unscaled features).
double evaluate_accuracy(const TrainedModel& m, const Dataset& d);

} // namespace sklr

#endif
