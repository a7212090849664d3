#include "sklr/tuning.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "sklr/errors.hpp"

namespace sklr {

std::vector<double> c_grid() {
    std::vector<double> g;
    for (int r = -4; r <= 4; ++r) g.push_back(std::pow(10.0, r));
    return g;
}

std::vector<double> lambda_grid(double C, int n) {
    if (!(C > 0.0)) throw input_error("lambda grid: C must be > 0");
    if (n < 2) throw input_error("lambda grid: need at least 2 values");
    std::vector<double> g(n);
    for (int k = 0; k < n; ++k)
        g[k] = C * static_cast<double>(k) / static_cast<double>(n - 1);
    return g;
}

double lambda_choice(double C) { return C / 10.0; }

double lambda_upper_bound(const Dataset& d, const KernelSpec& kernel, double C,
                          double gamma, const std::vector<double>& alpha0) {
    if (alpha0.size() != d.n) throw input_error("lambda bound: alpha0 size mismatch");
    d.require_both_classes();

    // relabel so the minority class plays the role of the -1 class; with
    // balanced classes the bound ranges over every data point
    const bool balanced = d.n_pos == d.n_neg;
    const int minority_label = d.n_neg <= d.n_pos ? -1 : +1;
    const double flip = minority_label == -1 ? 1.0 : -1.0;
    const double c_bar = C - gamma;

    double max_minority_alpha = 0.0;
    for (std::size_t i = 0; i < d.n; ++i)
        if (balanced || d.labels[i] == minority_label)
            max_minority_alpha = std::max(max_minority_alpha, alpha0[i]);
    if (!(gamma < C - max_minority_alpha))
        throw input_error("lambda bound: gamma=" + std::to_string(gamma) +
                          " violates gamma < C - max alpha0 (max alpha0 = " +
                          std::to_string(max_minority_alpha) + ")");

    double bound = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < d.n; ++i) {
        if (!balanced && d.labels[i] != minority_label) continue;
        double sum = 0.0;
        const auto xi = d.row(i);
        for (std::size_t j = 0; j < d.n; ++j)
            sum += (c_bar - alpha0[j]) * (flip * d.labels[j]) *
                   kernel_eval(kernel, d.row(j), xi);
        bound = std::max(bound, sum);
    }
    return bound;
}

SaturationDiag saturation_diagnostic(const Dataset& d, const KernelSpec& kernel,
                                     const Hyperparams& h) {
    KernelCache cache(kernel, d);
    SolveReport rep;
    DualState s = smo_train(d, cache, h, rep);
    SaturationDiag diag;
    for (double a : s.alpha) diag.sum_alpha += a;
    diag.limit = 2.0 * h.C * static_cast<double>(std::min(d.n_pos, d.n_neg));
    return diag;
}

GridCell sparsest_of_top3(const std::vector<GridCell>& cells) {
    if (cells.empty()) throw input_error("cell selection: empty grid");
    std::vector<std::size_t> order(cells.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return cells[a].val_accuracy > cells[b].val_accuracy;
    });
    const std::size_t top = std::min<std::size_t>(3, order.size());
    std::size_t best = order[0];
    for (std::size_t k = 1; k < top; ++k) {
        const GridCell& cand = cells[order[k]];
        const GridCell& cur = cells[best];
        if (cand.selection_ratio < cur.selection_ratio ||
            (cand.selection_ratio == cur.selection_ratio &&
             (cand.val_accuracy > cur.val_accuracy ||
              (cand.val_accuracy == cur.val_accuracy &&
               (cand.lambda < cur.lambda ||
                (cand.lambda == cur.lambda && cand.C < cur.C))))))
            best = order[k];
    }
    return cells[best];
}

GridCell pick_cell(const std::vector<GridCell>& cells, SelectionRule rule) {
    if (cells.empty()) throw input_error("cell selection: empty grid");
    if (rule == SelectionRule::sparsest_of_top3) return sparsest_of_top3(cells);
    std::size_t best = 0;
    for (std::size_t k = 1; k < cells.size(); ++k) {
        const GridCell& cand = cells[k];
        const GridCell& cur = cells[best];
        if (cand.val_accuracy > cur.val_accuracy ||
            (cand.val_accuracy == cur.val_accuracy &&
             (cand.selection_ratio < cur.selection_ratio ||
              (cand.selection_ratio == cur.selection_ratio &&
               (cand.lambda < cur.lambda ||
                (cand.lambda == cur.lambda && cand.C < cur.C))))))
            best = k;
    }
    return cells[best];
}

double evaluate_accuracy(const TrainedModel& m, const Dataset& d) {
    if (d.n == 0) throw input_error("evaluate: empty dataset");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < d.n; ++i) {
        const double dec = decision_value(m, d.row(i));
        const int pred = dec >= 0.0 ? +1 : -1;
        if (pred == d.labels[i]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(d.n);
}

namespace {

std::vector<double> lambdas_for(const GridSearchConfig& cfg, double C) {
    switch (cfg.lambda_mode) {
        case LambdaMode::grid: return lambda_grid(C, cfg.n_lambda);
        case LambdaMode::choice: return {lambda_choice(C)};
        case LambdaMode::fixed: return {cfg.fixed_lambda};
    }
    return {};
}

struct CellJob {
    int fold;
    double C;
    double lambda;
};

// trains on the scaled fit part, scores on raw validation features
GridCell run_cell(const CellJob& job, const Dataset& train_scaled,
                  const ScalingParams& scaling, KernelCache& cache, const Dataset& val_raw,
                  const GridSearchConfig& cfg) {
    Hyperparams h = cfg.base;
    h.C = job.C;
    h.lambda = job.lambda;

    SolveReport rep;
    DualState s = make_state(train_scaled, cache, init_alpha(train_scaled, h), h);
    rep = smo_train(s, h, {cfg.wss, false});

    TrainedModel model = finalize(train_scaled, s, h, scaling);
    model.converged = rep.termination == Termination::converged;

    GridCell cell;
    cell.fold = job.fold;
    cell.C = job.C;
    cell.lambda = job.lambda;
    cell.val_accuracy = evaluate_accuracy(model, val_raw);
    cell.selection_ratio = model.selection_ratio;
    cell.iterations = rep.iterations;
    cell.seconds = rep.wall_time;
    cell.converged = rep.termination == Termination::converged;
    return cell;
}

} // namespace

CvResult kfold_grid_search(const Dataset& d, int k_folds, const GridSearchConfig& cfg,
                           std::uint64_t seed) {
    d.require_both_classes();
    const std::vector<double> cs = cfg.c_values.empty() ? c_grid() : cfg.c_values;
    const FoldPlan plan = stratified_kfold(d, k_folds, seed);

    CvResult result;
    result.selection_rule =
        cfg.rule == SelectionRule::best_accuracy ? "best_accuracy" : "sparsest_of_top3";

    for (int fold = 0; fold < k_folds; ++fold) {
        const Dataset holdout = d.subset(plan.fold_indices(fold));
        const Dataset training = d.subset(plan.complement_indices(fold));
        auto [fit_part_raw, val_raw] =
            validation_split(training, cfg.val_fraction, seed + 1000003ULL * (fold + 1));

        const ScalingParams scaling = fit_scaling(fit_part_raw);
        const Dataset fit_part = apply_scaling(fit_part_raw, scaling);

        std::vector<CellJob> jobs;
        for (double C : cs)
            for (double lam : lambdas_for(cfg, C)) jobs.push_back({fold, C, lam});

        std::vector<GridCell> cells(jobs.size());
        const int threads = std::max(1, cfg.threads);
        const bool full = fit_part.n <= KernelCache::kDefaultFullThreshold;
        if (threads == 1 || jobs.size() <= 1) {
            KernelCache cache(cfg.kernel, fit_part);
            for (std::size_t c = 0; c < jobs.size(); ++c)
                cells[c] = run_cell(jobs[c], fit_part, scaling, cache, val_raw, cfg);
        } else if (full) {
            // read-only after construction, shareable across workers
            KernelCache cache(cfg.kernel, fit_part);
            std::vector<std::thread> pool;
            std::atomic<std::size_t> next{0};
            for (int w = 0; w < threads; ++w) {
                pool.emplace_back([&]() {
                    for (;;) {
                        const std::size_t c = next.fetch_add(1);
                        if (c >= jobs.size()) break;
                        cells[c] = run_cell(jobs[c], fit_part, scaling, cache, val_raw, cfg);
                    }
                });
            }
            for (auto& t : pool) t.join();
        } else {
            // LRU caches are single-consumer; one per worker
            std::vector<std::thread> pool;
            std::atomic<std::size_t> next{0};
            for (int w = 0; w < threads; ++w) {
                pool.emplace_back([&]() {
                    KernelCache cache(cfg.kernel, fit_part);
                    for (;;) {
                        const std::size_t c = next.fetch_add(1);
                        if (c >= jobs.size()) break;
                        cells[c] = run_cell(jobs[c], fit_part, scaling, cache, val_raw, cfg);
                    }
                });
            }
            for (auto& t : pool) t.join();
        }
        result.cells.insert(result.cells.end(), cells.begin(), cells.end());

        // retrain the chosen cell on the entire training part
        const GridCell chosen = pick_cell(cells, cfg.rule);
        Hyperparams h = cfg.base;
        h.C = chosen.C;
        h.lambda = chosen.lambda;
        const ScalingParams full_scaling = fit_scaling(training);
        const Dataset training_scaled = apply_scaling(training, full_scaling);
        KernelCache cache(cfg.kernel, training_scaled);
        SolveReport rep;
        DualState s = make_state(training_scaled, cache, init_alpha(training_scaled, h), h);
        rep = smo_train(s, h, {cfg.wss, false});
        TrainedModel model = finalize(training_scaled, s, h, full_scaling);
        model.converged = rep.termination == Termination::converged;

        FoldOutcome out;
        out.C = chosen.C;
        out.lambda = chosen.lambda;
        out.test_accuracy = evaluate_accuracy(model, holdout);
        out.selection_ratio = model.selection_ratio;
        result.folds.push_back(out);
    }

    double acc = 0.0, ratio = 0.0;
    for (const auto& f : result.folds) {
        acc += f.test_accuracy;
        ratio += f.selection_ratio;
    }
    const double k = static_cast<double>(result.folds.size());
    result.mean_accuracy = acc / k;
    result.mean_selection_ratio = ratio / k;
    double var = 0.0;
    for (const auto& f : result.folds) {
        const double dlt = f.test_accuracy - result.mean_accuracy;
        var += dlt * dlt;
    }
    result.std_accuracy = std::sqrt(var / k);
    return result;
}

} // namespace sklr
