#ifndef SKLR_DATASET_HPP
#define SKLR_DATASET_HPP

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sklr {

/// Feature matrix plus +/-1 labels. Immutable after construction.
struct Dataset {
    std::size_t n = 0;                 // number of data points
    std::size_t p = 0;                 // number of features
    std::vector<double> features;      // row-major, n * p
    std::vector<int> labels;           // entries in {-1, +1}
    std::size_t n_pos = 0;
    std::size_t n_neg = 0;

    Dataset() = default;
    Dataset(std::size_t n_, std::size_t p_, std::vector<double> x, std::vector<int> y);

    std::span<const double> row(std::size_t i) const {
        return {features.data() + i * p, p};
    }

    /// Throws input_error unless both classes are present (training precondition).
    void require_both_classes() const;

    Dataset subset(const std::vector<std::size_t>& idx) const;
};

/// Per-feature min/max fitted on training data; maps features into [0,1].
struct ScalingParams {
    std::vector<double> min;
    std::vector<double> max;
};

/// Stratified k-fold assignment.
struct FoldPlan {
    int k = 0;
    std::vector<int> assignments;      // fold index in [0, k) per data point
    std::uint64_t seed = 0;

    std::vector<std::size_t> fold_indices(int fold) const;
    std::vector<std::size_t> complement_indices(int fold) const;
};

/// Loads a CSV with a header row. The label column may be given by name or by
/// 0-based index; it must contain exactly two distinct values, the smaller of
/// which (numeric order when both parse as numbers, byte order otherwise)
/// maps to -1 and the larger to +1. Row order is preserved.
Dataset load_csv(const std::string& path, const std::string& label_column);

ScalingParams fit_scaling(const Dataset& d);

/// scaled = (x - min) / (max - min); a constant feature maps to 0.
/// Out-of-range values at prediction time are not clipped.
Dataset apply_scaling(const Dataset& d, const ScalingParams& s);
void apply_scaling_row(std::span<const double> x, const ScalingParams& s,
                       std::vector<double>& out);

/// Deterministic stratified k-fold split; per-class fold sizes differ by <= 1.
FoldPlan stratified_kfold(const Dataset& d, int k, std::uint64_t seed);

/// Stratified train/validation split with |val| = round(fraction * N).
/// Both classes are kept in the validation part when its size allows; the
/// train part must retain both classes or the call fails.
std::pair<Dataset, Dataset> validation_split(const Dataset& d, double fraction,
                                             std::uint64_t seed);

} // namespace sklr

#endif
