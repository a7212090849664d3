#include "sklr/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sklr/errors.hpp"
#include "sklr/rng.hpp"

namespace sklr {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        // trim surrounding whitespace and a trailing CR
        std::size_t b = field.find_first_not_of(" \t\r");
        std::size_t e = field.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

bool parse_double(const std::string& s, double& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

// round(x) with halves away from zero, used for split sizes
std::size_t round_count(double x) {
    return static_cast<std::size_t>(std::floor(x + 0.5));
}

} // namespace

Dataset::Dataset(std::size_t n_, std::size_t p_, std::vector<double> x, std::vector<int> y)
    : n(n_), p(p_), features(std::move(x)), labels(std::move(y)) {
    if (features.size() != n * p || labels.size() != n)
        throw input_error("dataset: inconsistent dimensions");
    for (double v : features)
        if (!std::isfinite(v)) throw input_error("dataset: non-finite feature value");
    for (int y_i : labels) {
        if (y_i == 1) ++n_pos;
        else if (y_i == -1) ++n_neg;
        else throw input_error("dataset: label outside {-1,+1}");
    }
}

void Dataset::require_both_classes() const {
    if (n_pos == 0 || n_neg == 0)
        throw input_error("dataset: training requires both classes present");
}

Dataset Dataset::subset(const std::vector<std::size_t>& idx) const {
    std::vector<double> x;
    x.reserve(idx.size() * p);
    std::vector<int> y;
    y.reserve(idx.size());
    for (std::size_t i : idx) {
        auto r = row(i);
        x.insert(x.end(), r.begin(), r.end());
        y.push_back(labels[i]);
    }
    return Dataset(idx.size(), p, std::move(x), std::move(y));
}

std::vector<std::size_t> FoldPlan::fold_indices(int fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignments.size(); ++i)
        if (assignments[i] == fold) out.push_back(i);
    return out;
}

std::vector<std::size_t> FoldPlan::complement_indices(int fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignments.size(); ++i)
        if (assignments[i] != fold) out.push_back(i);
    return out;
}

Dataset load_csv(const std::string& path, const std::string& label_column) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw input_error("empty file: " + path);
    const std::vector<std::string> header = split_csv_line(line);
    if (header.empty()) throw input_error("empty header row: " + path);

    // label column: exact header name first, then a numeric index
    std::size_t label_idx = header.size();
    for (std::size_t c = 0; c < header.size(); ++c)
        if (header[c] == label_column) { label_idx = c; break; }
    if (label_idx == header.size()) {
        bool digits = !label_column.empty() &&
                      label_column.find_first_not_of("0123456789") == std::string::npos;
        if (digits) {
            std::size_t idx = std::stoul(label_column);
            if (idx < header.size()) label_idx = idx;
        }
    }
    if (label_idx == header.size())
        throw input_error("label column '" + label_column + "' not found in header");

    const std::size_t p = header.size() - 1;
    if (p == 0) throw input_error("no feature columns in " + path);

    std::vector<double> features;
    std::vector<std::string> raw_labels;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw input_error("row " + std::to_string(line_no) + ": expected " +
                              std::to_string(header.size()) + " fields, got " +
                              std::to_string(fields.size()));
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (c == label_idx) {
                raw_labels.push_back(fields[c]);
                continue;
            }
            double v;
            if (!parse_double(fields[c], v))
                throw input_error("row " + std::to_string(line_no) + ", column '" +
                                  header[c] + "': non-numeric value '" + fields[c] + "'");
            features.push_back(v);
        }
    }
    if (raw_labels.empty()) throw input_error("no data rows in " + path);

    // map the two distinct raw labels onto {-1,+1}: smaller value -> -1
    std::vector<std::string> distinct;
    for (const auto& s : raw_labels)
        if (std::find(distinct.begin(), distinct.end(), s) == distinct.end())
            distinct.push_back(s);
    if (distinct.size() != 2)
        throw input_error("label column must have exactly 2 distinct values, found " +
                          std::to_string(distinct.size()));
    double a, b;
    bool numeric = parse_double(distinct[0], a) && parse_double(distinct[1], b);
    bool first_is_neg = numeric ? (a < b) : (distinct[0] < distinct[1]);
    const std::string& neg = first_is_neg ? distinct[0] : distinct[1];

    std::vector<int> labels;
    labels.reserve(raw_labels.size());
    for (const auto& s : raw_labels) labels.push_back(s == neg ? -1 : +1);

    return Dataset(raw_labels.size(), p, std::move(features), std::move(labels));
}

ScalingParams fit_scaling(const Dataset& d) {
    ScalingParams s;
    s.min.assign(d.p, 0.0);
    s.max.assign(d.p, 0.0);
    for (std::size_t f = 0; f < d.p; ++f) {
        double lo = d.features[f], hi = d.features[f];
        for (std::size_t i = 1; i < d.n; ++i) {
            double v = d.features[i * d.p + f];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        s.min[f] = lo;
        s.max[f] = hi;
    }
    return s;
}

void apply_scaling_row(std::span<const double> x, const ScalingParams& s,
                       std::vector<double>& out) {
    if (x.size() != s.min.size())
        throw input_error("scaling: dimension mismatch (" + std::to_string(x.size()) +
                          " vs " + std::to_string(s.min.size()) + ")");
    out.resize(x.size());
    for (std::size_t f = 0; f < x.size(); ++f) {
        double range = s.max[f] - s.min[f];
        out[f] = range == 0.0 ? 0.0 : (x[f] - s.min[f]) / range;
    }
}

Dataset apply_scaling(const Dataset& d, const ScalingParams& s) {
    if (d.p != s.min.size()) throw input_error("scaling: dimension mismatch");
    std::vector<double> x(d.n * d.p);
    for (std::size_t f = 0; f < d.p; ++f) {
        double range = s.max[f] - s.min[f];
        for (std::size_t i = 0; i < d.n; ++i) {
            double v = d.features[i * d.p + f];
            x[i * d.p + f] = range == 0.0 ? 0.0 : (v - s.min[f]) / range;
        }
    }
    return Dataset(d.n, d.p, std::move(x), d.labels);
}

FoldPlan stratified_kfold(const Dataset& d, int k, std::uint64_t seed) {
    if (k < 2) throw input_error("k-fold: k must be >= 2");
    if (d.n_pos < static_cast<std::size_t>(k) || d.n_neg < static_cast<std::size_t>(k))
        throw input_error("k-fold: each class needs at least k=" + std::to_string(k) +
                          " members (have " + std::to_string(d.n_pos) + " positive, " +
                          std::to_string(d.n_neg) + " negative)");

    FoldPlan plan;
    plan.k = k;
    plan.seed = seed;
    plan.assignments.assign(d.n, -1);

    Rng rng(seed);
    for (int cls : {+1, -1}) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < d.n; ++i)
            if (d.labels[i] == cls) idx.push_back(i);
        rng.shuffle(idx);
        for (std::size_t pos = 0; pos < idx.size(); ++pos)
            plan.assignments[idx[pos]] = static_cast<int>(pos % k);
    }
    return plan;
}

std::pair<Dataset, Dataset> validation_split(const Dataset& d, double fraction,
                                             std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction < 1.0))
        throw input_error("validation split: fraction must be in (0,1)");
    d.require_both_classes();

    const std::size_t target = std::min(d.n - 1, std::max<std::size_t>(1, round_count(fraction * d.n)));

    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < d.n; ++i)
        (d.labels[i] == 1 ? pos : neg).push_back(i);

    Rng rng(seed);
    rng.shuffle(pos);
    rng.shuffle(neg);

    std::size_t v_pos = std::min(pos.size() - 1, round_count(fraction * pos.size()));
    std::size_t v_neg = std::min(neg.size() - 1, target - std::min(target, v_pos));
    // keep both classes in the validation part when it is big enough
    if (target >= 2) {
        if (v_pos == 0 && pos.size() > 1) v_pos = 1;
        if (v_neg == 0 && neg.size() > 1) v_neg = 1;
    }
    while (v_pos + v_neg > target && v_pos > 0 && v_neg > 1) --v_neg;
    while (v_pos + v_neg > target && v_pos > 1) --v_pos;
    while (v_pos + v_neg < target && v_neg + 1 < neg.size()) ++v_neg;
    while (v_pos + v_neg < target && v_pos + 1 < pos.size()) ++v_pos;
    if (v_pos + v_neg == 0) throw input_error("validation split: empty validation part");
    if (v_pos >= pos.size() || v_neg >= neg.size())
        throw input_error("validation split: a class would vanish from the training part");

    std::vector<std::size_t> val_idx, train_idx;
    for (std::size_t i = 0; i < pos.size(); ++i)
        (i < v_pos ? val_idx : train_idx).push_back(pos[i]);
    for (std::size_t i = 0; i < neg.size(); ++i)
        (i < v_neg ? val_idx : train_idx).push_back(neg[i]);
    std::sort(val_idx.begin(), val_idx.end());
    std::sort(train_idx.begin(), train_idx.end());

    Dataset train = d.subset(train_idx);
    Dataset val = d.subset(val_idx);
    train.require_both_classes();
    return {std::move(train), std::move(val)};
}

} // namespace sklr
