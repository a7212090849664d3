#include "sklr/wss.hpp"

#include <cmath>
#include <limits>

#include "sklr/errors.hpp"

namespace sklr {

namespace {

struct Scan {
    std::size_t i_up = 0, j_low = 0;
    double max_up = -std::numeric_limits<double>::infinity();
    double min_low = std::numeric_limits<double>::infinity();
};

// one pass over -y grad f; ties keep the smallest index
Scan scan_extremes(const DualState& s, const Hyperparams& h) {
    Scan sc;
    const double lo = h.lo(), hi = h.hi();
    for (std::size_t t = 0; t < s.size(); ++t) {
        const int y = s.y(t);
        const double g = -y * (y * s.m[t] + s.gp[t] - h.lambda);
        const bool below_hi = s.alpha[t] < hi;
        const bool above_lo = s.alpha[t] > lo;
        if ((y == 1 && below_hi) || (y == -1 && above_lo)) {
            if (g > sc.max_up) { sc.max_up = g; sc.i_up = t; }
        }
        if ((y == -1 && below_hi) || (y == 1 && above_lo)) {
            if (g < sc.min_low) { sc.min_low = g; sc.j_low = t; }
        }
    }
    if (!std::isfinite(sc.max_up) || !std::isfinite(sc.min_low))
        throw contract_error("working set selection: empty I_up or I_low");
    return sc;
}

} // namespace

std::optional<WssChoice> select_mvp(const DualState& s, const Hyperparams& h) {
    const Scan sc = scan_extremes(s, h);
    const double gap = sc.max_up - sc.min_low;
    if (gap <= h.kkt_tol) return std::nullopt;
    WssChoice c;
    c.i = sc.i_up;
    c.j = sc.j_low;
    c.violation = gap;
    c.score = gap;
    return c;
}

std::optional<WssChoice> select_second_order(const DualState& s, const Hyperparams& h) {
    const Scan sc = scan_extremes(s, h);
    if (sc.max_up - sc.min_low <= h.kkt_tol) return std::nullopt;

    const std::size_t i = sc.i_up;
    const double k_ii = s.cache->diag(i);
    const auto row_i = s.cache->row(i);
    const double lo = h.lo(), hi = h.hi();

    std::size_t best_j = s.size();
    double best_score = -std::numeric_limits<double>::infinity();
    double best_v = 0.0;
    for (std::size_t t = 0; t < s.size(); ++t) {
        if (t == i) continue;
        const int y = s.y(t);
        const bool in_low = (y == -1 && s.alpha[t] < hi) || (y == 1 && s.alpha[t] > lo);
        if (!in_low) continue;
        const double g = -y * (y * s.m[t] + s.gp[t] - h.lambda);
        const double v = sc.max_up - g;          // violation of the pair {i, t}
        if (!(v > 0.0)) continue;                // strict: -y_t grad_t < -y_i grad_i
        const double q = k_ii + s.cache->diag(t) - 2.0 * row_i[t] +
                         h.C / (s.alpha[i] * (h.C - s.alpha[i])) +
                         h.C / (s.alpha[t] * (h.C - s.alpha[t]));
        const double score = v * v / q;
        if (score > best_score) {
            best_score = score;
            best_j = t;
            best_v = v;
        }
    }
    if (best_j == s.size())
        throw contract_error("second-order selection: no eligible second index");

    WssChoice c;
    c.i = i;
    c.j = best_j;
    c.violation = best_v;
    c.score = best_score;
    return c;
}

std::optional<WssChoice> select_pair(const DualState& s, const Hyperparams& h, WssKind kind) {
    return kind == WssKind::first_order ? select_mvp(s, h) : select_second_order(s, h);
}

} // namespace sklr
