#include "sklr/dual.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sklr/errors.hpp"

namespace sklr {

void Hyperparams::validate() const {
    if (!(C > 0.0)) throw input_error("hyperparams: C must be > 0");
    if (lambda < 0.0) throw input_error("hyperparams: lambda must be >= 0");
    if (!(kkt_tol > 0.0)) throw input_error("hyperparams: kkt_tol must be > 0");
    if (!(gamma > 0.0) || !(gamma < C / 2.0))
        throw input_error("hyperparams: gamma must satisfy 0 < gamma < C/2");
    if (max_iter <= 0) throw input_error("hyperparams: max_iter must be > 0");
    if (!(selection_threshold > 0.0))
        throw input_error("hyperparams: selection_threshold must be > 0");
}

namespace {
void check_open_unit(double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::domain_error("entropy term: argument must lie in (0,1)");
}
} // namespace

double entropy_G(double delta) {
    check_open_unit(delta);
    return delta * std::log(delta) + (1.0 - delta) * std::log(1.0 - delta);
}

double entropy_Gp(double delta) {
    check_open_unit(delta);
    return std::log(delta / (1.0 - delta));
}

double entropy_Gpp(double delta) {
    check_open_unit(delta);
    return 1.0 / (delta * (1.0 - delta));
}

double entropy_G_diff(double delta, double h) {
    check_open_unit(delta);
    check_open_unit(delta + h);
    // (d+h)log(d+h) - d log d = d log1p(h/d) + h log(d+h), and likewise for
    // the mirrored term; every piece is O(h), so cancellation stays benign.
    const double d1 = 1.0 - delta;
    return delta * std::log1p(h / delta) + h * std::log(delta + h) +
           d1 * std::log1p(-h / d1) - h * std::log(d1 - h);
}

void DualState::refresh(const Hyperparams& h) {
    const std::size_t n = size();
    m.assign(n, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
        const double w = alpha[t] * y(t);
        if (w == 0.0) continue;
        const auto row = cache->row(t);
        for (std::size_t s = 0; s < n; ++s) m[s] += w * row[s];
    }
    gp.resize(n);
    for (std::size_t i = 0; i < n; ++i) gp[i] = entropy_Gp(alpha[i] / h.C);
}

DualState make_state(const Dataset& d, KernelCache& cache, std::vector<double> alpha,
                     const Hyperparams& h) {
    h.validate();
    if (alpha.size() != d.n) throw input_error("dual state: alpha size mismatch");
    for (double a : alpha)
        if (!(a >= h.lo() && a <= h.hi()))
            throw input_error("dual state: alpha outside [gamma, C-gamma]");
    DualState s;
    s.data = &d;
    s.cache = &cache;
    s.alpha = std::move(alpha);
    s.refresh(h);
    return s;
}

double objective(const DualState& s, const Hyperparams& h) {
    double quad = 0.0, ent = 0.0, lin = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        quad += s.alpha[i] * s.y(i) * s.m[i];
        ent += entropy_G(s.alpha[i] / h.C);
        lin += s.alpha[i];
    }
    return 0.5 * quad + h.C * ent - h.lambda * lin;
}

double gradient_component(const DualState& s, const Hyperparams& h, std::size_t i) {
    if (i >= s.size()) throw input_error("gradient: index out of range");
    return s.y(i) * s.m[i] + entropy_Gp(s.alpha[i] / h.C) - h.lambda;
}

IndexSets index_sets(const DualState& s, const Hyperparams& h) {
    IndexSets sets;
    const double lo = h.lo(), hi = h.hi();
    for (std::size_t i = 0; i < s.size(); ++i) {
        const bool below_hi = s.alpha[i] < hi;
        const bool above_lo = s.alpha[i] > lo;
        if ((s.y(i) == 1 && below_hi) || (s.y(i) == -1 && above_lo))
            sets.up.push_back(i);
        if ((s.y(i) == -1 && below_hi) || (s.y(i) == 1 && above_lo))
            sets.low.push_back(i);
    }
    return sets;
}

double kkt_residual(const DualState& s, const Hyperparams& h) {
    const double lo = h.lo(), hi = h.hi();
    double max_up = -std::numeric_limits<double>::infinity();
    double min_low = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double minus_y_grad = -s.y(i) * (s.y(i) * s.m[i] + s.gp[i] - h.lambda);
        const bool below_hi = s.alpha[i] < hi;
        const bool above_lo = s.alpha[i] > lo;
        if ((s.y(i) == 1 && below_hi) || (s.y(i) == -1 && above_lo))
            max_up = std::max(max_up, minus_y_grad);
        if ((s.y(i) == -1 && below_hi) || (s.y(i) == 1 && above_lo))
            min_low = std::min(min_low, minus_y_grad);
    }
    if (!std::isfinite(max_up) || !std::isfinite(min_low))
        throw contract_error("kkt residual: empty I_up or I_low (degenerate boundary state)");
    return max_up - min_low;
}

} // namespace sklr
