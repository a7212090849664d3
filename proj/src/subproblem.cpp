#include "sklr/subproblem.hpp"

#include <algorithm>
#include <cmath>

#include "sklr/errors.hpp"

namespace sklr {

StepInterval step_interval(double alpha_i, double alpha_j, int y_i, int y_j,
                           const Hyperparams& h) {
    const double lo = h.lo(), hi = h.hi();
    // alpha_i + t*y_i in [lo, hi]
    double i_lo = (y_i == 1) ? lo - alpha_i : alpha_i - hi;
    double i_hi = (y_i == 1) ? hi - alpha_i : alpha_i - lo;
    // alpha_j - t*y_j in [lo, hi]
    double j_lo = (y_j == 1) ? alpha_j - hi : lo - alpha_j;
    double j_hi = (y_j == 1) ? alpha_j - lo : hi - alpha_j;

    StepInterval iv;
    iv.t_lo = std::max(i_lo, j_lo);
    iv.t_hi = std::min(i_hi, j_hi);
    // t = 0 is feasible from a feasible state; protect against rounding
    iv.t_lo = std::min(iv.t_lo, 0.0);
    iv.t_hi = std::max(iv.t_hi, 0.0);
    return iv;
}

namespace {

// scalar view of phi along the pair direction; all O(1) once built
struct PairContext {
    double kq;          // K_ii + K_jj - 2 K_ij
    double k_ii, k_ij, k_jj;
    double m_i, m_j;
    double a_i, a_j;
    int y_i, y_j;

    double shifted_i(double t) const { return a_i + t * y_i; }
    double shifted_j(double t) const { return a_j - t * y_j; }

    double phi1(const Hyperparams& h, double t) const {
        const double mi = m_i + t * (k_ii - k_ij);
        const double mj = m_j + t * (k_ij - k_jj);
        return (mi - mj) + y_i * entropy_Gp(shifted_i(t) / h.C) -
               y_j * entropy_Gp(shifted_j(t) / h.C) - h.lambda * (y_i - y_j);
    }

    double phi2(const Hyperparams& h, double t) const {
        return kq + (entropy_Gpp(shifted_i(t) / h.C) +
                     entropy_Gpp(shifted_j(t) / h.C)) / h.C;
    }
};

PairContext make_context(const DualState& s, std::size_t i, std::size_t j) {
    PairContext c;
    c.k_ii = s.cache->diag(i);
    c.k_jj = s.cache->diag(j);
    c.k_ij = s.cache->row(i)[j];
    c.kq = c.k_ii + c.k_jj - 2.0 * c.k_ij;
    c.m_i = s.m[i];
    c.m_j = s.m[j];
    c.a_i = s.alpha[i];
    c.a_j = s.alpha[j];
    c.y_i = s.y(i);
    c.y_j = s.y(j);
    return c;
}

void check_inside(const PairContext& c, const Hyperparams& h, double t) {
    const double ai = c.shifted_i(t), aj = c.shifted_j(t);
    if (!(ai > 0.0 && ai < h.C && aj > 0.0 && aj < h.C))
        throw contract_error("phi derivatives: step leaves the open box (0, C)");
}

} // namespace

PhiDerivs phi_derivs(const DualState& s, const Hyperparams& h,
                     std::size_t i, std::size_t j, double t) {
    const PairContext c = make_context(s, i, j);
    check_inside(c, h, t);
    return {c.phi1(h, t), c.phi2(h, t)};
}

StepResult solve_1d(const DualState& s, const Hyperparams& h,
                    std::size_t i, std::size_t j) {
    const PairContext c = make_context(s, i, j);
    const StepInterval iv = step_interval(c.a_i, c.a_j, c.y_i, c.y_j, h);

    const double d0 = c.phi1(h, 0.0);
    if (!(d0 < 0.0))
        throw contract_error("solve_1d: pair is not violating (phi'(0) >= 0)");

    StepResult res;
    if (iv.t_hi <= 0.0) {  // no room to move; degenerate interval
        res.t = iv.t_hi;
        return res;
    }

    // phi' is strictly increasing; if it stays negative at the right end the
    // minimizer is the boundary
    const double d_hi = c.phi1(h, iv.t_hi);
    if (d_hi <= 0.0) {
        res.t = iv.t_hi;
        return res;
    }

    // safeguarded Newton on the bracket [lo, hi] with phi'(lo) < 0 < phi'(hi)
    constexpr double kTol = 1e-10;
    double lo = 0.0, hi = iv.t_hi;
    double t = std::min(-d0 / c.phi2(h, 0.0), hi);  // Taylor step v/q as the first guess
    if (!(t > lo && t < hi)) t = 0.5 * (lo + hi);

    for (int it = 0; it < 100; ++it) {
        ++res.newton_iterations;
        const double d = c.phi1(h, t);
        if (std::abs(d) <= kTol) break;
        if (d < 0.0) lo = t; else hi = t;
        double next = t - d / c.phi2(h, t);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == t) break;  // interval exhausted at float resolution
        t = next;
    }
    res.t = std::clamp(t, iv.t_lo, iv.t_hi);
    return res;
}

double objective_delta_pair(const DualState& s, const Hyperparams& h,
                            std::size_t i, std::size_t j, double dai, double daj) {
    const double yi = s.y(i), yj = s.y(j);
    const double k_ii = s.cache->diag(i);
    const double k_jj = s.cache->diag(j);
    const double k_ij = s.cache->row(i)[j];
    const double quad = dai * yi * s.m[i] + daj * yj * s.m[j] +
                        0.5 * (dai * dai * k_ii + daj * daj * k_jj) +
                        dai * daj * yi * yj * k_ij;
    const double ent = h.C * (entropy_G_diff(s.alpha[i] / h.C, dai / h.C) +
                              entropy_G_diff(s.alpha[j] / h.C, daj / h.C));
    return quad + ent - h.lambda * (dai + daj);
}

double objective_delta(const DualState& s, const Hyperparams& h,
                       std::size_t i, std::size_t j, double t) {
    return objective_delta_pair(s, h, i, j, t * s.y(i), -t * s.y(j));
}

} // namespace sklr
