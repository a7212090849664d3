#include "sklr/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "sklr/errors.hpp"
#include "sklr/subproblem.hpp"

namespace sklr {

std::vector<double> init_alpha(const Dataset& d, const Hyperparams& h) {
    h.validate();
    d.require_both_classes();
    const double m1 = static_cast<double>(d.n_pos);
    const double m2 = static_cast<double>(d.n_neg);

    double a_pos = 1.0 / m1;
    double a_neg = 1.0 / m2;
    const bool primary_ok = a_pos >= h.lo() && a_pos <= h.hi() &&
                            a_neg >= h.lo() && a_neg <= h.hi();
    if (!primary_ok) {
        // boundary-hugging start: majority class at gamma, minority scaled up
        // to keep sum alpha_i y_i = 0
        const double m_maj = std::max(m1, m2);
        const double m_min = std::min(m1, m2);
        const double a_small = h.gamma;
        const double a_big = h.gamma * (m_maj / m_min);
        if (a_big > h.hi())
            throw input_error("init_alpha: no feasible start for C=" + std::to_string(h.C) +
                              ", gamma=" + std::to_string(h.gamma) +
                              " with class sizes " + std::to_string(d.n_pos) + "/" +
                              std::to_string(d.n_neg));
        a_pos = (m1 >= m2) ? a_small : a_big;
        a_neg = (m1 >= m2) ? a_big : a_small;
    }

    std::vector<double> alpha(d.n);
    for (std::size_t i = 0; i < d.n; ++i)
        alpha[i] = d.labels[i] == 1 ? a_pos : a_neg;
    return alpha;
}

SolveReport smo_train(DualState& s, const Hyperparams& h, const SmoOptions& opt) {
    h.validate();
    const auto t0 = std::chrono::steady_clock::now();

    SolveReport rep;
    rep.wss_kind = opt.wss;
    s.iterations = 0;

    const double lo = h.lo(), hi = h.hi();
    bool converged = false;
    double residual = 0.0;
    int stalled = 0;

    while (s.iterations < h.max_iter) {
        auto choice = select_pair(s, h, opt.wss);
        if (!choice) {
            // the cheap residual uses the incrementally maintained m; verify
            // against a from-scratch gradient before declaring optimality
            s.refresh(h);
            residual = kkt_residual(s, h);
            if (residual <= h.kkt_tol) {
                converged = true;
                break;
            }
            continue;  // drift was masking a violation; keep iterating
        }

        const std::size_t i = choice->i, j = choice->j;
        const StepResult step = solve_1d(s, h, i, j);

        const double nai = std::clamp(s.alpha[i] + step.t * s.y(i), lo, hi);
        const double naj = std::clamp(s.alpha[j] - step.t * s.y(j), lo, hi);
        const double dai = nai - s.alpha[i];
        const double daj = naj - s.alpha[j];

        if (dai == 0.0 && daj == 0.0) {
            // step below float resolution; re-check optimality on fresh caches
            s.refresh(h);
            residual = kkt_residual(s, h);
            if (residual <= h.kkt_tol) {
                converged = true;
                break;
            }
            if (++stalled >= 3)
                throw contract_error("smo: no progress on a violating pair");
            ++s.iterations;
            continue;
        }
        stalled = 0;

        if (opt.audit) {
            const double decrease = -objective_delta_pair(s, h, i, j, dai, daj);
            const double required = (2.0 / h.C) * (dai * dai + daj * daj);
            if (!(decrease >= required)) ++rep.decrease_audit_violations;
        }

        // m_s += dai y_i K_is + daj y_j K_js, two kernel rows
        {
            const auto row_i = s.cache->row(i);
            const double wi = dai * s.y(i);
            if (wi != 0.0)
                for (std::size_t t = 0; t < s.size(); ++t) s.m[t] += wi * row_i[t];
        }
        {
            const auto row_j = s.cache->row(j);
            const double wj = daj * s.y(j);
            if (wj != 0.0)
                for (std::size_t t = 0; t < s.size(); ++t) s.m[t] += wj * row_j[t];
        }
        s.alpha[i] = nai;
        s.alpha[j] = naj;
        s.gp[i] = entropy_Gp(nai / h.C);
        s.gp[j] = entropy_Gp(naj / h.C);
        ++s.iterations;
    }

    if (!converged) {
        s.refresh(h);
        residual = kkt_residual(s, h);
        converged = residual <= h.kkt_tol;
    }

    rep.iterations = s.iterations;
    rep.kkt_residual_final = residual;
    rep.objective_final = objective(s, h);
    rep.termination = converged ? Termination::converged : Termination::max_iter;
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

DualState smo_train(const Dataset& d, KernelCache& cache, const Hyperparams& h,
                    SolveReport& report, const SmoOptions& opt) {
    DualState s = make_state(d, cache, init_alpha(d, h), h);
    report = smo_train(s, h, opt);
    return s;
}

} // namespace sklr
