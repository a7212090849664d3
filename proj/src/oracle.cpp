#include "sklr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sklr/errors.hpp"

namespace sklr {

namespace {

// LU solve with partial pivoting, in place; a is row-major n x n
void lu_solve(std::vector<double>& a, std::vector<double>& b, std::size_t n) {
    std::vector<std::size_t> piv(n);
    for (std::size_t i = 0; i < n; ++i) piv[i] = i;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t best = col;
        double best_abs = std::abs(a[piv[col] * n + col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::abs(a[piv[r] * n + col]);
            if (v > best_abs) { best_abs = v; best = r; }
        }
        if (best_abs == 0.0) throw contract_error("oracle: singular KKT system");
        std::swap(piv[col], piv[best]);
        const double pivot = a[piv[col] * n + col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[piv[r] * n + col] / pivot;
            if (f == 0.0) continue;
            a[piv[r] * n + col] = f;
            for (std::size_t c = col + 1; c < n; ++c)
                a[piv[r] * n + c] -= f * a[piv[col] * n + c];
            b[piv[r]] -= f * b[piv[col]];
        }
    }
    std::vector<double> x(n);
    for (std::size_t ri = n; ri-- > 0;) {
        double v = b[piv[ri]];
        for (std::size_t c = ri + 1; c < n; ++c) v -= a[piv[ri] * n + c] * x[c];
        x[ri] = v / a[piv[ri] * n + ri];
    }
    b = std::move(x);
}

struct Problem {
    const Dataset* d;
    const Hyperparams* h;
    std::vector<double> K;   // dense n x n kernel matrix

    std::size_t n() const { return d->n; }

    // residual F = (grad f + psi y, y^T alpha); returns infinity norm
    double residual(const std::vector<double>& alpha, double psi,
                    std::vector<double>& f) const {
        const std::size_t N = n();
        f.assign(N + 1, 0.0);
        double norm = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            double m_i = 0.0;
            for (std::size_t j = 0; j < N; ++j)
                m_i += alpha[j] * d->labels[j] * K[i * N + j];
            f[i] = d->labels[i] * m_i + entropy_Gp(alpha[i] / h->C) - h->lambda +
                   psi * d->labels[i];
            norm = std::max(norm, std::abs(f[i]));
            f[N] += alpha[i] * d->labels[i];
        }
        norm = std::max(norm, std::abs(f[N]));
        return norm;
    }
};

} // namespace

double oracle_objective(const Dataset& d, const KernelSpec& kernel,
                        const Hyperparams& h, const std::vector<double>& alpha) {
    const std::size_t n = d.n;
    double quad = 0.0, ent = 0.0, lin = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double m_i = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            m_i += alpha[j] * d.labels[j] * kernel_eval(kernel, d.row(i), d.row(j));
        quad += alpha[i] * d.labels[i] * m_i;
        ent += entropy_G(alpha[i] / h.C);
        lin += alpha[i];
    }
    return 0.5 * quad + h.C * ent - h.lambda * lin;
}

OracleSolution kkt_newton_solve(const Dataset& d, const KernelSpec& kernel,
                                const Hyperparams& h) {
    h.validate();
    d.require_both_classes();
    const std::size_t n = d.n;
    if (n > 200) throw input_error("oracle: dense path limited to N <= 200");

    Problem prob;
    prob.d = &d;
    prob.h = &h;
    prob.K.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            prob.K[i * n + j] = kernel_eval(kernel, d.row(i), d.row(j));

    // balanced interior start
    const double m_min = static_cast<double>(std::min(d.n_pos, d.n_neg));
    std::vector<double> alpha(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double cls = d.labels[i] == 1 ? static_cast<double>(d.n_pos)
                                            : static_cast<double>(d.n_neg);
        alpha[i] = 0.4 * h.C * m_min / cls;
    }
    double psi = 0.0;

    OracleSolution sol;
    std::vector<double> f;
    double norm = prob.residual(alpha, psi, f);

    constexpr double kTol = 1e-10;
    const std::size_t dim = n + 1;
    std::vector<double> jac(dim * dim);
    std::vector<double> rhs(dim);
    std::vector<double> trial(n);

    for (int iter = 0; iter < 200 && norm > kTol; ++iter) {
        ++sol.newton_iterations;
        // J = [[Q + D, y], [y^T, 0]], Q_ij = y_i y_j K_ij, D = diag(Gpp/C)
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j)
                jac[i * dim + j] = d.labels[i] * d.labels[j] * prob.K[i * n + j];
            jac[i * dim + i] += entropy_Gpp(alpha[i] / h.C) / h.C;
            jac[i * dim + n] = d.labels[i];
            jac[n * dim + i] = d.labels[i];
        }
        jac[n * dim + n] = 0.0;
        for (std::size_t i = 0; i < dim; ++i) rhs[i] = -f[i];
        lu_solve(jac, rhs, dim);

        // keep strictly inside (0, C), then backtrack on the residual norm
        double sigma = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double di = rhs[i];
            if (di > 0.0) sigma = std::min(sigma, 0.95 * (h.C - alpha[i]) / di);
            else if (di < 0.0) sigma = std::min(sigma, 0.95 * alpha[i] / -di);
        }
        double new_norm = norm;
        std::vector<double> f_trial;
        double psi_trial = psi;
        for (int bt = 0; bt < 60; ++bt) {
            for (std::size_t i = 0; i < n; ++i) trial[i] = alpha[i] + sigma * rhs[i];
            psi_trial = psi + sigma * rhs[n];
            new_norm = prob.residual(trial, psi_trial, f_trial);
            if (new_norm < norm) break;
            sigma *= 0.5;
        }
        if (!(new_norm < norm))
            throw contract_error("oracle: Newton stalled at residual " + std::to_string(norm));
        alpha.swap(trial);
        psi = psi_trial;
        f.swap(f_trial);
        norm = new_norm;
    }
    if (norm > kTol)
        throw contract_error("oracle: no convergence in 200 Newton iterations (residual " +
                             std::to_string(norm) + ")");

    sol.alpha = std::move(alpha);
    sol.psi = psi;
    sol.kkt_norm = norm;
    return sol;
}

std::vector<double> reduced_1d_oracle(const Dataset& d, const KernelSpec& kernel,
                                      const Hyperparams& h) {
    if (d.n != 2) throw input_error("reduced oracle: exactly two points required");
    if (d.labels[0] == d.labels[1])
        throw input_error("reduced oracle: labels must be opposite");
    h.validate();

    const double k11 = kernel_eval(kernel, d.row(0), d.row(0));
    const double k22 = kernel_eval(kernel, d.row(1), d.row(1));
    const double k12 = kernel_eval(kernel, d.row(0), d.row(1));

    // alpha_1 = alpha_2 = a by the equality constraint
    const auto f = [&](double a) {
        return 0.5 * a * a * (k11 + k22 - 2.0 * k12) +
               h.C * 2.0 * entropy_G(a / h.C) - 2.0 * h.lambda * a;
    };

    // golden-section search on [gamma, C - gamma]
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = h.lo(), hi = h.hi();
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > 1e-10) {
        if (f1 < f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    const double a = 0.5 * (lo + hi);
    return {a, a};
}

} // namespace sklr
