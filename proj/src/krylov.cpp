#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "alecut/errors.hpp"
#include "alecut/solvers.hpp"

namespace alecut {

namespace {

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

SolveReport solve_pcg(const CsrMatrix& K, const std::vector<double>& f,
                      const AmgHierarchy& M, std::vector<double>& u,
                      const KrylovOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    SolveReport report;
    report.method = "CG";

    const int n = K.nrows;
    u.assign(n, 0.0);
    const double norm_f = norm2(f);
    if (norm_f == 0.0) {
        report.converged = true;
        report.seconds = elapsed_seconds(start);
        return report;
    }

    std::vector<double> r = f;
    std::vector<double> z = M.apply(r);
    std::vector<double> p = z;
    std::vector<double> q(n);
    double rz = dot(r, z);

    for (int it = 1; it <= opts.maxit; ++it) {
        K.multiply(p.data(), q.data());
        const double pq = dot(p, q);
        if (!(pq > 0.0)) {
            report.iterations = it - 1;
            report.rel_residual = norm2(residual(K, u, f)) / norm_f;
            report.note = "breakdown: non-positive curvature";
            report.seconds = elapsed_seconds(start);
            return report;
        }
        const double alpha = rz / pq;
        for (int i = 0; i < n; ++i) u[i] += alpha * p[i];
        for (int i = 0; i < n; ++i) r[i] -= alpha * q[i];

        report.iterations = it;
        if (norm2(r) <= opts.tol * norm_f) {
            const double true_rel = norm2(residual(K, u, f)) / norm_f;
            report.rel_residual = true_rel;
            if (true_rel <= opts.tol) {
                report.converged = true;
                report.seconds = elapsed_seconds(start);
                return report;
            }
        }

        z = M.apply(r);
        const double rz_new = dot(r, z);
        if (!(rz_new > 0.0)) {
            report.rel_residual = norm2(residual(K, u, f)) / norm_f;
            report.note = "breakdown: indefinite preconditioned residual product";
            report.seconds = elapsed_seconds(start);
            return report;
        }
        const double beta = rz_new / rz;
        for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
        rz = rz_new;
    }

    report.rel_residual = norm2(residual(K, u, f)) / norm_f;
    report.note = "maxit reached";
    report.seconds = elapsed_seconds(start);
    return report;
}

SolveReport solve_gmres(const CsrMatrix& K, const std::vector<double>& f,
                        const AmgHierarchy& M, std::vector<double>& u,
                        const KrylovOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    SolveReport report;
    report.method = "GMRES";

    const int n = K.nrows;
    const int m = std::max(1, opts.restart);
    u.assign(n, 0.0);
    const double norm_f = norm2(f);
    if (norm_f == 0.0) {
        report.converged = true;
        report.seconds = elapsed_seconds(start);
        return report;
    }
    // Inner iterations monitor the preconditioned residual; true residuals
    // are checked at every restart.
    const double pre_norm_f = norm2(M.apply(f));
    const double inner_target = opts.tol * pre_norm_f;

    std::vector<std::vector<double>> v(m + 1, std::vector<double>(n));
    std::vector<std::vector<double>> h(m + 1, std::vector<double>(m, 0.0));
    std::vector<double> cs(m), sn(m), g(m + 1);

    double prev_true_rel = std::numeric_limits<double>::infinity();
    int total_iters = 0;

    while (true) {
        std::vector<double> r = residual(K, u, f);
        const double true_rel = norm2(r) / norm_f;
        report.rel_residual = true_rel;
        report.iterations = total_iters;
        if (true_rel <= opts.tol) {
            report.converged = true;
            break;
        }
        if (total_iters >= opts.maxit) {
            report.note = "maxit reached";
            break;
        }
        if (true_rel >= prev_true_rel) {
            report.note = "stagnation: no residual decrease over one restart cycle";
            break;
        }
        prev_true_rel = true_rel;

        std::vector<double> z = M.apply(r);
        double beta = norm2(z);
        if (beta == 0.0) {
            report.note = "stagnation: preconditioned residual vanished";
            break;
        }
        for (int i = 0; i < n; ++i) v[0][i] = z[i] / beta;
        std::fill(g.begin(), g.end(), 0.0);
        g[0] = beta;

        int j = 0;
        for (; j < m && total_iters < opts.maxit; ++j) {
            std::vector<double> w = M.apply(K.multiply(v[j]));
            for (int i = 0; i <= j; ++i) {
                h[i][j] = dot(w, v[i]);
                for (int k = 0; k < n; ++k) w[k] -= h[i][j] * v[i][k];
            }
            h[j + 1][j] = norm2(w);
            const bool happy = h[j + 1][j] == 0.0;
            if (!happy)
                for (int k = 0; k < n; ++k) v[j + 1][k] = w[k] / h[j + 1][j];

            // Givens rotations keep the least-squares system triangular.
            for (int i = 0; i < j; ++i) {
                const double t = cs[i] * h[i][j] + sn[i] * h[i + 1][j];
                h[i + 1][j] = -sn[i] * h[i][j] + cs[i] * h[i + 1][j];
                h[i][j] = t;
            }
            const double denom = std::hypot(h[j][j], h[j + 1][j]);
            cs[j] = h[j][j] / denom;
            sn[j] = h[j + 1][j] / denom;
            h[j][j] = denom;
            h[j + 1][j] = 0.0;
            g[j + 1] = -sn[j] * g[j];
            g[j] = cs[j] * g[j];

            ++total_iters;
            if (happy || std::abs(g[j + 1]) <= inner_target) {
                ++j;
                break;
            }
        }

        // y = H^{-1} g by back-substitution, then u += V y.
        std::vector<double> y(j);
        for (int i = j - 1; i >= 0; --i) {
            double acc = g[i];
            for (int k = i + 1; k < j; ++k) acc -= h[i][k] * y[k];
            y[i] = acc / h[i][i];
        }
        for (int i = 0; i < j; ++i)
            for (int k = 0; k < n; ++k) u[k] += y[i] * v[i][k];
    }

    report.seconds = elapsed_seconds(start);
    return report;
}

} // namespace alecut
