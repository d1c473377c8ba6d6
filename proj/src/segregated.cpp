#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>

#include "alecut/errors.hpp"
#include "alecut/solvers.hpp"

namespace alecut {

namespace {

// Closed-form inverse of one 3x3 nodal block. The blocks are diagonal for
// the component-decoupled operator, but full blocks are handled.
std::array<std::array<double, 3>, 3> invert3x3(const std::array<std::array<double, 3>, 3>& a) {
    const double det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                       a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                       a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    if (det == 0.0 || !std::isfinite(det))
        throw SolverError("solve_segregated: singular 3x3 vertex block");
    const double s = 1.0 / det;
    std::array<std::array<double, 3>, 3> inv;
    inv[0][0] = s * (a[1][1] * a[2][2] - a[1][2] * a[2][1]);
    inv[0][1] = s * (a[0][2] * a[2][1] - a[0][1] * a[2][2]);
    inv[0][2] = s * (a[0][1] * a[1][2] - a[0][2] * a[1][1]);
    inv[1][0] = s * (a[1][2] * a[2][0] - a[1][0] * a[2][2]);
    inv[1][1] = s * (a[0][0] * a[2][2] - a[0][2] * a[2][0]);
    inv[1][2] = s * (a[0][2] * a[1][0] - a[0][0] * a[1][2]);
    inv[2][0] = s * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    inv[2][1] = s * (a[0][1] * a[2][0] - a[0][0] * a[2][1]);
    inv[2][2] = s * (a[0][0] * a[1][1] - a[0][1] * a[1][0]);
    return inv;
}

} // namespace

SchurParts build_schur_parts(const BlockSystem& sys) {
    const int nvd = sys.num_vertex_dofs();
    const int nd = sys.num_dofs();

    SchurParts parts;
    parts.A_VV = sys.K.block(0, nvd, 0, nvd);
    parts.A_VE = sys.K.block(0, nvd, nvd, nd);
    parts.A_EV = sys.K.block(nvd, nd, 0, nvd);
    parts.A_EE = sys.K.block(nvd, nd, nvd, nd);

    // A_VV must couple only DOFs of the same vertex node.
    for (int i = 0; i < nvd; ++i)
        for (std::int64_t k = parts.A_VV.ptr[i]; k < parts.A_VV.ptr[i + 1]; ++k)
            if (parts.A_VV.col[k] / 3 != i / 3)
                throw SolverError("solve_segregated: A_VV is not block-diagonal");

    TripletBuilder inv_b(nvd, nvd);
    for (int node = 0; node < sys.num_vertex_nodes; ++node) {
        std::array<std::array<double, 3>, 3> block{};
        for (int r = 0; r < 3; ++r) {
            const int i = 3 * node + r;
            for (std::int64_t k = parts.A_VV.ptr[i]; k < parts.A_VV.ptr[i + 1]; ++k)
                block[r][parts.A_VV.col[k] - 3 * node] = parts.A_VV.val[k];
        }
        const auto inv = invert3x3(block);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                if (inv[r][c] != 0.0) inv_b.add(3 * node + r, 3 * node + c, inv[r][c]);
    }
    parts.A_VV_inv = inv_b.build();

    // S = A_EE - A_EV (A_VV^{-1} A_VE), all products exact and sparse.
    parts.S = add(parts.A_EE, matmul(parts.A_EV, matmul(parts.A_VV_inv, parts.A_VE)), -1.0);
    return parts;
}

SolveReport solve_segregated(const BlockSystem& sys, std::vector<double>& u,
                             const KrylovOptions& opts, const AmgOptions& amg_opts) {
    const auto start = std::chrono::steady_clock::now();
    const int nvd = sys.num_vertex_dofs();
    const int nd = sys.num_dofs();

    SchurParts parts = build_schur_parts(sys);

    const std::vector<double> f_v(sys.f.begin(), sys.f.begin() + nvd);
    const std::vector<double> f_e(sys.f.begin() + nvd, sys.f.end());

    // b_E = f_E - A_EV A_VV^{-1} f_V
    std::vector<double> b_e = parts.A_EV.multiply(parts.A_VV_inv.multiply(f_v));
    for (std::size_t i = 0; i < b_e.size(); ++i) b_e[i] = f_e[i] - b_e[i];

    const double norm_f = norm2(sys.f);
    const double norm_be = norm2(b_e);

    SolveReport report;
    report.method = "SCHUR_CG";
    std::vector<double> u_e(nd - nvd, 0.0);
    if (norm_be > 0.0) {
        // The inner residual bounds the full-system residual, so aim the
        // Schur solve at tol * ||f|| in absolute terms.
        KrylovOptions inner = opts;
        if (norm_f > 0.0) inner.tol = opts.tol * std::min(1.0, norm_f / norm_be);
        const AmgHierarchy amg = build_amg(parts.S, amg_opts);
        SolveReport inner_report = solve_pcg(parts.S, b_e, amg, u_e, inner);
        report.iterations = inner_report.iterations;
        report.converged = inner_report.converged;
        report.note = inner_report.note;
    } else {
        report.converged = true;
    }

    // u_V = A_VV^{-1} (f_V - A_VE u_E)
    std::vector<double> rhs_v = parts.A_VE.multiply(u_e);
    for (std::size_t i = 0; i < rhs_v.size(); ++i) rhs_v[i] = f_v[i] - rhs_v[i];
    const std::vector<double> u_v = parts.A_VV_inv.multiply(rhs_v);

    u.assign(nd, 0.0);
    std::copy(u_v.begin(), u_v.end(), u.begin());
    std::copy(u_e.begin(), u_e.end(), u.begin() + nvd);

    report.rel_residual = norm_f > 0.0 ? norm2(residual(sys.K, u, sys.f)) / norm_f : 0.0;
    if (report.converged && norm_f > 0.0 && report.rel_residual > opts.tol)
        report.converged = false;
    report.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace alecut
