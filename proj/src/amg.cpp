#include "alecut/amg.hpp"

#include <Eigen/Dense>

#include "alecut/errors.hpp"

namespace alecut {

struct AmgHierarchy::CoarseSolver {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
};

int AmgHierarchy::fine_dim() const {
    return levels_.empty() ? coarse_a_.nrows : levels_.front().A.nrows;
}

std::vector<std::uint8_t> amg_coarse_flags(const CsrMatrix& a) {
    std::vector<std::uint8_t> coarse(a.nrows, 0);
    for (int i = 0; i < a.nrows; ++i) {
        bool blocked = false;
        for (std::int64_t k = a.ptr[i]; k < a.ptr[i + 1] && !blocked; ++k) {
            const int j = a.col[k];
            if (j != i && coarse[j]) blocked = true;
        }
        coarse[i] = blocked ? 0 : 1;
    }
    return coarse;
}

namespace {

CsrMatrix build_prolongation(const CsrMatrix& a, const std::vector<std::uint8_t>& coarse,
                             int num_coarse) {
    std::vector<int> coarse_id(a.nrows, -1);
    int next = 0;
    for (int i = 0; i < a.nrows; ++i)
        if (coarse[i]) coarse_id[i] = next++;

    CsrMatrix p;
    p.nrows = a.nrows;
    p.ncols = num_coarse;
    p.ptr.assign(a.nrows + 1, 0);
    std::vector<int> cols;
    for (int i = 0; i < a.nrows; ++i) {
        if (coarse[i]) {
            p.col.push_back(coarse_id[i]);
            p.val.push_back(1.0);
        } else {
            cols.clear();
            for (std::int64_t k = a.ptr[i]; k < a.ptr[i + 1]; ++k) {
                const int j = a.col[k];
                if (j != i && coarse[j]) cols.push_back(coarse_id[j]);
            }
            // A fine node always has a coarse neighbor (the set is maximal).
            const double w = 1.0 / static_cast<double>(cols.size());
            for (int c : cols) {
                p.col.push_back(c);
                p.val.push_back(w);
            }
        }
        p.ptr[i + 1] = static_cast<std::int64_t>(p.col.size());
    }
    return p;
}

std::vector<double> extract_diag(const CsrMatrix& a) {
    std::vector<double> diag(a.nrows, 0.0);
    for (int i = 0; i < a.nrows; ++i) {
        bool found = false;
        for (std::int64_t k = a.ptr[i]; k < a.ptr[i + 1]; ++k) {
            if (a.col[k] == i) {
                diag[i] = a.val[k];
                found = true;
            }
        }
        if (!found || diag[i] == 0.0)
            throw SolverError("build_amg: empty row or zero diagonal at row " + std::to_string(i));
    }
    return diag;
}

void gauss_seidel(const CsrMatrix& a, const std::vector<double>& diag,
                  const std::vector<double>& b, std::vector<double>& x, bool forward) {
    const int n = a.nrows;
    for (int s = 0; s < n; ++s) {
        const int i = forward ? s : n - 1 - s;
        double acc = b[i];
        for (std::int64_t k = a.ptr[i]; k < a.ptr[i + 1]; ++k) {
            const int j = a.col[k];
            if (j != i) acc -= a.val[k] * x[j];
        }
        x[i] = acc / diag[i];
    }
}

} // namespace

AmgHierarchy build_amg(const CsrMatrix& K, const AmgOptions& opts) {
    if (K.nrows != K.ncols) throw SolverError("build_amg: matrix must be square");

    AmgHierarchy h;
    h.opts_ = opts;

    CsrMatrix a = K;
    for (int level = 0; level < opts.max_levels; ++level) {
        if (a.nrows <= opts.coarsest_cap) break;

        std::vector<double> diag = extract_diag(a);
        const std::vector<std::uint8_t> coarse = amg_coarse_flags(a);
        int num_coarse = 0;
        for (auto c : coarse) num_coarse += c;
        // Isolated rows stay coarse forever; stop when coarsening stalls and
        // hand the rest to the direct solver.
        if (num_coarse >= static_cast<int>(opts.stall_ratio * a.nrows) || num_coarse == a.nrows)
            break;

        CsrMatrix p = build_prolongation(a, coarse, num_coarse);
        CsrMatrix pt = p.transposed();
        CsrMatrix a_coarse = matmul(pt, matmul(a, p));

        h.levels_.push_back({std::move(a), std::move(p), std::move(pt), std::move(diag)});
        a = std::move(a_coarse);
    }

    extract_diag(a);  // validates the coarsest matrix too
    const auto dense = a.to_dense();
    Eigen::MatrixXd m(a.nrows, a.ncols);
    for (int i = 0; i < a.nrows; ++i)
        for (int j = 0; j < a.ncols; ++j) m(i, j) = dense[i][j];
    auto solver = std::make_shared<AmgHierarchy::CoarseSolver>();
    solver->lu = Eigen::PartialPivLU<Eigen::MatrixXd>(m);
    h.coarse_a_ = std::move(a);
    h.coarse_solver_ = std::move(solver);
    return h;
}

void AmgHierarchy::cycle(std::size_t level, const std::vector<double>& b,
                         std::vector<double>& x) const {
    if (level == levels_.size()) {
        Eigen::Map<const Eigen::VectorXd> bv(b.data(), b.size());
        Eigen::VectorXd sol = coarse_solver_->lu.solve(bv);
        x.assign(sol.data(), sol.data() + sol.size());
        return;
    }
    const Level& l = levels_[level];
    for (int s = 0; s < opts_.pre_sweeps; ++s) gauss_seidel(l.A, l.diag, b, x, /*forward=*/true);

    std::vector<double> r = residual(l.A, x, b);
    std::vector<double> rc = l.Pt.multiply(r);
    std::vector<double> ec(rc.size(), 0.0);
    cycle(level + 1, rc, ec);
    const std::vector<double> corr = l.P.multiply(ec);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += corr[i];

    for (int s = 0; s < opts_.post_sweeps; ++s) gauss_seidel(l.A, l.diag, b, x, /*forward=*/false);
}

std::vector<double> AmgHierarchy::apply(const std::vector<double>& r) const {
    std::vector<double> z(r.size(), 0.0);
    cycle(0, r, z);
    return z;
}

} // namespace alecut
