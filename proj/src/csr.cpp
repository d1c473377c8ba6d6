#include "alecut/csr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "alecut/errors.hpp"

namespace alecut {

void CsrMatrix::multiply(const double* x, double* y) const {
    for (int i = 0; i < nrows; ++i) {
        double acc = 0.0;
        for (std::int64_t k = ptr[i]; k < ptr[i + 1]; ++k) acc += val[k] * x[col[k]];
        y[i] = acc;
    }
}

std::vector<double> CsrMatrix::multiply(const std::vector<double>& x) const {
    std::vector<double> y(nrows);
    multiply(x.data(), y.data());
    return y;
}

double CsrMatrix::entry(int i, int j) const {
    const auto lo = col.begin() + ptr[i];
    const auto hi = col.begin() + ptr[i + 1];
    const auto it = std::lower_bound(lo, hi, j);
    if (it == hi || *it != j) return 0.0;
    return val[it - col.begin()];
}

CsrMatrix CsrMatrix::transposed() const {
    CsrMatrix t;
    t.nrows = ncols;
    t.ncols = nrows;
    t.ptr.assign(ncols + 1, 0);
    for (int c : col) ++t.ptr[c + 1];
    for (int i = 0; i < ncols; ++i) t.ptr[i + 1] += t.ptr[i];
    t.col.resize(col.size());
    t.val.resize(val.size());
    std::vector<std::int64_t> next(t.ptr.begin(), t.ptr.end() - 1);
    for (int i = 0; i < nrows; ++i) {
        for (std::int64_t k = ptr[i]; k < ptr[i + 1]; ++k) {
            const std::int64_t pos = next[col[k]]++;
            t.col[pos] = i;
            t.val[pos] = val[k];
        }
    }
    return t;
}

bool CsrMatrix::pattern_symmetric() const {
    if (nrows != ncols) return false;
    const CsrMatrix t = transposed();
    return t.ptr == ptr && t.col == col;
}

bool CsrMatrix::value_symmetric(double tol) const {
    if (nrows != ncols) return false;
    const CsrMatrix t = transposed();
    for (int i = 0; i < nrows; ++i) {
        std::int64_t ka = ptr[i], kb = t.ptr[i];
        const std::int64_t ea = ptr[i + 1], eb = t.ptr[i + 1];
        while (ka < ea || kb < eb) {
            const int ca = ka < ea ? col[ka] : ncols;
            const int cb = kb < eb ? t.col[kb] : ncols;
            if (ca == cb) {
                if (std::abs(val[ka] - t.val[kb]) > tol) return false;
                ++ka;
                ++kb;
            } else if (ca < cb) {
                if (std::abs(val[ka]) > tol) return false;
                ++ka;
            } else {
                if (std::abs(t.val[kb]) > tol) return false;
                ++kb;
            }
        }
    }
    return true;
}

double CsrMatrix::inf_norm() const {
    double best = 0.0;
    for (int i = 0; i < nrows; ++i) {
        double s = 0.0;
        for (std::int64_t k = ptr[i]; k < ptr[i + 1]; ++k) s += std::abs(val[k]);
        best = std::max(best, s);
    }
    return best;
}

std::vector<std::vector<double>> CsrMatrix::to_dense() const {
    std::vector<std::vector<double>> d(nrows, std::vector<double>(ncols, 0.0));
    for (int i = 0; i < nrows; ++i)
        for (std::int64_t k = ptr[i]; k < ptr[i + 1]; ++k) d[i][col[k]] += val[k];
    return d;
}

CsrMatrix CsrMatrix::block(int rlo, int rhi, int clo, int chi) const {
    CsrMatrix b;
    b.nrows = rhi - rlo;
    b.ncols = chi - clo;
    b.ptr.assign(b.nrows + 1, 0);
    for (int i = rlo; i < rhi; ++i) {
        std::int64_t cnt = 0;
        for (std::int64_t k = ptr[i]; k < ptr[i + 1]; ++k)
            if (col[k] >= clo && col[k] < chi) ++cnt;
        b.ptr[i - rlo + 1] = b.ptr[i - rlo] + cnt;
    }
    b.col.reserve(b.ptr.back());
    b.val.reserve(b.ptr.back());
    for (int i = rlo; i < rhi; ++i) {
        for (std::int64_t k = ptr[i]; k < ptr[i + 1]; ++k) {
            if (col[k] >= clo && col[k] < chi) {
                b.col.push_back(col[k] - clo);
                b.val.push_back(val[k]);
            }
        }
    }
    return b;
}

CsrMatrix TripletBuilder::build(bool drop_zeros) const {
    std::vector<std::size_t> order(entries_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const Entry& ea = entries_[a];
        const Entry& eb = entries_[b];
        if (ea.row != eb.row) return ea.row < eb.row;
        return ea.col < eb.col;
    });

    CsrMatrix m;
    m.nrows = nrows_;
    m.ncols = ncols_;
    m.ptr.assign(nrows_ + 1, 0);

    std::size_t i = 0;
    while (i < order.size()) {
        const int row = entries_[order[i]].row;
        const int colv = entries_[order[i]].col;
        double sum = 0.0;
        while (i < order.size() && entries_[order[i]].row == row && entries_[order[i]].col == colv) {
            sum += entries_[order[i]].value;
            ++i;
        }
        if (drop_zeros && sum == 0.0) continue;
        m.col.push_back(colv);
        m.val.push_back(sum);
        ++m.ptr[row + 1];
    }
    for (int r = 0; r < nrows_; ++r) m.ptr[r + 1] += m.ptr[r];
    return m;
}

CsrMatrix add(const CsrMatrix& a, const CsrMatrix& b, double s) {
    if (a.nrows != b.nrows || a.ncols != b.ncols)
        throw SolverError("csr add: dimension mismatch");
    CsrMatrix c;
    c.nrows = a.nrows;
    c.ncols = a.ncols;
    c.ptr.assign(a.nrows + 1, 0);
    for (int i = 0; i < a.nrows; ++i) {
        std::int64_t ka = a.ptr[i], kb = b.ptr[i];
        while (ka < a.ptr[i + 1] || kb < b.ptr[i + 1]) {
            const int ca = ka < a.ptr[i + 1] ? a.col[ka] : a.ncols;
            const int cb = kb < b.ptr[i + 1] ? b.col[kb] : a.ncols;
            if (ca == cb) {
                c.col.push_back(ca);
                c.val.push_back(a.val[ka] + s * b.val[kb]);
                ++ka;
                ++kb;
            } else if (ca < cb) {
                c.col.push_back(ca);
                c.val.push_back(a.val[ka]);
                ++ka;
            } else {
                c.col.push_back(cb);
                c.val.push_back(s * b.val[kb]);
                ++kb;
            }
        }
        c.ptr[i + 1] = static_cast<std::int64_t>(c.col.size());
    }
    return c;
}

CsrMatrix matmul(const CsrMatrix& a, const CsrMatrix& b) {
    if (a.ncols != b.nrows) throw SolverError("csr matmul: dimension mismatch");
    CsrMatrix c;
    c.nrows = a.nrows;
    c.ncols = b.ncols;
    c.ptr.assign(a.nrows + 1, 0);

    std::vector<double> accum(b.ncols, 0.0);
    std::vector<int> marker(b.ncols, -1);
    std::vector<int> touched;
    for (int i = 0; i < a.nrows; ++i) {
        touched.clear();
        for (std::int64_t ka = a.ptr[i]; ka < a.ptr[i + 1]; ++ka) {
            const int k = a.col[ka];
            const double av = a.val[ka];
            for (std::int64_t kb = b.ptr[k]; kb < b.ptr[k + 1]; ++kb) {
                const int j = b.col[kb];
                if (marker[j] != i) {
                    marker[j] = i;
                    accum[j] = 0.0;
                    touched.push_back(j);
                }
                accum[j] += av * b.val[kb];
            }
        }
        std::sort(touched.begin(), touched.end());
        for (int j : touched) {
            c.col.push_back(j);
            c.val.push_back(accum[j]);
        }
        c.ptr[i + 1] = static_cast<std::int64_t>(c.col.size());
    }
    return c;
}

std::vector<double> residual(const CsrMatrix& a, const std::vector<double>& x,
                             const std::vector<double>& b) {
    std::vector<double> r = a.multiply(x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
    return r;
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace alecut
