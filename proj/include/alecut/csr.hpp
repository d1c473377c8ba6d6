#ifndef ALECUT_CSR_HPP
#define ALECUT_CSR_HPP

#include <cstdint>
#include <vector>

namespace alecut {

// Compressed sparse row matrix with sorted column indices per row.
// All construction paths are deterministic: duplicate triplets are summed
// in insertion order, so repeated assembly is bitwise reproducible.
struct CsrMatrix {
    int nrows = 0;
    int ncols = 0;
    std::vector<std::int64_t> ptr{0};
    std::vector<int> col;
    std::vector<double> val;

    std::int64_t nnz() const { return static_cast<std::int64_t>(col.size()); }

    void multiply(const double* x, double* y) const;             // y = A x
    std::vector<double> multiply(const std::vector<double>& x) const;
    double entry(int i, int j) const;                            // 0 if absent
    CsrMatrix transposed() const;
    bool pattern_symmetric() const;
    bool value_symmetric(double tol) const;  // |a_ij - a_ji| <= tol, missing = 0
    double inf_norm() const;                 // max_i sum_j |a_ij|
    std::vector<std::vector<double>> to_dense() const;

    // Rows lo..hi-1, columns clo..chi-1 as a standalone matrix.
    CsrMatrix block(int rlo, int rhi, int clo, int chi) const;
};

// Accumulates (row, col, value) triplets and builds a CsrMatrix.
class TripletBuilder {
public:
    TripletBuilder(int nrows, int ncols) : nrows_(nrows), ncols_(ncols) {}

    void reserve(std::size_t n) { entries_.reserve(n); }
    void add(int row, int col, double value) { entries_.push_back({row, col, value}); }

    // Sums duplicates in insertion order; drops entries whose sum is exactly
    // zero when drop_zeros is set (keeps cut-dependent patterns minimal).
    CsrMatrix build(bool drop_zeros = false) const;

private:
    struct Entry {
        int row;
        int col;
        double value;
    };
    int nrows_;
    int ncols_;
    std::vector<Entry> entries_;
};

// C = A + s B (patterns merged).
CsrMatrix add(const CsrMatrix& a, const CsrMatrix& b, double s = 1.0);

// C = A B via deterministic row-merge.
CsrMatrix matmul(const CsrMatrix& a, const CsrMatrix& b);

std::vector<double> residual(const CsrMatrix& a, const std::vector<double>& x,
                             const std::vector<double>& b);

double norm2(const std::vector<double>& v);
double dot(const std::vector<double>& a, const std::vector<double>& b);

} // namespace alecut

#endif
