#ifndef ALECUT_AMG_HPP
#define ALECUT_AMG_HPP

#include <memory>
#include <vector>

#include "alecut/csr.hpp"

namespace alecut {

struct AmgOptions {
    int coarsest_cap = 200;    // direct-solve below this dimension
    int max_levels = 40;
    int pre_sweeps = 1;        // forward Gauss-Seidel
    int post_sweeps = 1;       // backward Gauss-Seidel
    double stall_ratio = 0.9;  // stop coarsening when nc > ratio * n
};

// Graph-based algebraic multigrid built from the matrix alone: coarse nodes
// are a greedy maximal independent set of the adjacency graph (ascending
// node index), fine nodes interpolate by equal-weight averaging of their
// adjacent coarse nodes, coarse operators are Galerkin products, and the
// coarsest level is factorized directly. One apply() runs one V-cycle with
// symmetric Gauss-Seidel smoothing, so the operator is SPD whenever the
// matrix is.
class AmgHierarchy {
public:
    struct Level {
        CsrMatrix A;
        CsrMatrix P;    // prolongation to this level from the next coarser
        CsrMatrix Pt;
        std::vector<double> diag;
    };

    // z = M^{-1} r, one V-cycle from a zero initial guess.
    std::vector<double> apply(const std::vector<double>& r) const;

    int num_levels() const { return static_cast<int>(levels_.size()) + 1; }
    const std::vector<Level>& levels() const { return levels_; }
    const CsrMatrix& coarse_matrix() const { return coarse_a_; }
    int fine_dim() const;

private:
    friend AmgHierarchy build_amg(const CsrMatrix& K, const AmgOptions& opts);

    void cycle(std::size_t level, const std::vector<double>& b, std::vector<double>& x) const;

    struct CoarseSolver;
    std::vector<Level> levels_;
    CsrMatrix coarse_a_;
    std::shared_ptr<const CoarseSolver> coarse_solver_;
    AmgOptions opts_;
};

AmgHierarchy build_amg(const CsrMatrix& K, const AmgOptions& opts = {});

// Greedy maximal independent set of the matrix adjacency graph, by
// ascending node index; returns 1 for coarse nodes. Exposed for tests.
std::vector<std::uint8_t> amg_coarse_flags(const CsrMatrix& a);

} // namespace alecut

#endif
