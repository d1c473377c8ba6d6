#ifndef ALECUT_SOLVERS_HPP
#define ALECUT_SOLVERS_HPP

#include <string>
#include <vector>

#include "alecut/amg.hpp"
#include "alecut/csr.hpp"
#include "alecut/fem.hpp"

namespace alecut {

struct SolveReport {
    std::string method;          // "CG" | "GMRES" | "SCHUR_CG"
    int iterations = 0;
    double rel_residual = 0.0;   // true residual of the solved system
    double seconds = 0.0;
    bool converged = false;
    std::string note;            // set on breakdown / stagnation
};

struct KrylovOptions {
    double tol = 1e-9;     // relative residual target
    int maxit = 2000;
    int restart = 30;      // GMRES only
};

// AMG-preconditioned conjugate gradients. Convergence is checked on the
// true residual ||f - K u|| / ||f||. A non-positive curvature or
// preconditioner product is reported as a breakdown (converged = false);
// the caller may fall back to GMRES.
SolveReport solve_pcg(const CsrMatrix& K, const std::vector<double>& f,
                      const AmgHierarchy& M, std::vector<double>& u,
                      const KrylovOptions& opts);

// Left-preconditioned restarted GMRES with the same residual contract.
// Reports stagnation when a full restart cycle fails to reduce the true
// residual.
SolveReport solve_gmres(const CsrMatrix& K, const std::vector<double>& f,
                        const AmgHierarchy& M, std::vector<double>& u,
                        const KrylovOptions& opts);

// Block LU / Schur-complement solve of the V/E system: inverts the
// block-diagonal A_VV exactly, builds S = A_EE - A_EV A_VV^{-1} A_VE as a
// sparse matrix, runs AMG-PCG on the Schur equation and back-substitutes.
SolveReport solve_segregated(const BlockSystem& sys, std::vector<double>& u,
                             const KrylovOptions& opts,
                             const AmgOptions& amg_opts = {});

// Pieces of the segregated method, exposed for verification.
struct SchurParts {
    CsrMatrix A_VV;
    CsrMatrix A_VE;
    CsrMatrix A_EV;
    CsrMatrix A_EE;
    CsrMatrix A_VV_inv;   // exact blockwise inverse
    CsrMatrix S;          // A_EE - A_EV A_VV^{-1} A_VE
};

SchurParts build_schur_parts(const BlockSystem& sys);

} // namespace alecut

#endif
