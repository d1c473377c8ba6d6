#ifndef ALECUT_FEM_HPP
#define ALECUT_FEM_HPP

#include <array>
#include <vector>

#include "alecut/ale.hpp"
#include "alecut/csr.hpp"
#include "alecut/cutting.hpp"
#include "alecut/macro_mesh.hpp"
#include "alecut/vec3.hpp"

namespace alecut {

// Scalar element matrices of a P1 tetrahedron. The three vector components
// decouple into identical scalar blocks, so everything element-level is 4x4
// (6x6 for condensed octahedra).
struct TetMatrices {
    std::array<std::array<double, 4>, 4> mass{};
    std::array<std::array<double, 4>, 4> stiffness{};   // coefficient included
    std::array<std::array<double, 4>, 4> convection{};  // C_ij = vol/4 w_i . grad(phi_j)
    double volume = 0.0;
};

TetMatrices tet_element_matrices(const std::array<Vec3, 4>& coords, double a,
                                 const std::array<Vec3, 4>& w_nodes);

// Condensed octahedron matrices. The auxiliary center node (coordinate mean
// of the six octa nodes) is assembled over the 8-tet split and eliminated by
// the averaging constraint u_c = (1/6) sum u_i, folding its row and column
// into the six retained nodes.
struct OctaMatrices {
    std::array<std::array<double, 6>, 6> mass{};
    std::array<std::array<double, 6>, 6> stiffness{};
    std::array<std::array<double, 6>, 6> convection{};
    double volume = 0.0;   // sum of the 8 split-tet volumes
};

OctaMatrices octa_element_matrices(const std::array<Vec3, 6>& coords, double a,
                                   const std::array<Vec3, 6>& w_nodes);

// Raw scalar operators on the hybrid mesh (no boundary conditions), one row
// and column per scalar node. Convection is empty when ale is null.
struct AssemblyParts {
    CsrMatrix mass;
    CsrMatrix stiffness;
    CsrMatrix convection;
};

AssemblyParts assemble_parts(const HybridMesh& hm, const DofLayout& layout,
                             const AleState* ale);

// Vector-valued block system in node-major DOF order (3 components per
// scalar node, vertex nodes before edge nodes): K u = f with Dirichlet rows
// and columns eliminated symmetrically.
struct BlockSystem {
    CsrMatrix K;
    std::vector<double> f;
    int num_vertex_nodes = 0;
    int num_nodes = 0;
    std::vector<std::uint8_t> dirichlet_mask;   // per scalar node
    std::vector<Vec3> dirichlet_value;          // valid where mask is set

    int num_dofs() const { return 3 * num_nodes; }
    int num_vertex_dofs() const { return 3 * num_vertex_nodes; }
};

struct DirichletData {
    Vec3 bottom;   // value on the z=0 plane
    Vec3 top;      // value on the z=1 plane
};

BlockSystem assemble_system(const HybridMesh& hm, const DofLayout& layout,
                            const AleState& ale, const std::vector<double>& u_prev,
                            double dt, const BoundaryTags& bc, const DirichletData& g);

// Expands a scalar (V+E) operator to the vector system (identical decoupled
// component blocks, node-major order).
CsrMatrix expand_to_vector(const CsrMatrix& scalar);

} // namespace alecut

#endif
