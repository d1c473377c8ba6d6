#ifndef ALECUT_ALE_HPP
#define ALECUT_ALE_HPP

#include <vector>

#include "alecut/cutting.hpp"
#include "alecut/macro_mesh.hpp"
#include "alecut/vec3.hpp"

namespace alecut {

// Discrete ALE state between two consecutive cut states. Displacements are
// taken with respect to the midpoint configuration: a macro vertex never
// moves, and the node on edge (p,q) carries d = (s - 0.5) (q - p). The mesh
// velocity is the per-node finite difference (d_curr - d_prev) / dt.
struct AleState {
    std::vector<Vec3> d_prev;
    std::vector<Vec3> d_curr;
    std::vector<Vec3> w_nodes;
    double dt = 0.0;
};

AleState advance_ale(const CutState& prev, const CutState& curr, const MacroMesh& mesh,
                     double dt);

// Nodal values ride with their nodes under the discrete ALE map, so the
// transported previous solution keeps the same coefficient vector; the
// geometry change enters through assembly on the new node positions.
std::vector<double> transfer_previous_solution(const std::vector<double>& u_prev,
                                               const DofLayout& layout);

} // namespace alecut

#endif
