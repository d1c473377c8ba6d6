#include "alecut/ale.hpp"

#include <string>

#include "alecut/errors.hpp"
#include "alecut/parallel.hpp"

namespace alecut {

AleState advance_ale(const CutState& prev, const CutState& curr, const MacroMesh& mesh,
                     double dt) {
    if (dt <= 0.0) throw ConfigError("advance_ale: dt must be positive");
    const int ne = mesh.num_edges();
    if (static_cast<int>(prev.edge_param.size()) != ne ||
        static_cast<int>(curr.edge_param.size()) != ne)
        throw ConfigError("advance_ale: cut states do not match the mesh");

    const int nv = mesh.num_vertices();
    AleState ale;
    ale.dt = dt;
    ale.d_prev.assign(nv + ne, Vec3{});
    ale.d_curr.assign(nv + ne, Vec3{});
    ale.w_nodes.assign(nv + ne, Vec3{});

    parallel_for(ne, [&](std::int64_t e) {
        const Vec3 edge_vec = mesh.vertices[mesh.edges[e][1]] - mesh.vertices[mesh.edges[e][0]];
        ale.d_prev[nv + e] = (prev.edge_param[e] - 0.5) * edge_vec;
        ale.d_curr[nv + e] = (curr.edge_param[e] - 0.5) * edge_vec;
        ale.w_nodes[nv + e] = (1.0 / dt) * (ale.d_curr[nv + e] - ale.d_prev[nv + e]);
    });
    return ale;
}

std::vector<double> transfer_previous_solution(const std::vector<double>& u_prev,
                                               const DofLayout& layout) {
    if (static_cast<int>(u_prev.size()) != layout.num_dofs())
        throw AssemblyError("transfer_previous_solution: size mismatch, expected " +
                            std::to_string(layout.num_dofs()) + " dofs");
    return u_prev;
}

} // namespace alecut
