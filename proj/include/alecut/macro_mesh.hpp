#ifndef ALECUT_MACRO_MESH_HPP
#define ALECUT_MACRO_MESH_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "alecut/vec3.hpp"

namespace alecut {

// Fixed reference mesh of the unit cube: n x n x n cells, each split into
// 6 tetrahedra around the cell's main diagonal (Kuhn split), so neighboring
// cells conform. Immutable after construction.
//
// Every macro tet lists its 6 edges in the local order
//   (0,1), (0,2), (0,3), (1,2), (1,3), (2,3)
// so the edge-node numbering 4..9 used by the subdivision is deterministic.
struct MacroMesh {
    int n = 0;                                   // cells per cube side
    double h = 0.0;                              // macro cell edge length, 1/n
    std::vector<Vec3> vertices;                  // (n+1)^3 points in [0,1]^3
    std::vector<std::array<int, 4>> tets;        // 6 n^3 macro tets, positively oriented
    std::vector<std::array<int, 2>> edges;       // global edges, each (lo, hi), deduplicated
    std::vector<std::array<int, 6>> tet_edges;   // per tet, global edge ids in local order

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int num_edges() const { return static_cast<int>(edges.size()); }
    int num_tets() const { return static_cast<int>(tets.size()); }
};

MacroMesh build_macro_mesh(int n);

// Global scalar-node ordering: macro vertices first (0..V-1), then edge
// nodes (V..V+E-1). Vector DOF of component c at scalar node i is 3i+c.
struct DofLayout {
    int num_vertices = 0;
    int num_edges = 0;

    int num_nodes() const { return num_vertices + num_edges; }
    int num_dofs() const { return 3 * num_nodes(); }
    int edge_node(int edge) const { return num_vertices + edge; }
    int dof(int node, int comp) const { return 3 * node + comp; }
};

DofLayout dof_layout(const MacroMesh& mesh);

enum class NodeTag : std::uint8_t {
    kNeumann = 0,
    kDirichletBottom = 1,
    kDirichletTop = 2,
};

// One tag per scalar node. Vertices are classified by their reference
// coordinates, edge nodes by the midpoint of their reference edge.
struct BoundaryTags {
    std::vector<NodeTag> node_tags;

    bool is_dirichlet(int node) const { return node_tags[node] != NodeTag::kNeumann; }
};

BoundaryTags boundary_classify(const MacroMesh& mesh);

} // namespace alecut

#endif
