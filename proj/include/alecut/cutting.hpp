#ifndef ALECUT_CUTTING_HPP
#define ALECUT_CUTTING_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "alecut/macro_mesh.hpp"
#include "alecut/vec3.hpp"

namespace alecut {

enum class LevelSetKind : std::uint8_t {
    kMovingSphere = 0,
    kGrowingSphere = 1,
};

// Signed-distance level set of the two scenario shapes: negative inside the
// immersed object, positive outside, zero on the interface.
struct LevelSet {
    LevelSetKind kind = LevelSetKind::kMovingSphere;
    Vec3 center0;
    double radius0 = 0.0;
    Vec3 velocity;        // translation speed (moving sphere)
    double speed = 0.0;   // radial growth speed (growing sphere)

    double eval(const Vec3& x, double t) const;

    static LevelSet moving_sphere(const Vec3& center0, double radius, const Vec3& velocity);
    static LevelSet growing_sphere(const Vec3& center0, double radius0, double speed);
};

using LevelSetFn = std::function<double(const Vec3&, double)>;

// Per-step edge-node placements induced by the level set. edge_param is the
// position s in [0,1] of the edge node along its reference edge: 0.5 on
// uncut edges, the interface intersection (clamped to [eps_cut, 1-eps_cut])
// on cut edges. node_side is -1 inside / +1 outside for macro vertices and
// uncut edge nodes, 0 for intersection nodes.
struct CutState {
    double time = 0.0;
    double eps_cut = 0.05;
    std::vector<double> edge_param;
    std::vector<std::uint8_t> edge_is_cut;
    std::vector<std::int8_t> node_side;
};

constexpr double kDefaultEpsCut = 0.05;

CutState compute_cut(const MacroMesh& mesh, const LevelSet& ls, double t,
                     double eps_cut = kDefaultEpsCut);
CutState compute_cut(const MacroMesh& mesh, const LevelSetFn& phi, double t,
                     double eps_cut = kDefaultEpsCut);

// Current-configuration mesh: per macro tet 4 corner sub-tets and 1
// octahedron spanned by the 6 edge nodes. Macro vertices never move; edge
// node i sits at edge_param[i] along its reference edge.
//
// Octahedron node order: apex, 4-cycle equator, apex (local numbering of the
// 8-tet split; apexes are the edge nodes on edges (0,2) and (1,3)).
struct HybridMesh {
    std::vector<Vec3> node_coords;                // V + E scalar nodes
    std::vector<std::array<int, 4>> sub_tets;     // 4 per macro tet
    std::vector<std::array<int, 6>> octas;        // 1 per macro tet
    std::vector<double> sub_tet_coeff;            // a1 or a2, per sub tet
    std::vector<double> octa_coeff;               // a1 or a2, per octahedron

    int num_sub_tets() const { return static_cast<int>(sub_tets.size()); }
    int num_octas() const { return static_cast<int>(octas.size()); }
};

HybridMesh subdivide(const MacroMesh& mesh, const CutState& cut, const LevelSet& ls,
                     double a1, double a2);
HybridMesh subdivide(const MacroMesh& mesh, const CutState& cut, const LevelSetFn& phi,
                     double a1, double a2);

// Triangulated interface: vertices are identified by global edge index (the
// intersection node on that edge); triangles are oriented with the normal
// pointing from the inside region (phi < 0) to the outside.
struct SurfaceMesh {
    std::vector<std::array<int, 3>> triangles;   // global edge indices
    std::vector<int> edge_of_vertex;             // used edges, in first-use order
    std::vector<Vec3> vertex_coords;             // positions of those edge nodes
    std::vector<std::array<int, 3>> compact_triangles; // indices into vertex_coords

    bool empty() const { return triangles.empty(); }
};

SurfaceMesh reconstruct_surface(const MacroMesh& mesh, const CutState& cut);

// Enclosed volume of a closed oriented triangle surface (divergence theorem).
double surface_volume(const SurfaceMesh& surface);

} // namespace alecut

#endif
