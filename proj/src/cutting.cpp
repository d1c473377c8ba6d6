#include "alecut/cutting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "alecut/errors.hpp"
#include "alecut/parallel.hpp"

namespace alecut {

namespace {

// Vertices with |phi| <= kSideTol count as inside; deterministic tie rule.
constexpr double kSideTol = 1e-12;
constexpr double kBisectTol = 1e-12;

int side_of(double phi) { return phi > kSideTol ? +1 : -1; }

// Local edge-node numbering of a macro tet: node 4=(0,1), 5=(1,2), 6=(0,2),
// 7=(0,3), 8=(1,3), 9=(2,3), expressed as indices into tet_edges (which is
// ordered (0,1),(0,2),(0,3),(1,2),(1,3),(2,3)).
constexpr int kEdgeOfLocalNode[6] = {0, 3, 1, 2, 4, 5};

int local_node_edge(const MacroMesh& mesh, int tet, int local_node) {
    return mesh.tet_edges[tet][kEdgeOfLocalNode[local_node - 4]];
}

} // namespace

double LevelSet::eval(const Vec3& x, double t) const {
    if (kind == LevelSetKind::kMovingSphere)
        return norm(x - (center0 + t * velocity)) - radius0;
    return norm(x - center0) - (radius0 + speed * t);
}

LevelSet LevelSet::moving_sphere(const Vec3& center0, double radius, const Vec3& velocity) {
    LevelSet ls;
    ls.kind = LevelSetKind::kMovingSphere;
    ls.center0 = center0;
    ls.radius0 = radius;
    ls.velocity = velocity;
    return ls;
}

LevelSet LevelSet::growing_sphere(const Vec3& center0, double radius0, double speed) {
    LevelSet ls;
    ls.kind = LevelSetKind::kGrowingSphere;
    ls.center0 = center0;
    ls.radius0 = radius0;
    ls.speed = speed;
    return ls;
}

CutState compute_cut(const MacroMesh& mesh, const LevelSet& ls, double t, double eps_cut) {
    return compute_cut(
        mesh, [&ls](const Vec3& x, double time) { return ls.eval(x, time); }, t, eps_cut);
}

CutState compute_cut(const MacroMesh& mesh, const LevelSetFn& phi, double t, double eps_cut) {
    if (!(eps_cut > 0.0 && eps_cut < 0.5))
        throw ConfigError("compute_cut: eps_cut must lie in (0, 0.5)");

    const int nv = mesh.num_vertices();
    const int ne = mesh.num_edges();

    CutState cut;
    cut.time = t;
    cut.eps_cut = eps_cut;
    cut.edge_param.assign(ne, 0.5);
    cut.edge_is_cut.assign(ne, 0);
    cut.node_side.assign(nv + ne, 0);

    std::vector<double> vertex_phi(nv);
    parallel_for(nv, [&](std::int64_t v) {
        vertex_phi[v] = phi(mesh.vertices[v], t);
    });
    for (int v = 0; v < nv; ++v) cut.node_side[v] = static_cast<std::int8_t>(side_of(vertex_phi[v]));

    std::vector<std::int8_t> edge_error(ne, 0);
    parallel_for(ne, [&](std::int64_t e) {
        const int a = mesh.edges[e][0];
        const int b = mesh.edges[e][1];
        const Vec3 p = mesh.vertices[a];
        const Vec3 q = mesh.vertices[b];
        const int sa = cut.node_side[a];
        const int sb = cut.node_side[b];

        if (sa == sb) {
            // Same-sign endpoints. A sign flip at the midpoint means the
            // interface crosses this edge at least twice; grazes that stay
            // below midpoint resolution are left uncaptured.
            if (side_of(phi(0.5 * (p + q), t)) != sa) {
                edge_error[e] = 1;
                return;
            }
            cut.node_side[nv + e] = static_cast<std::int8_t>(sa);
            return;
        }

        // Bisection for the root of phi along the edge, in the edge
        // parameter s, to absolute tolerance kBisectTol.
        double lo = 0.0, hi = 1.0;
        int side_lo = sa;
        while (hi - lo > kBisectTol) {
            const double mid = 0.5 * (lo + hi);
            const int sm = side_of(phi(p + mid * (q - p), t));
            if (sm == side_lo)
                lo = mid;
            else
                hi = mid;
        }
        const double s = std::clamp(0.5 * (lo + hi), eps_cut, 1.0 - eps_cut);
        cut.edge_param[e] = s;
        cut.edge_is_cut[e] = 1;
        cut.node_side[nv + e] = 0;
    });

    for (int e = 0; e < ne; ++e) {
        if (edge_error[e]) {
            throw ResolutionError(
                "compute_cut: interface crosses edge " + std::to_string(e) +
                " more than once at t=" + std::to_string(t) +
                "; refine the mesh to resolve the interface");
        }
    }
    return cut;
}

HybridMesh subdivide(const MacroMesh& mesh, const CutState& cut, const LevelSet& ls,
                     double a1, double a2) {
    return subdivide(
        mesh, cut, [&ls](const Vec3& x, double time) { return ls.eval(x, time); }, a1, a2);
}

HybridMesh subdivide(const MacroMesh& mesh, const CutState& cut, const LevelSetFn& phi,
                     double a1, double a2) {
    const int nv = mesh.num_vertices();
    const int ne = mesh.num_edges();
    if (static_cast<int>(cut.edge_param.size()) != ne)
        throw ConfigError("subdivide: cut state does not match mesh resolution");

    HybridMesh hm;
    hm.node_coords.resize(nv + ne);
    for (int v = 0; v < nv; ++v) hm.node_coords[v] = mesh.vertices[v];
    parallel_for(ne, [&](std::int64_t e) {
        const Vec3 p = mesh.vertices[mesh.edges[e][0]];
        const Vec3 q = mesh.vertices[mesh.edges[e][1]];
        hm.node_coords[nv + e] = p + cut.edge_param[e] * (q - p);
    });

    const int nt = mesh.num_tets();
    hm.sub_tets.resize(static_cast<std::size_t>(nt) * 4);
    hm.octas.resize(nt);
    hm.sub_tet_coeff.resize(static_cast<std::size_t>(nt) * 4);
    hm.octa_coeff.resize(nt);

    // Corner sub-tets {0,4,6,7}, {4,1,5,8}, {6,5,2,9}, {7,8,9,3} in local
    // macro numbering (vertices 0-3, edge nodes 4-9).
    constexpr int kCorner[4][4] = {
        {0, 4, 6, 7}, {4, 1, 5, 8}, {6, 5, 2, 9}, {7, 8, 9, 3}};
    // Octahedron {6,4,5,9,7,8}: apexes 6 and 8, equator cycle 4,5,9,7.
    constexpr int kOcta[6] = {6, 4, 5, 9, 7, 8};

    std::vector<std::int8_t> tet_error(nt, 0);
    parallel_for(nt, [&](std::int64_t m) {
        int local[10];
        for (int i = 0; i < 4; ++i) local[i] = mesh.tets[m][i];
        for (int i = 4; i < 10; ++i) local[i] = nv + local_node_edge(mesh, static_cast<int>(m), i);

        for (int c = 0; c < 4; ++c) {
            std::array<int, 4>& st = hm.sub_tets[4 * m + c];
            for (int i = 0; i < 4; ++i) st[i] = local[kCorner[c][i]];
            if (tet_volume(hm.node_coords[st[0]], hm.node_coords[st[1]],
                           hm.node_coords[st[2]], hm.node_coords[st[3]]) <= 0.0) {
                tet_error[m] = 1;
                return;
            }
            Vec3 centroid;
            for (int i = 0; i < 4; ++i) centroid += hm.node_coords[st[i]];
            centroid = 0.25 * centroid;
            hm.sub_tet_coeff[4 * m + c] = phi(centroid, cut.time) < 0.0 ? a1 : a2;
        }

        std::array<int, 6>& oc = hm.octas[m];
        for (int i = 0; i < 6; ++i) oc[i] = local[kOcta[i]];
        Vec3 centroid;
        for (int i = 0; i < 6; ++i) centroid += hm.node_coords[oc[i]];
        centroid = (1.0 / 6.0) * centroid;
        hm.octa_coeff[m] = phi(centroid, cut.time) < 0.0 ? a1 : a2;
    });

    for (int m = 0; m < nt; ++m) {
        if (tet_error[m])
            throw DegenerateCutError("subdivide: non-positive sub-tet volume in macro tet " +
                                     std::to_string(m));
    }
    return hm;
}

namespace {

void push_surface_triangle(SurfaceMesh& surface, std::vector<int>& vertex_of_edge,
                           const std::array<int, 3>& edges, const std::array<Vec3, 3>& coords) {
    surface.triangles.push_back(edges);
    std::array<int, 3> compact{};
    for (int i = 0; i < 3; ++i) {
        if (vertex_of_edge[edges[i]] < 0) {
            vertex_of_edge[edges[i]] = static_cast<int>(surface.edge_of_vertex.size());
            surface.edge_of_vertex.push_back(edges[i]);
            surface.vertex_coords.push_back(coords[i]);
        }
        compact[i] = vertex_of_edge[edges[i]];
    }
    surface.compact_triangles.push_back(compact);
}

} // namespace

SurfaceMesh reconstruct_surface(const MacroMesh& mesh, const CutState& cut) {
    SurfaceMesh surface;
    std::vector<int> vertex_of_edge(mesh.num_edges(), -1);

    // Local edges by endpoint pair, matching tet_edges order.
    constexpr int kLocalEdge[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

    const auto cut_point = [&](int edge) {
        const Vec3 p = mesh.vertices[mesh.edges[edge][0]];
        const Vec3 q = mesh.vertices[mesh.edges[edge][1]];
        return p + cut.edge_param[edge] * (q - p);
    };

    for (int m = 0; m < mesh.num_tets(); ++m) {
        int n_cut = 0;
        std::array<int, 6> cut_local{};
        for (int le = 0; le < 6; ++le)
            if (cut.edge_is_cut[mesh.tet_edges[m][le]]) cut_local[n_cut++] = le;

        if (n_cut == 0) continue;
        if (n_cut != 3 && n_cut != 4)
            throw ResolutionError("reconstruct_surface: inconsistent cut pattern (" +
                                  std::to_string(n_cut) + " cut edges) in macro tet " +
                                  std::to_string(m));

        const auto side = [&](int local_vertex) {
            return static_cast<int>(cut.node_side[mesh.tets[m][local_vertex]]);
        };

        if (n_cut == 3) {
            // One vertex is separated from the other three; its three
            // incident edges carry the triangle.
            int lone = -1;
            for (int v = 0; v < 4; ++v) {
                int others = 0;
                for (int w = 0; w < 4; ++w)
                    if (w != v && side(w) == side(v)) ++others;
                if (others == 0) lone = v;
            }
            if (lone < 0)
                throw ResolutionError("reconstruct_surface: 3-cut tet without a lone vertex");
            std::array<int, 3> tri_edges{};
            int k = 0;
            for (int c = 0; c < n_cut; ++c) {
                const auto& le = kLocalEdge[cut_local[c]];
                if (le[0] == lone || le[1] == lone)
                    tri_edges[k++] = mesh.tet_edges[m][cut_local[c]];
            }
            if (k != 3)
                throw ResolutionError("reconstruct_surface: cut edges do not share the lone vertex");

            std::array<Vec3, 3> pts{cut_point(tri_edges[0]), cut_point(tri_edges[1]),
                                    cut_point(tri_edges[2])};
            const Vec3 normal = cross(pts[1] - pts[0], pts[2] - pts[0]);
            const Vec3 centroid = (1.0 / 3.0) * (pts[0] + pts[1] + pts[2]);
            const Vec3 to_lone = mesh.vertices[mesh.tets[m][lone]] - centroid;
            // Normal points from the inside region to the outside.
            if ((dot(normal, to_lone) > 0.0) != (side(lone) > 0)) {
                std::swap(tri_edges[1], tri_edges[2]);
                std::swap(pts[1], pts[2]);
            }
            push_surface_triangle(surface, vertex_of_edge, tri_edges, pts);
        } else {
            // Two vertices on each side; the four cut edges form a
            // quadrilateral split along its shorter diagonal.
            std::array<int, 2> in{}, out{};
            int ni = 0, no = 0;
            for (int v = 0; v < 4; ++v) {
                if (side(v) < 0)
                    in[ni++] = v;
                else
                    out[no++] = v;
            }
            if (ni != 2 || no != 2)
                throw ResolutionError("reconstruct_surface: 4-cut tet without a 2-2 split");

            const auto edge_between = [&](int va, int vb) {
                for (int le = 0; le < 6; ++le) {
                    const auto& pair = kLocalEdge[le];
                    if ((pair[0] == va && pair[1] == vb) || (pair[0] == vb && pair[1] == va))
                        return mesh.tet_edges[m][le];
                }
                throw ResolutionError("reconstruct_surface: missing edge in 4-cut tet");
            };
            // Cycle q0-q1-q2-q3: consecutive corners share a tet vertex.
            const std::array<int, 4> quad = {
                edge_between(in[0], out[0]), edge_between(in[0], out[1]),
                edge_between(in[1], out[1]), edge_between(in[1], out[0])};
            std::array<Vec3, 4> qp{};
            for (int i = 0; i < 4; ++i) qp[i] = cut_point(quad[i]);

            const double d02 = norm2(qp[0] - qp[2]);
            const double d13 = norm2(qp[1] - qp[3]);
            bool use02 = d02 < d13;
            if (d02 == d13)
                use02 = std::min(quad[0], quad[2]) < std::min(quad[1], quad[3]);

            const Vec3 dir = 0.5 * (mesh.vertices[mesh.tets[m][out[0]]] +
                                    mesh.vertices[mesh.tets[m][out[1]]]) -
                             0.5 * (mesh.vertices[mesh.tets[m][in[0]]] +
                                    mesh.vertices[mesh.tets[m][in[1]]]);
            const auto emit = [&](int a, int b, int c) {
                std::array<int, 3> tri{quad[a], quad[b], quad[c]};
                std::array<Vec3, 3> pts{qp[a], qp[b], qp[c]};
                if (dot(cross(pts[1] - pts[0], pts[2] - pts[0]), dir) < 0.0) {
                    std::swap(tri[1], tri[2]);
                    std::swap(pts[1], pts[2]);
                }
                push_surface_triangle(surface, vertex_of_edge, tri, pts);
            };
            if (use02) {
                emit(0, 1, 2);
                emit(0, 2, 3);
            } else {
                emit(1, 2, 3);
                emit(1, 3, 0);
            }
        }
    }

    return surface;
}

double surface_volume(const SurfaceMesh& surface) {
    double vol = 0.0;
    for (const auto& tri : surface.compact_triangles) {
        const Vec3& a = surface.vertex_coords[tri[0]];
        const Vec3& b = surface.vertex_coords[tri[1]];
        const Vec3& c = surface.vertex_coords[tri[2]];
        vol += dot(a, cross(b, c)) / 6.0;
    }
    return vol;
}

} // namespace alecut
