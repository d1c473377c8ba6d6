#include "alecut/macro_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "alecut/errors.hpp"

namespace alecut {

namespace {

// Axis orders of the 6 Kuhn tets in one cell. Each tet walks from the cell
// origin to the far corner adding one axis step at a time.
constexpr int kAxisPerms[6][3] = {
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
};

constexpr bool kPermEven[6] = {true, false, false, true, true, false};

std::int64_t edge_key(int a, int b, int num_vertices) {
    if (a > b) std::swap(a, b);
    return static_cast<std::int64_t>(a) * num_vertices + b;
}

} // namespace

MacroMesh build_macro_mesh(int n) {
    if (n < 1) throw ConfigError("build_macro_mesh: resolution must be >= 1");

    MacroMesh mesh;
    mesh.n = n;
    mesh.h = 1.0 / n;

    const int np = n + 1;
    const auto vid = [np](int i, int j, int k) { return i + np * (j + np * k); };

    mesh.vertices.resize(static_cast<std::size_t>(np) * np * np);
    for (int k = 0; k < np; ++k)
        for (int j = 0; j < np; ++j)
            for (int i = 0; i < np; ++i)
                mesh.vertices[vid(i, j, k)] = {double(i) / n, double(j) / n, double(k) / n};

    mesh.tets.reserve(static_cast<std::size_t>(6) * n * n * n);
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) {
                for (int p = 0; p < 6; ++p) {
                    int c[3] = {i, j, k};
                    std::array<int, 4> tet{};
                    tet[0] = vid(c[0], c[1], c[2]);
                    c[kAxisPerms[p][0]] += 1;
                    tet[1] = vid(c[0], c[1], c[2]);
                    c[kAxisPerms[p][1]] += 1;
                    tet[2] = vid(c[0], c[1], c[2]);
                    tet[3] = vid(i + 1, j + 1, k + 1);
                    // Odd axis orders give a negative volume; swap the two
                    // interior vertices so all tets are positively oriented.
                    if (!kPermEven[p]) std::swap(tet[1], tet[2]);
                    mesh.tets.push_back(tet);
                }
            }
        }
    }

    // Global edge enumeration: collect all tet edges as (lo, hi) keys,
    // sort and deduplicate, then resolve per-tet edge ids by binary search.
    const int nv = mesh.num_vertices();
    std::vector<std::int64_t> keys;
    keys.reserve(mesh.tets.size() * 6);
    constexpr int kLocalEdge[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    for (const auto& tet : mesh.tets)
        for (const auto& le : kLocalEdge)
            keys.push_back(edge_key(tet[le[0]], tet[le[1]], nv));
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

    mesh.edges.resize(keys.size());
    for (std::size_t e = 0; e < keys.size(); ++e)
        mesh.edges[e] = {static_cast<int>(keys[e] / nv), static_cast<int>(keys[e] % nv)};

    mesh.tet_edges.resize(mesh.tets.size());
    for (std::size_t t = 0; t < mesh.tets.size(); ++t) {
        for (int le = 0; le < 6; ++le) {
            const std::int64_t key =
                edge_key(mesh.tets[t][kLocalEdge[le][0]], mesh.tets[t][kLocalEdge[le][1]], nv);
            const auto it = std::lower_bound(keys.begin(), keys.end(), key);
            mesh.tet_edges[t][le] = static_cast<int>(it - keys.begin());
        }
    }

    return mesh;
}

DofLayout dof_layout(const MacroMesh& mesh) {
    return DofLayout{mesh.num_vertices(), mesh.num_edges()};
}

BoundaryTags boundary_classify(const MacroMesh& mesh) {
    // Reference coordinates are exact multiples of 1/n, so a tight absolute
    // tolerance on z is enough.
    constexpr double kTol = 1e-12;
    const auto classify = [](double z) {
        if (std::abs(z) <= kTol) return NodeTag::kDirichletBottom;
        if (std::abs(z - 1.0) <= kTol) return NodeTag::kDirichletTop;
        return NodeTag::kNeumann;
    };

    BoundaryTags tags;
    tags.node_tags.resize(mesh.num_vertices() + mesh.num_edges());
    for (int v = 0; v < mesh.num_vertices(); ++v)
        tags.node_tags[v] = classify(mesh.vertices[v].z);
    for (int e = 0; e < mesh.num_edges(); ++e) {
        const Vec3 mid = 0.5 * (mesh.vertices[mesh.edges[e][0]] + mesh.vertices[mesh.edges[e][1]]);
        tags.node_tags[mesh.num_vertices() + e] = classify(mid.z);
    }
    return tags;
}

} // namespace alecut
