#include "alecut/fem.hpp"

#include <cmath>
#include <string>

#include "alecut/errors.hpp"
#include "alecut/parallel.hpp"

namespace alecut {

namespace {

struct TetGeometry {
    double volume;
    std::array<Vec3, 4> grad;   // gradients of the barycentric coordinates
};

TetGeometry tet_geometry(const Vec3& p0, const Vec3& p1, const Vec3& p2, const Vec3& p3) {
    const Vec3 e1 = p1 - p0, e2 = p2 - p0, e3 = p3 - p0;
    const double det = dot(cross(e1, e2), e3);
    TetGeometry g;
    g.volume = det / 6.0;
    // Rows of the inverse Jacobian, scaled by 1/det.
    g.grad[1] = (1.0 / det) * cross(e2, e3);
    g.grad[2] = (1.0 / det) * cross(e3, e1);
    g.grad[3] = (1.0 / det) * cross(e1, e2);
    g.grad[0] = -1.0 * (g.grad[1] + g.grad[2] + g.grad[3]);
    return g;
}

} // namespace

TetMatrices tet_element_matrices(const std::array<Vec3, 4>& coords, double a,
                                 const std::array<Vec3, 4>& w_nodes) {
    const TetGeometry g = tet_geometry(coords[0], coords[1], coords[2], coords[3]);
    if (!(g.volume > 0.0))
        throw AssemblyError("tet_element_matrices: non-positive tet volume");

    TetMatrices m;
    m.volume = g.volume;
    for (int i = 0; i < 4; ++i) {
        for (int j = i; j < 4; ++j) {
            m.mass[i][j] = m.mass[j][i] = g.volume / (i == j ? 10.0 : 20.0);
            const double k = a * g.volume * dot(g.grad[i], g.grad[j]);
            m.stiffness[i][j] = m.stiffness[j][i] = k;
        }
    }
    // Nodal (vertex) quadrature: the test function collapses onto its node,
    // leaving C_ij = vol/4 * w_i . grad(phi_j).
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            m.convection[i][j] = 0.25 * g.volume * dot(w_nodes[i], g.grad[j]);
    return m;
}

namespace {

// 8-tet split of the octahedron (local numbering: 0 and 5 apexes, 1-4 the
// equator cycle, 6 the added center node).
constexpr int kOctaSplit[8][4] = {
    {0, 1, 2, 6}, {0, 2, 3, 6}, {0, 3, 4, 6}, {0, 1, 4, 6},
    {5, 1, 4, 6}, {5, 1, 2, 6}, {5, 2, 3, 6}, {5, 3, 4, 6},
};

template <int N>
using Dense = std::array<std::array<double, N>, N>;

// Folds row/column 6 of a 7x7 matrix into the first six nodes via the
// averaging constraint u_6 = (1/6) sum_{i<6} u_i.
Dense<6> condense_center(const Dense<7>& a) {
    Dense<6> c{};
    constexpr double w = 1.0 / 6.0;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            c[i][j] = a[i][j] + w * a[i][6] + w * a[6][j] + w * w * a[6][6];
    return c;
}

} // namespace

OctaMatrices octa_element_matrices(const std::array<Vec3, 6>& coords, double a,
                                   const std::array<Vec3, 6>& w_nodes) {
    std::array<Vec3, 7> pts;
    std::array<Vec3, 7> w;
    Vec3 center, w_center;
    for (int i = 0; i < 6; ++i) {
        pts[i] = coords[i];
        w[i] = w_nodes[i];
        center += coords[i];
        w_center += w_nodes[i];
    }
    pts[6] = (1.0 / 6.0) * center;
    w[6] = (1.0 / 6.0) * w_center;

    Dense<7> mass{}, stiffness{}, convection{};
    double volume = 0.0;

    for (const auto& split : kOctaSplit) {
        std::array<int, 4> ids = {split[0], split[1], split[2], split[3]};
        double vol = tet_volume(pts[ids[0]], pts[ids[1]], pts[ids[2]], pts[ids[3]]);
        if (vol < 0.0) {
            std::swap(ids[2], ids[3]);
            vol = -vol;
        }
        if (!(vol > 0.0))
            throw DegenerateCutError("octa_element_matrices: degenerate split tet");
        volume += vol;

        const TetMatrices tm = tet_element_matrices(
            {pts[ids[0]], pts[ids[1]], pts[ids[2]], pts[ids[3]]}, a,
            {w[ids[0]], w[ids[1]], w[ids[2]], w[ids[3]]});
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                mass[ids[i]][ids[j]] += tm.mass[i][j];
                stiffness[ids[i]][ids[j]] += tm.stiffness[i][j];
                convection[ids[i]][ids[j]] += tm.convection[i][j];
            }
        }
    }

    OctaMatrices m;
    m.volume = volume;
    m.mass = condense_center(mass);
    m.stiffness = condense_center(stiffness);
    m.convection = condense_center(convection);
    // Mirror the symmetric parts so stored transposed entries are bitwise equal.
    for (int i = 0; i < 6; ++i) {
        for (int j = i + 1; j < 6; ++j) {
            m.mass[j][i] = m.mass[i][j];
            m.stiffness[j][i] = m.stiffness[i][j];
        }
    }
    return m;
}

AssemblyParts assemble_parts(const HybridMesh& hm, const DofLayout& layout,
                             const AleState* ale) {
    const int n = layout.num_nodes();
    TripletBuilder mass_b(n, n), stiff_b(n, n), conv_b(n, n);
    const std::size_t guess = hm.sub_tets.size() * 16 + hm.octas.size() * 36;
    mass_b.reserve(guess);
    stiff_b.reserve(guess);
    if (ale != nullptr) conv_b.reserve(guess);

    static const std::array<Vec3, 4> kZeroW4{};
    static const std::array<Vec3, 6> kZeroW6{};

    // Element matrices are independent; compute them into per-element slots
    // (parallelizable), then scatter serially in element order so the global
    // sums are identical for any worker count.
    std::vector<TetMatrices> tet_mats(hm.sub_tets.size());
    parallel_for(static_cast<std::int64_t>(hm.sub_tets.size()), [&](std::int64_t t) {
        const auto& st = hm.sub_tets[t];
        std::array<Vec3, 4> coords;
        std::array<Vec3, 4> w = kZeroW4;
        for (int i = 0; i < 4; ++i) {
            coords[i] = hm.node_coords[st[i]];
            if (ale != nullptr) w[i] = ale->w_nodes[st[i]];
        }
        tet_mats[t] = tet_element_matrices(coords, hm.sub_tet_coeff[t], w);
    });

    std::vector<OctaMatrices> octa_mats(hm.octas.size());
    parallel_for(static_cast<std::int64_t>(hm.octas.size()), [&](std::int64_t o) {
        const auto& oc = hm.octas[o];
        std::array<Vec3, 6> coords;
        std::array<Vec3, 6> w = kZeroW6;
        for (int i = 0; i < 6; ++i) {
            coords[i] = hm.node_coords[oc[i]];
            if (ale != nullptr) w[i] = ale->w_nodes[oc[i]];
        }
        octa_mats[o] = octa_element_matrices(coords, hm.octa_coeff[o], w);
    });

    for (std::size_t t = 0; t < hm.sub_tets.size(); ++t) {
        const auto& st = hm.sub_tets[t];
        const TetMatrices& tm = tet_mats[t];
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                mass_b.add(st[i], st[j], tm.mass[i][j]);
                stiff_b.add(st[i], st[j], tm.stiffness[i][j]);
                if (ale != nullptr) conv_b.add(st[i], st[j], tm.convection[i][j]);
            }
        }
    }
    for (std::size_t o = 0; o < hm.octas.size(); ++o) {
        const auto& oc = hm.octas[o];
        const OctaMatrices& om = octa_mats[o];
        for (int i = 0; i < 6; ++i) {
            for (int j = 0; j < 6; ++j) {
                mass_b.add(oc[i], oc[j], om.mass[i][j]);
                stiff_b.add(oc[i], oc[j], om.stiffness[i][j]);
                if (ale != nullptr) conv_b.add(oc[i], oc[j], om.convection[i][j]);
            }
        }
    }

    AssemblyParts parts;
    parts.mass = mass_b.build();
    parts.stiffness = stiff_b.build();
    parts.convection = conv_b.build(/*drop_zeros=*/true);
    return parts;
}

CsrMatrix expand_to_vector(const CsrMatrix& scalar) {
    CsrMatrix v;
    v.nrows = 3 * scalar.nrows;
    v.ncols = 3 * scalar.ncols;
    v.ptr.resize(v.nrows + 1);
    v.col.resize(scalar.col.size() * 3);
    v.val.resize(scalar.val.size() * 3);
    v.ptr[0] = 0;
    std::int64_t pos = 0;
    for (int i = 0; i < scalar.nrows; ++i) {
        for (int c = 0; c < 3; ++c) {
            for (std::int64_t k = scalar.ptr[i]; k < scalar.ptr[i + 1]; ++k) {
                v.col[pos] = 3 * scalar.col[k] + c;
                v.val[pos] = scalar.val[k];
                ++pos;
            }
            v.ptr[3 * i + c + 1] = pos;
        }
    }
    return v;
}

BlockSystem assemble_system(const HybridMesh& hm, const DofLayout& layout,
                            const AleState& ale, const std::vector<double>& u_prev,
                            double dt, const BoundaryTags& bc, const DirichletData& g) {
    const int n = layout.num_nodes();
    if (dt <= 0.0) throw ConfigError("assemble_system: dt must be positive");
    if (static_cast<int>(u_prev.size()) != 3 * n)
        throw AssemblyError("assemble_system: u_prev has wrong size");
    for (double x : u_prev)
        if (!std::isfinite(x)) throw AssemblyError("assemble_system: non-finite u_prev");
    for (const Vec3& w : ale.w_nodes)
        if (!std::isfinite(w.x) || !std::isfinite(w.y) || !std::isfinite(w.z))
            throw AssemblyError("assemble_system: non-finite mesh velocity");

    const AssemblyParts parts = assemble_parts(hm, layout, &ale);

    CsrMatrix k_scalar = add(parts.stiffness, parts.mass, 1.0 / dt);
    if (parts.convection.nnz() > 0) k_scalar = add(k_scalar, parts.convection, -1.0);

    // Right-hand side per component: (1/dt) M u_prev (Neumann data is zero).
    std::array<std::vector<double>, 3> f_c;
    for (int c = 0; c < 3; ++c) {
        std::vector<double> uc(n);
        for (int i = 0; i < n; ++i) uc[i] = u_prev[3 * i + c];
        f_c[c] = parts.mass.multiply(uc);
        for (double& x : f_c[c]) x /= dt;
    }

    BlockSystem sys;
    sys.num_vertex_nodes = layout.num_vertices;
    sys.num_nodes = n;
    sys.dirichlet_mask.assign(n, 0);
    sys.dirichlet_value.assign(n, Vec3{});
    for (int i = 0; i < n; ++i) {
        switch (bc.node_tags[i]) {
            case NodeTag::kDirichletBottom:
                sys.dirichlet_mask[i] = 1;
                sys.dirichlet_value[i] = g.bottom;
                break;
            case NodeTag::kDirichletTop:
                sys.dirichlet_mask[i] = 1;
                sys.dirichlet_value[i] = g.top;
                break;
            case NodeTag::kNeumann:
                break;
        }
    }

    // Symmetric Dirichlet elimination at the sparsity level: constrained
    // rows become identity, couplings into constrained columns move to the
    // right-hand side, and neither appears in the final pattern.
    TripletBuilder kb(n, n);
    kb.reserve(k_scalar.col.size());
    for (int i = 0; i < n; ++i) {
        if (sys.dirichlet_mask[i]) {
            kb.add(i, i, 1.0);
            continue;
        }
        for (std::int64_t k = k_scalar.ptr[i]; k < k_scalar.ptr[i + 1]; ++k) {
            const int j = k_scalar.col[k];
            if (sys.dirichlet_mask[j]) {
                const Vec3 gv = sys.dirichlet_value[j];
                for (int c = 0; c < 3; ++c) f_c[c][i] -= k_scalar.val[k] * gv[c];
            } else {
                kb.add(i, j, k_scalar.val[k]);
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        if (sys.dirichlet_mask[i]) {
            const Vec3 gv = sys.dirichlet_value[i];
            for (int c = 0; c < 3; ++c) f_c[c][i] = gv[c];
        }
    }

    sys.K = expand_to_vector(kb.build());
    sys.f.resize(3 * n);
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < 3; ++c) sys.f[3 * i + c] = f_c[c][i];
    return sys;
}

} // namespace alecut
