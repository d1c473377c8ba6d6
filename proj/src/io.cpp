#include "alecut/io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <memory>

#include "alecut/errors.hpp"

namespace alecut {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f != nullptr) std::fclose(f);
    }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

File open_for_write(const std::string& path) {
    File f(std::fopen(path.c_str(), "w"));
    if (!f) throw IoError("cannot open " + path + " for writing");
    return f;
}

void write_vtk_header(std::FILE* f, const char* title, const char* dataset) {
    std::fprintf(f, "# vtk DataFile Version 3.0\n%s\nASCII\nDATASET %s\n", title, dataset);
}

void write_point(std::FILE* f, const Vec3& p) {
    std::fprintf(f, "%.17g %.17g %.17g\n", p.x, p.y, p.z);
}

} // namespace

void write_vtk_macro(const MacroMesh& mesh, const std::string& path) {
    File f = open_for_write(path);
    write_vtk_header(f.get(), "macro mesh", "UNSTRUCTURED_GRID");
    std::fprintf(f.get(), "POINTS %d double\n", mesh.num_vertices());
    for (const Vec3& p : mesh.vertices) write_point(f.get(), p);
    std::fprintf(f.get(), "CELLS %d %d\n", mesh.num_tets(), 5 * mesh.num_tets());
    for (const auto& t : mesh.tets)
        std::fprintf(f.get(), "4 %d %d %d %d\n", t[0], t[1], t[2], t[3]);
    std::fprintf(f.get(), "CELL_TYPES %d\n", mesh.num_tets());
    for (int i = 0; i < mesh.num_tets(); ++i) std::fprintf(f.get(), "10\n");
}

int write_vtk_hybrid(const HybridMesh& hm, const std::vector<double>& u,
                     const std::string& path) {
    const int n_nodes = static_cast<int>(hm.node_coords.size());
    const int n_octas = hm.num_octas();
    const int n_points = n_nodes + n_octas;
    const int n_cells = hm.num_sub_tets() + 8 * n_octas;
    const bool with_field = !u.empty();
    if (with_field && static_cast<int>(u.size()) != 3 * n_nodes)
        throw IoError("write_vtk_hybrid: field size does not match the node count");

    File f = open_for_write(path);
    write_vtk_header(f.get(), "hybrid mesh", "UNSTRUCTURED_GRID");
    std::fprintf(f.get(), "POINTS %d double\n", n_points);
    for (const Vec3& p : hm.node_coords) write_point(f.get(), p);
    for (const auto& oc : hm.octas) {
        Vec3 center;
        for (int i = 0; i < 6; ++i) center += hm.node_coords[oc[i]];
        write_point(f.get(), (1.0 / 6.0) * center);
    }

    std::fprintf(f.get(), "CELLS %d %d\n", n_cells, 5 * n_cells);
    constexpr int kOctaSplit[8][4] = {
        {0, 1, 2, 6}, {0, 2, 3, 6}, {0, 3, 4, 6}, {0, 1, 4, 6},
        {5, 1, 4, 6}, {5, 1, 2, 6}, {5, 2, 3, 6}, {5, 3, 4, 6},
    };
    const int n_macro = n_octas;
    for (int m = 0; m < n_macro; ++m) {
        for (int c = 0; c < 4; ++c) {
            const auto& st = hm.sub_tets[4 * m + c];
            std::fprintf(f.get(), "4 %d %d %d %d\n", st[0], st[1], st[2], st[3]);
        }
        const auto& oc = hm.octas[m];
        const int center = n_nodes + m;
        for (const auto& sp : kOctaSplit) {
            int ids[4];
            for (int i = 0; i < 4; ++i) ids[i] = sp[i] == 6 ? center : oc[sp[i]];
            std::fprintf(f.get(), "4 %d %d %d %d\n", ids[0], ids[1], ids[2], ids[3]);
        }
    }
    std::fprintf(f.get(), "CELL_TYPES %d\n", n_cells);
    for (int i = 0; i < n_cells; ++i) std::fprintf(f.get(), "10\n");

    if (with_field) {
        std::fprintf(f.get(), "POINT_DATA %d\nVECTORS u double\n", n_points);
        for (int i = 0; i < n_nodes; ++i)
            std::fprintf(f.get(), "%.17g %.17g %.17g\n", u[3 * i], u[3 * i + 1], u[3 * i + 2]);
        for (const auto& oc : hm.octas) {
            double avg[3] = {0.0, 0.0, 0.0};
            for (int i = 0; i < 6; ++i)
                for (int c = 0; c < 3; ++c) avg[c] += u[3 * oc[i] + c];
            std::fprintf(f.get(), "%.17g %.17g %.17g\n", avg[0] / 6.0, avg[1] / 6.0, avg[2] / 6.0);
        }
    }
    return n_cells;
}

void write_vtk_surface(const SurfaceMesh& surface, const std::string& path) {
    File f = open_for_write(path);
    write_vtk_header(f.get(), "interface surface", "POLYDATA");
    const int np = static_cast<int>(surface.vertex_coords.size());
    const int nt = static_cast<int>(surface.compact_triangles.size());
    std::fprintf(f.get(), "POINTS %d double\n", np);
    for (const Vec3& p : surface.vertex_coords) write_point(f.get(), p);
    std::fprintf(f.get(), "POLYGONS %d %d\n", nt, 4 * nt);
    for (const auto& t : surface.compact_triangles)
        std::fprintf(f.get(), "3 %d %d %d\n", t[0], t[1], t[2]);
}

void write_surface_obj(const SurfaceMesh& surface, const std::string& path) {
    File f = open_for_write(path);
    for (const Vec3& p : surface.vertex_coords)
        std::fprintf(f.get(), "v %.17g %.17g %.17g\n", p.x, p.y, p.z);
    for (const auto& t : surface.compact_triangles)
        std::fprintf(f.get(), "f %d %d %d\n", t[0] + 1, t[1] + 1, t[2] + 1);
}

void write_matrix_market(const CsrMatrix& a, const std::string& path) {
    File f = open_for_write(path);
    std::fprintf(f.get(), "%%%%MatrixMarket matrix coordinate real general\n");
    std::fprintf(f.get(), "%d %d %" PRId64 "\n", a.nrows, a.ncols, a.nnz());
    for (int i = 0; i < a.nrows; ++i)
        for (std::int64_t k = a.ptr[i]; k < a.ptr[i + 1]; ++k)
            std::fprintf(f.get(), "%d %d %.17g\n", i + 1, a.col[k] + 1, a.val[k]);
}

void write_sparsity_pgm(const CsrMatrix& a, const std::string& path, int max_pixels) {
    const int rows = std::min(a.nrows, max_pixels);
    const int cols = std::min(a.ncols, max_pixels);
    if (rows <= 0 || cols <= 0) throw IoError("write_sparsity_pgm: empty matrix");
    std::vector<std::uint8_t> img(static_cast<std::size_t>(rows) * cols, 0);
    for (int i = 0; i < a.nrows; ++i) {
        const int pi = static_cast<int>(static_cast<std::int64_t>(i) * rows / a.nrows);
        for (std::int64_t k = a.ptr[i]; k < a.ptr[i + 1]; ++k) {
            const int pj = static_cast<int>(static_cast<std::int64_t>(a.col[k]) * cols / a.ncols);
            img[static_cast<std::size_t>(pi) * cols + pj] = 1;
        }
    }
    File f = open_for_write(path);
    std::fprintf(f.get(), "P2\n%d %d\n255\n", cols, rows);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j)
            std::fprintf(f.get(), "%d%c", img[static_cast<std::size_t>(i) * cols + j] ? 0 : 255,
                         j + 1 == cols ? '\n' : ' ');
    }
}

} // namespace alecut
