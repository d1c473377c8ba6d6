#ifndef ALECUT_IO_HPP
#define ALECUT_IO_HPP

#include <string>
#include <vector>

#include "alecut/csr.hpp"
#include "alecut/cutting.hpp"
#include "alecut/macro_mesh.hpp"

namespace alecut {

// Debug export of the reference macro mesh as a legacy-VTK unstructured grid.
void write_vtk_macro(const MacroMesh& mesh, const std::string& path);

// Hybrid mesh with an optional nodal vector field as legacy-VTK. Octahedra
// are exported as their 8 split tetrahedra so standard viewers render them;
// the auxiliary center points carry the average of the six node values.
// Returns the number of exported cells.
int write_vtk_hybrid(const HybridMesh& hm, const std::vector<double>& u,
                     const std::string& path);

// Interface triangulation as legacy-VTK PolyData.
void write_vtk_surface(const SurfaceMesh& surface, const std::string& path);

// Interface triangulation as Wavefront-style indexed triangle text.
void write_surface_obj(const SurfaceMesh& surface, const std::string& path);

// Matrix Market coordinate text format ("real general", 1-based).
void write_matrix_market(const CsrMatrix& a, const std::string& path);

// Sparsity pattern as an ASCII portable graymap, downsampled to at most
// max_pixels rows/columns (dark pixel = block contains a stored entry).
void write_sparsity_pgm(const CsrMatrix& a, const std::string& path, int max_pixels = 1024);

} // namespace alecut

#endif
