#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hypwidth/fuchsian.hpp"

namespace hypwidth::mesh {

// Triangulated closed hyperbolic surface. Charts are the hexagon halves of the
// pants decomposition: chart 2p is pants p's base hexagon, chart 2p+1 its
// mirror (local coordinates are the conjugates of the base chart; the physical
// point of a mirror coordinate z is S1(conj(z)) in the pants chart, where S1
// reflects across the first seam).
struct TriangulatedSurface {
    struct Vertex {
        int chart = 0;
        cplx pos;  // representative position in `chart`
    };
    std::vector<Vertex> vertices;
    std::vector<std::array<int, 3>> triangles;        // global ids, oriented
    std::vector<int> triangle_chart;                  // owning chart per triangle
    std::vector<std::array<cplx, 3>> corners;         // per-triangle, in its chart
    std::vector<std::array<double, 3>> edge_lengths;  // edge k opposite corner k
    // Identification table: groups of (chart, x, y) copies merged per vertex.
    std::vector<std::vector<std::pair<int, cplx>>> identifications;

    double target_h = 0.05;
    int genus = 2;

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int num_triangles() const { return static_cast<int>(triangles.size()); }

    // Total area from Euclidean Heron on the hyperbolic edge lengths; the
    // Gauss-Bonnet defect of this cone approximation is the mesh-quality check.
    double area() const;
    double gauss_bonnet_relative_error() const;  // vs 4*pi*(genus-1)
    // Largest edge length (the "mesh width" of the acceptance tolerances).
    double max_edge() const;

    void validate() const;  // closed, Euler characteristic, triangle inequalities
};

// Build a mesh of a PantsGlued model with target edge length h. Twists must be
// integer multiples of the cuff sample spacing (the spec'd surfaces use 0).
TriangulatedSurface build_surface_mesh(const fuchsian::SurfaceModel& model, double target_h,
                                       std::uint64_t seed);

void write_mesh(std::ostream& os, const TriangulatedSurface& m);
TriangulatedSurface read_mesh(std::istream& is);

}  // namespace hypwidth::mesh
