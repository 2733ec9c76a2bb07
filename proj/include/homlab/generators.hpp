#ifndef HOMLAB_GENERATORS_HPP
#define HOMLAB_GENERATORS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "homlab/complex.hpp"

namespace homlab {

using Point = std::vector<double>;

enum class GeneratorKind {
    Point,
    Circle,
    HollowTriangle,
    FilledTriangle,
    TetrahedronBoundary,
    Torus,
    Sphere2,
    VietorisRips,
};

std::optional<GeneratorKind> parse_generator_kind(std::string_view name);
std::string_view to_string(GeneratorKind kind);

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::Point;
    std::size_t m = 0;                 // circle length
    std::vector<Point> points;         // Vietoris-Rips input
    double threshold = 0.0;            // Vietoris-Rips strict distance bound
    int max_dim = 2;                   // Vietoris-Rips clique cap
};

/// Closed complex with lexicographic order inside every layer.
SimplicialComplex generate(const GeneratorSpec& spec);

SimplicialComplex point_complex();
SimplicialComplex circle(std::size_t m);
SimplicialComplex hollow_triangle();
SimplicialComplex filled_triangle();
SimplicialComplex tetrahedron_boundary();
/// Seven-vertex minimal triangulation of the torus.
SimplicialComplex torus();
/// Boundary of the octahedron.
SimplicialComplex sphere2();
/// Every clique of at most max_dim+1 points with all pairwise distances < threshold.
SimplicialComplex vietoris_rips(const std::vector<Point>& points, double threshold, int max_dim);

/// Uniform points in the unit cube [0,1)^dim.
std::vector<Point> random_point_cloud(std::size_t count, std::size_t dim, std::uint64_t seed);

/// Closure of `top` with every layer sorted lexicographically.
SimplicialComplex closed_sorted(const std::vector<Simplex>& top, std::optional<std::size_t> vertex_count = {});

} // namespace homlab

#endif
