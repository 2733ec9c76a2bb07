#include "homlab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "homlab/errors.hpp"

namespace homlab {

namespace {

struct KindName {
    GeneratorKind kind;
    std::string_view name;
};

constexpr KindName kKindNames[] = {
    {GeneratorKind::Point, "point"},
    {GeneratorKind::Circle, "circle"},
    {GeneratorKind::HollowTriangle, "hollow_triangle"},
    {GeneratorKind::FilledTriangle, "filled_triangle"},
    {GeneratorKind::TetrahedronBoundary, "tetrahedron_boundary"},
    {GeneratorKind::Torus, "torus"},
    {GeneratorKind::Sphere2, "sphere2"},
    {GeneratorKind::VietorisRips, "vietoris_rips"},
};

void add_with_faces(const Simplex& s, std::set<Simplex>& out)
{
    if (!out.insert(s).second)
        return;
    if (s.dimension() == 0)
        return;
    for (std::size_t p = 0; p < s.vertices().size(); ++p)
        add_with_faces(s.facet(p), out);
}

double distance(const Point& a, const Point& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

} // namespace

std::optional<GeneratorKind> parse_generator_kind(std::string_view name)
{
    for (const auto& kn : kKindNames)
        if (kn.name == name)
            return kn.kind;
    return std::nullopt;
}

std::string_view to_string(GeneratorKind kind)
{
    for (const auto& kn : kKindNames)
        if (kn.kind == kind)
            return kn.name;
    return "unknown";
}

SimplicialComplex closed_sorted(const std::vector<Simplex>& top, std::optional<std::size_t> vertex_count)
{
    std::set<Simplex> all;
    for (const Simplex& s : top)
        add_with_faces(s, all);
    std::vector<Simplex> ordered(all.begin(), all.end());
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const Simplex& a, const Simplex& b) { return a.dimension() < b.dimension(); });
    return build_complex(ordered, false, vertex_count);
}

SimplicialComplex point_complex() { return closed_sorted({Simplex{0}}); }

SimplicialComplex circle(std::size_t m)
{
    if (m < 3)
        throw Error(ErrorKind::BadParameter, "circle needs m >= 3");
    std::vector<Simplex> edges;
    for (std::size_t i = 0; i < m; ++i)
        edges.push_back(Simplex{static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % m)});
    return closed_sorted(edges);
}

SimplicialComplex hollow_triangle() { return closed_sorted({Simplex{0, 1}, Simplex{0, 2}, Simplex{1, 2}}); }

SimplicialComplex filled_triangle() { return closed_sorted({Simplex{0, 1, 2}}); }

SimplicialComplex tetrahedron_boundary()
{
    return closed_sorted({Simplex{0, 1, 2}, Simplex{0, 1, 3}, Simplex{0, 2, 3}, Simplex{1, 2, 3}});
}

SimplicialComplex torus()
{
    std::vector<Simplex> tris;
    for (Vertex i = 0; i < 7; ++i) {
        tris.push_back(Simplex{i, (i + 1) % 7, (i + 3) % 7});
        tris.push_back(Simplex{i, (i + 2) % 7, (i + 3) % 7});
    }
    return closed_sorted(tris);
}

SimplicialComplex sphere2()
{
    std::vector<Simplex> tris;
    for (Vertex a : {0u, 1u})
        for (Vertex b : {2u, 3u})
            for (Vertex c : {4u, 5u})
                tris.push_back(Simplex{a, b, c});
    return closed_sorted(tris);
}

SimplicialComplex vietoris_rips(const std::vector<Point>& points, double threshold, int max_dim)
{
    if (points.empty())
        throw Error(ErrorKind::BadParameter, "Vietoris-Rips needs at least one point");
    if (max_dim < 0 || max_dim > 3)
        throw Error(ErrorKind::BadParameter, "Vietoris-Rips max_dim must be in 0..3");
    if (!(threshold >= 0.0) || !std::isfinite(threshold))
        throw Error(ErrorKind::BadParameter, "Vietoris-Rips threshold must be finite and non-negative");
    const std::size_t dim = points.front().size();
    for (const Point& p : points)
        if (p.size() != dim)
            throw Error(ErrorKind::BadParameter, "points have inconsistent dimension");

    const std::size_t n = points.size();
    std::vector<std::vector<Vertex>> higher(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (distance(points[i], points[j]) < threshold)
                higher[i].push_back(static_cast<Vertex>(j));

    // Cliques grown in increasing vertex order, so every layer comes out lexicographic.
    std::vector<std::vector<Simplex>> layers(static_cast<std::size_t>(max_dim) + 1);
    std::vector<Vertex> stack;
    auto grow = [&](auto&& self, const std::vector<Vertex>& candidates) -> void {
        layers[stack.size() - 1].push_back(Simplex(stack));
        if (static_cast<int>(stack.size()) > max_dim)
            return;
        for (Vertex v : candidates) {
            std::vector<Vertex> next;
            for (Vertex w : candidates)
                if (w > v && std::binary_search(higher[v].begin(), higher[v].end(), w))
                    next.push_back(w);
            stack.push_back(v);
            self(self, next);
            stack.pop_back();
        }
    };
    for (std::size_t i = 0; i < n; ++i) {
        stack.assign(1, static_cast<Vertex>(i));
        grow(grow, higher[i]);
    }
    for (auto& l : layers)
        std::sort(l.begin(), l.end());

    std::vector<Simplex> all;
    for (auto& l : layers)
        all.insert(all.end(), l.begin(), l.end());
    return build_complex(all, false, n);
}

std::vector<Point> random_point_cloud(std::size_t count, std::size_t dim, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Point> pts(count, Point(dim));
    for (auto& p : pts)
        for (auto& x : p)
            x = u(rng);
    return pts;
}

SimplicialComplex generate(const GeneratorSpec& spec)
{
    switch (spec.kind) {
    case GeneratorKind::Point: return point_complex();
    case GeneratorKind::Circle: return circle(spec.m);
    case GeneratorKind::HollowTriangle: return hollow_triangle();
    case GeneratorKind::FilledTriangle: return filled_triangle();
    case GeneratorKind::TetrahedronBoundary: return tetrahedron_boundary();
    case GeneratorKind::Torus: return torus();
    case GeneratorKind::Sphere2: return sphere2();
    case GeneratorKind::VietorisRips: return vietoris_rips(spec.points, spec.threshold, spec.max_dim);
    }
    throw Error(ErrorKind::BadParameter, "unknown generator kind");
}

} // namespace homlab
