#include "homlab/complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "homlab/errors.hpp"

namespace homlab {

Simplex::Simplex(std::vector<Vertex> vertices) : vertices_(std::move(vertices))
{
    if (vertices_.empty())
        throw Error(ErrorKind::BadParameter, "simplex needs at least one vertex");
    std::sort(vertices_.begin(), vertices_.end());
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
        throw Error(ErrorKind::BadParameter, "repeated vertex in simplex " + to_string());
}

Simplex::Simplex(std::initializer_list<Vertex> vertices) : Simplex(std::vector<Vertex>(vertices)) {}

Simplex Simplex::facet(std::size_t position) const
{
    std::vector<Vertex> v;
    v.reserve(vertices_.size() - 1);
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (i != position)
            v.push_back(vertices_[i]);
    return Simplex(std::move(v));
}

std::string Simplex::to_string() const
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        os << (i ? "," : "") << vertices_[i];
    os << ']';
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Simplex& s) { return os << s.to_string(); }

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept
{
    std::size_t h = 0xcbf29ce484222325ULL;
    for (Vertex v : s.vertices()) {
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

SimplicialComplex::SimplicialComplex(std::size_t vertex_count, std::vector<std::vector<Simplex>> layers,
                                     std::vector<std::int64_t> vertex_map)
    : n_(vertex_count), layers_(std::move(layers)), vertex_map_(std::move(vertex_map))
{
    while (!layers_.empty() && layers_.back().empty())
        layers_.pop_back();
    if (!vertex_map_.empty() && vertex_map_.size() != n_)
        throw Error(ErrorKind::BadParameter, "vertex map length differs from vertex count");

    index_.resize(layers_.size());
    for (std::size_t r = 0; r < layers_.size(); ++r) {
        for (std::size_t i = 0; i < layers_[r].size(); ++i) {
            const Simplex& s = layers_[r][i];
            if (s.dimension() != static_cast<int>(r))
                throw Error(ErrorKind::BadParameter, s.to_string() + " stored in layer " + std::to_string(r));
            if (s.vertices().back() >= n_)
                throw Error(ErrorKind::BadParameter, s.to_string() + " uses a vertex id >= n");
            if (!index_[r].emplace(s, i).second)
                throw Error(ErrorKind::DuplicateSimplex, s.to_string());
        }
    }
    for (std::size_t r = 1; r < layers_.size(); ++r)
        for (const Simplex& s : layers_[r])
            for (std::size_t p = 0; p <= r; ++p)
                if (!index_[r - 1].contains(s.facet(p)))
                    throw Error(ErrorKind::MissingFace, s.facet(p).to_string() + " of " + s.to_string());
}

std::size_t SimplicialComplex::size(int r) const noexcept
{
    return layer(r).size();
}

std::size_t SimplicialComplex::total_size() const noexcept
{
    std::size_t n = 0;
    for (const auto& l : layers_)
        n += l.size();
    return n;
}

const std::vector<Simplex>& SimplicialComplex::layer(int r) const noexcept
{
    static const std::vector<Simplex> empty;
    if (r < 0 || r >= static_cast<int>(layers_.size()))
        return empty;
    return layers_[static_cast<std::size_t>(r)];
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const
{
    const int r = s.dimension();
    if (r < 0 || r >= static_cast<int>(index_.size()))
        return std::nullopt;
    const auto& idx = index_[static_cast<std::size_t>(r)];
    auto it = idx.find(s);
    if (it == idx.end())
        return std::nullopt;
    return it->second;
}

std::vector<Simplex> SimplicialComplex::simplices() const
{
    std::vector<Simplex> all;
    all.reserve(total_size());
    for (const auto& l : layers_)
        all.insert(all.end(), l.begin(), l.end());
    return all;
}

SimplicialComplex build_complex(const std::vector<Simplex>& simplices, bool autoclose,
                                std::optional<std::size_t> vertex_count)
{
    if (simplices.empty())
        throw Error(ErrorKind::EmptyInput, "no simplices given");

    int top = 0;
    Vertex max_vertex = 0;
    for (const Simplex& s : simplices) {
        top = std::max(top, s.dimension());
        max_vertex = std::max(max_vertex, s.vertices().back());
    }
    const std::size_t n = vertex_count.value_or(static_cast<std::size_t>(max_vertex) + 1);

    std::vector<std::vector<Simplex>> layers(static_cast<std::size_t>(top) + 1);
    std::vector<std::set<Simplex>> seen(layers.size());
    for (const Simplex& s : simplices) {
        const auto r = static_cast<std::size_t>(s.dimension());
        if (!seen[r].insert(s).second)
            throw Error(ErrorKind::DuplicateSimplex, s.to_string());
        layers[r].push_back(s);
    }

    if (autoclose) {
        for (std::size_t r = layers.size() - 1; r >= 1; --r) {
            std::set<Simplex> missing;
            for (const Simplex& s : layers[r])
                for (std::size_t p = 0; p <= r; ++p) {
                    Simplex f = s.facet(p);
                    if (!seen[r - 1].contains(f))
                        missing.insert(std::move(f));
                }
            for (const Simplex& f : missing) {
                seen[r - 1].insert(f);
                layers[r - 1].push_back(f);
            }
        }
    }
    return SimplicialComplex(n, std::move(layers));
}

SpecMatrix spec_matrix(const SimplicialComplex& k, int r)
{
    if (r < 1 || k.size(r) == 0)
        throw Error(ErrorKind::EmptyLayer, "specification matrix needs a nonempty layer r >= 1, got r=" +
                                               std::to_string(r));
    IntSparse m(k.size(r - 1), 0);
    for (const Simplex& s : k.layer(r)) {
        IntSparse::Column col;
        for (std::size_t p = 0; p <= static_cast<std::size_t>(r); ++p)
            col.push_back({*k.index_of(s.facet(p)), 1});
        m.append_column(std::move(col));
    }
    return {r, std::move(m)};
}

FiltrationPair validate_filtration(const SimplicialComplex& k1, const SimplicialComplex& k2)
{
    for (int r = 0; r <= k1.dimension(); ++r)
        for (const Simplex& s : k1.layer(r))
            if (!k2.contains(s))
                throw Error(ErrorKind::NotASubcomplex, s.to_string());

    std::vector<std::vector<Simplex>> layers(static_cast<std::size_t>(std::max(k2.dimension() + 1, 0)));
    std::vector<std::vector<std::size_t>> embed(layers.size());
    for (int r = 0; r <= k2.dimension(); ++r) {
        auto& out = layers[static_cast<std::size_t>(r)];
        out = k1.layer(r);
        for (std::size_t i = 0; i < out.size(); ++i)
            embed[static_cast<std::size_t>(r)].push_back(i);
        for (const Simplex& s : k2.layer(r))
            if (!k1.contains(s))
                out.push_back(s);
    }
    SimplicialComplex reordered(k2.vertex_count(), std::move(layers), k2.vertex_map());
    return {k1, std::move(reordered), std::move(embed)};
}

} // namespace homlab
