#ifndef HOMLAB_COMPLEX_HPP
#define HOMLAB_COMPLEX_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "homlab/sparse.hpp"

namespace homlab {

using Vertex = std::uint32_t;

/// An oriented simplex: strictly increasing vertex ids, orientation given by that order.
class Simplex {
public:
    Simplex() = default;
    /// Sorts the ids; throws BadParameter on repeats or an empty list.
    explicit Simplex(std::vector<Vertex> vertices);
    Simplex(std::initializer_list<Vertex> vertices);

    int dimension() const noexcept { return static_cast<int>(vertices_.size()) - 1; }
    const std::vector<Vertex>& vertices() const noexcept { return vertices_; }

    /// Face obtained by deleting the vertex at `position`; enters the boundary with sign (-1)^position.
    Simplex facet(std::size_t position) const;
    std::string to_string() const;

    friend bool operator==(const Simplex&, const Simplex&) = default;
    friend auto operator<=>(const Simplex&, const Simplex&) = default;

private:
    std::vector<Vertex> vertices_;
};

std::ostream& operator<<(std::ostream& os, const Simplex& s);

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const noexcept;
};

/**
 * Closed simplicial complex on vertices 0..n-1.
 *
 * Simplices are grouped into layers by dimension. Within a layer the order is
 * fixed at construction and defines the column/row labelling of every
 * operator built on the complex (0-based internally, 1-based in files).
 * Immutable after construction.
 */
class SimplicialComplex {
public:
    SimplicialComplex() = default;
    /// Validates closure, vertex range and duplicates; throws on violation.
    SimplicialComplex(std::size_t vertex_count, std::vector<std::vector<Simplex>> layers,
                      std::vector<std::int64_t> vertex_map = {});

    std::size_t vertex_count() const noexcept { return n_; }
    /// Highest dimension with a nonempty layer; -1 for the empty complex.
    int dimension() const noexcept { return static_cast<int>(layers_.size()) - 1; }
    std::size_t size(int r) const noexcept;
    std::size_t total_size() const noexcept;

    /// Empty when r is outside 0..dimension().
    const std::vector<Simplex>& layer(int r) const noexcept;
    std::optional<std::size_t> index_of(const Simplex& s) const;
    bool contains(const Simplex& s) const { return index_of(s).has_value(); }

    /// External vertex ids in internal order; empty means the identity map.
    const std::vector<std::int64_t>& vertex_map() const noexcept { return vertex_map_; }

    /// All simplices, layer by layer in index order.
    std::vector<Simplex> simplices() const;

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b)
    {
        return a.n_ == b.n_ && a.layers_ == b.layers_ && a.vertex_map_ == b.vertex_map_;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::vector<Simplex>> layers_;
    std::vector<std::unordered_map<Simplex, std::size_t, SimplexHash>> index_;
    std::vector<std::int64_t> vertex_map_;
};

/**
 * Builds a complex from a simplex list.
 *
 * Explicit simplices keep their input order within each layer; faces added by
 * `autoclose` follow in lexicographic order. `vertex_count` defaults to one
 * past the largest id.
 */
SimplicialComplex build_complex(const std::vector<Simplex>& simplices, bool autoclose,
                                std::optional<std::size_t> vertex_count = std::nullopt);

/// 0/1 face incidence between layers r-1 and r.
struct SpecMatrix {
    int r = 0;
    IntSparse entries;
};

SpecMatrix spec_matrix(const SimplicialComplex& k, int r);

/**
 * Validated inclusion k1 ⊆ k2.
 *
 * `k2` is stored reordered so that, in every layer, the simplices of `k1`
 * occupy the index prefix in `k1`'s own order. `embed[r][i]` is the index in
 * `k2` of simplex i of `k1`'s layer r, hence the identity on that prefix.
 */
struct FiltrationPair {
    SimplicialComplex k1;
    SimplicialComplex k2;
    std::vector<std::vector<std::size_t>> embed;

    /// Count of r-simplices of k2 not in k1 (they follow the prefix).
    std::size_t new_count(int r) const { return k2.size(r) - k1.size(r); }
};

FiltrationPair validate_filtration(const SimplicialComplex& k1, const SimplicialComplex& k2);

} // namespace homlab

#endif
