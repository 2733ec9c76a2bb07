#ifndef HOMLAB_IO_HPP
#define HOMLAB_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "homlab/chain.hpp"
#include "homlab/complex.hpp"

namespace homlab {

/**
 * Complex file: a header line {"n": N, "vertex_map": [...]} followed by one
 * {"s": [v0, ..., vr]} per simplex, any order, faces included. With a vertex
 * map, simplices use the external ids it lists and internal vertex i is
 * vertex_map[i]; without one, ids are 0..N-1. Blank lines are skipped.
 */
SimplicialComplex read_complex(std::istream& in, const std::string& source = "<stream>");
SimplicialComplex load_complex(const std::filesystem::path& path);

/// Canonical form: header, then layer by layer in index order, external ids.
void write_complex(std::ostream& out, const SimplicialComplex& k);
std::string serialize_complex(const SimplicialComplex& k);
void save_complex(const std::filesystem::path& path, const SimplicialComplex& k);

/// Manifest {"k1": path, "k2": path}; relative paths resolve against the manifest's directory.
FiltrationPair load_filtration(const std::filesystem::path& manifest);

/// Chain file {"r": r, "coeffs": [[index, num, den], ...]} with 1-based indices, checked against `k`.
Chain read_chain(std::istream& in, const SimplicialComplex& k, const std::string& source = "<stream>");
Chain load_chain(const std::filesystem::path& path, const SimplicialComplex& k);
std::string serialize_chain(const Chain& c);

/// Point cloud file {"points": [[x, y, ...], ...]}.
std::vector<std::vector<double>> load_points(const std::filesystem::path& path);

/// MatrixMarket coordinate format, 1-based.
void write_matrix_market(std::ostream& out, const IntSparse& m);
void write_matrix_market(std::ostream& out, const RealMatrix& m);

} // namespace homlab

#endif
