#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "homlab/errors.hpp"
#include "homlab/generators.hpp"
#include "homlab/io.hpp"
#include "oracles.hpp"

using namespace homlab;

namespace {

ErrorKind kind_of(const auto& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::BadParameter;
}

SimplicialComplex parse(const std::string& text)
{
    std::istringstream in(text);
    return read_complex(in);
}

std::filesystem::path scratch(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / "homlab_test_io";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_CASE("complex files round-trip byte for byte")
{
    for (const auto& [name, k] : fixtures::canonical()) {
        INFO(name);
        const std::string text = serialize_complex(k);
        const SimplicialComplex back = parse(text);
        CHECK(back == k);
        CHECK(serialize_complex(back) == text);
    }
}

TEST_CASE("simplices may come in any order and keep it within layers")
{
    const SimplicialComplex k = parse("{\"n\":3}\n{\"s\":[1,2]}\n{\"s\":[2]}\n{\"s\":[0]}\n{\"s\":[1]}\n\n{\"s\":[0,1]}\n");
    CHECK(k.layer(0) == std::vector<Simplex>{Simplex{2}, Simplex{0}, Simplex{1}});
    CHECK(k.layer(1) == std::vector<Simplex>{Simplex{1, 2}, Simplex{0, 1}});
}

TEST_CASE("vertex maps translate external ids")
{
    const std::string text = "{\"n\":3,\"vertex_map\":[10,20,7]}\n{\"s\":[10]}\n{\"s\":[20]}\n{\"s\":[7]}\n"
                             "{\"s\":[7,20]}\n";
    const SimplicialComplex k = parse(text);
    CHECK(k.vertex_map() == std::vector<std::int64_t>{10, 20, 7});
    CHECK(k.contains(Simplex{1, 2}));
    CHECK(serialize_complex(k) == "{\"n\":3,\"vertex_map\":[10,20,7]}\n{\"s\":[10]}\n{\"s\":[20]}\n{\"s\":[7]}\n"
                                  "{\"s\":[20,7]}\n");
    CHECK(parse(serialize_complex(k)) == k);
}

TEST_CASE("malformed complex files")
{
    CHECK(kind_of([] { parse(""); }) == ErrorKind::EmptyInput);
    CHECK(kind_of([] { parse("{\"n\":2}\n"); }) == ErrorKind::EmptyInput);
    CHECK(kind_of([] { parse("{\"m\":2}\n{\"s\":[0]}\n"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse("{\"n\":2}\n{\"s\":[0,1]}\n"); }) == ErrorKind::MissingFace);
    CHECK(kind_of([] { parse("{\"n\":2}\n{\"s\":[0]}\n{\"s\":[0]}\n"); }) == ErrorKind::DuplicateSimplex);
    CHECK(kind_of([] { parse("{\"n\":2}\n{\"s\":[5]}\n"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse("{\"n\":2}\nnot json\n"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse("{\"n\":2,\"vertex_map\":[1]}\n{\"s\":[1]}\n"); }) == ErrorKind::ParseError);
}

TEST_CASE("chain files use 1-based indices and reduce fractions")
{
    const SimplicialComplex k = hollow_triangle();
    std::istringstream in("{\"r\":1,\"coeffs\":[[1,2,4],[3,-1,1],[2,0,5]]}");
    const Chain c = read_chain(in, k);
    CHECK(c.dimension() == 1);
    CHECK(c.support_size() == 2);
    CHECK(c.get(0) == Rational(1, 2));
    CHECK(c.get(2) == -1);
    CHECK(serialize_chain(c) == "{\"coeffs\":[[1,1,2],[3,-1,1]],\"r\":1}");

    std::istringstream bad_index("{\"r\":1,\"coeffs\":[[4,1,1]]}");
    CHECK(kind_of([&] { read_chain(bad_index, k); }) == ErrorKind::DimensionMismatch);
    std::istringstream zero_den("{\"r\":1,\"coeffs\":[[1,1,0]]}");
    CHECK(kind_of([&] { read_chain(zero_den, k); }) == ErrorKind::ParseError);
}

TEST_CASE("filtration manifests resolve relative paths")
{
    save_complex(scratch("k1.jsonl"), hollow_triangle());
    save_complex(scratch("k2.jsonl"), filled_triangle());
    {
        std::ofstream m(scratch("pair.json"));
        m << "{\"k1\":\"k1.jsonl\",\"k2\":\"k2.jsonl\"}";
    }
    const FiltrationPair f = load_filtration(scratch("pair.json"));
    CHECK(f.k1 == hollow_triangle());
    CHECK(f.new_count(2) == 1);
    {
        std::ofstream m(scratch("bad.json"));
        m << "{\"k1\":\"k2.jsonl\",\"k2\":\"k1.jsonl\"}";
    }
    CHECK(kind_of([] { load_filtration(scratch("bad.json")); }) == ErrorKind::NotASubcomplex);
}

TEST_CASE("MatrixMarket output")
{
    IntSparse m(2, 3);
    m.add(0, 0, 1);
    m.add(1, 2, -4);
    std::ostringstream os;
    write_matrix_market(os, m);
    CHECK(os.str() == "%%MatrixMarket matrix coordinate integer general\n2 3 2\n1 1 1\n2 3 -4\n");

    RealMatrix r = RealMatrix::Zero(2, 2);
    r(1, 0) = 0.5;
    std::ostringstream rs;
    write_matrix_market(rs, r);
    CHECK(rs.str() == "%%MatrixMarket matrix coordinate real general\n2 2 1\n2 1 0.5\n");
}

TEST_CASE("point clouds")
{
    {
        std::ofstream p(scratch("pts.json"));
        p << "{\"points\":[[0,0],[1,0.5]]}";
    }
    const auto pts = load_points(scratch("pts.json"));
    REQUIRE(pts.size() == 2);
    CHECK(pts[1][1] == 0.5);
}
