#include "homlab/io.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include "json.hpp"

#include "homlab/errors.hpp"

namespace homlab {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& source, std::size_t line, const std::string& what)
{
    throw Error(ErrorKind::ParseError, source + ":" + std::to_string(line) + ": " + what);
}

std::ifstream open_input(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::ParseError, "cannot open " + path.string());
    return in;
}

json parse_json(std::istream& in, const std::string& source)
{
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, source + ": " + e.what());
    }
}

std::int64_t as_integer(const json& v, const std::string& source, std::size_t line, const char* what)
{
    if (!v.is_number_integer())
        parse_fail(source, line, std::string(what) + " must be an integer");
    return v.get<std::int64_t>();
}

} // namespace

SimplicialComplex read_complex(std::istream& in, const std::string& source)
{
    std::string text;
    std::size_t line_no = 0;
    bool have_header = false;
    std::size_t n = 0;
    std::vector<std::int64_t> vertex_map;
    std::map<std::int64_t, Vertex> internal;
    std::vector<Simplex> simplices;

    while (std::getline(in, text)) {
        ++line_no;
        if (text.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        json obj;
        try {
            obj = json::parse(text);
        } catch (const json::exception& e) {
            parse_fail(source, line_no, e.what());
        }
        if (!obj.is_object())
            parse_fail(source, line_no, "expected a JSON object");
        if (!have_header) {
            if (!obj.contains("n"))
                parse_fail(source, line_no, "header must carry \"n\"");
            const std::int64_t count = as_integer(obj["n"], source, line_no, "n");
            if (count < 0)
                parse_fail(source, line_no, "n must be nonnegative");
            n = static_cast<std::size_t>(count);
            if (obj.contains("vertex_map") && !obj["vertex_map"].is_null()) {
                const json& m = obj["vertex_map"];
                if (!m.is_array() || m.size() != n)
                    parse_fail(source, line_no, "vertex_map must list n ids");
                for (const json& id : m) {
                    const std::int64_t ext = as_integer(id, source, line_no, "vertex id");
                    if (!internal.emplace(ext, static_cast<Vertex>(vertex_map.size())).second)
                        parse_fail(source, line_no, "vertex_map repeats id " + std::to_string(ext));
                    vertex_map.push_back(ext);
                }
            }
            have_header = true;
            continue;
        }
        if (!obj.contains("s") || !obj["s"].is_array())
            parse_fail(source, line_no, "simplex line must carry an array \"s\"");
        std::vector<Vertex> verts;
        for (const json& v : obj["s"]) {
            const std::int64_t id = as_integer(v, source, line_no, "vertex id");
            if (vertex_map.empty()) {
                if (id < 0 || static_cast<std::size_t>(id) >= n)
                    parse_fail(source, line_no, "vertex " + std::to_string(id) + " outside 0.." +
                                                    std::to_string(n == 0 ? 0 : n - 1));
                verts.push_back(static_cast<Vertex>(id));
            } else {
                auto it = internal.find(id);
                if (it == internal.end())
                    parse_fail(source, line_no, "vertex " + std::to_string(id) + " missing from vertex_map");
                verts.push_back(it->second);
            }
        }
        try {
            simplices.emplace_back(std::move(verts));
        } catch (const Error& e) {
            parse_fail(source, line_no, e.detail());
        }
    }
    if (!have_header)
        throw Error(ErrorKind::EmptyInput, source + ": no header line");
    if (simplices.empty())
        throw Error(ErrorKind::EmptyInput, source + ": no simplices");

    const SimplicialComplex plain = build_complex(simplices, false, n);
    if (vertex_map.empty())
        return plain;
    std::vector<std::vector<Simplex>> layers;
    for (int r = 0; r <= plain.dimension(); ++r)
        layers.push_back(plain.layer(r));
    return SimplicialComplex(n, std::move(layers), std::move(vertex_map));
}

SimplicialComplex load_complex(const std::filesystem::path& path)
{
    std::ifstream in = open_input(path);
    return read_complex(in, path.string());
}

void write_complex(std::ostream& out, const SimplicialComplex& k)
{
    json header = {{"n", k.vertex_count()}};
    if (!k.vertex_map().empty())
        header["vertex_map"] = k.vertex_map();
    out << header.dump() << '\n';
    for (int r = 0; r <= k.dimension(); ++r)
        for (const Simplex& s : k.layer(r)) {
            json ids = json::array();
            for (Vertex v : s.vertices()) {
                if (k.vertex_map().empty())
                    ids.push_back(v);
                else
                    ids.push_back(k.vertex_map()[v]);
            }
            out << json{{"s", ids}}.dump() << '\n';
        }
}

std::string serialize_complex(const SimplicialComplex& k)
{
    std::ostringstream os;
    write_complex(os, k);
    return os.str();
}

void save_complex(const std::filesystem::path& path, const SimplicialComplex& k)
{
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorKind::ParseError, "cannot write " + path.string());
    write_complex(out, k);
}

FiltrationPair load_filtration(const std::filesystem::path& manifest)
{
    std::ifstream in = open_input(manifest);
    const json m = parse_json(in, manifest.string());
    if (!m.is_object() || !m.contains("k1") || !m.contains("k2") || !m["k1"].is_string() || !m["k2"].is_string())
        throw Error(ErrorKind::ParseError, manifest.string() + ": manifest needs string fields \"k1\" and \"k2\"");
    const std::filesystem::path base = manifest.parent_path();
    auto resolve = [&](const std::string& p) {
        const std::filesystem::path path(p);
        return path.is_absolute() ? path : base / path;
    };
    return validate_filtration(load_complex(resolve(m["k1"].get<std::string>())),
                               load_complex(resolve(m["k2"].get<std::string>())));
}

Chain read_chain(std::istream& in, const SimplicialComplex& k, const std::string& source)
{
    const json c = parse_json(in, source);
    if (!c.is_object() || !c.contains("r") || !c.contains("coeffs") || !c["coeffs"].is_array())
        throw Error(ErrorKind::ParseError, source + ": chain needs \"r\" and an array \"coeffs\"");
    const std::int64_t r = as_integer(c["r"], source, 1, "r");
    if (r < 0)
        throw Error(ErrorKind::ParseError, source + ": r must be nonnegative");
    Chain out(static_cast<int>(r));
    const std::size_t layer = k.size(static_cast<int>(r));
    for (const json& term : c["coeffs"]) {
        if (!term.is_array() || term.size() != 3)
            throw Error(ErrorKind::ParseError, source + ": each coefficient is [index, numerator, denominator]");
        const std::int64_t index = as_integer(term[0], source, 1, "index");
        const std::int64_t num = as_integer(term[1], source, 1, "numerator");
        const std::int64_t den = as_integer(term[2], source, 1, "denominator");
        if (den == 0)
            throw Error(ErrorKind::ParseError, source + ": zero denominator");
        if (index < 1 || static_cast<std::size_t>(index) > layer)
            throw Error(ErrorKind::DimensionMismatch, source + ": index " + std::to_string(index) + " outside 1.." +
                                                          std::to_string(layer) + " of layer " + std::to_string(r));
        const auto i = static_cast<std::size_t>(index - 1);
        Rational q(BigInt(std::to_string(num)), BigInt(std::to_string(den)));
        q.canonicalize();
        out.set(i, out.get(i) + q);
    }
    return out;
}

Chain load_chain(const std::filesystem::path& path, const SimplicialComplex& k)
{
    std::ifstream in = open_input(path);
    return read_chain(in, k, path.string());
}

std::string serialize_chain(const Chain& c)
{
    json coeffs = json::array();
    for (const auto& [i, x] : c.coeffs())
        coeffs.push_back({i + 1, x.get_num().get_si(), x.get_den().get_si()});
    return json{{"r", c.dimension()}, {"coeffs", coeffs}}.dump();
}

std::vector<std::vector<double>> load_points(const std::filesystem::path& path)
{
    std::ifstream in = open_input(path);
    const json j = parse_json(in, path.string());
    if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
        throw Error(ErrorKind::ParseError, path.string() + ": expected {\"points\": [[...], ...]}");
    std::vector<std::vector<double>> points;
    for (const json& p : j["points"]) {
        if (!p.is_array())
            throw Error(ErrorKind::ParseError, path.string() + ": each point is an array of numbers");
        std::vector<double> coords;
        for (const json& x : p) {
            if (!x.is_number())
                throw Error(ErrorKind::ParseError, path.string() + ": coordinates must be numbers");
            coords.push_back(x.get<double>());
        }
        points.push_back(std::move(coords));
    }
    return points;
}

void write_matrix_market(std::ostream& out, const IntSparse& m)
{
    out << "%%MatrixMarket matrix coordinate integer general\n";
    out << m.rows() << ' ' << m.cols() << ' ' << m.nonzeros() << '\n';
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (const auto& [i, v] : m.column(j))
            out << i + 1 << ' ' << j + 1 << ' ' << v << '\n';
}

void write_matrix_market(std::ostream& out, const RealMatrix& m)
{
    std::size_t nnz = 0;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            nnz += m(i, j) != 0.0;
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << m.rows() << ' ' << m.cols() << ' ' << nnz << '\n';
    const auto old = out.precision(std::numeric_limits<double>::max_digits10);
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (m(i, j) != 0.0)
                out << i + 1 << ' ' << j + 1 << ' ' << m(i, j) << '\n';
    out.precision(old);
}

} // namespace homlab
