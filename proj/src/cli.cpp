#include "homlab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "homlab/cohomology.hpp"
#include "homlab/errors.hpp"
#include "homlab/generators.hpp"
#include "homlab/homology.hpp"
#include "homlab/io.hpp"
#include "homlab/operators.hpp"
#include "homlab/spectra.hpp"

namespace homlab {

namespace {

using nlohmann::ordered_json;

/// Instances at or below this many simplices also get the exact answer in stochastic mode.
constexpr std::size_t kOracleGate = 500;

struct Options {
    std::string command;
    std::string input;
    std::vector<std::string> stages;
    std::string manifest;
    std::string k1;
    std::string k2;
    std::string points;
    std::string thresholds;
    bool sweep = false;
    double threshold = -1.0;
    int max_dim = 2;
    int r = 0;
    std::string mode = "exact";
    double delta = 0.0;
    int degree = 64;
    std::size_t probes = 1000;
    std::string probe_kind = "rademacher";
    std::string seed_text;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    bool no_oracle = false;
    std::string dump_operator;
    std::string plot_data;
    std::vector<std::string> chains;
    std::string method = "homology";
    std::size_t witnesses = 8;
    double tol = kEvaluationTolerance;
    std::string dump_witness;
    double eta = 0.1;
    std::size_t samples = 10;
    std::string kind;
    std::size_t m = 0;
    std::size_t random_points = 0;
    std::size_t dim = 2;
    std::string out;
    std::string op = "boundary";
};

[[noreturn]] void usage(const std::string& what)
{
    throw Error(ErrorKind::BadParameter, what);
}

bool stochastic(const Options& o)
{
    return o.mode == "stochastic";
}

StochasticParams stochastic_params(const Options& o)
{
    StochasticParams p;
    p.delta = o.delta;
    p.degree = o.degree;
    p.probes = o.probes;
    p.probe_kind = *parse_probe_kind(o.probe_kind);
    p.seed = o.seed;
    p.threads = o.threads;
    p.spectral_oracle = !o.no_oracle;
    return p;
}

Mode make_mode(const Options& o)
{
    return stochastic(o) ? Mode::stochastic(stochastic_params(o)) : Mode::exact();
}

bool oracle_allowed(const Options& o, std::size_t simplices)
{
    return !o.no_oracle && simplices <= kOracleGate;
}

ordered_json config_json(const Options& o)
{
    ordered_json c;
    c["command"] = o.command;
    auto put = [&](const char* key, const std::string& v) {
        if (!v.empty())
            c[key] = v;
    };
    put("input", o.input);
    if (!o.stages.empty())
        c["stages"] = o.stages;
    put("manifest", o.manifest);
    put("k1", o.k1);
    put("k2", o.k2);
    put("points", o.points);
    if (!o.chains.empty())
        c["chains"] = o.chains;
    c["r"] = o.r;
    c["mode"] = o.mode;
    c["delta"] = o.delta;
    c["degree"] = o.degree;
    c["probes"] = o.probes;
    c["probe_kind"] = o.probe_kind;
    c["seed"] = o.seed;
    c["oracle"] = !o.no_oracle;
    if (o.command == "test-equiv") {
        c["method"] = o.method;
        c["witnesses"] = o.witnesses;
        c["tol"] = o.tol;
    }
    if (o.command == "detect-cycle")
        c["eta"] = o.eta;
    if (o.command == "betti-track")
        c["samples"] = o.samples;
    if (o.command == "gen") {
        c["kind"] = o.kind;
        c["m"] = o.m;
    }
    if (o.command == "dump-operator")
        c["operator"] = o.op;
    if (o.threshold >= 0.0)
        c["threshold"] = o.threshold;
    if (o.sweep)
        c["thresholds"] = o.thresholds;
    if (!o.points.empty() || o.command == "gen")
        c["max_dim"] = o.max_dim;
    put("plot_data", o.plot_data);
    put("dump_operator", o.dump_operator);
    put("out", o.out);
    return c;
}

ordered_json estimate_json(const RankEstimate& e)
{
    ordered_json p;
    p["delta"] = e.delta;
    p["degree"] = e.degree;
    p["probes"] = e.probes;
    p["probe_kind"] = std::string(to_string(e.probe_kind));
    p["seed"] = e.seed;
    p["rescale"] = e.rescale;
    ordered_json j;
    j["normalized_rank"] = e.normalized;
    j["raw"] = e.raw;
    j["stderr"] = e.std_error;
    j["params"] = p;
    return j;
}

std::vector<double> parse_thresholds(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            usage("bad threshold '" + item + "'");
        }
    }
    return out;
}

std::string format_double(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::uint64_t resolve_seed(const Options& o, std::ostream& err)
{
    auto parse = [](const std::string& text, const char* origin) {
        std::uint64_t v = 0;
        const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
        if (res.ec != std::errc() || res.ptr != text.data() + text.size())
            usage(std::string("seed from ") + origin + " is not an unsigned integer: '" + text + "'");
        return v;
    };
    if (!o.seed_text.empty())
        return parse(o.seed_text, "--seed");
    if (const char* env = std::getenv("HOMOLOGY_LAB_SEED"); env && *env)
        return parse(env, "HOMOLOGY_LAB_SEED");
    std::random_device rd;
    const std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    err << "seed: " << seed << '\n';
    return seed;
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream f(path);
    if (!f)
        throw Error(ErrorKind::ParseError, "cannot write " + path);
    f << text;
}

void dump_matrix(const std::string& path, const IntSparse& m)
{
    std::ostringstream os;
    write_matrix_market(os, m);
    write_text_file(path, os.str());
}

void dump_matrix(const std::string& path, const RealMatrix& m)
{
    std::ostringstream os;
    write_matrix_market(os, m);
    write_text_file(path, os.str());
}

long long betti_at(const SimplicialComplex& k, int r, const Options& o, std::string& method)
{
    if (k.size(r) == 0) {
        method = "exact";
        return 0;
    }
    if (!stochastic(o)) {
        method = "exact";
        return static_cast<long long>(exact_betti(k, r));
    }
    method = "stochastic";
    const BettiEstimate e = estimate_normalized_betti(k, r, stochastic_params(o));
    return std::llround(e.normalized_betti * static_cast<double>(k.size(r)));
}

SimplicialComplex complex_from_points(const Options& o, double threshold)
{
    return vietoris_rips(load_points(o.points), threshold, o.max_dim);
}

ordered_json cmd_betti(const Options& o)
{
    ordered_json res;
    if (o.sweep) {
        if (o.points.empty())
            usage("--thresholds needs --points");
        const std::vector<double> thresholds = parse_thresholds(o.thresholds);
        const auto points = load_points(o.points);
        std::vector<PlotRow> rows;
        ordered_json sweep = ordered_json::array();
        for (double t : thresholds) {
            const SimplicialComplex k = vietoris_rips(points, t, o.max_dim);
            std::string method;
            const long long b = betti_at(k, o.r, o, method);
            rows.push_back(PlotRow{t, o.r, b, method});
            sweep.push_back(ordered_json{{"threshold", t}, {"betti", b}, {"size", k.size(o.r)}, {"method", method}});
        }
        if (!o.plot_data.empty()) {
            std::ostringstream os;
            emit_plot_data(os, rows);
            write_text_file(o.plot_data, os.str());
        }
        res["sweep"] = sweep;
        return res;
    }

    SimplicialComplex k;
    if (!o.input.empty())
        k = load_complex(o.input);
    else if (!o.points.empty() && o.threshold >= 0.0)
        k = complex_from_points(o, o.threshold);
    else
        usage("betti needs --input, or --points with --threshold or --thresholds");
    if (o.r < 0 || k.size(o.r) == 0)
        throw Error(ErrorKind::EmptyLayer, "layer " + std::to_string(o.r) + " is empty");
    if (!o.dump_operator.empty())
        dump_matrix(o.dump_operator, laplacian(k, o.r));

    const std::size_t n = k.size(o.r);
    auto exact_part = [&](ordered_json& j) {
        const std::size_t b = exact_betti(k, o.r);
        j["betti"] = b;
        j["normalized"] = static_cast<double>(b) / static_cast<double>(n);
    };
    if (!stochastic(o)) {
        exact_part(res);
        res["size"] = n;
        res["method"] = "exact";
        return res;
    }
    const BettiEstimate e = estimate_normalized_betti(k, o.r, stochastic_params(o));
    res["estimate"] = e.normalized_betti;
    res["stderr"] = e.rank.std_error;
    res["betti"] = std::llround(e.normalized_betti * static_cast<double>(n));
    res["size"] = n;
    res["method"] = "stochastic";
    res["normalizer"] = e.normalizer;
    res["rank_estimate"] = estimate_json(e.rank);
    if (oracle_allowed(o, k.total_size())) {
        ordered_json ex;
        exact_part(ex);
        res["exact"] = ex;
    }
    return res;
}

FiltrationPair load_pair(const Options& o)
{
    if (!o.manifest.empty())
        return load_filtration(o.manifest);
    if (o.k1.empty() || o.k2.empty())
        usage("persistent-betti needs --manifest or both --k1 and --k2");
    return validate_filtration(load_complex(o.k1), load_complex(o.k2));
}

ordered_json cmd_persistent_betti(const Options& o)
{
    const FiltrationPair f = load_pair(o);
    if (o.r < 0 || f.k1.size(o.r) == 0)
        throw Error(ErrorKind::EmptyLayer, "layer " + std::to_string(o.r) + " of K1 is empty");
    if (!o.dump_operator.empty())
        dump_matrix(o.dump_operator, persistent_laplacian(f, o.r).total);
    const std::size_t n = f.k1.size(o.r);
    ordered_json res;
    auto exact_part = [&](ordered_json& j) {
        const PersistentBetti pb = exact_persistent_betti(f, o.r);
        j["persistent_betti"] = pb.quotient_route;
        j["normalized"] = static_cast<double>(pb.quotient_route) / static_cast<double>(n);
        j["routes"] = ordered_json{{"quotient", pb.quotient_route}, {"laplacian", pb.laplacian_route}};
    };
    if (!stochastic(o)) {
        exact_part(res);
        res["size"] = n;
        res["method"] = "exact";
        return res;
    }
    const BettiEstimate e = estimate_normalized_persistent_betti(f, o.r, stochastic_params(o));
    res["estimate"] = e.normalized_betti;
    res["stderr"] = e.rank.std_error;
    res["persistent_betti"] = std::llround(e.normalized_betti * static_cast<double>(n));
    res["size"] = n;
    res["method"] = "stochastic";
    res["normalizer"] = e.normalizer;
    res["rank_estimate"] = estimate_json(e.rank);
    if (oracle_allowed(o, f.k2.total_size())) {
        ordered_json ex;
        exact_part(ex);
        res["exact"] = ex;
    }
    return res;
}

SimplicialComplex require_input(const Options& o)
{
    if (o.input.empty())
        usage(o.command + " needs --input");
    return load_complex(o.input);
}

std::vector<Chain> load_chains(const Options& o, const SimplicialComplex& k, std::size_t lo, std::size_t hi)
{
    if (o.chains.size() < lo || o.chains.size() > hi)
        usage(o.command + " takes " + (lo == hi ? std::to_string(lo) : std::to_string(lo) + " to " + std::to_string(hi)) +
              " --chain file(s), got " + std::to_string(o.chains.size()));
    std::vector<Chain> out;
    for (const std::string& path : o.chains)
        out.push_back(load_chain(path, k));
    return out;
}

ordered_json test_json(const HomologyTest& t)
{
    ordered_json j;
    j["answer"] = t.answer;
    j["method"] = std::string(to_string(t.method));
    j["confidence"] = t.confident ? "high" : "low";
    j["rank_boundary"] = t.rank_boundary;
    j["rank_augmented"] = t.rank_augmented;
    if (t.boundary_estimate) {
        j["boundary_estimate"] = estimate_json(*t.boundary_estimate);
        j["augmented_estimate"] = estimate_json(*t.augmented_estimate);
        j["paired_difference"] = t.paired_difference;
        j["paired_stderr"] = t.paired_std_error;
    }
    return j;
}

ordered_json cmd_test_trivial(const Options& o)
{
    const SimplicialComplex k = require_input(o);
    const Chain c = load_chains(o, k, 1, 1).front();
    ordered_json res = test_json(test_trivial(k, c, make_mode(o)));
    if (stochastic(o) && oracle_allowed(o, k.total_size()))
        res["exact"] = test_json(test_trivial(k, c, Mode::exact()));
    return res;
}

ordered_json cmd_test_equiv(const Options& o)
{
    const SimplicialComplex k = require_input(o);
    const std::vector<Chain> cs = load_chains(o, k, 2, 2);
    if (o.method == "homology") {
        ordered_json res = test_json(test_equivalent(k, cs[0], cs[1], make_mode(o)));
        if (stochastic(o) && oracle_allowed(o, k.total_size()))
            res["exact"] = test_json(test_equivalent(k, cs[0], cs[1], Mode::exact()));
        return res;
    }
    const CohomologyTest t = test_equivalent_cohomological(k, cs[0], cs[1], o.witnesses, o.tol, o.seed);
    ordered_json res;
    res["answer"] = t.equivalent;
    res["method"] = "cohomology";
    // A distinguishing witness is a certificate; agreement on every witness is probabilistic.
    res["confidence"] = t.equivalent ? "probabilistic" : "certified";
    res["witnesses_drawn"] = t.witnesses_drawn;
    if (t.distinguishing_index) {
        res["distinguishing_witness"] = *t.distinguishing_index + 1;
        res["gap"] = t.gap;
        if (!o.dump_witness.empty()) {
            const std::vector<double> values(t.witness->values.begin(), t.witness->values.end());
            write_text_file(o.dump_witness, ordered_json{{"r", t.witness->r}, {"values", values}}.dump() + "\n");
        }
    }
    if (oracle_allowed(o, k.total_size()))
        res["exact"] = test_json(test_equivalent(k, cs[0], cs[1], Mode::exact()));
    return res;
}

ordered_json cmd_detect_cycle(const Options& o)
{
    const SimplicialComplex k = require_input(o);
    const Chain c = load_chains(o, k, 1, 1).front();
    const CycleDetection d = detect_cycle_stochastic(k, c, o.eta, o.seed);
    ordered_json res;
    res["answer"] = std::string(to_string(d.verdict));
    res["method"] = "stochastic";
    res["confidence"] = d.verdict == CycleVerdict::NotCycle ? "certified" : "probabilistic";
    res["success_probability"] = d.success_probability;
    res["trials"] = d.trials;
    res["successes"] = d.successes;
    if (oracle_allowed(o, k.total_size()))
        res["exact"] = ordered_json{{"is_cycle", is_cycle_exact(k, c)}};
    return res;
}

ordered_json cmd_track(const Options& o)
{
    if (o.stages.empty())
        usage("track needs one --input per filtration stage");
    std::vector<SimplicialComplex> stages;
    for (const std::string& p : o.stages)
        stages.push_back(load_complex(p));
    std::vector<Chain> cycles;
    if (o.chains.empty() || o.chains.size() > 2)
        usage("track takes 1 or 2 --chain files");
    for (const std::string& p : o.chains)
        cycles.push_back(load_chain(p, stages.front()));
    const ClassReport report = track_classes(stages, cycles, make_mode(o));
    ordered_json res;
    res["pair"] = report.pair;
    ordered_json rows = ordered_json::array();
    for (const StageResult& s : report.stages) {
        ordered_json row;
        row["stage"] = s.stage + 1;
        row[report.pair ? "equivalent" : "trivial"] = s.answer;
        row["answer"] = s.answer;
        row["method"] = std::string(to_string(s.method));
        row["confidence"] = s.confident ? "high" : "low";
        rows.push_back(row);
    }
    res["stages"] = rows;
    return res;
}

ordered_json cmd_betti_track(const Options& o)
{
    const SimplicialComplex k = require_input(o);
    std::vector<Chain> cycles;
    if (!o.chains.empty()) {
        for (const std::string& p : o.chains)
            cycles.push_back(load_chain(p, k));
    } else {
        try {
            cycles = sample_cycles(k, o.r, o.samples, o.seed);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::TrivialKernel)
                throw;
        }
    }
    const TrackingBetti t = betti_via_tracking(k, o.r, cycles, make_mode(o));
    ordered_json res;
    res["betti"] = t.betti;
    res["bound"] = "lower";
    res["representatives"] = t.representatives;
    res["cycles"] = cycles.size();
    res["method"] = stochastic(o) ? "stochastic" : "exact";
    if (!stochastic(o))
        res["chain_rank"] = t.chain_rank;
    if (t.estimate)
        res["rank_estimate"] = estimate_json(*t.estimate);
    if (oracle_allowed(o, k.total_size()) && k.size(o.r) > 0)
        res["exact"] = ordered_json{{"betti", exact_betti(k, o.r)}};
    return res;
}

ordered_json sizes_json(const SimplicialComplex& k)
{
    ordered_json sizes = ordered_json::array();
    for (int r = 0; r <= k.dimension(); ++r)
        sizes.push_back(k.size(r));
    return sizes;
}

ordered_json cmd_gen(const Options& o, std::ostream& out)
{
    const auto kind = parse_generator_kind(o.kind);
    if (!kind)
        usage("unknown generator kind '" + o.kind + "'");
    GeneratorSpec spec;
    spec.kind = *kind;
    spec.m = o.m;
    spec.max_dim = o.max_dim;
    spec.threshold = o.threshold;
    if (*kind == GeneratorKind::VietorisRips) {
        if (!o.points.empty())
            spec.points = load_points(o.points);
        else if (o.random_points > 0)
            spec.points = random_point_cloud(o.random_points, o.dim, o.seed);
        else
            usage("vietoris_rips needs --points or --random-points");
        if (o.threshold < 0.0)
            usage("vietoris_rips needs --threshold");
    }
    const SimplicialComplex k = generate(spec);
    if (o.out.empty()) {
        write_complex(out, k);
        return nullptr;
    }
    save_complex(o.out, k);
    ordered_json res;
    res["out"] = o.out;
    res["sizes"] = sizes_json(k);
    return res;
}

ordered_json cmd_dump_operator(const Options& o, std::ostream& out)
{
    const SimplicialComplex k = require_input(o);
    std::ostringstream os;
    if (o.op == "spec")
        write_matrix_market(os, spec_matrix(k, o.r).entries);
    else if (o.op == "boundary")
        write_matrix_market(os, boundary_matrix(k, o.r).entries);
    else if (o.op == "coboundary")
        write_matrix_market(os, coboundary(k, o.r));
    else if (o.op == "laplacian")
        write_matrix_market(os, laplacian(k, o.r));
    else
        write_matrix_market(os, RealMatrix(normalized_laplacian(k, o.r)));
    if (o.out.empty()) {
        out << os.str();
        return nullptr;
    }
    write_text_file(o.out, os.str());
    ordered_json res;
    res["out"] = o.out;
    return res;
}

void add_estimator_options(CLI::App* sub, Options& o)
{
    sub->add_option("--mode", o.mode, "exact or stochastic")->check(CLI::IsMember({"exact", "stochastic"}));
    sub->add_option("--delta", o.delta, "filter threshold after rescaling; <= 0 picks it automatically");
    sub->add_option("--degree", o.degree, "Chebyshev degree")->check(CLI::PositiveNumber);
    sub->add_option("--probes", o.probes, "Hutchinson probe count")->check(CLI::PositiveNumber);
    sub->add_option("--probe-kind", o.probe_kind, "rademacher or hadamard_column")
        ->check(CLI::IsMember({"rademacher", "hadamard_column"}));
    sub->add_option("--threads", o.threads, "worker threads for probe blocks")->check(CLI::PositiveNumber);
    sub->add_flag("--no-oracle", o.no_oracle, "skip exact cross-checks and spectral delta selection");
}

void add_seed_option(CLI::App* sub, Options& o)
{
    sub->add_option("--seed", o.seed_text, "master seed (falls back to HOMOLOGY_LAB_SEED)");
}

} // namespace

void emit_plot_data(std::ostream& out, const std::vector<PlotRow>& rows)
{
    out << "threshold,r,betti,method\n";
    for (const PlotRow& row : rows)
        out << format_double(row.threshold) << ',' << row.r << ',' << row.betti << ',' << row.method << '\n';
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Homology and cohomology laboratory"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    auto* betti = app.add_subcommand("betti", "Betti number of layer r (exact or estimated)");
    betti->add_option("--input", o.input, "complex file");
    betti->add_option("--points", o.points, "point cloud for a Vietoris-Rips complex");
    betti->add_option("--threshold", o.threshold, "Vietoris-Rips distance bound");
    betti->add_option("--thresholds", o.thresholds, "comma-separated sweep of Vietoris-Rips bounds");
    betti->add_option("--max-dim", o.max_dim, "largest Vietoris-Rips simplex dimension")->check(CLI::Range(0, 3));
    betti->add_option("--plot-data", o.plot_data, "write the sweep as CSV");
    betti->add_option("--dump-operator", o.dump_operator, "write the Laplacian as MatrixMarket");

    auto* pbetti = app.add_subcommand("persistent-betti", "persistent Betti number of K1 ⊆ K2");
    pbetti->add_option("--manifest", o.manifest, "filtration manifest");
    pbetti->add_option("--k1", o.k1, "smaller complex");
    pbetti->add_option("--k2", o.k2, "larger complex");
    pbetti->add_option("--dump-operator", o.dump_operator, "write the persistent Laplacian as MatrixMarket");

    auto* trivial = app.add_subcommand("test-trivial", "is a cycle a boundary");
    auto* equiv = app.add_subcommand("test-equiv", "are two cycles homologous");
    equiv->add_option("--method", o.method, "homology or cohomology")
        ->check(CLI::IsMember({"homology", "cohomology"}));
    equiv->add_option("--witnesses", o.witnesses, "random cocycles to draw")->check(CLI::PositiveNumber);
    equiv->add_option("--tol", o.tol, "relative evaluation tolerance");
    equiv->add_option("--dump-witness", o.dump_witness, "write the distinguishing cocycle as JSON");
    auto* detect = app.add_subcommand("detect-cycle", "randomized cycle test");
    detect->add_option("--eta", o.eta, "trials = ceil(1/eta)");
    auto* track = app.add_subcommand("track", "follow a class through filtration stages");
    track->add_option("--input", o.stages, "complex file per stage, in filtration order")->expected(1, -1);
    auto* btrack = app.add_subcommand("betti-track", "lower bound on a Betti number from sampled cycles");
    btrack->add_option("--samples", o.samples, "cycles to sample when no --chain is given")->check(CLI::PositiveNumber);

    for (CLI::App* sub : {trivial, equiv, detect, btrack})
        sub->add_option("--input", o.input, "complex file");
    for (CLI::App* sub : {trivial, equiv, detect, track, btrack})
        sub->add_option("--chain", o.chains, "chain file");

    auto* gen = app.add_subcommand("gen", "write a generated complex");
    gen->add_option("--kind", o.kind, "generator name")->required();
    gen->add_option("--m", o.m, "circle length");
    gen->add_option("--points", o.points, "point cloud file (vietoris_rips)");
    gen->add_option("--random-points", o.random_points, "uniform random points in the unit cube (vietoris_rips)");
    gen->add_option("--dim", o.dim, "ambient dimension of random points");
    gen->add_option("--threshold", o.threshold, "Vietoris-Rips distance bound");
    gen->add_option("--max-dim", o.max_dim, "largest Vietoris-Rips simplex dimension")->check(CLI::Range(0, 3));
    gen->add_option("--out", o.out, "output path (default: standard output)");

    auto* dump = app.add_subcommand("dump-operator", "write an operator as MatrixMarket");
    dump->add_option("--input", o.input, "complex file");
    dump->add_option("--operator", o.op, "spec, boundary, coboundary, laplacian or normalized_laplacian")
        ->check(CLI::IsMember({"spec", "boundary", "coboundary", "laplacian", "normalized_laplacian"}));
    dump->add_option("--out", o.out, "output path (default: standard output)");

    for (CLI::App* sub : {betti, pbetti, trivial, equiv, btrack})
        add_estimator_options(sub, o);
    for (CLI::App* sub : {betti, pbetti, trivial, equiv, detect, track, btrack, gen})
        add_seed_option(sub, o);
    for (CLI::App* sub : {betti, pbetti, btrack, dump})
        sub->add_option("--r", o.r, "dimension");
    track->add_option("--mode", o.mode, "exact or stochastic")->check(CLI::IsMember({"exact", "stochastic"}));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << nlohmann::json{{"error", "UsageError"}, {"detail", e.what()}}.dump() << '\n';
        return kExitInput;
    }

    try {
        o.command = app.get_subcommands().front()->get_name();
        o.sweep = betti->count("--thresholds") > 0;
        o.seed = resolve_seed(o, err);
        ordered_json res;
        if (o.command == "betti")
            res = cmd_betti(o);
        else if (o.command == "persistent-betti")
            res = cmd_persistent_betti(o);
        else if (o.command == "test-trivial")
            res = cmd_test_trivial(o);
        else if (o.command == "test-equiv")
            res = cmd_test_equiv(o);
        else if (o.command == "detect-cycle")
            res = cmd_detect_cycle(o);
        else if (o.command == "track")
            res = cmd_track(o);
        else if (o.command == "betti-track")
            res = cmd_betti_track(o);
        else if (o.command == "gen")
            res = cmd_gen(o, out);
        else
            res = cmd_dump_operator(o, out);
        if (!res.is_null()) {
            res["config"] = config_json(o);
            out << res.dump() << '\n';
        }
        return kExitOk;
    } catch (const Error& e) {
        err << nlohmann::json{{"error", std::string(to_string(e.kind()))}, {"detail", e.detail()}}.dump() << '\n';
        return is_internal(e.kind()) ? kExitInternal : kExitInput;
    } catch (const std::exception& e) {
        err << nlohmann::json{{"error", "InternalError"}, {"detail", e.what()}}.dump() << '\n';
        return kExitInternal;
    }
}

} // namespace homlab
