// Command-line front end: solve, oracle, check-free, classify, gadget, gen.
// Uniform exit codes: 0 yes/confirmed, 1 no/refuted, 2 usage or reject,
// 3 budget exhausted.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <listcol/listcol.hpp>

namespace {

constexpr int kYes = 0, kNo = 1, kReject = 2, kExhausted = 3;
constexpr const char* kVersion = "listcol 1.0.0";

using namespace listcol;
using nlohmann::json;

struct Report {
    std::string command;
    std::string answer;
    std::vector<std::pair<int, int>> certificate;  // 1-based vertex, colour
    std::vector<int> witness;                      // 1-based vertices
    std::vector<std::pair<std::string, long>> stats;
    std::optional<std::uint64_t> seed;
    std::string detail;
    long time_ms = 0;

    void print(std::ostream& out, bool as_json) const {
        if (as_json) {
            json j;
            j["command"] = command;
            j["answer"] = answer;
            if (!certificate.empty()) {
                json c = json::array();
                for (auto [v, col] : certificate) c.push_back({v, col});
                j["certificate"] = c;
            }
            if (!witness.empty()) j["witness"] = witness;
            if (!stats.empty()) {
                json s = json::object();
                for (auto& [k, v] : stats) s[k] = v;
                j["stats"] = s;
            }
            if (seed) j["seed"] = *seed;
            if (!detail.empty()) j["detail"] = detail;
            j["time_ms"] = time_ms;
            out << j.dump() << "\n";
            return;
        }
        out << "command " << command << "\n";
        out << "answer " << answer << "\n";
        for (auto [v, col] : certificate) out << "v " << v << " " << col << "\n";
        if (!witness.empty()) {
            out << "witness";
            for (int v : witness) out << " " << v;
            out << "\n";
        }
        for (auto& [k, v] : stats) out << "stat " << k << " " << v << "\n";
        if (seed) out << "seed " << *seed << "\n";
        if (!detail.empty()) out << "detail " << detail << "\n";
        out << "time-ms " << time_ms << "\n";
    }
};

Instance read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    return read_instance(in);
}

NaeFormula read_formula_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    return read_formula(in);
}

// 1-based positions in live-vertex order, the numbering used by the files.
std::vector<int> file_numbering(const Graph& g) {
    std::vector<int> index(g.id_bound(), 0);
    int next = 1;
    for (Vertex v : g.vertices()) index[v] = next++;
    return index;
}

void fill_certificate(Report& rep, const Graph& g, const Colouring& col) {
    int next = 1;
    for (Vertex v : g.vertices()) rep.certificate.push_back({next++, col[v]});
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    }
};

int cmd_solve(const std::string& file, const std::string& h, const std::string& verify,
              const std::string& trace_path, std::optional<std::uint64_t> seed, bool parallel,
              bool as_json) {
    Instance inst = read_instance_file(file);
    if (inst.k != 3) throw UsageError("the solver handles exactly three colours");
    SolveOptions so;
    if (h == "p2p5") so.h = TargetPattern::p2p5;
    else if (h == "p3p4") so.h = TargetPattern::p3p4;
    else if (h == "auto") so.h = TargetPattern::automatic;
    else throw UsageError("--h must be p2p5 or p3p4");
    if (verify == "on") so.verify_freeness = true;
    else if (verify != "off") throw UsageError("--verify-freeness must be on or off");
    so.trace = !trace_path.empty();
    so.parallel = parallel;

    Timer timer;
    Solver solver(so);
    SolveReport res = solver.solve(inst);
    Report rep;
    rep.command = "solve";
    rep.answer = res.yes ? "yes" : "no";
    rep.seed = seed;
    if (res.yes) fill_certificate(rep, inst.g, res.colouring);
    for (const auto& [k, v] : res.stats.counters) rep.stats.push_back({k, v});
    rep.time_ms = timer.ms();
    if (!trace_path.empty()) {
        std::ofstream tf(trace_path);
        if (!tf) throw UsageError("cannot write " + trace_path);
        for (const std::string& line : res.trace) tf << line << "\n";
    }
    rep.print(std::cout, as_json);
    return res.yes ? kYes : kNo;
}

int cmd_oracle(const std::string& file, std::optional<int> k, long long nodes, double secs,
               bool as_json) {
    Instance inst = read_instance_file(file);
    if (k) {
        if (*k < 1 || *k > 5) throw UsageError("--k must be 1..5");
        for (Vertex v : inst.g.vertices())
            if (!inst.lists[v].subset_of(ColourSet::full(*k)))
                throw UsageError("a list exceeds the requested palette");
        inst.k = *k;
    }
    OracleBudget budget;
    budget.max_nodes = nodes;
    budget.max_seconds = secs;
    Timer timer;
    OracleResult res = oracle_solve(inst, budget);
    Report rep;
    rep.command = "oracle";
    rep.stats.push_back({"nodes", static_cast<long>(res.nodes)});
    rep.time_ms = timer.ms();
    if (res.status == OracleStatus::exhausted) {
        rep.answer = "exhausted";
        rep.print(std::cout, as_json);
        return kExhausted;
    }
    rep.answer = res.status == OracleStatus::yes ? "yes" : "no";
    if (res.status == OracleStatus::yes) fill_certificate(rep, inst.g, res.colouring);
    rep.time_ms = timer.ms();
    rep.print(std::cout, as_json);
    return res.status == OracleStatus::yes ? kYes : kNo;
}

int cmd_checkfree(const std::string& file, const std::string& pattern, bool as_json) {
    auto pat = parse_pattern(pattern);
    if (!pat) throw UsageError("unknown pattern " + pattern);
    Instance inst = read_instance_file(file);
    Timer timer;
    auto w = find_induced(inst.g, pattern_graph(*pat));
    Report rep;
    rep.command = "check-free";
    rep.time_ms = timer.ms();
    if (w) {
        rep.answer = "found";
        auto index = file_numbering(inst.g);
        for (Vertex v : *w) rep.witness.push_back(index[v]);
        rep.print(std::cout, as_json);
        return kNo;
    }
    rep.answer = "free";
    rep.print(std::cout, as_json);
    return kYes;
}

int cmd_classify(const std::string& file, bool as_json) {
    Instance inst = read_instance_file(file);
    ClassifyLabel label = classify(inst.g);
    Report rep;
    rep.command = "classify";
    rep.answer = label == ClassifyLabel::polynomial_linear_forest ? "PolynomialLinearForest"
                                                                  : "NPCompleteExpected";
    rep.print(std::cout, as_json);
    return label == ClassifyLabel::polynomial_linear_forest ? kYes : kNo;
}

int cmd_gadget_build(const std::string& file, bool prime, const std::string& out_path) {
    NaeFormula f = read_formula_file(file);
    Gadget gd = build_gadget(f, prime);
    Instance out;
    out.g = gd.g;
    out.lists = gd.lists;
    out.k = 5;
    out.sync();
    if (out_path.empty()) {
        write_instance(std::cout, out);
    } else {
        std::ofstream os(out_path);
        if (!os) throw UsageError("cannot write " + out_path);
        write_instance(os, out);
    }
    return kYes;
}

int cmd_gadget_verify(const std::string& file, int lemma, bool as_json) {
    NaeFormula f = read_formula_file(file);
    Timer timer;
    GadgetCheck sizes = check_sizes(f);
    GadgetCheck check;
    if (!sizes.ok) check = sizes;
    else if (lemma == 11) check = check_encoding(f);
    else if (lemma == 12) check = check_extension(f);
    else if (lemma == 13) check = check_freeness(f);
    else throw UsageError("--lemma must be 11, 12, or 13");
    Report rep;
    rep.command = "gadget-verify";
    rep.answer = check.ok ? "Confirmed" : "Refuted";
    rep.detail = check.detail;
    rep.time_ms = timer.ms();
    rep.print(std::cout, as_json);
    return check.ok ? kYes : kNo;
}

int cmd_gen(int n, double density, const std::vector<std::string>& forbid, bool require_p7,
            bool plant, bool allow_disconnected, std::uint64_t seed, int attempts,
            const std::string& out_path) {
    if (n > 10000) throw UsageError("at most 10000 vertices");
    GenOptions go;
    go.n = n;
    go.density = density;
    go.require_p7 = require_p7;
    go.plant_path = plant;
    go.connected = !allow_disconnected;
    go.seed = seed;
    go.attempts = attempts;
    for (const std::string& p : forbid) {
        auto pat = parse_pattern(p);
        if (!pat) throw UsageError("unknown pattern " + p);
        go.forbid.push_back(*pat);
    }
    Rng rng(seed);
    Graph g = generate(go, rng);
    Instance out;
    out.g = g;
    out.lists = random_lists(g, rng, 3);
    out.k = 3;
    out.sync();
    if (out_path.empty()) {
        write_instance(std::cout, out);
    } else {
        std::ofstream os(out_path);
        if (!os) throw UsageError("cannot write " + out_path);
        write_instance(os, out);
    }
    return kYes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"list 3-colouring toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    bool as_json = false, parallel = false;
    app.add_flag("--json", as_json, "emit the report as JSON");
    app.add_flag("--parallel", parallel, "evaluate first-stage branches concurrently");
    app.fallthrough();

    std::string solve_file, solve_h = "auto", solve_verify = "off", solve_trace;
    std::optional<std::uint64_t> solve_seed;
    auto* solve = app.add_subcommand("solve", "decide list 3-colourability");
    solve->set_help_flag("--help", "print help");  // frees the short -h for the class option
    solve->add_option("file", solve_file, "instance file")->required();
    solve->add_option("--h", solve_h, "restrict to one supported class (p2p5 or p3p4)");
    solve->add_option("--verify-freeness", solve_verify, "on: reject inputs outside the class");
    solve->add_option("--trace", solve_trace, "write branch trace lines to this file");
    solve->add_option("--seed", [&solve_seed](const std::vector<std::string>& vals) {
        solve_seed = std::stoull(vals.at(0));
        return true;
    }, "echoed into the report; the solve itself is deterministic");

    std::string oracle_file;
    std::optional<int> oracle_k;
    long long oracle_nodes = OracleBudget{}.max_nodes;
    double oracle_secs = OracleBudget{}.max_seconds;
    auto* oracle = app.add_subcommand("oracle", "exact exhaustive decision");
    oracle->add_option("file", oracle_file, "instance file")->required();
    oracle->add_option("--k", [&oracle_k](const std::vector<std::string>& vals) {
        oracle_k = std::stoi(vals.at(0));
        return true;
    }, "override the palette size");
    oracle->add_option("--budget-nodes", oracle_nodes, "search node limit");
    oracle->add_option("--budget-secs", oracle_secs, "wall clock limit");

    std::string cf_file, cf_pattern;
    auto* checkfree = app.add_subcommand("check-free", "search for an induced pattern");
    checkfree->add_option("file", cf_file, "instance file")->required();
    checkfree->add_option("--pattern", cf_pattern, "p7, k4, p2p5, p3p4, or p3p5")->required();

    std::string cl_file;
    auto* cls = app.add_subcommand("classify", "label a forbidden pattern on <= 7 vertices");
    cls->add_option("file", cl_file, "graph file")->required();

    auto* gadget = app.add_subcommand("gadget", "satisfiability-to-colouring reduction");
    gadget->require_subcommand(1);
    std::string gb_file, gb_out;
    bool gb_prime = false;
    auto* gbuild = gadget->add_subcommand("build", "construct the reduction graph");
    gbuild->add_option("formula", gb_file, "formula file")->required();
    gbuild->add_flag("--prime", gb_prime, "attach the 5-clique");
    gbuild->add_option("-o,--output", gb_out, "output file (default stdout)");
    std::string gv_file;
    int gv_lemma = 0;
    auto* gverify = gadget->add_subcommand("verify", "check one reduction property");
    gverify->add_option("formula", gv_file, "formula file")->required();
    gverify->add_option("--lemma", gv_lemma, "11 encoding, 12 clique extension, 13 freeness")
        ->required();

    int gen_n = 10, gen_attempts = 50000;
    double gen_density = 0.3;
    std::vector<std::string> gen_forbid;
    bool gen_p7 = false, gen_plant = false, gen_disconnected = false;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "sample a random instance");
    gen->add_option("--n", gen_n, "vertex count");
    gen->add_option("--edge-density", gen_density, "edge probability");
    gen->add_option("--forbid", gen_forbid, "patterns the sample must avoid");
    gen->add_flag("--require-p7", gen_p7, "insist on an induced 7-path");
    gen->add_flag("--plant", gen_plant, "grow around a seeded 7-path");
    gen->add_flag("--allow-disconnected", gen_disconnected, "drop the connectivity filter");
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_option("--attempts", gen_attempts, "rejection budget");
    gen->add_option("-o,--output", gen_out, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve)
            return cmd_solve(solve_file, solve_h, solve_verify, solve_trace, solve_seed, parallel,
                             as_json);
        if (*oracle) return cmd_oracle(oracle_file, oracle_k, oracle_nodes, oracle_secs, as_json);
        if (*checkfree) return cmd_checkfree(cf_file, cf_pattern, as_json);
        if (*cls) return cmd_classify(cl_file, as_json);
        if (*gbuild) return cmd_gadget_build(gb_file, gb_prime, gb_out);
        if (*gverify) return cmd_gadget_verify(gv_file, gv_lemma, as_json);
        if (*gen)
            return cmd_gen(gen_n, gen_density, gen_forbid, gen_p7, gen_plant, gen_disconnected,
                           gen_seed, gen_attempts, gen_out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kReject;
    } catch (const StructureViolation& e) {
        std::cerr << "structure violation [" << e.check << "]: " << e.what() << "\n";
        return kReject;
    } catch (const ExhaustedError& e) {
        std::cerr << "exhausted: " << e.what() << "\n";
        return kExhausted;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kReject;
    }
    return kReject;
}
