#include "bss/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "bss/error.hpp"
#include "bss/formulas.hpp"
#include "bss/paths.hpp"
#include "bss/stream.hpp"

namespace bss {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

constexpr int kFormatVersion = 1;

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::DecodeError, path + ": " + e.what());
    }
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
    out << text;
}

Scalar scalar_of(const json& j) {
    if (j.is_number_integer()) return Scalar(j.get<long>());
    if (j.is_string()) return parse_scalar(j.get<std::string>());
    throw Error(ErrorKind::DecodeError, "expected a scalar literal, got " + j.dump());
}

Word word_of(const json& j) {
    if (!j.is_array()) return Word{scalar_of(j)};
    Word w;
    for (const auto& x : j) w.push_back(scalar_of(x));
    return w;
}

json word_json(const Word& w) {
    json a = json::array();
    for (const auto& x : w) a.push_back(x.to_string());
    return a;
}

PairSet pairs_of(const json& j) {
    PairSet d;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2) throw Error(ErrorKind::DecodeError, "order pairs are [a, b] arrays");
        d.insert({p[0].get<Natural>(), p[1].get<Natural>()});
    }
    return d;
}

json pairs_json(const PairSet& d) {
    json a = json::array();
    for (auto [x, y] : d) a.push_back({x, y});
    return a;
}

Scalar stream_of(const json& entry, const std::string& name) {
    if (entry.contains("order_pairs")) return order_real(pairs_of(entry["order_pairs"]));
    std::vector<int> prefix = entry.value("prefix", std::vector<int>{});
    std::vector<int> repeat = entry.value("repeat", std::vector<int>{});
    Integer integer_part(entry.value("integer", std::string("0")));
    return make_stream(integer_part, std::make_shared<PeriodicDigits>(prefix, repeat), kDefaultDigitBudget, name);
}

StreamBindings streams_of(const json& j) {
    StreamBindings b;
    if (j.is_object())
        for (const auto& [name, entry] : j.items()) b[name] = stream_of(entry, name);
    return b;
}

Oracle oracle_of(const json& j) {
    std::vector<Word> members;
    for (const auto& m : j.at("members")) members.push_back(word_of(m));
    return [members](const Word& q) {
        for (const auto& m : members)
            if (same_word(m, q)) return true;
        return false;
    };
}

Word parse_input(const std::string& text) {
    if (text.empty()) return {};
    return parse_word(text);
}

// Inputs for the agreement harness: small integers, naturals and rationals.
Word random_point(std::mt19937_64& rng, std::size_t dim) {
    Word w;
    for (std::size_t i = 0; i < dim; ++i) {
        switch (rng() % 3) {
        case 0: w.emplace_back(static_cast<long>(rng() % 21) - 10); break;
        case 1: w.emplace_back(static_cast<long>(rng() % 120)); break;
        default: {
            Rational q(static_cast<long>(rng() % 2001) - 1000, 1 + static_cast<long>(rng() % 60));
            q.canonicalize();
            w.emplace_back(q);
        }
        }
    }
    return w;
}

int outcome_code(const RunOutcome& r) {
    switch (r.kind) {
    case OutcomeKind::Halted: return exit_code::ok;
    case OutcomeKind::OutOfBudget: return exit_code::unknown;
    case OutcomeKind::Stuck: return exit_code::negative;
    }
    return exit_code::data;
}

int truth_code(Truth t) {
    switch (t) {
    case Truth::True: return exit_code::ok;
    case Truth::False: return exit_code::negative;
    case Truth::Unknown: return exit_code::unknown;
    }
    return exit_code::data;
}

json outcome_json(const RunOutcome& r) {
    json o;
    o["kind"] = std::string(to_string(r.kind));
    o["steps"] = r.steps;
    o["node"] = r.last.node;
    if (r.halted()) o["output"] = word_json(r.output);
    if (r.kind == OutcomeKind::Stuck) {
        o["reason"] = std::string(to_string(r.reason));
        o["detail"] = r.detail;
    }
    return o;
}

// ---------------------------------------------------------------------------

struct RunArgs {
    std::string machine, input, oracle, streams, trace;
    std::size_t budget = 10000;
};

int cmd_run(const RunArgs& a, std::ostream& out, std::ostream& err) {
    StreamBindings streams = a.streams.empty() ? StreamBindings{} : load_stream_bindings(a.streams);
    Machine m = load_machine_file(a.machine, streams);
    Oracle oracle;
    if (!a.oracle.empty()) oracle = load_oracle(a.oracle);
    Word input = parse_input(a.input);

    json steps = json::array();
    TraceHook hook;
    if (!a.trace.empty()) {
        hook = [&steps](const TraceEvent& e) {
            json touched = json::array();
            for (const auto& [cell, value] : e.touched) touched.push_back({{"cell", cell}, {"value", value.to_string()}});
            steps.push_back({{"step", e.step}, {"node", e.node}, {"offset", e.offset}, {"touched", touched}});
        };
    }
    const auto start = std::chrono::steady_clock::now();
    RunOutcome r = run(Program(m), input, a.budget, oracle ? &oracle : nullptr, hook);
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    if (!a.trace.empty()) {
        json t;
        t["format_version"] = kFormatVersion;
        t["machine"] = m.name;
        t["input"] = word_json(input);
        t["budget"] = a.budget;
        t["steps"] = steps;
        t["outcome"] = outcome_json(r);
        write_file(a.trace, t.dump(2) + "\n");
    }
    out << "outcome: " << to_string(r.kind) << "\n";
    if (r.halted()) out << "output: " << render(r.output) << "\n";
    if (r.kind == OutcomeKind::Stuck) out << "reason: " << to_string(r.reason) << " at " << r.last.node << "\n";
    out << "steps: " << r.steps << "\n";
    if (!a.trace.empty()) out << "trace: " << a.trace << "\n";
    err << "time: " << ms << " ms\n";
    return outcome_code(r);
}

struct PathsArgs {
    std::string machine, streams, format = "json", out_file;
    std::size_t dim = 1, depth = 50;
};

int cmd_paths(const PathsArgs& a, std::ostream& out) {
    StreamBindings streams = a.streams.empty() ? StreamBindings{} : load_stream_bindings(a.streams);
    Machine m = load_machine_file(a.machine, streams);
    auto cells = enumerate_paths(m, a.dim, a.depth);
    std::string text = cells_to_json(cells, m.name);
    if (a.out_file.empty())
        out << text;
    else
        write_file(a.out_file, text);
    return exit_code::ok;
}

struct CheckArgs {
    std::string machine, report;
    std::size_t dim = 1, depth = 50, samples = 1000;
    std::uint64_t seed = 1;
};

int cmd_check_cells(const CheckArgs& a, std::ostream& out, std::ostream& err) {
    Machine m = load_machine_file(a.machine);
    Program p(m);
    std::vector<Cell> halting;
    for (auto& c : enumerate_paths(m, a.dim, a.depth))
        if (!c.truncated) halting.push_back(std::move(c));
    std::mt19937_64 rng(a.seed);
    std::size_t agree = 0, halted = 0;
    json failures = json::array();
    for (std::size_t k = 0; k < a.samples; ++k) {
        Word w = random_point(rng, a.dim);
        RunOutcome r = run(p, w, a.depth);
        PointEvaluator at(w);
        std::size_t hits = 0;
        const Cell* hit = nullptr;
        for (const auto& c : halting)
            if (cell_contains(c, at)) {
                ++hits;
                hit = &c;
            }
        bool ok = hits == (r.halted() ? 1u : 0u);
        if (ok && r.halted()) {
            ++halted;
            ok = hit->output.size() == r.output.size();
            for (std::size_t i = 0; ok && i < r.output.size(); ++i) ok = exactly_equal(at.value(hit->output[i]), r.output[i]);
        }
        if (ok) {
            ++agree;
        } else if (failures.size() < 20) {
            failures.push_back({{"input", word_json(w)}, {"run", std::string(to_string(r.kind))}, {"cells", hits}});
        }
    }
    out << "machine: " << m.name << "\n"
        << "cells: " << halting.size() << " halting\n"
        << "samples: " << a.samples << " (" << halted << " halted)\n"
        << "agree: " << agree << "/" << a.samples << "\n";
    if (!a.report.empty()) {
        json j;
        j["format_version"] = kFormatVersion;
        j["machine"] = m.name;
        j["dim"] = a.dim;
        j["depth"] = a.depth;
        j["seed"] = a.seed;
        j["samples"] = a.samples;
        j["halted"] = halted;
        j["agree"] = agree;
        j["failures"] = failures;
        write_file(a.report, j.dump(2) + "\n");
    }
    if (agree != a.samples) err << "disagreement on " << (a.samples - agree) << " samples\n";
    return agree == a.samples ? exit_code::ok : exit_code::negative;
}

// ---------------------------------------------------------------------------
// structure manifests

json signature_json(const Signature& sig) {
    json j;
    j["relations"] = json::object();
    for (const auto& [n, k] : sig.relations) j["relations"][n] = k;
    j["functions"] = json::object();
    for (const auto& [n, k] : sig.functions) j["functions"][n] = k;
    j["constants"] = sig.constants;
    return j;
}

json universe_json(const std::optional<std::vector<Word>>& u) {
    if (!u) return nullptr;
    json a = json::array();
    for (const auto& w : *u) a.push_back(word_json(w));
    return a;
}

void write_machine(const fs::path& dir, const std::string& file, const Machine& m) { write_file(dir / file, print_machine_dsl(m)); }

json base_manifest(const std::string& kind, const RStructure& s) {
    json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = kind;
    j["signature"] = signature_json(s.sig);
    j["element_length"] = s.element_length;
    j["universe"] = "universe.bss";
    j["finite_universe"] = universe_json(s.finite_universe);
    return j;
}

struct StructureArgs {
    std::string out_dir, pairs, basis, set, backend = "rational";
    std::size_t dim = 2;
    Natural n_min = 2;
    long n_max = -1;
};

PairSet parse_pairs(const std::string& text) {
    PairSet d;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto lt = item.find('<');
        if (lt == std::string::npos) throw Error(ErrorKind::InvalidLiteral, "expected a<b in '" + item + "'");
        d.insert({std::stoull(item.substr(0, lt)), std::stoull(item.substr(lt + 1))});
    }
    return d;
}

int cmd_structure_order(const StructureArgs& a, std::ostream& out) {
    auto [pres, s] = build_order_structure(parse_pairs(a.pairs));
    fs::path dir(a.out_dir);
    fs::create_directories(dir);
    write_machine(dir, "universe.bss", s.universe);
    write_machine(dir, "less.bss", s.relations.at("<").member);
    write_machine(dir, "not_less.bss", *s.relations.at("<").complement);
    json j = base_manifest("order", s);
    j["relations"] = {{"<", {{"member", "less.bss"}, {"complement", "not_less.bss"}}}};
    j["functions"] = json::object();
    j["constants"] = json::object();
    j["oracle"] = nullptr;
    j["streams"] = {{"ell", {{"order_pairs", pairs_json(pres.d)}}}};
    j["tables"] = {{"<", pairs_json(pres.d)}};
    write_file(dir / "manifest.json", j.dump(2) + "\n");
    out << "manifest: " << (dir / "manifest.json").string() << "\n";
    return exit_code::ok;
}

int cmd_structure_vectorspace(const StructureArgs& a, std::ostream& out) {
    auto backend = backend_from_string(a.backend);
    if (!backend) throw Error(ErrorKind::InvalidLiteral, "unknown backend '" + a.backend + "'");
    RStructure s = vs_make(a.dim, *backend);
    fs::path dir(a.out_dir);
    fs::create_directories(dir);
    write_machine(dir, "universe.bss", s.universe);
    write_machine(dir, "add.bss", s.functions.at("add"));
    write_machine(dir, "scale.bss", s.functions.at("scale"));
    json j = base_manifest("vectorspace", s);
    j["relations"] = json::object();
    j["functions"] = {{"add", "add.bss"}, {"scale", "scale.bss"}};
    json basis = json::array();
    for (const auto& b : vs_basis(a.dim)) basis.push_back(word_json(b));
    j["basis"] = basis;
    if (!a.basis.empty()) {
        std::vector<Word> target;
        std::stringstream ss(a.basis);
        std::string item;
        while (std::getline(ss, item, ';')) target.push_back(parse_word(item));
        VsIso f = vs_iso(a.dim, target);
        write_machine(dir, "iso.bss", f.forward);
        json t = json::array();
        for (const auto& w : target) t.push_back(word_json(w));
        j["isomorphism"] = {{"machine", "iso.bss"}, {"target_basis", t}};
    }
    j["constants"] = json::object();
    j["oracle"] = nullptr;
    j["streams"] = json::object();
    write_file(dir / "manifest.json", j.dump(2) + "\n");
    out << "manifest: " << (dir / "manifest.json").string() << "\n";
    return exit_code::ok;
}

int cmd_structure_cycles(const StructureArgs& a, std::ostream& out) {
    std::vector<Word> members;
    std::stringstream ss(a.set);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) members.push_back(Word{parse_scalar(item)});
    json mj = json::array();
    for (const auto& w : members) mj.push_back(word_json(w));
    Oracle s_oracle = oracle_of(json{{"members", mj}});
    std::optional<Natural> n_max;
    if (a.n_max >= 0) n_max = static_cast<Natural>(a.n_max);
    RStructure g = cycle_graph_structure(s_oracle, a.n_min, n_max);
    fs::path dir(a.out_dir);
    fs::create_directories(dir);
    write_machine(dir, "universe.bss", g.universe);
    write_machine(dir, "adjacent.bss", g.relations.at("E").member);
    json j = base_manifest("cycles", g);
    j["relations"] = {{"E", {{"member", "adjacent.bss"}}}};
    j["functions"] = json::object();
    j["constants"] = json::object();
    j["oracle"] = {{"name", "S"}, {"members", mj}};
    j["streams"] = json::object();
    j["n_min"] = a.n_min;
    j["n_max"] = n_max ? json(*n_max) : json(nullptr);
    write_file(dir / "manifest.json", j.dump(2) + "\n");
    out << "manifest: " << (dir / "manifest.json").string() << "\n";
    return exit_code::ok;
}

struct EvalArgs {
    std::string structure, formula, assign, witnesses;
    bool exhaustive = false;
    std::size_t budget = 10000;
};

Valuation parse_assignment(const std::string& text) {
    Valuation v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw Error(ErrorKind::InvalidLiteral, "expected name=word in '" + item + "'");
        std::string name = item.substr(0, eq);
        name.erase(0, name.find_first_not_of(' '));
        name.erase(name.find_last_not_of(' ') + 1);
        v[name] = parse_input(item.substr(eq + 1));
    }
    return v;
}

int cmd_eval(const EvalArgs& a, std::ostream& out) {
    RStructure s = load_structure_manifest(a.structure);
    FormulaPtr f = load_formula_file(a.formula, s.sig);
    Valuation asg = parse_assignment(a.assign);
    Level level = classify(f);
    Truth t;
    std::string method;
    if (level.n <= 1) {
        Witnesses w;
        if (!a.witnesses.empty()) {
            std::vector<Word> ws;
            std::stringstream ss(a.witnesses);
            std::string item;
            while (std::getline(ss, item, ';')) ws.push_back(parse_input(item));
            w = Witnesses::list(ws, a.exhaustive);
        } else if (s.finite_universe) {
            w = Witnesses::list(*s.finite_universe, a.exhaustive);
        } else {
            w = Witnesses::rational_grid();
        }
        t = eval_budgeted(s, f, asg, w, a.budget);
        method = "budgeted";
    } else if (s.finite_universe) {
        t = truth(eval_finite(s, f, asg, a.budget));
        method = "finite";
    } else {
        throw Error(ErrorKind::LevelTooHigh, "level " + to_string(level) + " over an infinite universe");
    }
    out << "level: " << to_string(level) << "\n"
        << "method: " << method << "\n"
        << "result: " << to_string(t) << "\n";
    return truth_code(t);
}

}  // namespace

StreamBindings load_stream_bindings(const std::string& path) {
    json j = read_json(path);
    return streams_of(j.contains("streams") ? j["streams"] : j);
}

Oracle load_oracle(const std::string& path) { return oracle_of(read_json(path)); }

RStructure load_structure_manifest(const std::string& path) {
    json j = read_json(path);
    if (j.value("format_version", 0) != kFormatVersion) throw Error(ErrorKind::DecodeError, path + ": unsupported format_version");
    const fs::path dir = fs::path(path).parent_path();
    StreamBindings streams = streams_of(j.value("streams", json::object()));
    auto machine = [&](const std::string& file) { return load_machine_file((dir / file).string(), streams); };

    RStructure s;
    const json& sig = j.at("signature");
    for (const auto& [n, k] : sig.at("relations").items()) s.sig.relations[n] = k.get<int>();
    for (const auto& [n, k] : sig.at("functions").items()) s.sig.functions[n] = k.get<int>();
    s.sig.constants = sig.value("constants", std::vector<std::string>{});
    check_signature(s.sig);
    s.element_length = j.value("element_length", std::size_t{1});
    s.universe = machine(j.at("universe").get<std::string>());
    const json rels = j.value("relations", json::object());
    const json funcs = j.value("functions", json::object());
    const json consts = j.value("constants", json::object());
    for (const auto& [n, r] : rels.items()) {
        RelationDecider d{machine(r.at("member").get<std::string>()), std::nullopt};
        if (r.contains("complement")) d.complement = machine(r["complement"].get<std::string>());
        s.relations[n] = std::move(d);
    }
    for (const auto& [n, file] : funcs.items()) s.functions[n] = machine(file.get<std::string>());
    for (const auto& [n, w] : consts.items()) s.constants[n] = word_of(w);
    if (j.contains("oracle") && !j["oracle"].is_null()) s.oracle = oracle_of(j["oracle"]);
    if (j.contains("finite_universe") && !j["finite_universe"].is_null()) {
        std::vector<Word> u;
        for (const auto& w : j["finite_universe"]) u.push_back(word_of(w));
        s.finite_universe = std::move(u);
    }
    for (const auto& [name, r] : s.relations)
        if (!s.sig.relations.count(name)) throw Error(ErrorKind::SignatureMismatch, "relation '" + name + "' not in the signature");
    for (const auto& [name, f] : s.functions)
        if (!s.sig.functions.count(name)) throw Error(ErrorKind::SignatureMismatch, "function '" + name + "' not in the signature");
    return s;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact BSS machine toolkit", "bss"};
    app.require_subcommand(1);

    RunArgs run_a;
    auto* run_cmd = app.add_subcommand("run", "Run a machine on one input");
    run_cmd->add_option("--machine", run_a.machine, "machine file")->required();
    run_cmd->add_option("--input", run_a.input, "comma-separated scalar literals");
    run_cmd->add_option("--budget", run_a.budget, "step budget");
    run_cmd->add_option("--oracle", run_a.oracle, "oracle set (JSON)");
    run_cmd->add_option("--streams", run_a.streams, "stream parameter bindings (JSON)");
    run_cmd->add_option("--trace", run_a.trace, "write a JSON trace here");

    PathsArgs paths_a;
    auto* paths_cmd = app.add_subcommand("paths", "Enumerate path cells up to a depth");
    paths_cmd->add_option("--machine", paths_a.machine, "machine file")->required();
    paths_cmd->add_option("--dim", paths_a.dim, "input dimension")->required();
    paths_cmd->add_option("--depth", paths_a.depth, "step bound")->required();
    paths_cmd->add_option("--format", paths_a.format, "output format")->check(CLI::IsMember({"json"}));
    paths_cmd->add_option("--streams", paths_a.streams, "stream parameter bindings (JSON)");
    paths_cmd->add_option("--out", paths_a.out_file, "write cells here instead of stdout");

    CheckArgs check_a;
    auto* check_cmd = app.add_subcommand("check-cells", "Compare runs against path cells on sampled inputs");
    check_cmd->add_option("--machine", check_a.machine, "machine file")->required();
    check_cmd->add_option("--dim", check_a.dim, "input dimension")->required();
    check_cmd->add_option("--depth", check_a.depth, "step bound")->required();
    check_cmd->add_option("--samples", check_a.samples, "number of sampled inputs");
    check_cmd->add_option("--seed", check_a.seed, "sampler seed");
    check_cmd->add_option("--report", check_a.report, "write a JSON report here");

    StructureArgs st_a;
    auto* st_cmd = app.add_subcommand("structure", "Build a structure: manifest plus machine files");
    st_cmd->require_subcommand(1);
    auto* order_cmd = st_cmd->add_subcommand("order", "Order copy from a finite strict order");
    order_cmd->add_option("--pairs", st_a.pairs, "pairs a<b, comma separated")->required();
    order_cmd->add_option("--out", st_a.out_dir, "output directory")->required();
    auto* vs_cmd = st_cmd->add_subcommand("vectorspace", "Finite-dimensional vector space");
    vs_cmd->add_option("--dim", st_a.dim, "dimension")->required();
    vs_cmd->add_option("--backend", st_a.backend, "scalar backend");
    vs_cmd->add_option("--basis", st_a.basis, "target basis for an isomorphism, words separated by ';'");
    vs_cmd->add_option("--out", st_a.out_dir, "output directory")->required();
    auto* cyc_cmd = st_cmd->add_subcommand("cycles", "Disjoint union of cycles driven by a set S");
    cyc_cmd->add_option("--set", st_a.set, "members of S, comma separated");
    cyc_cmd->add_option("--nmin", st_a.n_min, "smallest cycle index");
    cyc_cmd->add_option("--nmax", st_a.n_max, "largest cycle index (finite universe)");
    cyc_cmd->add_option("--out", st_a.out_dir, "output directory")->required();

    EvalArgs ev_a;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a formula on a structure");
    eval_cmd->add_option("--structure", ev_a.structure, "structure manifest")->required();
    eval_cmd->add_option("--formula", ev_a.formula, "formula file (S-expression)")->required();
    eval_cmd->add_option("--budget", ev_a.budget, "dovetail stages and machine steps");
    eval_cmd->add_option("--assign", ev_a.assign, "free variables, e.g. \"x=0;v=1,2\"");
    eval_cmd->add_option("--witnesses", ev_a.witnesses, "witness words separated by ';'");
    eval_cmd->add_flag("--exhaustive", ev_a.exhaustive, "the witnesses cover the universe");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_code::ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_code::usage;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(run_a, out, err);
        if (paths_cmd->parsed()) return cmd_paths(paths_a, out);
        if (check_cmd->parsed()) return cmd_check_cells(check_a, out, err);
        if (order_cmd->parsed()) return cmd_structure_order(st_a, out);
        if (vs_cmd->parsed()) return cmd_structure_vectorspace(st_a, out);
        if (cyc_cmd->parsed()) return cmd_structure_cycles(st_a, out);
        if (eval_cmd->parsed()) return cmd_eval(ev_a, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::data;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::data;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::data;
    }
    err << "usage error: no command\n";
    return exit_code::usage;
}

}  // namespace bss
