#pragma once

// Command-line front end. run_cli parses argv and writes the report to `out`
// and diagnostics to `err`; the return value is the process exit code.

#include "mixedab/classify.hpp"
#include "mixedab/presented.hpp"
#include "mixedab/products_psp.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#ifndef MIXEDAB_VERSION
#define MIXEDAB_VERSION "0.0.0"
#endif

namespace mixedab::cli {

enum ExitCode : int { Pass = 0, Fail = 1, Undecided = 2, UsageError = 3 };

struct RunConfig {
    std::string command;
    std::vector<std::string> inputs;
    std::string against;
    std::string which;  ///< example name
    std::optional<std::uint64_t> prime;
    std::uint64_t bound = 12;
    std::optional<std::uint64_t> depth;
    std::uint64_t cutoff = 13;
    std::uint64_t jump_cut = 8;
    std::uint64_t steps = 200;
    std::uint64_t seed = 0;
    std::string expect;
    bool free = false;
    bool verify = false;
    bool zero_tight = false;
    bool csv = false;
};

inline std::vector<std::string> validate(const RunConfig& c) {
    std::vector<std::string> out;
    if (c.bound < 4) out.emplace_back("--bound must be >= 4");
    if (c.depth && *c.depth < 4) out.emplace_back("--depth must be >= 4");
    if (c.cutoff < 2) out.emplace_back("--cutoff must be >= 2");
    if (c.prime && !is_prime(*c.prime)) out.emplace_back("--prime must be prime");
    if (!c.expect.empty() && c.expect != "yes" && c.expect != "no" && c.expect != "undecided")
        out.emplace_back("--expect must be yes, no or undecided");
    return out;
}

inline nlohmann::json to_json(const RunConfig& c) {
    nlohmann::json j{{"command", c.command},
                     {"inputs", c.inputs},
                     {"bound", c.bound},
                     {"cutoff", c.cutoff},
                     {"jump_cut", c.jump_cut},
                     {"seed", c.seed}};
    if (!c.against.empty()) j["against"] = c.against;
    if (!c.which.empty()) j["example"] = c.which;
    if (c.prime) j["prime"] = *c.prime;
    if (c.depth) j["depth"] = *c.depth;
    if (c.command == "example" && c.which == "psp") j["steps"] = c.steps;
    if (!c.expect.empty()) j["expect"] = c.expect;
    if (c.free) j["free"] = true;
    if (c.verify) j["verify"] = true;
    if (c.zero_tight) j["zero_tight"] = true;
    j["max_enum"] = EnumBound::from_env().max_log_order;
    return j;
}

/// Input could not be read or parsed.
class InputError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

inline nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_json_text(ss.str(), path);
    } catch (const FormatError& e) {
        throw InputError(e.what());
    }
}

namespace detail {

struct Outcome {
    int code = Pass;
    nlohmann::json result;
};

inline int verdict_code(Verdict v) {
    switch (v) {
        case Verdict::Yes: return Pass;
        case Verdict::No: return Fail;
        case Verdict::Undecided: return Undecided;
    }
    return Undecided;
}

inline GroupDescriptor load_descriptor(const std::string& path) {
    GroupDescriptor d;
    try {
        d = descriptor_from_json(read_json_file(path));
    } catch (const FormatError& e) {
        throw InputError(path + ": " + e.what());
    }
    if (auto v = mixedab::validate(d); !v.empty()) throw InputError(path + ": invalid descriptor: " + v.front());
    return d;
}

inline FreeValuated load_valuation(const std::string& path) {
    FreeValuated f;
    try {
        f = free_valuated_from_json(read_json_file(path));
    } catch (const FormatError& e) {
        throw InputError(path + ": " + e.what());
    }
    if (auto v = mixedab::validate(f); !v.empty()) throw InputError(path + ": invalid valuation: " + v.front());
    return f;
}

inline Presentation load_presentation(const std::string& path) {
    Presentation P;
    try {
        P = presentation_from_json(read_json_file(path));
    } catch (const FormatError& e) {
        throw InputError(path + ": " + e.what());
    }
    if (auto v = mixedab::validate(P); !v.empty()) throw InputError(path + ": invalid presentation: " + v.front());
    return P;
}

inline std::vector<std::uint64_t> check_primes(const RunConfig& c, const FreeValuated& f) {
    if (c.prime) return {*c.prime};
    const auto listed = f.primes();
    std::vector<std::uint64_t> ps(listed.begin(), listed.end());
    if (ps.empty()) ps.push_back(2);
    return ps;
}

/// Runs check_realization at every prime; passes when all match and are
/// tight (or 0-tight when only that is requested).
inline Outcome checks(const RunConfig& c, const FreeValuated& f, const Presentation& P, bool zero_only) {
    Outcome o;
    nlohmann::json per = nlohmann::json::object();
    bool pass = true;
    for (auto p : check_primes(c, f)) {
        const RealizationCheck r = check_realization(f, P, p, c.bound);
        per[std::to_string(p)] = to_json(r);
        pass = pass && r.valuation_match && (zero_only ? r.zero_tight : r.tight);
    }
    o.result = {{"checks", per}, {"pass", pass}};
    o.code = pass ? Pass : Fail;
    return o;
}

inline Outcome classify(const RunConfig& c) {
    const GroupDescriptor d = load_descriptor(c.inputs.at(0));
    const ClassificationReport r = generalized_bassian(d);
    return {verdict_code(r.verdict),
            {{"descriptor", mixedab::to_json(normalize(d))},
             {"report", mixedab::to_json(r)},
             {"statement", route_table().at(r.route)},
             {"bassian", mixedab::to_json(is_bassian(d))},
             {"b_plus_e", mixedab::to_json(is_b_plus_e(d))}}};
}

inline Outcome split(const RunConfig& c) {
    const GroupDescriptor d = load_descriptor(c.inputs.at(0));
    const ClassificationReport be = is_b_plus_e(d);
    if (be.verdict != Verdict::Yes) return {Fail, {{"b_plus_e", mixedab::to_json(be)}}};
    return {Pass, {{"b_plus_e", mixedab::to_json(be)}, {"split", mixedab::to_json(b_plus_e_split(d))}}};
}

inline Outcome embed(const RunConfig& c) {
    const GroupDescriptor d = load_descriptor(c.inputs.at(0));
    const ClassificationReport be = is_b_plus_e(d);
    if (be.verdict != Verdict::Yes) return {Fail, {{"b_plus_e", mixedab::to_json(be)}}};
    const GroupDescriptor e = embed_into_gb(d);
    return {Pass, {{"embedding", mixedab::to_json(e)}, {"route", "cor:embeds"}, {"report", mixedab::to_json(generalized_bassian(e))}}};
}

inline Outcome realize(const RunConfig& c) {
    const FreeValuated f = load_valuation(c.inputs.at(0));
    Presentation P;
    if (c.free) {
        auto [td, bad] = tight_data(f);
        if (bad)
            return {Fail, {{"refused", "tight hypothesis fails at p = " + std::to_string(*bad) + " (jumpy track)"},
                           {"prime", *bad}}};
        P = realize_free(f, td);
    } else if (f.rank() == 1) {
        P = realize_cyclic(f.coords[0], c.jump_cut);
    } else {
        P = realize_coproduct(f, c.jump_cut);
    }
    Outcome o = checks(c, f, P, c.free);
    o.result["presentation"] = mixedab::to_json(P);
    if (!c.verify) o.code = Pass;
    return o;
}

inline Outcome verify(const RunConfig& c) {
    const Presentation P = load_presentation(c.inputs.at(0));
    const FreeValuated f = load_valuation(c.against);
    if (P.base.size() < f.rank()) throw InputError(c.inputs.at(0) + ": fewer base generators than coordinates");
    return checks(c, f, P, c.zero_tight);
}

inline nlohmann::json ulm_json(const std::vector<std::uint64_t>& u) {
    nlohmann::json a = nlohmann::json::array();
    for (auto x : u) a.push_back(x);
    return a;
}

inline Outcome ulm(const RunConfig& c) {
    if (!c.prime) throw InputError("ulm: --prime is required");
    const std::uint64_t p = *c.prime;
    const nlohmann::json j = read_json_file(c.inputs.at(0));
    if (j.is_object() && j.contains("coords")) {
        const FreeValuated f = load_valuation(c.inputs.at(0));
        return {Pass, {{"source", "valuation"}, {"prime", p}, {"ulm", ulm_json(ulm_valuated(f, p, c.bound))}}};
    }
    const Presentation P = load_presentation(c.inputs.at(0));
    const std::uint64_t depth = c.depth.value_or(c.bound + 2);
    if (depth < c.bound + 2) throw InputError("ulm: --depth must be at least bound + 2");
    const TruncatedModel M = truncate(P, p, depth);
    nlohmann::json tf = nlohmann::json::array();
    for (const auto& d : torsion_factors(M)) tf.push_back(to_json_value(d));
    return {Pass,
            {{"source", "presentation"}, {"prime", p}, {"depth", depth}, {"ulm", ulm_json(ulm_model(M, c.bound))},
             {"torsion_factors", tf}}};
}

inline Outcome example_b_report(const RunConfig& c) {
    const Presentation P = example_b(c.cutoff);
    const std::uint64_t B = c.bound;
    nlohmann::json per = nlohmann::json::object();
    bool pass = true;
    for (auto p : primes_up_to(c.cutoff)) {
        const TruncatedModel M = truncate(P, p, B);
        const auto tf = torsion_factors(M);
        const BoundedHeight ht = height(M, {{"t", 1}});
        const BoundedHeight hpt = height(M, {{"t", BigInt(p)}});
        const auto q = M.quotient.free_height(M.element({{"t", 1}}));
        nlohmann::json tfj = nlohmann::json::array();
        for (const auto& d : tf) tfj.push_back(to_json_value(d));
        const bool ok = tf == std::vector<BigInt>{BigInt(p)} && ht == BoundedHeight::exact(0) &&
                        (hpt.kind != BoundedHeight::Kind::Exact || hpt.h >= 2) && q && *q >= 1;
        pass = pass && ok;
        per[std::to_string(p)] = {{"torsion_factors", tfj},
                                  {"height_t", ht.str()},
                                  {"height_pt", hpt.str()},
                                  {"quotient_height_t", q ? nlohmann::json(*q) : nlohmann::json("inf")},
                                  {"ok", ok}};
    }
    return {pass ? Pass : Fail, {{"presentation", mixedab::to_json(P)}, {"checks", per}, {"pass", pass}}};
}

inline Outcome example_psp(const RunConfig& c) {
    const PspExample e = psp_example(c.steps);
    const auto problems = mixedab::verify(e);
    nlohmann::json ev = nlohmann::json::array();
    for (const auto& s : indecomposability_evidence(e, 5))
        ev.push_back({{"split", s.split}, {"pairs_checked", s.pairs_checked}, {"late_zeros", s.late_zeros}});
    return {problems.empty() ? Pass : Fail,
            {{"table", mixedab::to_json(e)}, {"problems", problems}, {"evidence", ev}}};
}

inline int apply_expect(const RunConfig& c, int code) {
    if (c.expect.empty() || code == UsageError) return code;
    const int want = c.expect == "yes" ? Pass : c.expect == "no" ? Fail : Undecided;
    return code == want ? Pass : Fail;
}

}  // namespace detail

/// Executes a parsed configuration.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (auto v = validate(c); !v.empty()) {
        err << "error: " << v.front() << "\n";
        return UsageError;
    }
    detail::Outcome o;
    try {
        if (c.command == "classify") o = detail::classify(c);
        else if (c.command == "split") o = detail::split(c);
        else if (c.command == "embed") o = detail::embed(c);
        else if (c.command == "realize") o = detail::realize(c);
        else if (c.command == "verify") o = detail::verify(c);
        else if (c.command == "ulm") o = detail::ulm(c);
        else if (c.command == "example" && c.which == "b") o = detail::example_b_report(c);
        else if (c.command == "example" && c.which == "psp") o = detail::example_psp(c);
        else throw InputError("unknown command");
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return UsageError;
    } catch (const BoundExceeded& e) {
        err << "error: " << e.what() << "\n";
        return UsageError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return UsageError;
    }
    const int code = detail::apply_expect(c, o.code);
    if (c.csv && c.command == "example" && c.which == "psp") {
        out << to_csv(psp_example(c.steps));
    } else if (c.csv && c.command == "ulm") {
        out << "alpha,f\n";
        for (std::size_t a = 0; a < o.result["ulm"].size(); ++a) out << a << "," << o.result["ulm"][a] << "\n";
    } else {
        nlohmann::json report{{"tool", "mixedab"}, {"version", MIXEDAB_VERSION}, {"config", to_json(c)},
                              {"result", o.result}, {"exit_code", code}};
        out << report.dump(2) << "\n";
    }
    return code;
}

/// Parses argv with CLI11 and runs the selected subcommand.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"mixedab: generalized Bassian classification and realization checks", "mixedab"};
    app.set_version_flag("--version", std::string(MIXEDAB_VERSION));
    app.require_subcommand(1);
    RunConfig c;
    bool json_flag = false;

    auto common = [&](CLI::App* s) {
        s->add_option("-p,--prime", c.prime, "prime to localize at");
        s->add_option("-b,--bound", c.bound, "truncation depth B / Ulm bound")->capture_default_str();
        s->add_option("--depth", c.depth, "model depth for presentation inputs (default bound + 2)");
        s->add_option("--jump-cut", c.jump_cut, "jump positions kept from jumpy tails")->capture_default_str();
        s->add_option("--seed", c.seed, "recorded in the report")->capture_default_str();
        s->add_option("--expect", c.expect, "yes|no|undecided; a mismatch exits 1");
        auto* j = s->add_flag("--json", json_flag, "JSON output (default)");
        auto* v = s->add_flag("--csv", c.csv, "CSV output for tables");
        j->excludes(v);
    };

    auto* classify = app.add_subcommand("classify", "classify a group descriptor");
    classify->add_option("descriptor", c.inputs, "descriptor JSON")->required()->expected(1);
    auto* split = app.add_subcommand("split", "B+E split of a descriptor");
    split->add_option("descriptor", c.inputs, "descriptor JSON")->required()->expected(1);
    auto* embed = app.add_subcommand("embed", "embed a B+E descriptor into a generalized Bassian one");
    embed->add_option("descriptor", c.inputs, "descriptor JSON")->required()->expected(1);
    auto* realize = app.add_subcommand("realize", "realize a valuation as a presentation and check it");
    realize->add_option("valuation", c.inputs, "valuation JSON")->required()->expected(1);
    realize->add_flag("--free", c.free, "use the tight free construction");
    realize->add_flag("--verify", c.verify, "exit 1 when the checks fail");
    auto* ulm = app.add_subcommand("ulm", "Ulm invariants of a valuation or a presentation");
    ulm->add_option("input", c.inputs, "valuation or presentation JSON")->required()->expected(1);
    auto* example = app.add_subcommand("example", "built-in examples: b or psp");
    example->add_option("name", c.which, "b or psp")->required()->check(CLI::IsMember({"b", "psp"}));
    example->add_option("--cutoff", c.cutoff, "largest prime for example b")->capture_default_str();
    example->add_option("--steps", c.steps, "steps J for example psp")->capture_default_str()->check(
        CLI::PositiveNumber);
    auto* verify = app.add_subcommand("verify", "check a presentation against a valuation");
    verify->add_option("presentation", c.inputs, "presentation JSON")->required()->expected(1);
    verify->add_option("--against", c.against, "valuation JSON")->required();
    verify->add_flag("--zero-tight", c.zero_tight, "require only 0-tightness");
    for (auto* s : {classify, split, embed, realize, ulm, example, verify}) common(s);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return Pass;
    } catch (const CLI::CallForVersion&) {
        out << MIXEDAB_VERSION << "\n";
        return Pass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return UsageError;
    }
    for (auto* s : app.get_subcommands()) c.command = s->get_name();
    return run(c, out, err);
}

}  // namespace mixedab::cli
