// gmecert: generate behaviors, evaluate witnesses, test polytope membership,
// reproduce the appendix examples and search measurement settings.
//
// Exit codes: 0 certified / member / success, 1 negative result,
// 2 input error, 3 parameter error.

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "gme/errors.hpp"
#include "gme/report.hpp"

namespace {

using gme::json;
using gme::RunManifest;

enum Exit { kOk = 0, kNegative = 1, kInputError = 2, kParameterError = 3 };

struct Outcome {
    std::string text;
    int exit_code = kOk;
};

std::string read_text(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path);
    if (!in) throw gme::InputError("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json read_json(const std::string& path) {
    try {
        return json::parse(read_text(path));
    } catch (const json::parse_error& e) {
        throw gme::InputError(path + ": " + e.what());
    }
}

const std::string& arg(const RunManifest& m, const std::string& key) {
    const auto it = m.arguments.find(key);
    if (it == m.arguments.end()) throw gme::InputError("manifest: missing argument '" + key + "'");
    return it->second;
}

int parse_int(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw gme::InputError(what + ": '" + text + "' is not an integer");
}

gme::CertifyOptions certify_options(const RunManifest& m) {
    gme::CertifyOptions opts;
    opts.tol_mermin = m.tol_mermin;
    opts.tol_marginal = m.tol_marginal;
    if (!(opts.tol_mermin >= 0.0) || !(opts.tol_marginal >= 0.0))
        throw gme::ParameterError("tolerances must be non-negative");
    return opts;
}

gme::VertexSet vertex_set(const std::string& name) {
    if (name == "local") return gme::enumerate_fully_local();
    if (name == "two-way") return gme::enumerate_two_way_local();
    throw gme::InputError("--set must be 'local' or 'two-way', got '" + name + "'");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Outcome behavior_gen(const RunManifest& m) {
    const auto rho = gme::parse_state_spec(arg(m, "state"));
    const auto settings = gme::settings_from_json(read_json(arg(m, "settings")));
    const auto p = gme::born_behavior(rho, settings);
    const std::string& format = arg(m, "format");
    if (format == "csv") return {"# manifest " + gme::to_json(m).dump() + "\n" + gme::to_csv(p)};
    if (format != "json") throw gme::InputError("--format must be json or csv");
    json meta{{"state", arg(m, "state")}, {"settings", gme::to_json(settings)}, {"manifest", gme::to_json(m)}};
    if (arg(m, "state").rfind("noisy-w", 0) == 0)
        meta["interpretations"] = {"noisy W state mixes with the three-qubit maximally mixed state I/8"};
    return {dump(gme::behavior_to_json(p, meta))};
}

Outcome witness(const RunManifest& m) {
    const auto p = gme::behavior_from_json(read_json(arg(m, "input")));
    const auto report = gme::witness_report(p, certify_options(m));
    const bool certified = report.certificate.verdict == gme::Verdict::GME_certified;
    return {dump(json{{"manifest", gme::to_json(m)}, {"report", gme::to_json(report)}}), certified ? kOk : kNegative};
}

Outcome polytope(const RunManifest& m) {
    const auto p = gme::behavior_from_json(read_json(arg(m, "input")));
    const auto ns = gme::check_no_signaling(p);
    if (!ns.ok) throw gme::SignalingError("polytope: behavior is signaling", ns.worst_deviation);
    const auto set = vertex_set(arg(m, "set"));
    const std::string& mode = arg(m, "arithmetic");
    if (mode != "floating" && mode != "exact") throw gme::InputError("arithmetic must be floating or exact");
    const auto verdict =
        gme::membership(p, set, mode == "exact" ? gme::LpArithmetic::exact : gme::LpArithmetic::floating);
    return {dump(json{{"manifest", gme::to_json(m)}, {"verdict", gme::to_json(verdict, set)}}),
            verdict.member ? kOk : kNegative};
}

Outcome reproduce(const RunManifest& m) {
    const auto which = gme::parse_appendix(arg(m, "target"));
    if (!which) throw gme::InputError("unknown reproduction target '" + arg(m, "target") + "'");
    const auto r = gme::reproduce(*which, certify_options(m));
    const int code = r.all_pass() ? kOk : kNegative;
    const std::string& format = arg(m, "format");
    if (format == "json") return {dump(json{{"manifest", gme::to_json(m)}, {"reproduction", gme::to_json(r)}}), code};
    if (format != "table") throw gme::InputError("--format must be table or json");
    return {gme::to_table(r) + "# manifest " + gme::to_json(m).dump() + "\n", code};
}

Outcome optimize(const RunManifest& m) {
    const auto rho = gme::parse_state_spec(arg(m, "state"));
    const std::string& name = arg(m, "objective");
    gme::Objective objective{};
    if (name == "mermin") objective = gme::Objective::mermin;
    else if (name == "svetlichny") objective = gme::Objective::svetlichny;
    else if (name == "chsh_pair") objective = gme::Objective::chsh_pair;
    else throw gme::InputError("--objective must be mermin, svetlichny or chsh_pair");
    gme::SearchConfig cfg;
    cfg.seed = m.seed;
    cfg.restarts = parse_int(arg(m, "restarts"), "--restarts");
    cfg.max_iterations = parse_int(arg(m, "iterations"), "--iterations");
    const auto result = gme::maximize_witness(rho, objective, cfg);
    return {dump(json{{"manifest", gme::to_json(m)}, {"objective", name}, {"result", gme::to_json(result)}})};
}

Outcome vertices(const RunManifest& m) {
    const auto set = vertex_set(arg(m, "set"));
    return {dump(json{{"manifest", gme::to_json(m)},
                      {"set", gme::to_string(set.kind)},
                      {"candidates", set.candidates},
                      {"vertices", gme::to_json(set)}})};
}

Outcome run(const RunManifest& m) {
    static const std::map<std::string, Outcome (*)(const RunManifest&)> commands{
        {"behavior gen", &behavior_gen}, {"witness", &witness},     {"polytope", &polytope},
        {"reproduce", &reproduce},       {"optimize", &optimize},   {"vertices", &vertices}};
    const auto it = commands.find(m.command);
    if (it == commands.end()) throw gme::InputError("unknown command '" + m.command + "'");
    return it->second(m);
}

RunManifest manifest_of_report(const json& report) {
    if (report.contains("manifest")) return gme::manifest_from_json(report["manifest"]);
    if (report.contains("meta") && report["meta"].contains("manifest"))
        return gme::manifest_from_json(report["meta"]["manifest"]);
    throw gme::InputError("report carries no manifest");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tripartite Bell-correlation toolkit: witnesses, polytopes and GME certification"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(gme::tool_version()));

    RunManifest m;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--tol-mermin", m.tol_mermin, "Tolerance on the Mermin value")->capture_default_str();
        sub->add_option("--tol-marginal", m.tol_marginal, "Tolerance for maximally mixed marginals and Q")
            ->capture_default_str();
        sub->add_option("--seed", m.seed, "Seed for pseudo-random streams")->capture_default_str();
    };
    std::map<std::string, std::string> args{{"format", "json"},         {"set", "local"},
                                            {"arithmetic", "floating"}, {"objective", "mermin"},
                                            {"restarts", "64"},         {"iterations", "2000"}};

    auto* behavior = app.add_subcommand("behavior", "Behavior tables");
    behavior->require_subcommand(1);
    auto* gen = behavior->add_subcommand("gen", "Born-rule behavior from a state and settings file");
    gen->add_option("--state", args["state"], "w | ghz | noisy-w:<v> | gghz:<theta> | biseparable:...")->required();
    gen->add_option("--settings", args["settings"], "Settings JSON file")->required();
    gen->add_option("--format", args["format"], "json | csv")->capture_default_str();
    add_common(gen);

    auto* wit = app.add_subcommand("witness", "Witness values and certification for a behavior");
    wit->add_option("input", args["input"], "Behavior JSON file or - for stdin")->required();
    add_common(wit);

    auto* poly = app.add_subcommand("polytope", "LP membership in the local or two-way-local polytope");
    poly->add_option("input", args["input"], "Behavior JSON file or - for stdin")->required();
    poly->add_option("--set", args["set"], "local | two-way")->capture_default_str();
    bool exact = false;
    poly->add_flag("--exact", exact, "Exact rational simplex");
    add_common(poly);

    auto* rep = app.add_subcommand("reproduce", "Reproduce an appendix example");
    rep->add_option("target", args["target"], "appendix-a | appendix-b")->required();
    std::string rep_format = "table";
    rep->add_option("--format", rep_format, "table | json")->capture_default_str();
    add_common(rep);

    auto* opt = app.add_subcommand("optimize", "Maximise a witness over measurement settings");
    opt->add_option("--state", args["state"], "State specification")->required();
    opt->add_option("--objective", args["objective"], "mermin | svetlichny | chsh_pair")->capture_default_str();
    opt->add_option("--restarts", args["restarts"], "Random restarts")->capture_default_str();
    opt->add_option("--iterations", args["iterations"], "Iterations per restart")->capture_default_str();
    add_common(opt);

    auto* vert = app.add_subcommand("vertices", "Export a vertex set");
    vert->add_option("--set", args["set"], "local | two-way")->capture_default_str();
    add_common(vert);

    std::string replay_path;
    auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a report's manifest");
    replay->add_option("report", replay_path, "Report JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (replay->parsed()) {
            m = manifest_of_report(read_json(replay_path));
        } else {
            std::map<std::string, std::string> used;
            auto keep = [&](std::initializer_list<const char*> keys) {
                for (const char* k : keys) used[k] = args[k];
            };
            if (gen->parsed()) {
                m.command = "behavior gen";
                keep({"state", "settings", "format"});
            } else if (wit->parsed()) {
                m.command = "witness";
                keep({"input"});
            } else if (poly->parsed()) {
                m.command = "polytope";
                args["arithmetic"] = exact ? "exact" : "floating";
                keep({"input", "set", "arithmetic"});
            } else if (rep->parsed()) {
                m.command = "reproduce";
                args["format"] = rep_format;
                keep({"target", "format"});
            } else if (opt->parsed()) {
                m.command = "optimize";
                keep({"state", "objective", "restarts", "iterations"});
            } else {
                m.command = "vertices";
                keep({"set"});
            }
            m.arguments = used;
        }
        m.tool_version = gme::tool_version();
        m.timestamp = gme::utc_timestamp();
        const Outcome out = run(m);
        std::cout << out.text;
        return out.exit_code;
    } catch (const gme::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const gme::ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParameterError;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
}
