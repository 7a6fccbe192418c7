#include "gme/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "gme/appendix_data.hpp"
#include "gme/errors.hpp"
#include "gme/version.hpp"

namespace gme {

const char* tool_version() { return kToolVersion; }

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

json to_json(const RunManifest& m) {
    return json{{"command", m.command},
                {"arguments", m.arguments},
                {"seed", m.seed},
                {"tolerances", {{"mermin", m.tol_mermin}, {"marginal", m.tol_marginal}}},
                {"tool_version", m.tool_version},
                {"timestamp", m.timestamp}};
}

RunManifest manifest_from_json(const json& j) {
    try {
        RunManifest m;
        m.command = j.at("command").get<std::string>();
        m.arguments = j.at("arguments").get<std::map<std::string, std::string>>();
        m.seed = j.at("seed").get<std::uint64_t>();
        m.tol_mermin = j.at("tolerances").at("mermin").get<double>();
        m.tol_marginal = j.at("tolerances").at("marginal").get<double>();
        m.tool_version = j.at("tool_version").get<std::string>();
        m.timestamp = j.at("timestamp").get<std::string>();
        return m;
    } catch (const json::exception& e) {
        throw InputError(std::string("manifest: ") + e.what());
    }
}

json behavior_to_json(const Behavior& p, const json& meta) {
    return json{{"inputs", 2},
                {"outputs", 2},
                {"parties", 3},
                {"p", std::vector<double>(p.data().begin(), p.data().end())},
                {"meta", meta}};
}

Behavior behavior_from_json(const json& j) {
    if (!j.is_object()) throw InputError("behavior: expected a JSON object");
    for (const char* key : {"inputs", "outputs", "parties"}) {
        const int expected = std::string(key) == "parties" ? 3 : 2;
        if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<int>() != expected)
            throw InputError(std::string("behavior.") + key + ": expected " + std::to_string(expected));
    }
    if (!j.contains("p") || !j["p"].is_array()) throw InputError("behavior.p: expected an array of 64 numbers");
    const auto& arr = j["p"];
    if (arr.size() != Behavior::kSize)
        throw InputError("behavior.p: expected 64 entries, got " + std::to_string(arr.size()));
    std::array<double, Behavior::kSize> p{};
    for (std::size_t k = 0; k < Behavior::kSize; ++k) {
        if (!arr[k].is_number()) throw InputError("behavior.p[" + std::to_string(k) + "]: expected a number");
        p[k] = arr[k].get<double>();
    }
    return Behavior(p);
}

json to_json(const MeasurementSettings& s) {
    json j;
    static const char* names[3] = {"A", "B", "C"};
    for (int party = 0; party < 3; ++party) {
        json list = json::array();
        for (const auto& o : s.settings[party]) list.push_back(o.direction());
        j[names[party]] = list;
    }
    return j;
}

MeasurementSettings settings_from_json(const json& j) {
    if (!j.is_object()) throw InputError("settings: expected a JSON object");
    MeasurementSettings s;
    static const char* names[3] = {"A", "B", "C"};
    for (int party = 0; party < 3; ++party) {
        const std::string field = std::string("settings.") + names[party];
        if (!j.contains(names[party])) throw InputError(field + ": missing");
        const auto& list = j[names[party]];
        if (!list.is_array() || list.size() != 2) throw InputError(field + ": expected two Bloch vectors");
        for (std::size_t k = 0; k < 2; ++k) {
            const std::string entry = field + "[" + std::to_string(k) + "]";
            const auto& v = list[k];
            if (!v.is_array() || v.size() != 3) throw InputError(entry + ": expected [nx, ny, nz]");
            Vec3 n{};
            for (std::size_t c = 0; c < 3; ++c) {
                if (!v[c].is_number()) throw InputError(entry + "[" + std::to_string(c) + "]: expected a number");
                n[c] = v[c].get<double>();
            }
            try {
                s.settings[party][k] = BlochObservable::renormalized(n);
            } catch (const InputError& e) {
                throw InputError(entry + ": " + e.what());
            }
        }
    }
    return s;
}

json to_json(const MarginalProfile& m) {
    static const char* pairs[3] = {"AB", "AC", "BC"};
    json pair;
    for (int k = 0; k < 3; ++k) pair[pairs[k]] = m.pair[k];
    return json{{"single", {{"A", m.single[0]}, {"B", m.single[1]}, {"C", m.single[2]}}}, {"pair", pair}};
}

json to_json(const Certificate& c) {
    json evidence = json::array();
    for (const auto& e : c.evidence)
        evidence.push_back({{"quantity", e.quantity},
                            {"value", e.value},
                            {"relation", e.relation},
                            {"threshold", e.threshold},
                            {"satisfied", e.satisfied}});
    return json{{"verdict", to_string(c.verdict)},
                {"mode", c.mode ? json(to_string(*c.mode)) : json(nullptr)},
                {"evidence", evidence},
                {"assumptions", c.assumptions}};
}

json to_json(const WitnessReport& r) {
    json family;
    for (int k = 0; k < 8; ++k) {
        const std::string key = std::to_string(k >> 2) + std::to_string((k >> 1) & 1) + std::to_string(k & 1);
        family[key] = r.mermin_family[static_cast<std::size_t>(k)];
    }
    return json{{"mermin", r.mermin},
                {"mermin_family", family},
                {"q_value", r.q_value},
                {"svetlichny", r.svetlichny},
                {"marginal_profile", to_json(r.marginal_profile)},
                {"verdicts",
                 {{"above_threshold_GME", r.verdicts.above_threshold_GME},
                  {"semi_DI_GME", r.verdicts.semi_DI_GME},
                  {"DI_GME", r.verdicts.DI_GME}}},
                {"assumptions", r.assumptions},
                {"certificate", to_json(r.certificate)},
                {"interpretations",
                 {"mermin_family member (a,b,c) is M+ when a^b^c = 0 and M- otherwise",
                  "Q is the minimum over the six orderings of the nested-difference index levels"}}};
}

json to_json(const PolytopeVerdict& v, const VertexSet& set) {
    json weights = json::array();
    for (const auto& w : v.weights)
        weights.push_back({{"vertex", w.vertex}, {"label", set.labels.at(w.vertex)}, {"weight", w.weight}});
    return json{{"set", to_string(set.kind)},
                {"vertices", set.vertices.size()},
                {"member", v.member},
                {"weights", v.member ? weights : json(nullptr)},
                {"max_residual", v.max_residual}};
}

json to_json(const SearchResult& r) {
    return json{{"best_value", r.best_value}, {"best_settings", to_json(r.best_settings)}, {"trace", r.trace}};
}

json to_json(const VertexSet& set) {
    json arr = json::array();
    for (std::size_t k = 0; k < set.vertices.size(); ++k) {
        json meta = json::object();
        meta["set"] = to_string(set.kind);
        meta["id"] = k;
        meta["label"] = set.labels[k];
        arr.push_back(behavior_to_json(set.vertices[k], meta));
    }
    return arr;
}

std::string to_csv(const Behavior& p) {
    std::ostringstream os;
    os << "x,y,z,a,b,c,p\n" << std::setprecision(17);
    for (std::size_t k = 0; k < Behavior::kSize; ++k) {
        for (int bit = 5; bit >= 0; --bit) os << ((k >> bit) & 1) << ',';
        os << p.data()[k] << '\n';
    }
    return os.str();
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_number(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw InputError("state spec: " + what + " '" + text + "' is not a number");
    }
}

}  // namespace

DensityMatrix parse_state_spec(const std::string& spec) {
    const auto parts = split(spec, ':');
    const std::string& kind = parts.front();
    auto expect = [&](std::size_t n) {
        if (parts.size() != n) throw InputError("state spec '" + spec + "': wrong number of fields");
    };
    if (kind == "w") {
        expect(1);
        return w_state();
    }
    if (kind == "ghz") {
        expect(1);
        return ghz_state();
    }
    if (kind == "noisy-w") {
        expect(2);
        return noisy_w(parse_number(parts[1], "visibility"));
    }
    if (kind == "gghz") {
        expect(2);
        return gghz_state(parse_number(parts[1], "angle"));
    }
    if (kind == "biseparable") {
        expect(5);
        std::string branch = parts[1];
        for (auto& ch : branch)
            if (ch == '-') ch = '|';
        Bipartition b{};
        if (branch == "A|BC") b = Bipartition::A_BC;
        else if (branch == "B|AC") b = Bipartition::B_AC;
        else if (branch == "C|AB") b = Bipartition::C_AB;
        else throw InputError("state spec: unknown bipartition '" + parts[1] + "'");
        const double theta = parse_number(parts[2], "theta"), phi = parse_number(parts[3], "phi");
        const std::array<complex, 2> single{std::cos(theta / 2), std::polar(std::sin(theta / 2), phi)};
        BellState bell{};
        if (parts[4] == "phi+") bell = BellState::PhiPlus;
        else if (parts[4] == "phi-") bell = BellState::PhiMinus;
        else if (parts[4] == "psi+") bell = BellState::PsiPlus;
        else if (parts[4] == "psi-") bell = BellState::PsiMinus;
        else throw InputError("state spec: unknown Bell state '" + parts[4] + "'");
        return biseparable_state(b, single, bell_state(bell));
    }
    throw InputError("state spec: unknown state '" + kind + "'");
}

std::optional<Appendix> parse_appendix(const std::string& name) {
    if (name == "appendix-a" || name == "a") return Appendix::a;
    if (name == "appendix-b" || name == "b") return Appendix::b;
    return std::nullopt;
}

json appendix_data(Appendix which) { return json::parse(which == Appendix::a ? kAppendixAJson : kAppendixBJson); }

bool Reproduction::all_pass() const {
    for (const auto& r : rows)
        if (r.pass && !*r.pass) return false;
    return true;
}

namespace {

std::string quoted_label(const json& data, int party, int input) {
    static const char* names[3] = {"A", "B", "C"};
    const int label = data.at("meta").at("label_of_input").at(input).get<int>();
    return std::string("<") + names[party] + "_" + std::to_string(label) + ">";
}

}  // namespace

Reproduction reproduce(Appendix which, const CertifyOptions& opts) {
    const json data = appendix_data(which);
    Reproduction out;
    out.target = data.at("target").get<std::string>();
    out.state = data.at("state").get<std::string>();
    const DensityMatrix rho = parse_state_spec(out.state);
    const MeasurementSettings s = settings_from_json(data);
    out.behavior = born_behavior(rho, s);
    out.witness = witness_report(out.behavior, opts);
    const json& ref = data.at("reference");
    static const char* names[3] = {"A", "B", "C"};

    const double mermin_ref = ref.at("mermin").at("value").get<double>();
    const double mermin_tol = ref.at("mermin").at("tolerance").get<double>();
    out.rows.push_back({"Mermin |<M>|", mermin_ref, out.witness.mermin,
                        "|computed - reference| <= " + std::to_string(mermin_tol),
                        std::abs(out.witness.mermin - mermin_ref) <= mermin_tol});

    for (int party = 0; party < 3; ++party)
        for (int input = 0; input < 2; ++input) {
            const double value = out.witness.marginal_profile.single[party][input];
            const std::string name = quoted_label(data, party, input) + " (input " + std::to_string(input) + ")";
            const int label = data.at("meta").at("label_of_input").at(input).get<int>();
            if (ref.contains("single")) {
                const double r = ref.at("single").at(names[party]).at(label).get<double>();
                const double tol = ref.at("single").at("tolerance").get<double>();
                out.rows.push_back({name, r, value, "|computed - reference| <= " + std::to_string(tol),
                                    std::abs(value - r) <= tol});
            } else {
                const auto& nz = ref.at("nonzero_single");
                const double thr = nz.at("threshold").get<double>();
                bool asserted = false;
                for (const auto& p : nz.at("parties"))
                    if (p.get<std::string>() == names[party]) asserted = true;
                if (asserted)
                    out.rows.push_back({name, std::nullopt, value, "|computed| > " + std::to_string(thr),
                                        std::abs(value) > thr});
                else
                    out.rows.push_back({name, std::nullopt, value, "not asserted", std::nullopt});
            }
        }

    if (ref.contains("q_positive_threshold")) {
        const double thr = ref.at("q_positive_threshold").get<double>();
        out.rows.push_back({"Q", std::nullopt, out.witness.q_value, "Q > " + std::to_string(thr),
                            out.witness.q_value > thr});
    } else {
        out.rows.push_back({"Q", std::nullopt, out.witness.q_value, "not asserted", std::nullopt});
    }

    const auto& cert = out.witness.certificate;
    const bool certified = cert.verdict == Verdict::GME_certified;
    if (ref.contains("certificate")) {
        const std::string want = ref.at("certificate").get<std::string>();
        out.rows.push_back({"certificate: " + want, std::nullopt, certified ? 1.0 : 0.0,
                            "GME_certified, mode " + want,
                            certified && cert.mode && want == to_string(*cert.mode)});
    } else {
        out.rows.push_back({"certificate", std::nullopt, certified ? 1.0 : 0.0, "GME_certified (any mode)", certified});
    }
    return out;
}

std::string to_table(const Reproduction& r) {
    std::ostringstream os;
    os << r.target << "  state " << r.state << '\n';
    os << std::left << std::setw(40) << "quantity" << std::setw(14) << "reference" << std::setw(14) << "computed"
       << std::setw(44) << "check" << "result\n";
    for (const auto& row : r.rows) {
        std::ostringstream ref, val;
        ref << std::setprecision(7);
        val << std::setprecision(7);
        if (row.reference) ref << *row.reference;
        else ref << "-";
        val << row.computed;
        os << std::left << std::setw(40) << row.quantity << std::setw(14) << ref.str() << std::setw(14) << val.str()
           << std::setw(44) << row.check << (row.pass ? (*row.pass ? "PASS" : "FAIL") : "-") << '\n';
    }
    os << "certificate: " << to_string(r.witness.certificate.verdict);
    if (r.witness.certificate.mode) os << " (" << to_string(*r.witness.certificate.mode) << ")";
    os << '\n';
    return os.str();
}

json to_json(const Reproduction& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"quantity", row.quantity},
                        {"reference", row.reference ? json(*row.reference) : json(nullptr)},
                        {"computed", row.computed},
                        {"check", row.check},
                        {"pass", row.pass ? json(*row.pass) : json(nullptr)}});
    return json{{"target", r.target},
                {"state", r.state},
                {"behavior", to_json(r.behavior)},
                {"witness", to_json(r.witness)},
                {"rows", rows},
                {"all_pass", r.all_pass()}};
}

}  // namespace gme
