#pragma once

// JSON/CSV serialization, state specifications, run manifests and the
// appendix reproductions shared by the command-line tool.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gme/behavior.hpp"
#include "gme/polytope.hpp"
#include "gme/quantum.hpp"
#include "gme/search.hpp"
#include "gme/witness.hpp"

namespace gme {

using json = nlohmann::json;

const char* tool_version();

struct RunManifest {
    std::string command;
    std::map<std::string, std::string> arguments;
    std::uint64_t seed = 42;
    double tol_mermin = 1e-3;
    double tol_marginal = 1e-6;
    std::string tool_version = gme::tool_version();
    std::string timestamp;   // ISO 8601, UTC

    friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

std::string utc_timestamp();
json to_json(const RunManifest& m);
RunManifest manifest_from_json(const json& j);

/// {"inputs":2,"outputs":2,"parties":3,"p":[...64...],"meta":{...}}
json behavior_to_json(const Behavior& p, const json& meta = json::object());
inline json to_json(const Behavior& p) { return behavior_to_json(p); }
/// Throws InputError naming the offending field.
Behavior behavior_from_json(const json& j);

/// {"A":[[nx,ny,nz],[...]],"B":[...],"C":[...]}; extra keys are ignored.
/// Vectors within 1e-4 of unit norm are renormalized.
json to_json(const MeasurementSettings& s);
MeasurementSettings settings_from_json(const json& j);

json to_json(const MarginalProfile& m);
json to_json(const Certificate& c);
json to_json(const WitnessReport& r);
json to_json(const PolytopeVerdict& v, const VertexSet& set);
json to_json(const SearchResult& r);
/// JSON array of behavior objects, each labelled in its meta.
json to_json(const VertexSet& set);

/// x,y,z,a,b,c,p rows in storage order.
std::string to_csv(const Behavior& p);

/// w | ghz | noisy-w:<v> | gghz:<theta> |
/// biseparable:<A|BC,B|AC,C|AB>:<theta>:<phi>:<phi+|phi-|psi+|psi->
/// ('-' may replace '|' in the branch). Malformed text throws InputError,
/// out-of-range numbers throw ParameterError.
DensityMatrix parse_state_spec(const std::string& spec);

enum class Appendix { a, b };
std::optional<Appendix> parse_appendix(const std::string& name);

/// The appendix data file: state spec, settings in input order, and the
/// quoted reference numbers.
json appendix_data(Appendix which);

struct ReproductionRow {
    std::string quantity;
    std::optional<double> reference;   // paper value, when one is quoted
    double computed = 0.0;
    std::string check;                 // human-readable criterion
    std::optional<bool> pass;          // empty when nothing is asserted
};

struct Reproduction {
    std::string target;
    std::string state;
    Behavior behavior = Behavior::white_noise();
    WitnessReport witness;
    std::vector<ReproductionRow> rows;
    bool all_pass() const;
};

Reproduction reproduce(Appendix which, const CertifyOptions& opts = {});
std::string to_table(const Reproduction& r);
json to_json(const Reproduction& r);

}  // namespace gme
