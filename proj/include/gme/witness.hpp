#pragma once

// Mermin-type witnesses, the Q quantity and the genuine-entanglement
// certification rules.
//
// The Mermin expression is ⟨x0y0z1⟩ + ⟨x0y1z0⟩ + ⟨x1y0z0⟩ - ⟨x1y1z1⟩ with local
// bound 2. The eight family members M_{αβγ} select M⁺_{αβγ} when α⊕β⊕γ = 0
// and M⁻_{αβγ} otherwise, so M_000 is the signed Mermin expression.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gme/behavior.hpp"
#include "gme/quantum.hpp"

namespace gme {

/// Full correlators ⟨x y z⟩ indexed 4x + 2y + z.
using Correlators = std::array<double, 8>;

Correlators full_correlators(const Behavior& p);
Correlators full_correlators(const CorrelationTensor& t, const MeasurementSettings& s);

double mermin_signed(const Correlators& e);
double mermin_plus(const Correlators& e, int alpha, int beta, int gamma);
double mermin_minus(const Correlators& e, int alpha, int beta, int gamma);
double mermin_family(const Correlators& e, int alpha, int beta, int gamma);
double svetlichny_signed(const Correlators& e);

double mermin_value(const Behavior& p);
double mermin_family(const Behavior& p, int alpha, int beta, int gamma);
/// All eight members, index 4α + 2β + γ.
std::array<double, 8> mermin_family_all(const Behavior& p);
/// |M⁺_000 + M⁻_000|, two-way-local bound 4.
double svetlichny_value(const Behavior& p);

/// Which family index sits at the outer, middle and inner nesting level of
///   Q = | ||M_000 - M_001| - |M_010 - M_011|| - ||M_100 - M_101| - |M_110 - M_111|| |
/// (identity order {0,1,2} is the expression as written above).
class QPermutationSet {
public:
    using Order = std::array<int, 3>;

    /// All six orderings.
    static QPermutationSet all_orderings();
    explicit QPermutationSet(std::vector<Order> orders);

    const std::vector<Order>& orders() const { return orders_; }

private:
    std::vector<Order> orders_;
};

/// One nested-difference term for a given ordering.
double q_term(const std::array<double, 8>& family, const QPermutationSet::Order& order);
double q_value(const std::array<double, 8>& family,
               const QPermutationSet& set = QPermutationSet::all_orderings());
double q_value(const Behavior& p, const QPermutationSet& set = QPermutationSet::all_orderings());

/// CHSH = y1z1 + y1z0 + y0z1 - y0z0 in terms of the pair's inputs; the primed
/// form swaps inputs 0 and 1 on both sides. Throws SignalingError on
/// signaling input.
double chsh_value(const BipartiteBehavior& p, bool primed, double ns_tol = kDefaultNsTol);

/// Residual |⟨M⟩ - ½(⟨s1⟩·U + ⟨s0⟩·V)| for a state that is a product across
/// `branch`, with s the single party's observables and U = ⟨CHSH'⟩ - ⟨CHSH⟩,
/// V = ⟨CHSH'⟩ + ⟨CHSH⟩ on the other two. Product structure is the caller's
/// responsibility.
double mermin_decomposition_check(const DensityMatrix& rho, const MeasurementSettings& s, Bipartition branch);

enum class Verdict { GME_certified, not_certified };
enum class CertificationMode { device_independent, semi_device_independent, above_threshold };

const char* to_string(Verdict v);
const char* to_string(CertificationMode m);

struct Evidence {
    std::string quantity;
    double value = 0.0;
    std::string relation;   // e.g. ">", "<=", "|.-2√2|<="
    double threshold = 0.0;
    bool satisfied = false;
};

struct Certificate {
    Verdict verdict = Verdict::not_certified;
    std::optional<CertificationMode> mode;
    std::vector<Evidence> evidence;
    std::vector<std::string> assumptions;
};

struct CertifyOptions {
    double tol_mermin = 1e-3;
    double tol_marginal = 1e-6;
    double ns_tol = kDefaultNsTol;
    QPermutationSet q_set = QPermutationSet::all_orderings();
};

inline constexpr const char* kDimensionAssumption = "at least one local dimension = 2";

/// Rules, first match wins:
///  (i)   Mermin > 2√2 + tol_mermin                       -> above_threshold
///  (ii)  Mermin = 2√2, two non-random marginals, Q > tol  -> device_independent
///  (iii) Mermin = 2√2, two non-random marginals, Q <= tol -> semi_device_independent
/// Throws SignalingError on signaling input.
Certificate certify(const Behavior& p, const CertifyOptions& opts = {});

struct WitnessVerdicts {
    bool above_threshold_GME = false;
    bool semi_DI_GME = false;
    bool DI_GME = false;
};

struct WitnessReport {
    double mermin = 0.0;
    std::array<double, 8> mermin_family{};
    double q_value = 0.0;
    double svetlichny = 0.0;
    MarginalProfile marginal_profile;
    WitnessVerdicts verdicts;
    std::vector<std::string> assumptions;
    Certificate certificate;
};

WitnessReport witness_report(const Behavior& p, const CertifyOptions& opts = {});

}  // namespace gme
