#include "gme/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gme/errors.hpp"

namespace gme {

namespace {

constexpr double kTsirelsonMermin = 2.0 * std::numbers::sqrt2;

int sgn(int bit) { return (bit & 1) ? -1 : 1; }

double E(const Correlators& e, int x, int y, int z) { return e[static_cast<std::size_t>(4 * x + 2 * y + z)]; }

}  // namespace

Correlators full_correlators(const Behavior& p) {
    Correlators e{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z) e[static_cast<std::size_t>(4 * x + 2 * y + z)] = correlator(p, x, y, z);
    return e;
}

Correlators full_correlators(const CorrelationTensor& t, const MeasurementSettings& s) {
    Correlators e{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z)
                e[static_cast<std::size_t>(4 * x + 2 * y + z)] =
                    t.correlator(s.at(Party::A, x).direction(), s.at(Party::B, y).direction(),
                                 s.at(Party::C, z).direction());
    return e;
}

double mermin_signed(const Correlators& e) { return E(e, 0, 0, 1) + E(e, 0, 1, 0) + E(e, 1, 0, 0) - E(e, 1, 1, 1); }

double mermin_plus(const Correlators& e, int alpha, int beta, int gamma) {
    const int s = alpha ^ beta ^ gamma;
    return sgn(gamma) * E(e, 0, 0, 1) + sgn(beta) * E(e, 0, 1, 0) + sgn(alpha) * E(e, 1, 0, 0) +
           sgn(s ^ 1) * E(e, 1, 1, 1);
}

double mermin_minus(const Correlators& e, int alpha, int beta, int gamma) {
    return sgn(alpha ^ beta ^ 1) * E(e, 1, 1, 0) + sgn(alpha ^ gamma ^ 1) * E(e, 1, 0, 1) +
           sgn(beta ^ gamma ^ 1) * E(e, 0, 1, 1) + E(e, 0, 0, 0);
}

double mermin_family(const Correlators& e, int alpha, int beta, int gamma) {
    return ((alpha ^ beta ^ gamma) == 0) ? mermin_plus(e, alpha, beta, gamma) : mermin_minus(e, alpha, beta, gamma);
}

double svetlichny_signed(const Correlators& e) { return mermin_plus(e, 0, 0, 0) + mermin_minus(e, 0, 0, 0); }

double mermin_value(const Behavior& p) { return std::abs(mermin_signed(full_correlators(p))); }

double mermin_family(const Behavior& p, int alpha, int beta, int gamma) {
    return mermin_family(full_correlators(p), alpha, beta, gamma);
}

std::array<double, 8> mermin_family_all(const Behavior& p) {
    const auto e = full_correlators(p);
    std::array<double, 8> f{};
    for (int k = 0; k < 8; ++k) f[static_cast<std::size_t>(k)] = mermin_family(e, k >> 2, (k >> 1) & 1, k & 1);
    return f;
}

double svetlichny_value(const Behavior& p) { return std::abs(svetlichny_signed(full_correlators(p))); }

QPermutationSet QPermutationSet::all_orderings() {
    std::vector<Order> orders;
    Order o{0, 1, 2};
    do orders.push_back(o);
    while (std::next_permutation(o.begin(), o.end()));
    return QPermutationSet(std::move(orders));
}

QPermutationSet::QPermutationSet(std::vector<Order> orders) : orders_(std::move(orders)) {
    if (orders_.empty()) throw InputError("Q permutation set must not be empty");
    for (const auto& o : orders_) {
        Order sorted = o;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != Order{0, 1, 2}) throw InputError("Q permutation set entries must be orderings of {0,1,2}");
    }
}

double q_term(const std::array<double, 8>& f, const QPermutationSet::Order& order) {
    auto M = [&](int outer, int middle, int inner) {
        std::array<int, 3> idx{};
        idx[static_cast<std::size_t>(order[0])] = outer;
        idx[static_cast<std::size_t>(order[1])] = middle;
        idx[static_cast<std::size_t>(order[2])] = inner;
        return f[static_cast<std::size_t>(4 * idx[0] + 2 * idx[1] + idx[2])];
    };
    auto half = [&](int outer) {
        return std::abs(std::abs(M(outer, 0, 0) - M(outer, 0, 1)) - std::abs(M(outer, 1, 0) - M(outer, 1, 1)));
    };
    return std::abs(half(0) - half(1));
}

double q_value(const std::array<double, 8>& family, const QPermutationSet& set) {
    double q = q_term(family, set.orders().front());
    for (const auto& o : set.orders()) q = std::min(q, q_term(family, o));
    return q;
}

double q_value(const Behavior& p, const QPermutationSet& set) { return q_value(mermin_family_all(p), set); }

double chsh_value(const BipartiteBehavior& p, bool primed, double ns_tol) {
    const auto ns = check_no_signaling(p, ns_tol);
    if (!ns.ok) throw SignalingError("chsh_value: bipartite behavior is signaling", ns.worst_deviation);
    const int o = primed ? 1 : 0;  // setting k reads as k⊕o
    auto c = [&](int s1, int s2) { return correlator(p, s1 ^ o, s2 ^ o); };
    return c(1, 1) + c(1, 0) + c(0, 1) - c(0, 0);
}

double mermin_decomposition_check(const DensityMatrix& rho, const MeasurementSettings& s, Bipartition branch) {
    if (rho.dim() != 8) throw InputError("mermin_decomposition_check: expected a three-qubit state");

    auto op = [&](int x, int y, int z) {
        return kron(kron(s.at(Party::A, x).matrix(), s.at(Party::B, y).matrix()), s.at(Party::C, z).matrix());
    };
    ComplexMatrix mermin = op(0, 0, 1) + op(0, 1, 0) + op(1, 0, 0) - op(1, 1, 1);
    const double full = trace_product(rho.matrix(), mermin).real();

    const Party single = single_party(branch);
    Pair pair = Pair::BC;
    Party first = Party::B, second = Party::C;
    if (branch == Bipartition::B_AC) pair = Pair::AC, first = Party::A, second = Party::C;
    if (branch == Bipartition::C_AB) pair = Pair::AB, first = Party::A, second = Party::B;

    const ComplexMatrix rho_single = reduced_single(rho, single);
    const ComplexMatrix rho_pair = reduced_pair(rho, pair);
    auto single_exp = [&](int k) { return trace_product(rho_single, s.at(single, k).matrix()).real(); };
    auto pair_exp = [&](int k1, int k2) {
        return trace_product(rho_pair, kron(s.at(first, k1).matrix(), s.at(second, k2).matrix())).real();
    };
    const double chsh = pair_exp(1, 1) + pair_exp(1, 0) + pair_exp(0, 1) - pair_exp(0, 0);
    const double chsh_primed = pair_exp(0, 0) + pair_exp(0, 1) + pair_exp(1, 0) - pair_exp(1, 1);
    const double u = chsh_primed - chsh;
    const double v = chsh_primed + chsh;
    return std::abs(full - 0.5 * (single_exp(1) * u + single_exp(0) * v));
}

const char* to_string(Verdict v) { return v == Verdict::GME_certified ? "GME_certified" : "not_certified"; }

const char* to_string(CertificationMode m) {
    switch (m) {
        case CertificationMode::device_independent: return "device_independent";
        case CertificationMode::semi_device_independent: return "semi_device_independent";
        case CertificationMode::above_threshold: return "above_threshold";
    }
    return "?";
}

namespace {

struct RuleInputs {
    double mermin;
    double q;
    std::array<double, 6> marginals;  // A0 A1 B0 B1 C0 C1
};

Certificate apply_rules(const RuleInputs& in, const CertifyOptions& opts) {
    Certificate cert;
    const Evidence above{"mermin", in.mermin, ">", kTsirelsonMermin + opts.tol_mermin,
                         in.mermin > kTsirelsonMermin + opts.tol_mermin};
    if (above.satisfied) {
        cert.verdict = Verdict::GME_certified;
        cert.mode = CertificationMode::above_threshold;
        cert.evidence.push_back(above);
        return cert;
    }

    const Evidence at_bound{"|mermin - 2*sqrt(2)|", std::abs(in.mermin - kTsirelsonMermin), "<=", opts.tol_mermin,
                            std::abs(in.mermin - kTsirelsonMermin) <= opts.tol_mermin};
    int non_random = 0;
    std::vector<Evidence> marginal_evidence;
    static const char* names[3] = {"A", "B", "C"};
    for (int party = 0; party < 3; ++party) {
        const double m = std::max(std::abs(in.marginals[2 * party]), std::abs(in.marginals[2 * party + 1]));
        Evidence ev{std::string("max|<") + names[party] + "_k>|", m, ">", opts.tol_marginal, m > opts.tol_marginal};
        if (ev.satisfied) ++non_random;
        marginal_evidence.push_back(std::move(ev));
    }
    const Evidence q{"Q", in.q, ">", opts.tol_marginal, in.q > opts.tol_marginal};

    if (!at_bound.satisfied || non_random < 2) {
        cert.evidence.push_back(above);
        cert.evidence.push_back(at_bound);
        cert.evidence.insert(cert.evidence.end(), marginal_evidence.begin(), marginal_evidence.end());
        return cert;
    }

    cert.verdict = Verdict::GME_certified;
    cert.evidence.push_back(at_bound);
    for (auto& ev : marginal_evidence)
        if (ev.satisfied) cert.evidence.push_back(ev);
    cert.evidence.push_back(q);
    if (q.satisfied) {
        cert.mode = CertificationMode::device_independent;
    } else {
        cert.mode = CertificationMode::semi_device_independent;
        cert.assumptions.emplace_back(kDimensionAssumption);
    }
    return cert;
}

RuleInputs rule_inputs(const Behavior& p, const MarginalProfile& m, const CertifyOptions& opts) {
    RuleInputs in{};
    in.mermin = mermin_value(p);
    in.q = q_value(p, opts.q_set);
    for (int party = 0; party < 3; ++party)
        for (int k = 0; k < 2; ++k) in.marginals[static_cast<std::size_t>(2 * party + k)] = m.single[party][k];
    return in;
}

}  // namespace

Certificate certify(const Behavior& p, const CertifyOptions& opts) {
    const MarginalProfile m = marginal_profile(p, opts.ns_tol);
    return apply_rules(rule_inputs(p, m, opts), opts);
}

WitnessReport witness_report(const Behavior& p, const CertifyOptions& opts) {
    WitnessReport r;
    r.marginal_profile = marginal_profile(p, opts.ns_tol);
    r.mermin = mermin_value(p);
    r.mermin_family = mermin_family_all(p);
    r.q_value = q_value(r.mermin_family, opts.q_set);
    r.svetlichny = svetlichny_value(p);
    const RuleInputs in = rule_inputs(p, r.marginal_profile, opts);
    r.certificate = apply_rules(in, opts);

    r.verdicts.above_threshold_GME = r.mermin > kTsirelsonMermin + opts.tol_mermin;
    int non_random = 0;
    for (int party = 0; party < 3; ++party)
        if (std::max(std::abs(in.marginals[static_cast<std::size_t>(2 * party)]),
                     std::abs(in.marginals[static_cast<std::size_t>(2 * party + 1)])) > opts.tol_marginal)
            ++non_random;
    const bool conditions = std::abs(r.mermin - kTsirelsonMermin) <= opts.tol_mermin && non_random >= 2;
    r.verdicts.DI_GME = conditions && r.q_value > opts.tol_marginal;
    r.verdicts.semi_DI_GME = conditions;
    if (conditions) r.assumptions.emplace_back(kDimensionAssumption);
    return r;
}

}  // namespace gme
