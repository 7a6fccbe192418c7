#include "gme/behavior.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gme/errors.hpp"

namespace gme {

namespace {

template <std::size_t N>
void validate_table(const std::array<double, N>& p, std::size_t outcomes_per_input) {
    for (std::size_t k = 0; k < N; ++k) {
        if (!std::isfinite(p[k]) || p[k] < -kEntryTol || p[k] > 1.0 + kEntryTol)
            throw InputError("behavior entry " + std::to_string(k) + " = " + std::to_string(p[k]) +
                             " is not a probability");
    }
    for (std::size_t start = 0; start < N; start += outcomes_per_input) {
        double s = 0.0;
        for (std::size_t k = 0; k < outcomes_per_input; ++k) s += p[start + k];
        if (std::abs(s - 1.0) > kNormTol)
            throw InputError("behavior block starting at entry " + std::to_string(start) + " sums to " +
                             std::to_string(s) + ", not 1");
    }
}

int sign(int bit) { return bit ? -1 : 1; }

}  // namespace

Behavior::Behavior(const std::array<double, kSize>& p) : p_(p) { validate_table(p_, 8); }

Behavior::Behavior(std::span<const double> p) {
    if (p.size() != kSize)
        throw InputError("behavior needs 64 entries, got " + std::to_string(p.size()));
    std::copy(p.begin(), p.end(), p_.begin());
    validate_table(p_, 8);
}

Behavior Behavior::white_noise() {
    std::array<double, kSize> p;
    p.fill(1.0 / 8.0);
    return Behavior(p);
}

Behavior Behavior::deterministic(int sa, int sb, int sc) {
    std::array<double, kSize> p{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z)
                p[index(x, y, z, deterministic_output(sa, x), deterministic_output(sb, y),
                        deterministic_output(sc, z))] = 1.0;
    return Behavior(p);
}

Behavior Behavior::mixture(std::span<const Behavior> parts, std::span<const double> weights) {
    if (parts.size() != weights.size() || parts.empty())
        throw InputError("mixture: need one weight per part");
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw InputError("mixture: negative weight");
        total += w;
    }
    if (std::abs(total - 1.0) > kNormTol) throw InputError("mixture: weights must sum to 1");
    std::array<double, kSize> p{};
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t k = 0; k < kSize; ++k) p[k] += weights[i] * parts[i].p_[k];
    return Behavior(p);
}

BipartiteBehavior::BipartiteBehavior(const std::array<double, kSize>& p) : p_(p) { validate_table(p_, 4); }

BipartiteBehavior BipartiteBehavior::white_noise() {
    std::array<double, kSize> p;
    p.fill(0.25);
    return BipartiteBehavior(p);
}

BipartiteBehavior BipartiteBehavior::deterministic(int s1, int s2) {
    std::array<double, kSize> p{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) p[index(x, y, deterministic_output(s1, x), deterministic_output(s2, y))] = 1.0;
    return BipartiteBehavior(p);
}

BipartiteBehavior BipartiteBehavior::noisy(const BipartiteBehavior& box, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw ParameterError("noisy box: lambda must lie in [0,1]");
    std::array<double, kSize> p{};
    for (std::size_t k = 0; k < kSize; ++k) p[k] = lambda * box.p_[k] + (1.0 - lambda) * 0.25;
    return BipartiteBehavior(p);
}

NoSignalingCheck check_no_signaling(const Behavior& p, double tol) {
    double worst = 0.0;
    // Marginal of the two remaining parties must not depend on the summed party's input.
    for (int u = 0; u < 2; ++u)
        for (int v = 0; v < 2; ++v)
            for (int ou = 0; ou < 2; ++ou)
                for (int ov = 0; ov < 2; ++ov) {
                    double m[3][2] = {};
                    for (int s = 0; s < 2; ++s)
                        for (int o = 0; o < 2; ++o) {
                            m[0][s] += p(s, u, v, o, ou, ov);  // sum over a, vary x
                            m[1][s] += p(u, s, v, ou, o, ov);  // sum over b, vary y
                            m[2][s] += p(u, v, s, ou, ov, o);  // sum over c, vary z
                        }
                    for (auto& row : m) worst = std::max(worst, std::abs(row[0] - row[1]));
                }
    return {worst <= tol, worst};
}

NoSignalingCheck check_no_signaling(const BipartiteBehavior& p, double tol) {
    double worst = 0.0;
    for (int u = 0; u < 2; ++u)
        for (int o = 0; o < 2; ++o) {
            // first party's marginal independent of y, second's independent of x
            const double a0 = p(u, 0, o, 0) + p(u, 0, o, 1), a1 = p(u, 1, o, 0) + p(u, 1, o, 1);
            const double b0 = p(0, u, 0, o) + p(0, u, 1, o), b1 = p(1, u, 0, o) + p(1, u, 1, o);
            worst = std::max({worst, std::abs(a0 - a1), std::abs(b0 - b1)});
        }
    return {worst <= tol, worst};
}

double correlator(const Behavior& p, int x, int y, int z) {
    double e = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) e += sign(a ^ b ^ c) * p(x, y, z, a, b, c);
    return e;
}

double correlator(const BipartiteBehavior& p, int x, int y) {
    double e = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) e += sign(a ^ b) * p(x, y, a, b);
    return e;
}

namespace {

void require_no_signaling(const Behavior& p, double ns_tol, const char* who) {
    const auto ns = check_no_signaling(p, ns_tol);
    if (!ns.ok) throw SignalingError(std::string(who) + ": behavior is signaling", ns.worst_deviation);
}

// Expectation of one party with the others fixed at setting 0, no NS check.
double raw_single(const Behavior& p, Party party, int setting) {
    double e = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) switch (party) {
                    case Party::A: e += sign(a) * p(setting, 0, 0, a, b, c); break;
                    case Party::B: e += sign(b) * p(0, setting, 0, a, b, c); break;
                    case Party::C: e += sign(c) * p(0, 0, setting, a, b, c); break;
                }
    return e;
}

BipartiteBehavior raw_pair(const Behavior& p, Pair pair) {
    std::array<double, BipartiteBehavior::kSize> q{};
    for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2)
            for (int o1 = 0; o1 < 2; ++o1)
                for (int o2 = 0; o2 < 2; ++o2) {
                    double m = 0.0;
                    for (int o = 0; o < 2; ++o) switch (pair) {
                            case Pair::AB: m += p(s1, s2, 0, o1, o2, o); break;
                            case Pair::AC: m += p(s1, 0, s2, o1, o, o2); break;
                            case Pair::BC: m += p(0, s1, s2, o, o1, o2); break;
                        }
                    q[BipartiteBehavior::index(s1, s2, o1, o2)] = m;
                }
    return BipartiteBehavior(q);
}

}  // namespace

double single_marginal_expectation(const Behavior& p, Party party, int setting, double ns_tol) {
    require_no_signaling(p, ns_tol, "single_marginal_expectation");
    return raw_single(p, party, setting);
}

bool is_marginal_maximally_mixed(const Behavior& p, Party party, double tol, double ns_tol) {
    require_no_signaling(p, ns_tol, "is_marginal_maximally_mixed");
    return std::abs(raw_single(p, party, 0)) <= tol && std::abs(raw_single(p, party, 1)) <= tol;
}

BipartiteBehavior pair_marginal(const Behavior& p, Pair pair, double ns_tol) {
    require_no_signaling(p, ns_tol, "pair_marginal");
    return raw_pair(p, pair);
}

MarginalProfile marginal_profile(const Behavior& p, double ns_tol) {
    require_no_signaling(p, ns_tol, "marginal_profile");
    MarginalProfile m;
    for (int party = 0; party < 3; ++party)
        for (int s = 0; s < 2; ++s) m.single[party][s] = raw_single(p, static_cast<Party>(party), s);
    for (int k = 0; k < 3; ++k) {
        const auto q = raw_pair(p, static_cast<Pair>(k));
        for (int s1 = 0; s1 < 2; ++s1)
            for (int s2 = 0; s2 < 2; ++s2) m.pair[k][s1][s2] = correlator(q, s1, s2);
    }
    return m;
}

Behavior product_behavior(Party single, int strategy, const BipartiteBehavior& rest) {
    std::array<double, Behavior::kSize> p{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        for (int c = 0; c < 2; ++c) {
                            double v = 0.0;
                            switch (single) {
                                case Party::A:
                                    v = (deterministic_output(strategy, x) == a) * rest(y, z, b, c);
                                    break;
                                case Party::B:
                                    v = (deterministic_output(strategy, y) == b) * rest(x, z, a, c);
                                    break;
                                case Party::C:
                                    v = (deterministic_output(strategy, z) == c) * rest(x, y, a, b);
                                    break;
                            }
                            p[Behavior::index(x, y, z, a, b, c)] = v;
                        }
    return Behavior(p);
}

}  // namespace gme
