#pragma once

// Probability tables P(abc|xyz) for three parties with binary inputs and
// outputs, and their two-party counterparts P(ab|xy).
//
// Storage order is x-major: index = x·32 + y·16 + z·8 + a·4 + b·2 + c.
// Outcome bit 0 stands for eigenvalue +1 and bit 1 for -1, so correlators
// are sums of (-1)^{a⊕b⊕c} P.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace gme {

enum class Party { A = 0, B = 1, C = 2 };
enum class Pair { AB = 0, AC = 1, BC = 2 };

inline constexpr double kEntryTol = 1e-12;
inline constexpr double kNormTol = 1e-10;
inline constexpr double kDefaultNsTol = 1e-9;
inline constexpr double kDefaultMaxMixedTol = 1e-6;

/// Deterministic single-party strategy: bit k of the id is the output for input k.
/// 0: a=0, 1: a=1⊕x, 2: a=x, 3: a=1.
inline constexpr int deterministic_output(int strategy, int input) { return (strategy >> input) & 1; }

class Behavior {
public:
    static constexpr std::size_t kSize = 64;

    static constexpr std::size_t index(int x, int y, int z, int a, int b, int c) {
        return static_cast<std::size_t>((x << 5) | (y << 4) | (z << 3) | (a << 2) | (b << 1) | c);
    }

    /// Validates entries and per-input normalization; throws InputError.
    explicit Behavior(const std::array<double, kSize>& p);
    Behavior(std::span<const double> p);

    static Behavior white_noise();
    static Behavior deterministic(int strategy_a, int strategy_b, int strategy_c);
    /// Convex combination; weights must be non-negative and sum to one.
    static Behavior mixture(std::span<const Behavior> parts, std::span<const double> weights);

    double operator()(int x, int y, int z, int a, int b, int c) const { return p_[index(x, y, z, a, b, c)]; }
    std::span<const double> data() const { return p_; }

    friend bool operator==(const Behavior&, const Behavior&) = default;

private:
    std::array<double, kSize> p_{};
};

/// Two-party table P(ab|xy), index = x·8 + y·4 + a·2 + b.
class BipartiteBehavior {
public:
    static constexpr std::size_t kSize = 16;

    static constexpr std::size_t index(int x, int y, int a, int b) {
        return static_cast<std::size_t>((x << 3) | (y << 2) | (a << 1) | b);
    }

    explicit BipartiteBehavior(const std::array<double, kSize>& p);

    static BipartiteBehavior white_noise();
    static BipartiteBehavior deterministic(int strategy_first, int strategy_second);
    /// lambda·box + (1-lambda)·white noise
    static BipartiteBehavior noisy(const BipartiteBehavior& box, double lambda);

    double operator()(int x, int y, int a, int b) const { return p_[index(x, y, a, b)]; }
    std::span<const double> data() const { return p_; }

    friend bool operator==(const BipartiteBehavior&, const BipartiteBehavior&) = default;

private:
    std::array<double, kSize> p_{};
};

struct NoSignalingCheck {
    bool ok = true;
    double worst_deviation = 0.0;
};

NoSignalingCheck check_no_signaling(const Behavior& p, double tol = kDefaultNsTol);
NoSignalingCheck check_no_signaling(const BipartiteBehavior& p, double tol = kDefaultNsTol);

/// Σ (-1)^{a⊕b⊕c} P(abc|xyz)
double correlator(const Behavior& p, int x, int y, int z);
double correlator(const BipartiteBehavior& p, int x, int y);

/// ⟨party_setting⟩ read from the (0,0) setting of the other two parties.
/// Throws SignalingError when the table is not no-signaling within ns_tol.
double single_marginal_expectation(const Behavior& p, Party party, int setting,
                                   double ns_tol = kDefaultNsTol);

bool is_marginal_maximally_mixed(const Behavior& p, Party party, double tol = kDefaultMaxMixedTol,
                                 double ns_tol = kDefaultNsTol);

/// Two-party marginal (first party of the pair is the first index).
BipartiteBehavior pair_marginal(const Behavior& p, Pair pair, double ns_tol = kDefaultNsTol);

struct MarginalProfile {
    std::array<std::array<double, 2>, 3> single{};                     // [party][setting]
    std::array<std::array<std::array<double, 2>, 2>, 3> pair{};        // [Pair][s1][s2]
};

MarginalProfile marginal_profile(const Behavior& p, double ns_tol = kDefaultNsTol);

/// Tripartite product P(a|x)·P(bc|yz) etc. with the single party placed by `single`.
Behavior product_behavior(Party single, int strategy, const BipartiteBehavior& rest);

}  // namespace gme
