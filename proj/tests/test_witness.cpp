#include "doctest.h"

#include <fstream>

#include "gme/errors.hpp"
#include "gme/polytope.hpp"
#include "gme/report.hpp"
#include "oracles.hpp"

using namespace gme;

namespace {

const double kTsirelson = 2.0 * std::numbers::sqrt2;

Behavior appendix_behavior(Appendix which) {
    const auto data = appendix_data(which);
    return born_behavior(parse_state_spec(data.at("state").get<std::string>()), settings_from_json(data));
}

MeasurementSettings ghz_settings() {
    std::ifstream in(std::string(GME_DATA_DIR) + "/ghz_mermin.json");
    return settings_from_json(json::parse(in));
}

double sign(int bit) { return bit ? -1.0 : 1.0; }

// Family members written from their definitions; E indexed 4x + 2y + z.
double family_oracle(const Correlators& e, int al, int be, int ga) {
    auto E = [&](int x, int y, int z) { return e[static_cast<std::size_t>(4 * x + 2 * y + z)]; };
    const int s = al ^ be ^ ga;
    if (s == 0)
        return sign(ga) * E(0, 0, 1) + sign(be) * E(0, 1, 0) + sign(al) * E(1, 0, 0) + sign(s ^ 1) * E(1, 1, 1);
    return sign(al ^ be ^ 1) * E(1, 1, 0) + sign(al ^ ga ^ 1) * E(1, 0, 1) + sign(be ^ ga ^ 1) * E(0, 1, 1) + E(0, 0, 0);
}

double q1_oracle(const std::array<double, 8>& m) {
    return std::abs(std::abs(std::abs(m[0] - m[1]) - std::abs(m[2] - m[3])) -
                    std::abs(std::abs(m[4] - m[5]) - std::abs(m[6] - m[7])));
}

// Family values with the roles of the three index bits permuted.
std::array<double, 8> permute_bits(const std::array<double, 8>& m, const std::array<int, 3>& perm) {
    std::array<double, 8> out{};
    for (int k = 0; k < 8; ++k) {
        const std::array<int, 3> bits{k >> 2, (k >> 1) & 1, k & 1};
        const int j = 4 * bits[static_cast<std::size_t>(perm[0])] + 2 * bits[static_cast<std::size_t>(perm[1])] +
                      bits[static_cast<std::size_t>(perm[2])];
        out[static_cast<std::size_t>(k)] = m[static_cast<std::size_t>(j)];
    }
    return out;
}

Correlators random_correlators(std::mt19937_64& g) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Correlators e{};
    for (auto& v : e) v = u(g);
    return e;
}

}  // namespace

TEST_SUITE("witness") {
    TEST_CASE("Mermin value") {
        CHECK(mermin_value(Behavior::deterministic(0, 0, 0)) == 2.0);
        CHECK(mermin_value(Behavior::white_noise()) == 0.0);
        CHECK(std::abs(mermin_value(appendix_behavior(Appendix::a)) - kTsirelson) <= 1e-3);
        const auto ghz = born_behavior(ghz_state(), ghz_settings());
        CHECK(std::abs(mermin_value(ghz) - 4.0) <= 1e-12);
        const double oracle_value = 3 * oracle::ghz_equatorial_correlator(std::numbers::pi / 2, std::numbers::pi / 2, 0) -
                                    oracle::ghz_equatorial_correlator(0, 0, 0);
        CHECK(std::abs(std::abs(oracle_value) - 4.0) <= 1e-12);
    }

    TEST_CASE("family members follow their definitions") {
        auto g = testing::rng(31);
        for (int trial = 0; trial < 50; ++trial) {
            const auto e = random_correlators(g);
            for (int k = 0; k < 8; ++k)
                CHECK(std::abs(mermin_family(e, k >> 2, (k >> 1) & 1, k & 1) -
                               family_oracle(e, k >> 2, (k >> 1) & 1, k & 1)) <= 1e-15);
            CHECK(mermin_family(e, 0, 0, 0) == mermin_signed(e));
        }
        const auto fam = mermin_family_all(Behavior::white_noise());
        for (double v : fam) CHECK(v == 0.0);
    }

    TEST_CASE("every family member has local bound 2") {
        const auto local = enumerate_fully_local();
        double worst = 0.0;
        for (const auto& v : local.vertices)
            for (double m : mermin_family_all(v)) worst = std::max(worst, std::abs(m));
        CHECK(worst == 2.0);
    }

    TEST_CASE("local mixtures respect the Mermin bound") {
        const auto local = enumerate_fully_local();
        double best = 0.0;
        for (const auto& v : local.vertices) best = std::max(best, mermin_value(v));
        CHECK(best == 2.0);
        auto g = testing::rng(32);
        for (int trial = 0; trial < 1000; ++trial) {
            const auto w = testing::random_weights(g, local.vertices.size());
            CHECK(mermin_value(Behavior::mixture(local.vertices, w)) <= 2.0 + 1e-10);
        }
    }

    TEST_CASE("bi-separable states stay within 2 sqrt 2") {
        auto g = testing::rng(33);
        double worst = 0.0;
        for (int trial = 0; trial < 1000; ++trial) {
            const auto v = testing::random_pure(g, 2);
            const auto pair = pure_state(testing::random_pure(g, 4), "pair");
            const auto rho = biseparable_state(static_cast<Bipartition>(trial % 3), std::array<complex, 2>{v[0], v[1]}, pair);
            worst = std::max(worst, mermin_value(born_behavior(rho, testing::random_settings(g))));
        }
        CHECK(worst <= kTsirelson + 1e-9);
    }

    TEST_CASE("Q quantity") {
        CHECK(q_value(Behavior::white_noise()) == 0.0);
        auto g = testing::rng(34);
        for (int trial = 0; trial < 50; ++trial) {
            std::array<double, 8> m{};
            for (auto& v : m) v = std::uniform_real_distribution<double>(-2.0, 2.0)(g);
            CHECK(std::abs(q_term(m, {0, 1, 2}) - q1_oracle(m)) <= 1e-15);
            const double q = q_value(m);
            CHECK(q >= 0.0);
            CHECK(q <= q1_oracle(m));
            for (const auto& perm : QPermutationSet::all_orderings().orders())
                CHECK(std::abs(q_value(permute_bits(m, perm)) - q) <= 1e-15);
        }
        CHECK(q_value(appendix_behavior(Appendix::a)) > 1e-6);
        CHECK(q_value(canonical_l2_behavior(1.0, 0.0, 0.0, 1 / std::sqrt(2.0))) <= 1e-12);
        CHECK_THROWS_AS(QPermutationSet({}), InputError);
        CHECK_THROWS_AS(QPermutationSet({{0, 0, 1}}), InputError);
        const QPermutationSet only_first({{0, 1, 2}});
        std::array<double, 8> m{1, 0, 0, 0, 0, 0, 0, 0};
        CHECK(q_value(m, only_first) == 1.0);
    }

    TEST_CASE("CHSH") {
        const auto ones = BipartiteBehavior::deterministic(0, 0);
        CHECK(chsh_value(ones, false) == 2.0);
        CHECK(chsh_value(ones, true) == 2.0);
        // c00 = -1, the rest +1: a⊕b = (x⊕1)(y⊕1), convention id 7
        CHECK(chsh_value(pr_box(7), false) == 4.0);
        CHECK(chsh_value(pr_box(0), true) == 4.0);
        CHECK(std::abs(chsh_value(BipartiteBehavior::noisy(pr_box(7), 1 / std::sqrt(2.0)), false) - kTsirelson) <= 1e-12);
        std::array<double, 16> sig{};
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) sig[BipartiteBehavior::index(x, y, 0, x)] = 1.0;
        CHECK_THROWS_AS(chsh_value(BipartiteBehavior(sig), false), SignalingError);
    }

    TEST_CASE("Svetlichny") {
        const auto local = enumerate_fully_local();
        for (const auto& v : local.vertices) CHECK(svetlichny_value(v) <= 4.0);
        CHECK(svetlichny_value(Behavior(oracle::svetlichny_box())) == 8.0);
        const auto two_way = enumerate_two_way_local();
        for (const auto& v : two_way.vertices) CHECK(svetlichny_value(v) <= 4.0 + 1e-10);
    }

    TEST_CASE("Mermin operator decomposes through CHSH on product states") {
        const auto singlet = bell_state(BellState::PsiMinus);
        const std::array<complex, 2> zero{1.0, 0.0};
        const std::array<complex, 2> plus{1 / std::sqrt(2.0), 1 / std::sqrt(2.0)};
        auto g = testing::rng(35);
        for (int branch = 0; branch < 3; ++branch) {
            const auto b = static_cast<Bipartition>(branch);
            CHECK(mermin_decomposition_check(biseparable_state(b, zero, singlet), testing::random_settings(g), b) < 1e-9);
            const auto u = testing::random_pure(g, 2), v = testing::random_pure(g, 2);
            std::vector<complex> prod{u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1]};
            CHECK(mermin_decomposition_check(biseparable_state(b, plus, pure_state(prod, "product")),
                                             testing::random_settings(g), b) < 1e-9);
        }
    }

    TEST_CASE("certification rules") {
        const auto a = certify(appendix_behavior(Appendix::a));
        CHECK(a.verdict == Verdict::GME_certified);
        REQUIRE(a.mode);
        CHECK(*a.mode == CertificationMode::device_independent);
        CHECK_FALSE(a.evidence.empty());

        const auto b = certify(appendix_behavior(Appendix::b));
        CHECK(b.verdict == Verdict::GME_certified);
        REQUIRE(b.mode);
        CHECK(*b.mode != CertificationMode::above_threshold);

        const auto w = certify(Behavior::white_noise());
        CHECK(w.verdict == Verdict::not_certified);
        CHECK_FALSE(w.mode);

        const auto mix = canonical_l2_behavior(0.5, 0.5, 0.0, 1 / std::sqrt(2.0));
        CHECK_FALSE(is_marginal_maximally_mixed(mix, Party::A));
        CHECK_FALSE(is_marginal_maximally_mixed(mix, Party::B));
        CHECK(is_marginal_maximally_mixed(mix, Party::C));
        const auto l2 = certify(mix);
        REQUIRE(l2.mode);
        CHECK(*l2.mode == CertificationMode::semi_device_independent);
        CHECK(std::find(l2.assumptions.begin(), l2.assumptions.end(), kDimensionAssumption) != l2.assumptions.end());

        const auto ghz = certify(born_behavior(ghz_state(), ghz_settings()));
        REQUIRE(ghz.mode);
        CHECK(*ghz.mode == CertificationMode::above_threshold);

        std::array<double, 64> sig{};
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                for (int z = 0; z < 2; ++z) sig[Behavior::index(x, y, z, 0, x, 0)] = 1.0;
        CHECK_THROWS_AS(certify(Behavior(sig)), SignalingError);
    }

    TEST_CASE("witness report invariants") {
        auto g = testing::rng(36);
        for (int trial = 0; trial < 20; ++trial) {
            const auto r = witness_report(born_behavior(pure_state(testing::random_pure(g, 8), "r"), testing::random_settings(g)));
            CHECK(std::abs(r.mermin - std::abs(r.mermin_family[0])) <= 1e-12);
            CHECK(r.q_value >= -1e-12);
            if (r.certificate.verdict == Verdict::GME_certified) CHECK_FALSE(r.certificate.evidence.empty());
        }
        const auto a = witness_report(appendix_behavior(Appendix::a));
        CHECK(a.verdicts.DI_GME);
        CHECK(a.verdicts.semi_DI_GME);
        CHECK_FALSE(a.verdicts.above_threshold_GME);
        const auto l2 = witness_report(canonical_l2_behavior(0.5, 0.5, 0.0, 1 / std::sqrt(2.0)));
        CHECK_FALSE(l2.verdicts.DI_GME);
        CHECK(l2.verdicts.semi_DI_GME);
        CHECK_FALSE(l2.assumptions.empty());
    }
}
