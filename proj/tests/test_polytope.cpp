#include "doctest.h"

#include <set>

#include "gme/errors.hpp"
#include "gme/polytope.hpp"
#include "gme/report.hpp"
#include "gme/witness.hpp"
#include "oracles.hpp"

using namespace gme;

namespace {

double reconstruction_error(const PolytopeVerdict& v, const VertexSet& set, const Behavior& p) {
    std::array<double, 64> r{};
    double total = 0.0;
    for (const auto& w : v.weights) {
        total += w.weight;
        for (std::size_t k = 0; k < 64; ++k) r[k] += w.weight * set.vertices[w.vertex].data()[k];
    }
    double worst = std::abs(total - 1.0);
    for (std::size_t k = 0; k < 64; ++k) worst = std::max(worst, std::abs(r[k] - p.data()[k]));
    return worst;
}

std::vector<std::vector<double>> as_points(const std::vector<BipartiteBehavior>& boxes) {
    std::vector<std::vector<double>> out;
    for (const auto& b : boxes) out.emplace_back(b.data().begin(), b.data().end());
    return out;
}

}  // namespace

TEST_SUITE("polytope") {
    TEST_CASE("fully local vertices") {
        const auto set = enumerate_fully_local();
        CHECK(set.vertices.size() == 64);
        CHECK(set.labels.size() == 64);
        double best = 0.0;
        for (const auto& v : set.vertices) {
            for (double e : v.data()) CHECK((e == 0.0 || e == 1.0));
            CHECK(check_no_signaling(v).worst_deviation < 1e-12);
            best = std::max(best, mermin_value(v));
        }
        CHECK(best == 2.0);
    }

    TEST_CASE("bipartite no-signaling extremals") {
        const auto boxes = enumerate_bipartite_ns_extremals();
        CHECK(boxes.size() == 24);
        int with_value_four = 0;
        for (const auto& b : boxes) {
            CHECK(check_no_signaling(b).worst_deviation < 1e-12);
            bool four = false;
            for (int c = 0; c < kPrConventions; ++c) four = four || chsh_symmetry_value(b, c) == 4.0;
            with_value_four += four;
        }
        CHECK(with_value_four == 8);
        for (std::size_t k = 0; k < boxes.size(); ++k) {
            auto others = boxes;
            others.erase(others.begin() + static_cast<std::ptrdiff_t>(k));
            CHECK_FALSE(membership(boxes[k], others).member);
        }
    }

    TEST_CASE("PR boxes") {
        const auto pr = pr_box(0);
        CHECK(correlator(pr, 0, 0) == 1.0);
        CHECK(correlator(pr, 0, 1) == 1.0);
        CHECK(correlator(pr, 1, 0) == 1.0);
        CHECK(correlator(pr, 1, 1) == -1.0);
        CHECK(chsh_symmetry_value(pr, 0) == 4.0);
        for (int c = 0; c < kPrConventions; ++c) {
            const auto box = pr_box(c);
            for (int x = 0; x < 2; ++x)
                for (int a = 0; a < 2; ++a) CHECK(box(x, 0, a, 0) + box(x, 0, a, 1) == 0.5);
            const auto silent = BipartiteBehavior::noisy(box, 0.0);
            for (int k = 0; k < 4; ++k) CHECK(correlator(silent, k >> 1, k & 1) == 0.0);
        }
        CHECK_THROWS_AS(pr_box(8), ParameterError);
        CHECK_THROWS_AS(pr_box(-1), ParameterError);
    }

    TEST_CASE("two-way-local vertices") {
        const auto set = enumerate_two_way_local();
        CHECK(set.candidates == 288);
        CHECK(set.vertices.size() == 160);
        const auto local = enumerate_fully_local();
        for (const auto& v : local.vertices)
            CHECK(std::find(set.vertices.begin(), set.vertices.end(), v) != set.vertices.end());
        double svet = 0.0, mermin = 0.0;
        for (const auto& v : set.vertices) {
            CHECK(check_no_signaling(v).worst_deviation < 1e-12);
            svet = std::max(svet, svetlichny_value(v));
            mermin = std::max(mermin, mermin_value(v));
        }
        CHECK(svet == 4.0);
        CHECK(mermin == 4.0);
        CHECK(std::set<std::string>(set.labels.begin(), set.labels.end()).size() == set.labels.size());
    }

    TEST_CASE("canonical two-way-local behavior") {
        const double lambda = 1 / std::sqrt(2.0);
        const auto single = canonical_l2_behavior(1.0, 0.0, 0.0, lambda);
        CHECK(std::abs(mermin_value(single) - 2 * std::numbers::sqrt2) <= 1e-12);
        CHECK(q_value(single) <= 1e-12);
        const auto half = canonical_l2_behavior(0.5, 0.5, 0.0, lambda);
        CHECK(std::abs(single_marginal_expectation(half, Party::A, 0)) > 0.1);
        CHECK(std::abs(single_marginal_expectation(half, Party::B, 1)) > 0.1);
        CHECK(single_marginal_expectation(half, Party::C, 0) == 0.0);
        CHECK(single_marginal_expectation(half, Party::C, 1) == 0.0);
        CHECK_THROWS_AS(canonical_l2_behavior(0.5, 0.6, 0.0, lambda), ParameterError);
        CHECK_THROWS_AS(canonical_l2_behavior(-0.5, 1.5, 0.0, lambda), ParameterError);
        CHECK_THROWS_AS(canonical_l2_behavior(1.0, 0.0, 0.0, 1.5), ParameterError);
        auto g = testing::rng(41);
        for (int trial = 0; trial < 50; ++trial) {
            const auto k = testing::random_weights(g, 3);
            const auto p = canonical_l2_behavior(k[0], k[1], k[2], lambda);
            CHECK(check_no_signaling(p).ok);
            CHECK(std::abs(mermin_value(p) - 2 * std::numbers::sqrt2) <= 1e-12);
            CHECK(q_value(p) <= 1e-12);
        }
    }

    TEST_CASE("membership of vertices and known outsiders") {
        const auto local = enumerate_fully_local();
        for (std::size_t k = 0; k < local.vertices.size(); ++k) {
            const auto v = membership(local.vertices[k], local);
            CHECK(v.member);
            CHECK(reconstruction_error(v, local, local.vertices[k]) <= 1e-8);
        }
        const auto data = appendix_data(Appendix::a);
        const auto app = born_behavior(parse_state_spec(data.at("state").get<std::string>()), settings_from_json(data));
        const auto out = membership(app, local);
        CHECK_FALSE(out.member);
        CHECK(out.weights.empty());
        CHECK(out.max_residual > 0.0);

        const auto two_way = enumerate_two_way_local();
        const auto l2 = canonical_l2_behavior(0.2, 0.3, 0.5, 1 / std::sqrt(2.0));
        const auto in = membership(l2, two_way);
        CHECK(in.member);
        CHECK(reconstruction_error(in, two_way, l2) <= 1e-8);
        const Behavior svet(oracle::svetlichny_box());
        CHECK_FALSE(membership(svet, two_way).member);
        CHECK_FALSE(membership(svet, two_way, LpArithmetic::exact).member);
        CHECK(membership(two_way.vertices[100], two_way, LpArithmetic::exact).member);
        CHECK_THROWS_AS(membership(svet, VertexSet{}), InputError);
    }

    TEST_CASE("inclusion chain on local mixtures") {
        const auto local = enumerate_fully_local();
        const auto two_way = enumerate_two_way_local();
        auto g = testing::rng(42);
        for (int trial = 0; trial < 200; ++trial) {
            const auto w = testing::random_weights(g, local.vertices.size());
            const auto p = Behavior::mixture(local.vertices, w);
            const auto a = membership(p, local), b = membership(p, two_way);
            CHECK(a.member);
            CHECK(b.member);
            CHECK(reconstruction_error(a, local, p) <= 1e-8);
            CHECK(reconstruction_error(b, two_way, p) <= 1e-8);
        }
        for (const auto& v : local.vertices) CHECK(membership(v, two_way).member);
    }

    TEST_CASE("LP verdicts agree with the grid spot oracle") {
        std::vector<BipartiteBehavior> det;
        for (int s1 = 0; s1 < 4; ++s1)
            for (int s2 = 0; s2 < 4; ++s2) det.push_back(BipartiteBehavior::deterministic(s1, s2));
        const auto points = as_points(det);
        auto g = testing::rng(43);
        std::uniform_int_distribution<std::size_t> pick(0, det.size() - 1);
        std::uniform_int_distribution<int> step(0, 20);
        for (int trial = 0; trial < 5; ++trial) {
            const int u = step(g), v = std::uniform_int_distribution<int>(0, 20 - u)(g);
            std::array<double, 16> p{};
            const std::array<double, 3> w{u / 20.0, v / 20.0, (20 - u - v) / 20.0};
            const std::array<std::size_t, 3> ids{pick(g), pick(g), pick(g)};
            for (std::size_t k = 0; k < 3; ++k)
                for (std::size_t e = 0; e < 16; ++e) p[e] += w[k] * det[ids[k]].data()[e];
            const BipartiteBehavior target(p);
            CHECK(membership(target, det).member);
            CHECK(oracle::best_triple_distance(target.data(), points, 20) <= 1e-12);
        }
        for (double lambda : {0.6, 0.8, 1.0}) {
            const auto target = BipartiteBehavior::noisy(pr_box(0), lambda);
            const auto verdict = membership(target, det);
            CHECK_FALSE(verdict.member);
            CHECK(oracle::best_triple_distance(target.data(), points, 40) > 1e-6);
        }
    }
}
