#include "doctest.h"

#include "gme/errors.hpp"
#include "gme/quantum.hpp"
#include "gme/witness.hpp"
#include "oracles.hpp"

using namespace gme;

namespace {

const Vec3 kX{1, 0, 0}, kY{0, 1, 0}, kZ{0, 0, 1};

complex entry(const DensityMatrix& rho, std::size_t i, std::size_t j) { return rho.matrix()(i, j); }

}  // namespace

TEST_SUITE("quantum") {
    TEST_CASE("Bloch observables") {
        for (const auto& n : {kX, kY, kZ, Vec3{0.6, 0.0, 0.8}}) {
            const auto m = BlochObservable(n).matrix();
            CHECK(m.is_hermitian());
            CHECK(std::abs(trace(m)) <= 1e-12);
            CHECK(max_abs_diff(m * m, ComplexMatrix::identity(2)) <= 1e-10);
            CHECK(oracle::max_diff(oracle::bloch_matrix(n), m) <= 1e-15);
        }
        CHECK_THROWS_AS(BlochObservable(Vec3{1.0, 0.1, 0.0}), InputError);
        CHECK_NOTHROW(BlochObservable::renormalized(Vec3{1.00005, 0.0, 0.0}));
        CHECK_THROWS_AS(BlochObservable::renormalized(Vec3{1.01, 0.0, 0.0}), InputError);
        const auto o = BlochObservable::from_angles(std::numbers::pi / 2, 0.0);
        CHECK(std::abs(o.direction()[0] - 1.0) <= 1e-15);
    }

    TEST_CASE("W state") {
        const auto w = w_state();
        for (std::size_t k : {1u, 2u, 4u}) CHECK(std::abs(entry(w, k, k) - 1.0 / 3) <= 1e-15);
        CHECK(std::abs(entry(w, 0, 0)) == 0.0);
        const auto ev = eigen_hermitian(w.matrix());
        CHECK(std::abs(ev.back() - 1.0) <= 1e-10);
        CHECK(std::abs(ev[6]) <= 1e-10);
    }

    TEST_CASE("noisy W") {
        CHECK(max_abs_diff(noisy_w(1.0).matrix(), w_state().matrix()) <= 1e-15);
        CHECK(max_abs_diff(noisy_w(0.0).matrix(), complex(0.125) * ComplexMatrix::identity(8)) <= 1e-15);
        CHECK_THROWS_AS(noisy_w(1.2), ParameterError);
        CHECK_THROWS_AS(noisy_w(-0.1), ParameterError);
    }

    TEST_CASE("noisy W correlators scale linearly with visibility") {
        auto g = testing::rng(11);
        for (int trial = 0; trial < 20; ++trial) {
            const auto s = testing::random_settings(g);
            const double v = std::uniform_real_distribution<double>(0.0, 1.0)(g);
            const auto pure = full_correlators(born_behavior(w_state(), s));
            const auto noisy = full_correlators(born_behavior(noisy_w(v), s));
            for (std::size_t k = 0; k < 8; ++k) CHECK(std::abs(noisy[k] - v * pure[k]) <= 1e-12);
        }
    }

    TEST_CASE("generalized GHZ") {
        const double t = 0.4077;
        const auto rho = gghz_state(t);
        CHECK(std::abs(entry(rho, 0, 0) - std::cos(t) * std::cos(t)) <= 1e-15);
        CHECK(max_abs_diff(gghz_state(std::numbers::pi / 4).matrix(), ghz_state().matrix()) <= 1e-15);
        CHECK(std::abs(entry(ghz_state(), 0, 7) - 0.5) <= 1e-15);
        CHECK_THROWS_AS(gghz_state(0.0), ParameterError);
        CHECK_THROWS_AS(gghz_state(1.0), ParameterError);
    }

    TEST_CASE("bi-separable placement matches the index oracle") {
        auto g = testing::rng(12);
        for (int branch = 0; branch < 3; ++branch)
            for (int trial = 0; trial < 5; ++trial) {
                const auto v1 = testing::random_pure(g, 2);
                const std::array<complex, 2> psi{v1[0], v1[1]};
                const auto pair = pure_state(testing::random_pure(g, 4), "pair");
                const auto rho = biseparable_state(static_cast<Bipartition>(branch), psi, pair);
                CHECK(oracle::max_diff(oracle::biseparable(branch, psi, pair.matrix()), rho.matrix()) <= 1e-14);
            }
        const std::array<complex, 2> zero{1.0, 0.0};
        const auto singlet = biseparable_state(Bipartition::A_BC, zero, bell_state(BellState::PsiMinus));
        CHECK(std::abs(trace(singlet.matrix()) - 1.0) <= 1e-12);
        CHECK(is_psd(singlet.matrix()));
        const auto b = biseparable_state(Bipartition::B_AC, zero, bell_state(BellState::PhiPlus));
        const std::array<DensityMatrix, 2> parts{singlet, b};
        const std::array<double, 2> weights{0.3, 0.7};
        CHECK_NOTHROW(mixture(parts, weights, "mix"));
        const std::array<complex, 2> bad{1.0, 1.0};
        CHECK_THROWS(biseparable_state(Bipartition::A_BC, bad, bell_state(BellState::PhiPlus)));
    }

    TEST_CASE("reduced states") {
        const auto rho = noisy_w(0.7);
        const auto a = reduced_single(rho, Party::A);
        CHECK(std::abs(trace(a) - 1.0) <= 1e-12);
        CHECK(std::abs(a(0, 0) - (0.7 * 2.0 / 3 + 0.3 * 0.5)) <= 1e-12);
        const auto bc = reduced_pair(biseparable_state(Bipartition::A_BC, std::array<complex, 2>{1.0, 0.0},
                                                       bell_state(BellState::PsiMinus)),
                                     Pair::BC);
        CHECK(max_abs_diff(bc, bell_state(BellState::PsiMinus).matrix()) <= 1e-14);
    }

    TEST_CASE("Born rule on |000> with sigma z") {
        std::vector<complex> v(8);
        v[0] = 1.0;
        const auto p = born_behavior(pure_state(v, "000"), MeasurementSettings::uniform(BlochObservable(kZ), BlochObservable(kZ)));
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                for (int z = 0; z < 2; ++z) CHECK(std::abs(p(x, y, z, 0, 0, 0) - 1.0) <= 1e-15);
    }

    TEST_CASE("Born rule matches the projector-sum oracle") {
        auto g = testing::rng(13);
        for (int trial = 0; trial < 20; ++trial) {
            const auto rho = trial % 2 ? pure_state(testing::random_pure(g, 8), "random") : noisy_w(0.5);
            const auto s = testing::random_settings(g);
            const auto want = oracle::born(rho.matrix(), s);
            const auto got = born_behavior(rho, s);
            const auto fast = CorrelationTensor(rho).behavior(s);
            for (std::size_t k = 0; k < 64; ++k) {
                CHECK(std::abs(got.data()[k] - want[k]) <= 1e-12);
                CHECK(std::abs(fast.data()[k] - want[k]) <= 1e-12);
            }
            CHECK(check_no_signaling(got, 1e-10).ok);
        }
    }

    TEST_CASE("GHZ correlators at equatorial settings") {
        auto g = testing::rng(14);
        std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
        for (int trial = 0; trial < 10; ++trial) {
            std::array<std::array<double, 2>, 3> phi{};
            MeasurementSettings s;
            for (int party = 0; party < 3; ++party)
                for (int k = 0; k < 2; ++k) {
                    phi[party][k] = angle(g);
                    s.settings[party][k] = BlochObservable(Vec3{std::cos(phi[party][k]), std::sin(phi[party][k]), 0.0});
                }
            const auto p = born_behavior(ghz_state(), s);
            for (int x = 0; x < 2; ++x)
                for (int y = 0; y < 2; ++y)
                    for (int z = 0; z < 2; ++z)
                        CHECK(std::abs(correlator(p, x, y, z) -
                                       oracle::ghz_equatorial_correlator(phi[0][x], phi[1][y], phi[2][z])) <= 1e-12);
        }
    }

    TEST_CASE("single-party expectations match the reduced state") {
        auto g = testing::rng(15);
        for (int trial = 0; trial < 20; ++trial) {
            const auto rho = pure_state(testing::random_pure(g, 8), "random");
            const auto s = testing::random_settings(g);
            const auto p = born_behavior(rho, s);
            for (int party = 0; party < 3; ++party) {
                const auto red = reduced_single(rho, static_cast<Party>(party));
                for (int k = 0; k < 2; ++k) {
                    const double want = trace_product(red, s.settings[party][k].matrix()).real();
                    CHECK(std::abs(single_marginal_expectation(p, static_cast<Party>(party), k) - want) <= 1e-10);
                }
            }
        }
    }

    TEST_CASE("density matrix validation") {
        CHECK_THROWS_AS(DensityMatrix(pauli::z(), "z"), ParameterError);
        CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::identity(2), "trace 2"), ParameterError);
        ComplexMatrix m(2);
        m(0, 0) = 1.0;
        m(0, 1) = 0.3;
        CHECK_THROWS_AS(DensityMatrix(m, "non-hermitian"), ParameterError);
    }
}
