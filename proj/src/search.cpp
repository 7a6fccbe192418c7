#include "gme/search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gme/errors.hpp"
#include "gme/witness.hpp"

namespace gme {

const char* to_string(Objective o) {
    switch (o) {
        case Objective::mermin: return "mermin";
        case Objective::svetlichny: return "svetlichny";
        case Objective::chsh_pair: return "chsh_pair";
    }
    return "?";
}

void SearchConfig::validate() const {
    if (restarts < 1) throw ParameterError("search: restarts must be >= 1");
    if (max_iterations < 1) throw ParameterError("search: max_iterations must be >= 1");
    if (!(shrink_tolerance > 0.0)) throw ParameterError("search: shrink tolerance must be positive");
}

namespace {

struct Vertex {
    std::vector<double> x;
    double f;
};

// One Nelder-Mead descent; returns iterations used.
int descend(const std::function<double(std::span<const double>)>& f, std::vector<Vertex>& simplex, int budget,
            double tolerance) {
    constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;
    const std::size_t n = simplex.size() - 1;
    std::vector<double> centroid(n), trial(n), trial2(n);
    auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };

    int it = 0;
    for (; it < budget; ++it) {
        std::sort(simplex.begin(), simplex.end(), by_value);
        if (std::abs(simplex.back().f - simplex.front().f) <= tolerance) break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[k].x[j] / static_cast<double>(n);

        Vertex& worst = simplex.back();
        for (std::size_t j = 0; j < n; ++j) trial[j] = centroid[j] + kReflect * (centroid[j] - worst.x[j]);
        const double fr = f(trial);

        if (fr < simplex.front().f) {
            for (std::size_t j = 0; j < n; ++j) trial2[j] = centroid[j] + kExpand * (trial[j] - centroid[j]);
            const double fe = f(trial2);
            if (fe < fr) worst = {trial2, fe};
            else worst = {trial, fr};
            continue;
        }
        if (fr < simplex[n - 1].f) {
            worst = {trial, fr};
            continue;
        }
        // contraction, outside when the reflection improved on the worst point
        const bool outside = fr < worst.f;
        for (std::size_t j = 0; j < n; ++j)
            trial2[j] = outside ? centroid[j] + kContract * (trial[j] - centroid[j])
                                : centroid[j] + kContract * (worst.x[j] - centroid[j]);
        const double fc = f(trial2);
        if (fc < (outside ? fr : worst.f)) {
            worst = {trial2, fc};
            continue;
        }
        for (std::size_t k = 1; k <= n; ++k) {
            for (std::size_t j = 0; j < n; ++j)
                simplex[k].x[j] = simplex[0].x[j] + kShrink * (simplex[k].x[j] - simplex[0].x[j]);
            simplex[k].f = f(simplex[k].x);
        }
    }
    std::sort(simplex.begin(), simplex.end(), by_value);
    return it;
}

std::vector<Vertex> initial_simplex(const std::function<double(std::span<const double>)>& f,
                                    const std::vector<double>& x0, double step) {
    std::vector<Vertex> s;
    s.push_back({x0, f(x0)});
    for (std::size_t j = 0; j < x0.size(); ++j) {
        auto x = x0;
        x[j] += step;
        s.push_back({x, f(x)});
    }
    return s;
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> x0,
                             double step, int max_iterations, double tolerance) {
    if (x0.empty()) throw ParameterError("nelder_mead: empty starting point");
    auto simplex = initial_simplex(f, x0, step);
    int used = descend(f, simplex, max_iterations, tolerance);
    // Rebuild around the best vertex: a collapsed simplex may sit off a minimum.
    double previous = simplex.front().f;
    for (int round = 0; round < 4 && used < max_iterations; ++round) {
        simplex = initial_simplex(f, simplex.front().x, step * 0.1);
        used += descend(f, simplex, max_iterations - used, tolerance);
        if (previous - simplex.front().f <= tolerance) break;
        previous = simplex.front().f;
    }
    return {simplex.front().x, simplex.front().f, used};
}

MeasurementSettings settings_from_angles(std::span<const double> angles) {
    if (angles.size() != 12) throw InputError("settings_from_angles: need 12 angles");
    MeasurementSettings s;
    for (int party = 0; party < 3; ++party)
        for (int k = 0; k < 2; ++k) {
            const auto i = static_cast<std::size_t>(4 * party + 2 * k);
            s.settings[party][k] = BlochObservable::from_angles(angles[i], angles[i + 1]);
        }
    return s;
}

namespace {

double fast_objective(const CorrelationTensor& t, Objective objective, const MeasurementSettings& s) {
    switch (objective) {
        case Objective::mermin: return std::abs(mermin_signed(full_correlators(t, s)));
        case Objective::svetlichny: return std::abs(svetlichny_signed(full_correlators(t, s)));
        case Objective::chsh_pair: {
            auto e = [&](int y, int z) {
                return t.pair_correlator(Pair::BC, s.at(Party::B, y).direction(), s.at(Party::C, z).direction());
            };
            return std::abs(e(1, 1) + e(1, 0) + e(0, 1) - e(0, 0));
        }
    }
    return 0.0;
}

std::mt19937_64 restart_stream(std::uint64_t seed, int restart) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(restart)};
    return std::mt19937_64(seq);
}

// Maximises `value` over `dims` angles from a random start; returns (x, value).
NelderMeadResult run_restart(const std::function<double(std::span<const double>)>& value, std::size_t dims,
                             const SearchConfig& cfg, int restart) {
    auto rng = restart_stream(cfg.seed, restart);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<double> x0(dims);
    for (auto& v : x0) v = angle(rng);
    auto negated = [&](std::span<const double> x) { return -value(x); };
    auto r = nelder_mead(negated, std::move(x0), 0.5, cfg.max_iterations, cfg.shrink_tolerance);
    r.value = -r.value;
    return r;
}

SearchResult merge(std::vector<NelderMeadResult>& runs) {
    SearchResult out;
    std::size_t best = 0;
    for (std::size_t r = 0; r < runs.size(); ++r) {
        out.trace.push_back(runs[r].value);
        if (runs[r].value > runs[best].value) best = r;
    }
    out.best_value = runs[best].value;
    out.best_settings = settings_from_angles(runs[best].x);
    return out;
}

std::function<double(std::span<const double>)> witness_function(const CorrelationTensor& t, Objective objective) {
    return [&t, objective](std::span<const double> x) { return fast_objective(t, objective, settings_from_angles(x)); };
}

}  // namespace

double evaluate_objective(const DensityMatrix& rho, Objective objective, const MeasurementSettings& s) {
    const Behavior p = born_behavior(rho, s);
    switch (objective) {
        case Objective::mermin: return mermin_value(p);
        case Objective::svetlichny: return svetlichny_value(p);
        case Objective::chsh_pair: return std::abs(chsh_value(pair_marginal(p, Pair::BC), false));
    }
    return 0.0;
}

SearchResult maximize_witness_serial(const DensityMatrix& rho, Objective objective, const SearchConfig& cfg) {
    cfg.validate();
    const CorrelationTensor t(rho);
    const auto value = witness_function(t, objective);
    std::vector<NelderMeadResult> runs(static_cast<std::size_t>(cfg.restarts));
    for (int r = 0; r < cfg.restarts; ++r) runs[static_cast<std::size_t>(r)] = run_restart(value, 12, cfg, r);
    return merge(runs);
}

SearchResult maximize_witness(const DensityMatrix& rho, Objective objective, const SearchConfig& cfg) {
    cfg.validate();
    const CorrelationTensor t(rho);
    const auto value = witness_function(t, objective);
    std::vector<NelderMeadResult> runs(static_cast<std::size_t>(cfg.restarts));
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < cfg.restarts; ++r) runs[static_cast<std::size_t>(r)] = run_restart(value, 12, cfg, r);
    return merge(runs);
}

double threshold_visibility(const DensityMatrix& pure, double target, const SearchConfig& cfg) {
    const double purity = trace_product(pure.matrix(), pure.matrix()).real();
    if (std::abs(purity - 1.0) > 1e-9) throw ParameterError("threshold_visibility: state must be pure");
    if (target < 0.0) throw ParameterError("threshold_visibility: target must be non-negative");
    const double best = maximize_witness(pure, Objective::mermin, cfg).best_value;
    if (!(best > 0.0)) throw ParameterError("threshold_visibility: optimizer found no positive Mermin value");
    return target / best;
}

namespace {

// cos a1, sin a1 cos a2 e^{i p1}, sin a1 sin a2 cos a3 e^{i p2}, sin a1 sin a2 sin a3 e^{i p3}
std::array<complex, 4> two_qubit_state(std::span<const double> q) {
    const double s1 = std::sin(q[0]), s2 = std::sin(q[1]);
    return {complex(std::cos(q[0])), s1 * std::cos(q[1]) * std::polar(1.0, q[3]),
            s1 * s2 * std::cos(q[2]) * std::polar(1.0, q[4]), s1 * s2 * std::sin(q[2]) * std::polar(1.0, q[5])};
}

double expectation(const std::array<complex, 4>& psi, const ComplexMatrix& op) {
    complex e{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) e += std::conj(psi[i]) * op(i, j) * psi[j];
    return e.real();
}

}  // namespace

double chsh_max_given_pair(const BlochObservable& b0, const BlochObservable& b1, const SearchConfig& cfg) {
    cfg.validate();
    const ComplexMatrix m0 = b0.matrix(), m1 = b1.matrix();
    auto value = [&](std::span<const double> x) {
        const auto psi = two_qubit_state(x.subspan(0, 6));
        const ComplexMatrix c0 = BlochObservable::from_angles(x[6], x[7]).matrix();
        const ComplexMatrix c1 = BlochObservable::from_angles(x[8], x[9]).matrix();
        return expectation(psi, kron(m1, c1)) + expectation(psi, kron(m1, c0)) + expectation(psi, kron(m0, c1)) -
               expectation(psi, kron(m0, c0));
    };
    std::vector<NelderMeadResult> runs(static_cast<std::size_t>(cfg.restarts));
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < cfg.restarts; ++r) runs[static_cast<std::size_t>(r)] = run_restart(value, 10, cfg, r);
    double best = runs.front().value;
    for (const auto& r : runs) best = std::max(best, r.value);
    return best;
}

}  // namespace gme
