#pragma once

// Derivative-free maximisation of witness values over measurement settings.
//
// Each restart is an independent Nelder-Mead run seeded from its own stream,
// so restarts can execute in any order. maximize_witness runs them under
// OpenMP; maximize_witness_serial is the single-threaded reference and must
// return bit-identical results.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "gme/quantum.hpp"

namespace gme {

enum class Objective { mermin, svetlichny, chsh_pair };
const char* to_string(Objective o);

struct SearchConfig {
    int restarts = 64;
    int max_iterations = 2000;
    double shrink_tolerance = 1e-10;
    std::uint64_t seed = 42;

    /// Throws ParameterError on non-positive counts or tolerances.
    void validate() const;
};

struct SearchResult {
    double best_value = 0.0;
    MeasurementSettings best_settings;
    std::vector<double> trace;   // best value of each restart, in restart order
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
};

/// Minimises f from x0 with an axis-aligned initial simplex of size `step`.
/// Stops when the spread of simplex values falls below `tolerance` or after
/// `max_iterations`; a collapsed simplex is rebuilt around its best vertex
/// once before giving up.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> x0,
                             double step, int max_iterations, double tolerance);

/// Settings from 12 spherical angles ordered (party, input, {θ, φ}).
MeasurementSettings settings_from_angles(std::span<const double> angles);

/// Objective value via the explicit Born-rule behavior.
double evaluate_objective(const DensityMatrix& rho, Objective objective, const MeasurementSettings& s);

SearchResult maximize_witness(const DensityMatrix& rho, Objective objective, const SearchConfig& cfg = {});
SearchResult maximize_witness_serial(const DensityMatrix& rho, Objective objective, const SearchConfig& cfg = {});

/// target / max Mermin value of `pure`; the visibility at which v·pure + (1-v)·I/8
/// reaches `target`.
double threshold_visibility(const DensityMatrix& pure, double target, const SearchConfig& cfg = {});

/// Largest CHSH value b1(c1 + c0) + b0(c1 - c0) over two-qubit pure states and
/// the partner's two sharp observables, with b0, b1 fixed.
double chsh_max_given_pair(const BlochObservable& b0, const BlochObservable& b1, const SearchConfig& cfg = {});

}  // namespace gme
