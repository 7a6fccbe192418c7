#pragma once

// Three-qubit states, sharp qubit observables and Born-rule behaviors.
// Tensor factors are always ordered A⊗B⊗C; basis index = 4a + 2b + c.

#include <array>
#include <span>
#include <string>
#include <vector>

#include "gme/behavior.hpp"
#include "gme/linalg.hpp"

namespace gme {

using Vec3 = std::array<double, 3>;

/// Sharp dichotomic observable n·σ with a unit Bloch vector.
class BlochObservable {
public:
    static constexpr double kNormTol = 1e-9;

    /// Default: σz.
    BlochObservable() = default;
    /// Throws InputError unless |‖n‖ - 1| <= kNormTol.
    explicit BlochObservable(const Vec3& n);
    /// Rescales n to unit length; throws InputError when |‖n‖ - 1| > max_norm_error.
    static BlochObservable renormalized(const Vec3& n, double max_norm_error = 1e-4);
    static BlochObservable from_angles(double theta, double phi);

    const Vec3& direction() const { return n_; }
    ComplexMatrix matrix() const;
    /// (I + (-1)^outcome n·σ)/2
    ComplexMatrix projector(int outcome) const;

    friend bool operator==(const BlochObservable&, const BlochObservable&) = default;

private:
    Vec3 n_{0.0, 0.0, 1.0};
};

/// Two settings per party; settings[party][input].
struct MeasurementSettings {
    std::array<std::array<BlochObservable, 2>, 3> settings{};

    const BlochObservable& at(Party p, int input) const { return settings[static_cast<int>(p)][input]; }
    BlochObservable& at(Party p, int input) { return settings[static_cast<int>(p)][input]; }

    static MeasurementSettings uniform(const BlochObservable& s0, const BlochObservable& s1);
    /// Swap inputs 0 and 1 for every party.
    MeasurementSettings relabeled() const;

    friend bool operator==(const MeasurementSettings&, const MeasurementSettings&) = default;
};

class DensityMatrix {
public:
    static constexpr double kHermitianTol = 1e-10;
    static constexpr double kTraceTol = 1e-10;
    static constexpr double kPsdTol = 1e-9;

    /// Validates Hermiticity, unit trace and positivity; throws ParameterError.
    DensityMatrix(ComplexMatrix m, std::string label);

    const ComplexMatrix& matrix() const { return m_; }
    std::size_t dim() const { return m_.dim(); }
    const std::string& label() const { return label_; }

private:
    ComplexMatrix m_;
    std::string label_;
};

enum class Bipartition { A_BC = 0, B_AC = 1, C_AB = 2 };

Party single_party(Bipartition b);
const char* to_string(Bipartition b);

DensityMatrix w_state();
/// v|W><W| + (1-v) I/8
DensityMatrix noisy_w(double v);
/// cosθ|000> + sinθ|111>, 0 < θ <= π/4
DensityMatrix gghz_state(double theta);
DensityMatrix ghz_state();

enum class BellState { PhiPlus, PhiMinus, PsiPlus, PsiMinus };
DensityMatrix bell_state(BellState kind);

DensityMatrix pure_state(std::span<const complex> amplitudes, std::string label);
DensityMatrix mixture(std::span<const DensityMatrix> parts, std::span<const double> weights,
                      std::string label);

/// |psi><psi| on the single party of `branch` tensored with `pair` on the
/// other two, reordered to A⊗B⊗C.
DensityMatrix biseparable_state(Bipartition branch, std::span<const complex> single_party_vector,
                                const DensityMatrix& pair);

/// Reorders a three-qubit operator whose tensor factors belong to
/// factor_party[0]⊗factor_party[1]⊗factor_party[2] into A⊗B⊗C.
ComplexMatrix reorder_to_abc(const ComplexMatrix& m, const std::array<Party, 3>& factor_party);

ComplexMatrix reduced_single(const DensityMatrix& rho, Party keep);
/// Two-qubit reduced state in the pair's own order (AB, AC or BC).
ComplexMatrix reduced_pair(const DensityMatrix& rho, Pair keep);

/// P(abc|xyz) = Tr[ρ Π^x_a⊗Π^y_b⊗Π^z_c], evaluated with explicit tensor products.
Behavior born_behavior(const DensityMatrix& rho, const MeasurementSettings& s);

/// Tr[ρ σ_i⊗σ_j⊗σ_k] for i,j,k ∈ {I,X,Y,Z}; the expansion the optimizer
/// evaluates in its inner loop.
class CorrelationTensor {
public:
    explicit CorrelationTensor(const DensityMatrix& rho);

    double operator()(int i, int j, int k) const { return t_[static_cast<std::size_t>(16 * i + 4 * j + k)]; }

    /// Full correlator ⟨a·σ ⊗ b·σ ⊗ c·σ⟩.
    double correlator(const Vec3& a, const Vec3& b, const Vec3& c) const;
    /// Two-body correlator for a pair with the third party traced out.
    double pair_correlator(Pair pair, const Vec3& u, const Vec3& v) const;
    /// The same behavior as born_behavior, built from the expansion.
    Behavior behavior(const MeasurementSettings& s) const;

private:
    std::array<double, 64> t_{};
};

}  // namespace gme
