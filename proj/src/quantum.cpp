#include "gme/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gme/errors.hpp"

namespace gme {

namespace {

double norm3(const Vec3& n) { return std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]); }

}  // namespace

BlochObservable::BlochObservable(const Vec3& n) : n_(n) {
    const double len = norm3(n);
    if (!std::isfinite(len) || std::abs(len - 1.0) > kNormTol)
        throw InputError("Bloch vector must have unit norm (got " + std::to_string(len) + ")");
}

BlochObservable BlochObservable::renormalized(const Vec3& n, double max_norm_error) {
    const double len = norm3(n);
    if (!std::isfinite(len) || std::abs(len - 1.0) > max_norm_error)
        throw InputError("Bloch vector norm " + std::to_string(len) + " is too far from 1");
    return BlochObservable({n[0] / len, n[1] / len, n[2] / len});
}

BlochObservable BlochObservable::from_angles(double theta, double phi) {
    return renormalized({std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)});
}

ComplexMatrix BlochObservable::matrix() const {
    return ComplexMatrix{{n_[2], complex(n_[0], -n_[1])}, {complex(n_[0], n_[1]), -n_[2]}};
}

ComplexMatrix BlochObservable::projector(int outcome) const {
    const double s = outcome ? -0.5 : 0.5;
    return ComplexMatrix{{0.5 + s * n_[2], s * complex(n_[0], -n_[1])},
                         {s * complex(n_[0], n_[1]), 0.5 - s * n_[2]}};
}

MeasurementSettings MeasurementSettings::uniform(const BlochObservable& s0, const BlochObservable& s1) {
    MeasurementSettings m;
    for (auto& party : m.settings) party = {s0, s1};
    return m;
}

MeasurementSettings MeasurementSettings::relabeled() const {
    MeasurementSettings m = *this;
    for (auto& party : m.settings) std::swap(party[0], party[1]);
    return m;
}

DensityMatrix::DensityMatrix(ComplexMatrix m, std::string label) : m_(std::move(m)), label_(std::move(label)) {
    if (m_.hermiticity_error() > kHermitianTol) throw ParameterError("density matrix is not Hermitian");
    const complex t = trace(m_);
    if (std::abs(t - 1.0) > kTraceTol)
        throw ParameterError("density matrix trace is " + std::to_string(t.real()) + ", not 1");
    if (!is_psd(m_, kPsdTol)) throw ParameterError("density matrix is not positive semidefinite");
}

Party single_party(Bipartition b) { return static_cast<Party>(static_cast<int>(b)); }

const char* to_string(Bipartition b) {
    switch (b) {
        case Bipartition::A_BC: return "A|BC";
        case Bipartition::B_AC: return "B|AC";
        case Bipartition::C_AB: return "C|AB";
    }
    return "?";
}

DensityMatrix pure_state(std::span<const complex> amplitudes, std::string label) {
    double n2 = 0.0;
    for (auto a : amplitudes) n2 += std::norm(a);
    if (std::abs(n2 - 1.0) > 1e-10) throw ParameterError("state vector is not normalized");
    return DensityMatrix(ComplexMatrix::outer(amplitudes), std::move(label));
}

DensityMatrix w_state() {
    const double a = 1.0 / std::sqrt(3.0);
    const std::array<complex, 8> w{0, a, a, 0, a, 0, 0, 0};
    return pure_state(w, "W");
}

DensityMatrix noisy_w(double v) {
    if (!(v >= 0.0 && v <= 1.0)) throw ParameterError("noisy W visibility must lie in [0,1]");
    ComplexMatrix m = complex(v) * w_state().matrix();
    m += complex((1.0 - v) / 8.0) * ComplexMatrix::identity(8);
    return DensityMatrix(std::move(m), "noisy-W v=" + std::to_string(v) + " (noise I/8)");
}

DensityMatrix gghz_state(double theta) {
    if (!(theta > 0.0 && theta <= std::numbers::pi / 4 + 1e-15))
        throw ParameterError("GGHZ angle must lie in (0, pi/4]");
    std::array<complex, 8> g{};
    g[0] = std::cos(theta);
    g[7] = std::sin(theta);
    return pure_state(g, "GGHZ theta=" + std::to_string(theta));
}

DensityMatrix ghz_state() {
    auto g = gghz_state(std::numbers::pi / 4);
    return DensityMatrix(g.matrix(), "GHZ");
}

DensityMatrix bell_state(BellState kind) {
    const double r = 1.0 / std::sqrt(2.0);
    std::array<complex, 4> v{};
    switch (kind) {
        case BellState::PhiPlus: v = {r, 0, 0, r}; return pure_state(v, "phi+");
        case BellState::PhiMinus: v = {r, 0, 0, -r}; return pure_state(v, "phi-");
        case BellState::PsiPlus: v = {0, r, r, 0}; return pure_state(v, "psi+");
        case BellState::PsiMinus: v = {0, r, -r, 0}; return pure_state(v, "psi-");
    }
    throw ParameterError("unknown Bell state");
}

DensityMatrix mixture(std::span<const DensityMatrix> parts, std::span<const double> weights, std::string label) {
    if (parts.empty() || parts.size() != weights.size()) throw InputError("mixture: need one weight per state");
    ComplexMatrix m(parts.front().dim());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (weights[i] < 0.0) throw ParameterError("mixture: negative weight");
        m += complex(weights[i]) * parts[i].matrix();
    }
    return DensityMatrix(std::move(m), std::move(label));
}

ComplexMatrix reorder_to_abc(const ComplexMatrix& m, const std::array<Party, 3>& factor_party) {
    if (m.dim() != 8) throw InputError("reorder_to_abc: expected a three-qubit operator");
    // position of each party among the input factors
    std::array<int, 3> pos{};
    for (int k = 0; k < 3; ++k) pos[static_cast<int>(factor_party[k])] = k;
    auto source_index = [&](std::size_t abc) {
        const int bits[3] = {static_cast<int>(abc >> 2) & 1, static_cast<int>(abc >> 1) & 1,
                             static_cast<int>(abc) & 1};
        int out = 0;
        for (int party = 0; party < 3; ++party) out |= bits[party] << (2 - pos[party]);
        return static_cast<std::size_t>(out);
    };
    ComplexMatrix r(8);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) r(i, j) = m(source_index(i), source_index(j));
    return r;
}

DensityMatrix biseparable_state(Bipartition branch, std::span<const complex> single_party_vector,
                                const DensityMatrix& pair) {
    if (single_party_vector.size() != 2) throw InputError("biseparable_state: single-party vector must have 2 entries");
    if (pair.dim() != 4) throw InputError("biseparable_state: pair state must be two-qubit");
    const auto single = pure_state(single_party_vector, "single");
    const ComplexMatrix product = kron(single.matrix(), pair.matrix());
    std::array<Party, 3> order{};
    switch (branch) {
        case Bipartition::A_BC: order = {Party::A, Party::B, Party::C}; break;
        case Bipartition::B_AC: order = {Party::B, Party::A, Party::C}; break;
        case Bipartition::C_AB: order = {Party::C, Party::A, Party::B}; break;
    }
    return DensityMatrix(reorder_to_abc(product, order),
                         std::string("biseparable ") + to_string(branch) + " with " + pair.label());
}

ComplexMatrix reduced_single(const DensityMatrix& rho, Party keep) {
    if (rho.dim() != 8) throw InputError("reduced_single: expected a three-qubit state");
    const int shift = 2 - static_cast<int>(keep);
    ComplexMatrix r(2);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) {
            const std::size_t mask = ~(std::size_t{1} << shift) & 7;
            if ((i & mask) != (j & mask)) continue;
            r((i >> shift) & 1, (j >> shift) & 1) += rho.matrix()(i, j);
        }
    return r;
}

ComplexMatrix reduced_pair(const DensityMatrix& rho, Pair keep) {
    if (rho.dim() != 8) throw InputError("reduced_pair: expected a three-qubit state");
    int first = 0, second = 0, traced = 0;
    switch (keep) {
        case Pair::AB: first = 0, second = 1, traced = 2; break;
        case Pair::AC: first = 0, second = 2, traced = 1; break;
        case Pair::BC: first = 1, second = 2, traced = 0; break;
    }
    auto bit = [](std::size_t idx, int party) { return static_cast<std::size_t>((idx >> (2 - party)) & 1); };
    ComplexMatrix r(4);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) {
            if (bit(i, traced) != bit(j, traced)) continue;
            r(2 * bit(i, first) + bit(i, second), 2 * bit(j, first) + bit(j, second)) += rho.matrix()(i, j);
        }
    return r;
}

Behavior born_behavior(const DensityMatrix& rho, const MeasurementSettings& s) {
    if (rho.dim() != 8) throw InputError("born_behavior: expected a three-qubit state");
    std::array<double, Behavior::kSize> p{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) {
                        const ComplexMatrix ab =
                            kron(s.at(Party::A, x).projector(a), s.at(Party::B, y).projector(b));
                        for (int c = 0; c < 2; ++c) {
                            const double v =
                                trace_product(rho.matrix(), kron(ab, s.at(Party::C, z).projector(c))).real();
                            // clamp rounding-level negatives
                            p[Behavior::index(x, y, z, a, b, c)] = std::max(v, 0.0);
                        }
                    }
    return Behavior(p);
}

CorrelationTensor::CorrelationTensor(const DensityMatrix& rho) {
    if (rho.dim() != 8) throw InputError("CorrelationTensor: expected a three-qubit state");
    for (int i = 0; i < 4; ++i) {
        const ComplexMatrix si = pauli::by_index(i);
        for (int j = 0; j < 4; ++j) {
            const ComplexMatrix sij = kron(si, pauli::by_index(j));
            for (int k = 0; k < 4; ++k)
                t_[static_cast<std::size_t>(16 * i + 4 * j + k)] =
                    trace_product(rho.matrix(), kron(sij, pauli::by_index(k))).real();
        }
    }
}

double CorrelationTensor::correlator(const Vec3& a, const Vec3& b, const Vec3& c) const {
    double e = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double ab = a[i] * b[j];
            const double* row = &t_[static_cast<std::size_t>(16 * (i + 1) + 4 * (j + 1) + 1)];
            e += ab * (row[0] * c[0] + row[1] * c[1] + row[2] * c[2]);
        }
    return e;
}

double CorrelationTensor::pair_correlator(Pair pair, const Vec3& u, const Vec3& v) const {
    double e = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            switch (pair) {
                case Pair::AB: e += u[i] * v[j] * (*this)(i + 1, j + 1, 0); break;
                case Pair::AC: e += u[i] * v[j] * (*this)(i + 1, 0, j + 1); break;
                case Pair::BC: e += u[i] * v[j] * (*this)(0, i + 1, j + 1); break;
            }
        }
    return e;
}

Behavior CorrelationTensor::behavior(const MeasurementSettings& s) const {
    std::array<double, Behavior::kSize> p{};
    auto local = [](const BlochObservable& o, int outcome) {
        const double sg = outcome ? -1.0 : 1.0;
        const auto& n = o.direction();
        return std::array<double, 4>{1.0, sg * n[0], sg * n[1], sg * n[2]};
    };
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        for (int c = 0; c < 2; ++c) {
                            const auto u = local(s.at(Party::A, x), a);
                            const auto v = local(s.at(Party::B, y), b);
                            const auto w = local(s.at(Party::C, z), c);
                            double acc = 0.0;
                            for (int i = 0; i < 4; ++i)
                                for (int j = 0; j < 4; ++j)
                                    for (int k = 0; k < 4; ++k) acc += (*this)(i, j, k) * u[i] * v[j] * w[k];
                            p[Behavior::index(x, y, z, a, b, c)] = std::max(acc / 8.0, 0.0);
                        }
    return Behavior(p);
}

}  // namespace gme
