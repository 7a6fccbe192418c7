#pragma once

// Dense complex linear algebra for the 2-, 4- and 8-dimensional Hilbert
// spaces of up to three qubits.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace gme {

using complex = std::complex<double>;

inline constexpr double kAlgebraicTol = 1e-12;
inline constexpr double kIterativeTol = 1e-9;

/// Square complex matrix stored row-major. Value type; operations return
/// fresh matrices.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);
    /// Rows given as nested lists; throws std::invalid_argument unless square.
    ComplexMatrix(std::initializer_list<std::initializer_list<complex>> rows);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const double> d);
    /// |v><v|
    static ComplexMatrix outer(std::span<const complex> v);

    std::size_t dim() const { return dim_; }
    complex& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
    const complex& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

    ComplexMatrix adjoint() const;
    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(complex s);

    /// max_ij |A_ij - conj(A_ji)|
    double hermiticity_error() const;
    bool is_hermitian(double tol = kAlgebraicTol) const { return hermiticity_error() <= tol; }

private:
    std::size_t dim_ = 0;
    std::vector<complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(complex s, ComplexMatrix a);
std::vector<complex> operator*(const ComplexMatrix& a, std::span<const complex> v);

/// Entrywise max |a - b|; dimensions must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
complex trace(const ComplexMatrix& a);
/// Tr(a * b) without forming the product.
complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

namespace pauli {
ComplexMatrix i2();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
/// index 0..3 -> I, X, Y, Z
ComplexMatrix by_index(int k);
}  // namespace pauli

struct EigenSystem {
    std::vector<double> values;   // ascending
    ComplexMatrix vectors;        // column k belongs to values[k]
};

/// Cyclic Jacobi sweep for Hermitian input. Throws std::invalid_argument when
/// the input is not Hermitian within `herm_tol`.
EigenSystem eigen_hermitian_system(const ComplexMatrix& a, double herm_tol = kIterativeTol);
std::vector<double> eigen_hermitian(const ComplexMatrix& a, double herm_tol = kIterativeTol);

/// Smallest eigenvalue >= -tol. Non-Hermitian input (beyond tol) throws.
bool is_psd(const ComplexMatrix& a, double tol = kIterativeTol);

}  // namespace gme
