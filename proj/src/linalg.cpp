#include "gme/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gme {

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
    if (dim == 0) throw std::invalid_argument("ComplexMatrix: dimension must be positive");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<complex>> rows)
    : ComplexMatrix(rows.size()) {
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != dim_) throw std::invalid_argument("ComplexMatrix: rows must form a square array");
        std::copy(row.begin(), row.end(), data_.begin() + static_cast<std::ptrdiff_t>(i * dim_));
        ++i;
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d) {
    ComplexMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const complex> v) {
    ComplexMatrix m(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (o.dim_ != dim_) throw std::invalid_argument("ComplexMatrix: dimension mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (o.dim_ != dim_) throw std::invalid_argument("ComplexMatrix: dimension mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(complex s) {
    for (auto& e : data_) e *= s;
    return *this;
}

double ComplexMatrix::hermiticity_error() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i; j < dim_; ++j)
            worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(complex s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("ComplexMatrix: dimension mismatch");
    const std::size_t n = a.dim();
    ComplexMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const complex aik = a(i, k);
            if (aik == complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

std::vector<complex> operator*(const ComplexMatrix& a, std::span<const complex> v) {
    if (a.dim() != v.size()) throw std::invalid_argument("ComplexMatrix: dimension mismatch");
    std::vector<complex> r(v.size());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) r[i] += a(i, j) * v[j];
    return r;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
    return worst;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t na = a.dim(), nb = b.dim();
    ComplexMatrix r(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j)
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l) r(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
    return r;
}

complex trace(const ComplexMatrix& a) {
    complex t{};
    for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
    return t;
}

complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("trace_product: dimension mismatch");
    complex t{};
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t k = 0; k < a.dim(); ++k) t += a(i, k) * b(k, i);
    return t;
}

namespace pauli {
ComplexMatrix i2() { return ComplexMatrix::identity(2); }
ComplexMatrix x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix y() { return {{0.0, complex(0, -1)}, {complex(0, 1), 0.0}}; }
ComplexMatrix z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
ComplexMatrix by_index(int k) {
    switch (k) {
        case 0: return i2();
        case 1: return x();
        case 2: return y();
        case 3: return z();
        default: throw std::invalid_argument("pauli::by_index: index must be 0..3");
    }
}
}  // namespace pauli

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Zeroes a(p,q) by a phase on column q followed by a real plane rotation.
// a <- G^dagger a G, v <- v G with
//   G_pp = c, G_pq = s, G_qp = -s e^{-i phi}, G_qq = c e^{-i phi}.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const complex apq = a(p, q);
    const double r = std::abs(apq);
    if (r == 0.0) return;
    const complex phase = std::conj(apq) / r;  // e^{-i phi}
    const double app = a(p, p).real(), aqq = a(q, q).real();
    const double theta = (aqq - app) / (2.0 * r);
    const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const complex gpp = c, gpq = s, gqp = -s * phase, gqq = c * phase;
    const std::size_t n = a.dim();
    // columns: a <- a G
    for (std::size_t k = 0; k < n; ++k) {
        const complex akp = a(k, p), akq = a(k, q);
        a(k, p) = akp * gpp + akq * gqp;
        a(k, q) = akp * gpq + akq * gqq;
        const complex vkp = v(k, p), vkq = v(k, q);
        v(k, p) = vkp * gpp + vkq * gqp;
        v(k, q) = vkp * gpq + vkq * gqq;
    }
    // rows: a <- G^dagger a
    for (std::size_t k = 0; k < n; ++k) {
        const complex apk = a(p, k), aqk = a(q, k);
        a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
        a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
}

}  // namespace

EigenSystem eigen_hermitian_system(const ComplexMatrix& input, double herm_tol) {
    if (!input.is_hermitian(herm_tol))
        throw std::invalid_argument("eigen_hermitian: matrix is not Hermitian");
    // Symmetrize so rounding-level asymmetry does not leak into the sweep.
    ComplexMatrix a = 0.5 * (input + input.adjoint());
    const std::size_t n = a.dim();
    ComplexMatrix v = ComplexMatrix::identity(n);

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
    const double stop = 1e-15 * std::max(scale, 1.0);

    for (int sweep = 0; sweep < 100 && off_diagonal_norm(a) > stop; ++sweep)
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenSystem es{std::vector<double>(n), ComplexMatrix(n)};
    for (std::size_t k = 0; k < n; ++k) {
        es.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) es.vectors(i, k) = v(i, order[k]);
    }
    return es;
}

std::vector<double> eigen_hermitian(const ComplexMatrix& a, double herm_tol) {
    return eigen_hermitian_system(a, herm_tol).values;
}

bool is_psd(const ComplexMatrix& a, double tol) {
    if (!a.is_hermitian(tol)) throw std::invalid_argument("is_psd: matrix is not Hermitian");
    return eigen_hermitian(a, tol).front() >= -tol;
}

}  // namespace gme
