#pragma once

// Dense two-phase primal simplex for
//     minimize c·x  subject to  A x = b,  x >= 0
// with Bland's rule for both entering and leaving variables. Templated on the
// scalar so the same code runs in double precision and in exact rationals.

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace gme::lp {

using Rational = boost::multiprecision::cpp_rational;

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static constexpr double pivot_tol = 1e-9;
    static double abs(double v) { return std::abs(v); }
    static double to_double(double v) { return v; }
};

template <>
struct ScalarTraits<Rational> {
    static inline const Rational pivot_tol{0};
    static Rational abs(const Rational& v) { return v < 0 ? Rational(-v) : v; }
    static double to_double(const Rational& v) { return v.template convert_to<double>(); }
};

enum class Status { optimal, infeasible, unbounded };

template <class T>
struct Result {
    Status status = Status::infeasible;
    std::vector<T> x;            // primal solution on the original columns
    T objective{};
    T phase1_objective{};        // sum of artificials at the end of phase 1
    std::size_t rows_dropped = 0;
    std::size_t pivots = 0;
};

/// Dense row-major constraint matrix.
template <class T>
struct Problem {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<T> a;   // rows × cols
    std::vector<T> b;   // rows
    std::vector<T> c;   // cols; empty means pure feasibility

    T& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const T& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

namespace detail {

template <class T>
bool is_zero(const T& v) {
    return ScalarTraits<T>::abs(v) <= ScalarTraits<T>::pivot_tol;
}

// Indices of a maximal set of rows of [A | b] that are linearly independent.
template <class T>
std::vector<std::size_t> independent_rows(const Problem<T>& p) {
    const std::size_t w = p.cols + 1;
    std::vector<std::vector<T>> basis;       // reduced rows
    std::vector<std::size_t> lead;           // leading column of each basis row
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < p.rows; ++i) {
        std::vector<T> r(w);
        for (std::size_t j = 0; j < p.cols; ++j) r[j] = p.at(i, j);
        r[p.cols] = p.b[i];
        for (std::size_t k = 0; k < basis.size(); ++k) {
            const T f = r[lead[k]];
            if (f == T(0)) continue;
            for (std::size_t j = 0; j < w; ++j) r[j] -= f * basis[k][j];
        }
        // largest remaining entry becomes the lead
        std::size_t best = w;
        T best_abs{0};
        for (std::size_t j = 0; j < w; ++j) {
            const T v = ScalarTraits<T>::abs(r[j]);
            if (v > best_abs) best_abs = v, best = j;
        }
        if (best == w || is_zero(best_abs)) continue;
        const T piv = r[best];
        for (auto& v : r) v /= piv;
        r[best] = T(1);
        basis.push_back(std::move(r));
        lead.push_back(best);
        keep.push_back(i);
    }
    return keep;
}

template <class T>
class Tableau {
public:
    Tableau(const Problem<T>& p, const std::vector<std::size_t>& rows)
        : m_(rows.size()), n_(p.cols), width_(p.cols + rows.size() + 1), t_(m_ * width_), basis_(m_) {
        for (std::size_t r = 0; r < m_; ++r) {
            const std::size_t i = rows[r];
            const bool flip = p.b[i] < T(0);
            for (std::size_t j = 0; j < n_; ++j) at(r, j) = flip ? T(-p.at(i, j)) : p.at(i, j);
            at(r, n_ + r) = T(1);
            rhs(r) = flip ? T(-p.b[i]) : p.b[i];
            basis_[r] = n_ + r;
        }
    }

    std::size_t rows() const { return m_; }
    // structural + artificial columns (fixed for the tableau's lifetime)
    std::size_t columns() const { return width_ - 1; }
    T& at(std::size_t r, std::size_t j) { return t_[r * width_ + j]; }
    T& rhs(std::size_t r) { return t_[r * width_ + width_ - 1]; }
    std::size_t basic(std::size_t r) const { return basis_[r]; }
    bool is_artificial(std::size_t j) const { return j >= n_; }

    // Reduced costs for objective coefficients `cost` (size n_ + m_).
    std::vector<T> reduced_costs(const std::vector<T>& cost) {
        std::vector<T> d(cost.begin(), cost.end());
        d.push_back(T(0));  // objective value slot (negated)
        for (std::size_t r = 0; r < m_; ++r) {
            const T cb = cost[basis_[r]];
            if (cb == T(0)) continue;
            for (std::size_t j = 0; j < width_; ++j) d[j] -= cb * at(r, j);
        }
        return d;
    }

    void pivot(std::size_t r, std::size_t col, std::vector<T>& d) {
        const T piv = at(r, col);
        for (std::size_t j = 0; j < width_; ++j) at(r, j) /= piv;
        at(r, col) = T(1);
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r) continue;
            const T f = at(i, col);
            if (f == T(0)) continue;
            for (std::size_t j = 0; j < width_; ++j) at(i, j) -= f * at(r, j);
            at(i, col) = T(0);
        }
        const T f = d[col];
        if (f != T(0)) {
            for (std::size_t j = 0; j < width_; ++j) d[j] -= f * at(r, j);
            d[col] = T(0);
        }
        basis_[r] = col;
    }

    // Runs Bland's-rule iterations; returns false when unbounded.
    bool optimize(std::vector<T>& d, bool allow_artificial, std::size_t& pivots) {
        constexpr std::size_t kMaxPivots = 200000;
        for (;;) {
            std::size_t enter = width_;
            for (std::size_t j = 0; j + 1 < width_; ++j) {
                if (!allow_artificial && is_artificial(j)) continue;
                if (d[j] < T(0) && !is_zero(d[j])) {
                    enter = j;
                    break;
                }
            }
            if (enter == width_) return true;

            std::size_t leave = m_;
            T best_ratio{};
            for (std::size_t r = 0; r < m_; ++r) {
                const T a = at(r, enter);
                if (!(a > T(0)) || is_zero(a)) continue;
                const T ratio = rhs(r) / a;
                if (leave == m_ || ratio < best_ratio || (ratio == best_ratio && basis_[r] < basis_[leave])) {
                    leave = r;
                    best_ratio = ratio;
                }
            }
            if (leave == m_) return false;
            pivot(leave, enter, d);
            if (++pivots > kMaxPivots) throw std::runtime_error("simplex: pivot limit exceeded");
        }
    }

    // Pivots basic artificials out where possible and drops rows where not.
    std::size_t drive_out_artificials(std::vector<T>& d) {
        std::size_t dropped = 0;
        for (std::size_t r = 0; r < m_;) {
            if (!is_artificial(basis_[r])) {
                ++r;
                continue;
            }
            std::size_t col = n_;
            for (std::size_t j = 0; j < n_; ++j)
                if (!is_zero(at(r, j))) {
                    col = j;
                    break;
                }
            if (col < n_) {
                pivot(r, col, d);
                ++r;
            } else {
                erase_row(r);
                ++dropped;
            }
        }
        return dropped;
    }

    std::vector<T> solution() {
        std::vector<T> x(n_);
        for (std::size_t r = 0; r < m_; ++r)
            if (!is_artificial(basis_[r])) x[basis_[r]] = rhs(r);
        return x;
    }

private:
    void erase_row(std::size_t r) {
        t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r * width_),
                 t_.begin() + static_cast<std::ptrdiff_t>((r + 1) * width_));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        --m_;
    }

    std::size_t m_, n_, width_;
    std::vector<T> t_;
    std::vector<std::size_t> basis_;
};

}  // namespace detail

template <class T>
Result<T> solve(const Problem<T>& p) {
    if (p.a.size() != p.rows * p.cols || p.b.size() != p.rows || (!p.c.empty() && p.c.size() != p.cols))
        throw std::invalid_argument("simplex: inconsistent problem dimensions");

    Result<T> res;
    const auto rows = detail::independent_rows(p);
    res.rows_dropped = p.rows - rows.size();
    detail::Tableau<T> tab(p, rows);

    // Phase 1: minimise the sum of artificials.
    std::vector<T> cost1(tab.columns(), T(0));
    for (std::size_t r = 0; r < tab.rows(); ++r) cost1[p.cols + r] = T(1);
    auto d = tab.reduced_costs(cost1);
    tab.optimize(d, true, res.pivots);
    res.phase1_objective = -d.back();
    if (!detail::is_zero(res.phase1_objective) &&
        ScalarTraits<T>::to_double(res.phase1_objective) > 0.0) {
        res.status = Status::infeasible;
        res.x = tab.solution();
        return res;
    }

    res.rows_dropped += tab.drive_out_artificials(d);

    // Phase 2 on the original objective; artificials may no longer enter.
    std::vector<T> cost2(tab.columns(), T(0));
    if (!p.c.empty())
        for (std::size_t j = 0; j < p.cols; ++j) cost2[j] = p.c[j];
    auto d2 = tab.reduced_costs(cost2);
    if (!tab.optimize(d2, false, res.pivots)) {
        res.status = Status::unbounded;
        res.x = tab.solution();
        return res;
    }
    res.status = Status::optimal;
    res.x = tab.solution();
    res.objective = -d2.back();
    return res;
}

}  // namespace gme::lp
