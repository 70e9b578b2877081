// fmech — small dense linear algebra
// Square matrices of the configuration dimension m (a handful at most), with
// partially pivoted LU factorization, solves, and an infinity-norm condition
// estimate. Robustness over speed: m is tiny in every scenario.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include <fmech/errors.hpp>

namespace fmech {

/// Coordinate tuple of the configuration dimension m.
using Vec = std::vector<double>;

/// Euclidean inner product (sizes must agree).
inline double dot(const Vec &a, const Vec &b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

/// Dense row-major n×n matrix of doubles.
struct Mat {
    int n{0};
    std::vector<double> a; // row-major, n*n entries

    Mat() = default;
    explicit Mat(int size) : n(size), a(static_cast<std::size_t>(size) * size, 0.0) {}

    double &operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    double operator()(int i, int j) const {
        return a[static_cast<std::size_t>(i) * n + j];
    }

    /// Maximum absolute row sum.
    double norm_inf() const {
        double best = 0.0;
        for (int i = 0; i < n; ++i) {
            double row = 0.0;
            for (int j = 0; j < n; ++j)
                row += std::abs((*this)(i, j));
            best = std::max(best, row);
        }
        return best;
    }

    Mat transpose() const {
        Mat t(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }
};

/// LU factorization with partial (row) pivoting.
class Lu {
  public:
    /// Factor a copy of `m`. Throws singular_mass_matrix_error on an exactly
    /// zero pivot (condition reported as infinity).
    explicit Lu(const Mat &m) : n_(m.n), lu_(m), perm_(static_cast<std::size_t>(m.n)) {
        for (int i = 0; i < n_; ++i)
            perm_[static_cast<std::size_t>(i)] = i;
        for (int k = 0; k < n_; ++k) {
            int piv = k;
            double best = std::abs(lu_(k, k));
            for (int i = k + 1; i < n_; ++i) {
                const double cand = std::abs(lu_(i, k));
                if (cand > best) {
                    best = cand;
                    piv = i;
                }
            }
            if (best == 0.0)
                throw singular_mass_matrix_error(
                    std::numeric_limits<double>::infinity());
            if (piv != k) {
                for (int j = 0; j < n_; ++j)
                    std::swap(lu_(k, j), lu_(piv, j));
                std::swap(perm_[static_cast<std::size_t>(k)],
                          perm_[static_cast<std::size_t>(piv)]);
            }
            for (int i = k + 1; i < n_; ++i) {
                lu_(i, k) /= lu_(k, k);
                for (int j = k + 1; j < n_; ++j)
                    lu_(i, j) -= lu_(i, k) * lu_(k, j);
            }
        }
    }

    /// Solve A x = b.
    std::vector<double> solve(const std::vector<double> &b) const {
        std::vector<double> x(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i)
            x[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(perm_[i])];
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < i; ++j)
                x[static_cast<std::size_t>(i)] -=
                    lu_(i, j) * x[static_cast<std::size_t>(j)];
        for (int i = n_ - 1; i >= 0; --i) {
            for (int j = i + 1; j < n_; ++j)
                x[static_cast<std::size_t>(i)] -=
                    lu_(i, j) * x[static_cast<std::size_t>(j)];
            x[static_cast<std::size_t>(i)] /= lu_(i, i);
        }
        return x;
    }

    /// Explicit inverse (n solves against unit vectors).
    Mat inverse() const {
        Mat inv(n_);
        std::vector<double> e(static_cast<std::size_t>(n_), 0.0);
        for (int j = 0; j < n_; ++j) {
            e[static_cast<std::size_t>(j)] = 1.0;
            const std::vector<double> col = solve(e);
            e[static_cast<std::size_t>(j)] = 0.0;
            for (int i = 0; i < n_; ++i)
                inv(i, j) = col[static_cast<std::size_t>(i)];
        }
        return inv;
    }

  private:
    int n_;
    Mat lu_;
    std::vector<int> perm_;
};

/// Infinity-norm condition estimate ‖A‖∞·‖A⁻¹‖∞ (exact inverse; m is tiny).
/// Returns +inf when the factorization hits a zero pivot.
inline double condition_inf(const Mat &m) {
    try {
        const Lu lu(m);
        return m.norm_inf() * lu.inverse().norm_inf();
    } catch (const singular_mass_matrix_error &) {
        return std::numeric_limits<double>::infinity();
    }
}

/// Solve A x = b once (factor and discard).
inline std::vector<double> solve(const Mat &a, const std::vector<double> &b) {
    return Lu(a).solve(b);
}

} // namespace fmech
