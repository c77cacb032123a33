#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "bullwhip/error.hpp"

namespace bullwhip {

/// Dense square matrix, row-major. Sized for product panels (N in the tens).
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}
    Matrix(std::initializer_list<std::initializer_list<double>> rows) : n_(rows.size()) {
        data_.reserve(n_ * n_);
        for (const auto& row : rows) {
            if (row.size() != n_) throw Error(ErrorCode::length_mismatch, "matrix rows must be square");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    [[nodiscard]] static Matrix diagonal(const std::vector<double>& d) {
        Matrix m(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    [[nodiscard]] double trace() const noexcept {
        double t = 0.0;
        for (std::size_t i = 0; i < n_; ++i) t += data_[i * n_ + i];
        return t;
    }

    /// 1ᵀ A 1, the sum of every entry.
    [[nodiscard]] double total_sum() const noexcept {
        double s = 0.0;
        for (double v : data_) s += v;
        return s;
    }

    [[nodiscard]] double max_abs() const noexcept {
        double m = 0.0;
        for (double v : data_) m = std::max(m, std::abs(v));
        return m;
    }

    [[nodiscard]] std::vector<double> diagonal_values() const {
        std::vector<double> d(n_);
        for (std::size_t i = 0; i < n_; ++i) d[i] = (*this)(i, i);
        return d;
    }

    [[nodiscard]] bool is_symmetric(double rel = 1e-12) const noexcept {
        const double tol = rel * max_abs();
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
        return true;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

struct JacobiOptions {
    double rel_tol = 1e-12;  // stop when off-diagonal Frobenius norm <= rel_tol * initial Frobenius norm
    int max_sweeps = 100;
};

/**
 * Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
 *
 * Each sweep visits every (p, q) pair above the diagonal and zeroes A(p,q)
 * with a plane rotation (Rutishauser's formulation, which keeps the update
 * numerically stable for small off-diagonal entries).
 */
[[nodiscard]] inline std::vector<double> symmetric_eigenvalues(const Matrix& input,
                                                               const JacobiOptions& opts = {}) {
    if (!input.is_symmetric())
        throw Error(ErrorCode::not_symmetric, "matrix is not symmetric to 1e-12 of its largest entry");

    const std::size_t n = input.size();
    Matrix a = input;
    // Average the two triangles so round-off asymmetry does not bias the rotations.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (a(i, j) + a(j, i));

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
        return std::sqrt(s);
    };
    double frob = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) frob += a(i, j) * a(i, j);
    frob = std::sqrt(frob);
    const double target = opts.rel_tol * frob;

    int sweep = 0;
    while (off_norm() > target) {
        if (sweep++ >= opts.max_sweeps)
            throw Error(ErrorCode::convergence_failure,
                        "Jacobi iteration did not converge in " + std::to_string(opts.max_sweeps) + " sweeps");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = a(r, p);
                    const double arq = a(r, q);
                    a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
                    a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
                }
            }
        }
    }

    std::vector<double> ev = a.diagonal_values();
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace bullwhip
