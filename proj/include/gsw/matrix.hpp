#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "gsw/field.hpp"

namespace gsw {

namespace detail {
inline double conj_scalar(double x) { return x; }
inline cplx conj_scalar(const cplx& x) { return std::conj(x); }
inline double abs2(double x) { return x * x; }
inline double abs2(const cplx& x) { return std::norm(x); }
} // namespace detail

/// Minimal dense square matrix, row-major. Only what the unitary-transform
/// wrapper needs: matvec, adjoint matvec and a unitarity check.
template <typename T>
class Matrix {
  public:
    explicit Matrix(std::size_t n) : n_(n), a_(n * n, T{}) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    std::size_t size() const noexcept { return n_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    std::vector<T> times(const std::vector<T>& v) const {
        std::vector<T> out(n_, T{});
        for (std::size_t i = 0; i < n_; ++i) {
            T acc{};
            for (std::size_t k = 0; k < n_; ++k) acc += a_[i * n_ + k] * v[k];
            out[i] = acc;
        }
        return out;
    }

    std::vector<T> adjoint_times(const std::vector<T>& v) const {
        std::vector<T> out(n_, T{});
        for (std::size_t i = 0; i < n_; ++i) {
            T acc{};
            for (std::size_t k = 0; k < n_; ++k) acc += detail::conj_scalar(a_[k * n_ + i]) * v[k];
            out[i] = acc;
        }
        return out;
    }

    /// max_{ij} |(U^H U - I)_{ij}| <= tol
    bool is_unitary(double tol) const {
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                T acc{};
                for (std::size_t k = 0; k < n_; ++k) {
                    acc += detail::conj_scalar(a_[k * n_ + i]) * a_[k * n_ + j];
                }
                const double expect = (i == j) ? 1.0 : 0.0;
                if (std::sqrt(detail::abs2(acc - T{expect})) > tol) return false;
            }
        }
        return true;
    }

  private:
    std::size_t n_;
    std::vector<T> a_;
};

/// Unitary DFT matrix F_{jk} = exp(-2 pi i jk / n) / sqrt(n).
inline Matrix<cplx> dft_matrix(std::size_t n) {
    Matrix<cplx> m(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            const double ang = -2.0 * M_PI * static_cast<double>(j * k % n) / static_cast<double>(n);
            m(j, k) = scale * cplx{std::cos(ang), std::sin(ang)};
        }
    }
    return m;
}

} // namespace gsw
