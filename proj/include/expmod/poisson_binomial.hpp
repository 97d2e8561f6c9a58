#pragma once

// Distribution of the number of successes among independent, non-identical
// Bernoulli trials. Three routes are provided:
//
//   pb_pmf_enumeration  sums the product form over every subset of each size
//                       (O(T 2^T), the exhaustive definition);
//   pb_pmf_dp           convolves the [1-p, p] factors one at a time (O(T^2));
//   pb_pmf_dft          evaluates the closed form obtained from the discrete
//                       Fourier transform of the characteristic function:
//
//     Pr(X = k) = 1/(T+1) sum_{l=0}^{T} C^{-lk} prod_i (1 + (C^l - 1) p_i),
//     C = exp(2 pi i / (T+1)).
//
// All three accept any Eigen vector expression and return a column vector of
// the same scalar type.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "expmod/errors.hpp"
#include "expmod/network.hpp"

namespace expmod {

template <typename Scalar>
using PmfT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using Pmf = PmfT<double>;

/// Above this many terms the DFT products are accumulated as log-magnitude
/// and phase.
inline constexpr Eigen::Index kLogSpaceThreshold = 64;

/// Tolerances applied when turning the complex inverse transform into a PMF.
struct DftTolerance {
    double imaginary = 1e-9;      // max |Im| per entry
    double negative = 1e-12;      // entries in [-negative, 0) are clamped to 0
    double normalization = 1e-9;  // max |sum - 1| that is renormalised away
};

namespace detail {

template <typename Derived>
void require_probabilities(const Eigen::MatrixBase<Derived>& ps) {
    for (Eigen::Index i = 0; i < ps.size(); ++i) {
        const auto p = ps.coeff(i);
        if (!(p >= 0 && p <= 1))
            throw std::invalid_argument("Bernoulli probability " + std::to_string(i) +
                                        " outside [0, 1]");
    }
}

}  // namespace detail

template <typename Derived>
PmfT<typename Derived::Scalar> pb_pmf_enumeration(const Eigen::MatrixBase<Derived>& ps,
                                                  std::size_t cap = kDefaultEnumerationCap) {
    EIGEN_STATIC_ASSERT_VECTOR_ONLY(Derived)
    using Scalar = typename Derived::Scalar;
    detail::require_probabilities(ps);
    const auto terms = static_cast<std::size_t>(ps.size());
    if (terms > cap || terms > 62) throw CapacityError("subset enumeration", terms, cap);

    const typename Eigen::internal::eval<Derived>::type p = ps.derived();
    PmfT<Scalar> pmf = PmfT<Scalar>::Zero(ps.size() + 1);
    const std::uint64_t end = std::uint64_t{1} << terms;
    // One pass per subset size k, visiting the size-k subsets in
    // colexicographic order (Gosper's hack).
    for (std::size_t k = 0; k <= terms; ++k) {
        Scalar total = 0;
        std::uint64_t subset = (std::uint64_t{1} << k) - 1;
        while (subset < end) {
            Scalar prob = 1;
            for (std::size_t i = 0; i < terms; ++i) {
                const auto pi = p.coeff(static_cast<Eigen::Index>(i));
                prob *= (subset >> i & 1U) ? pi : Scalar(1) - pi;
            }
            total += prob;
            if (subset == 0) break;
            const std::uint64_t low = subset & (~subset + 1);
            const std::uint64_t ripple = subset + low;
            subset = (((ripple ^ subset) >> 2) / low) | ripple;
        }
        pmf[static_cast<Eigen::Index>(k)] = total;
    }
    return pmf;
}

template <typename Derived>
PmfT<typename Derived::Scalar> pb_pmf_dp(const Eigen::MatrixBase<Derived>& ps) {
    EIGEN_STATIC_ASSERT_VECTOR_ONLY(Derived)
    using Scalar = typename Derived::Scalar;
    detail::require_probabilities(ps);
    const Eigen::Index terms = ps.size();
    PmfT<Scalar> pmf = PmfT<Scalar>::Zero(terms + 1);
    pmf[0] = 1;
    for (Eigen::Index i = 0; i < terms; ++i) {
        const Scalar p = ps.coeff(i);
        const Scalar q = Scalar(1) - p;
        for (Eigen::Index j = i + 1; j > 0; --j) pmf[j] = pmf[j] * q + pmf[j - 1] * p;
        pmf[0] *= q;
    }
    return pmf;
}

template <typename Derived>
PmfT<typename Derived::Scalar> pb_pmf_dft(const Eigen::MatrixBase<Derived>& ps,
                                          const DftTolerance& tol = {}) {
    EIGEN_STATIC_ASSERT_VECTOR_ONLY(Derived)
    using Scalar = typename Derived::Scalar;
    using Complex = std::complex<Scalar>;
    detail::require_probabilities(ps);

    const Eigen::Index terms = ps.size();
    const Eigen::Index points = terms + 1;
    const Scalar step = Scalar(2) * std::numbers::pi_v<Scalar> / static_cast<Scalar>(points);

    if (terms == 0) return PmfT<Scalar>::Ones(1);
    // One buffer: roots of unity in the first half, spectrum in the second.
    std::vector<Complex> buffer(2 * static_cast<std::size_t>(points));
    Complex* twiddle = buffer.data();
    Complex* spectrum = buffer.data() + points;
    twiddle[0] = Complex(1);
    for (Eigen::Index j = 1; j <= points / 2; ++j) {
        twiddle[j] = std::polar(Scalar(1), step * static_cast<Scalar>(j));
        twiddle[points - j] = std::conj(twiddle[j]);
    }

    // Characteristic function sampled at the T+1 roots of unity. The p_i are
    // real, so the sample at T+1-l is the conjugate of the one at l.
    for (Eigen::Index l = 0; l <= points / 2; ++l) {
        const Complex shift = twiddle[l] - Scalar(1);
        if (terms <= kLogSpaceThreshold) {
            Complex prod(1);
            for (Eigen::Index i = 0; i < terms; ++i) prod *= Scalar(1) + shift * ps.coeff(i);
            spectrum[l] = prod;
        } else {
            Scalar log_magnitude = 0;
            Scalar phase = 0;
            for (Eigen::Index i = 0; i < terms; ++i) {
                const Complex factor = Scalar(1) + shift * ps.coeff(i);
                log_magnitude += Scalar(0.5) * std::log(std::norm(factor));
                phase += std::arg(factor);
            }
            spectrum[l] = std::polar(std::exp(log_magnitude), phase);
        }
        if (l > 0) spectrum[points - l] = std::conj(spectrum[l]);
    }

    PmfT<Scalar> pmf(points);
    Eigen::Index worst = 0;
    Scalar worst_imag = 0;
    const auto n = static_cast<std::uint64_t>(points);
    for (Eigen::Index k = 0; k < points; ++k) {
        Complex total(0);
        std::uint64_t idx = 0;  // l * k mod (T + 1)
        for (Eigen::Index l = 0; l < points; ++l) {
            total += std::conj(twiddle[idx]) * spectrum[l];
            idx += static_cast<std::uint64_t>(k);
            if (idx >= n) idx -= n;
        }
        total /= static_cast<Scalar>(points);
        if (std::abs(total.imag()) > worst_imag) {
            worst_imag = std::abs(total.imag());
            worst = k;
        }
        pmf[k] = total.real();
    }
    if (worst_imag > static_cast<Scalar>(tol.imaginary))
        throw NumericalInstabilityError("inverse DFT left an imaginary residual",
                                        static_cast<std::size_t>(worst),
                                        static_cast<double>(worst_imag));

    for (Eigen::Index k = 0; k < points; ++k) {
        if (pmf[k] < 0) {
            if (pmf[k] < -static_cast<Scalar>(tol.negative))
                throw NumericalInstabilityError("inverse DFT produced a negative probability",
                                                static_cast<std::size_t>(k),
                                                static_cast<double>(pmf[k]));
            pmf[k] = 0;
        }
    }
    const Scalar total = pmf.sum();
    if (std::abs(total - Scalar(1)) > static_cast<Scalar>(tol.normalization))
        throw NumericalInstabilityError("inverse DFT is not normalised", 0,
                                        static_cast<double>(total - Scalar(1)));
    pmf /= total;
    return pmf;
}

}  // namespace expmod
