#ifndef FOCKINT_NUMERICS_HPP
#define FOCKINT_NUMERICS_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>

namespace fockint::numerics {

/// A real number carried as sign and natural log of magnitude, so that
/// products of factorials and powers spanning hundreds of orders of
/// magnitude never overflow. sign == 0 means exactly zero and the stored
/// log_magnitude is meaningless in that case.
struct SignedLogValue {
    int sign = 0;                 // -1, 0, +1
    double log_magnitude = 0.0;   // ln|x|, ignored when sign == 0

    static SignedLogValue zero() { return {}; }
    static SignedLogValue from_real(double x);
    double to_real() const;

    /// Multiply by another signed-log value (signs multiply, logs add).
    SignedLogValue operator*(const SignedLogValue& o) const {
        if (sign == 0 || o.sign == 0) return zero();
        return {sign * o.sign, log_magnitude + o.log_magnitude};
    }
    SignedLogValue negated() const { return {-sign, log_magnitude}; }
};

/// Neumaier (Kahan-Babuska) compensated accumulator. The running error
/// term keeps the first-order rounding proportional to the true sum
/// instead of the sum of magnitudes, which matters for the strongly
/// cancelling quadratures in this project.
template <typename T>
struct CompensatedSum {
    T sum{};
    T comp{};

    void add(T x) {
        T t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    T value() const { return sum + comp; }
};

/// ln(n!). Values for n <= 2000 come from an exact arbitrary-precision
/// integer factorial computed once and then logged; larger n use a
/// Stirling-series log-Gamma. Relative error <= 1e-14 up to n = 10^6.
/// Throws std::domain_error for negative n.
double log_factorial(std::int64_t n);

/// 1/n! as a SignedLogValue; exactly zero for negative n (the reciprocal
/// Gamma function has zeros at the non-positive-integer poles).
SignedLogValue inv_factorial_or_zero(std::int64_t n);

/// Sum of signed-log terms, returned as a plain double. All terms are
/// scaled by exp(-max log magnitude), accumulated with compensated
/// summation, then rescaled, so the sum neither overflows nor loses the
/// leading digits to naive cancellation. Deterministic for a fixed input
/// order. Empty input sums to 0.
double signed_log_sum(std::span<const SignedLogValue> terms);

/// (1/2pi) * integral of f over one period, by the equal-spaced trapezoid
/// rule with M = 2*degree_bound + 3 nodes. Exact (to rounding) whenever f
/// is a trigonometric polynomial of degree <= degree_bound, because the
/// periodic trapezoid rule integrates e^{ik phi} exactly for |k| < M.
/// Throws std::domain_error if degree_bound < 0.
std::complex<double> periodic_trapezoid(
    const std::function<std::complex<double>(double)>& f, int degree_bound);

/// Extended-precision variant used by the amplitude and probability
/// quadratures, where the integrand is evaluated in long double to keep
/// per-node noise below the cancellation level of ill-conditioned source
/// configurations such as (N, 0).
std::complex<long double> periodic_trapezoid_ext(
    const std::function<std::complex<long double>(long double)>& f, int degree_bound);

/// Number of trapezoid nodes used for a given degree bound.
inline int trapezoid_node_count(int degree_bound) { return 2 * degree_bound + 3; }

/// exp(i*theta) in long double, used by the quadrature integrands.
inline std::complex<long double> polar_unit(long double theta) {
    return {std::cos(theta), std::sin(theta)};
}

/// Integer power by binary exponentiation; exact operation count, no
/// dependence on the libm pow path.
template <typename C>
C pow_int(C base, int n) {
    C result{1};
    while (n > 0) {
        if (n & 1) result *= base;
        base *= base;
        n >>= 1;
    }
    return result;
}

}  // namespace fockint::numerics

#endif  // FOCKINT_NUMERICS_HPP
