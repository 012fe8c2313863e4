#include "fockint/numerics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace fockint::numerics {

SignedLogValue SignedLogValue::from_real(double x) {
    if (x == 0.0) return zero();
    return {x > 0.0 ? 1 : -1, std::log(std::abs(x))};
}

double SignedLogValue::to_real() const {
    if (sign == 0) return 0.0;
    return static_cast<double>(sign) * std::exp(log_magnitude);
}

namespace {

constexpr int kExactFactorialLimit = 2000;

// Little-endian base-2^32 unsigned integer, just enough for n! tables.
class BigUint {
public:
    BigUint() : limbs_{1} {}

    void multiply(std::uint32_t m) {
        std::uint64_t carry = 0;
        for (auto& limb : limbs_) {
            std::uint64_t prod = static_cast<std::uint64_t>(limb) * m + carry;
            limb = static_cast<std::uint32_t>(prod);
            carry = prod >> 32;
        }
        while (carry) {
            limbs_.push_back(static_cast<std::uint32_t>(carry));
            carry >>= 32;
        }
    }

    // Natural log via the top ~96 bits plus a power-of-two exponent.
    double log() const {
        const std::size_t top = limbs_.size() - 1;
        long double mantissa = 0.0L;
        int taken = 0;
        for (std::size_t i = top + 1; i-- > 0 && taken < 3; ++taken) {
            mantissa = mantissa * 4294967296.0L + static_cast<long double>(limbs_[i]);
        }
        const long double dropped_bits =
            32.0L * static_cast<long double>(limbs_.size() - static_cast<std::size_t>(taken));
        constexpr long double kLn2 = 0.6931471805599453094172321214581766L;
        return static_cast<double>(std::log(mantissa) + dropped_bits * kLn2);
    }

private:
    std::vector<std::uint32_t> limbs_;
};

const std::vector<double>& exact_log_factorial_table() {
    static const std::vector<double> table = [] {
        std::vector<double> t(kExactFactorialLimit + 1);
        BigUint acc;
        t[0] = 0.0;
        for (int n = 1; n <= kExactFactorialLimit; ++n) {
            acc.multiply(static_cast<std::uint32_t>(n));
            t[n] = acc.log();
        }
        return t;
    }();
    return table;
}

// Stirling series for ln Gamma(x), accurate to ~1e-30 for x > 2000.
double stirling_log_gamma(long double x) {
    constexpr long double kHalfLn2Pi = 0.9189385332046727417803297364056176L;
    const long double inv = 1.0L / x;
    const long double inv2 = inv * inv;
    long double series = inv / 12.0L;
    series -= inv * inv2 / 360.0L;
    series += inv * inv2 * inv2 / 1260.0L;
    series -= inv * inv2 * inv2 * inv2 / 1680.0L;
    return static_cast<double>((x - 0.5L) * std::log(x) - x + kHalfLn2Pi + series);
}

}  // namespace

double log_factorial(std::int64_t n) {
    if (n < 0) throw std::domain_error("log_factorial: negative argument");
    if (n <= kExactFactorialLimit) return exact_log_factorial_table()[static_cast<std::size_t>(n)];
    return stirling_log_gamma(static_cast<long double>(n) + 1.0L);
}

SignedLogValue inv_factorial_or_zero(std::int64_t n) {
    if (n < 0) return SignedLogValue::zero();
    return {1, -log_factorial(n)};
}

double signed_log_sum(std::span<const SignedLogValue> terms) {
    double max_log = -std::numeric_limits<double>::infinity();
    for (const auto& t : terms) {
        if (t.sign != 0 && t.log_magnitude > max_log) max_log = t.log_magnitude;
    }
    if (!std::isfinite(max_log)) return 0.0;  // empty or all-zero

    CompensatedSum<long double> acc;
    for (const auto& t : terms) {
        if (t.sign == 0) continue;
        const long double scaled =
            static_cast<long double>(t.sign) *
            std::exp(static_cast<long double>(t.log_magnitude) - static_cast<long double>(max_log));
        acc.add(scaled);
    }
    return static_cast<double>(acc.value() * std::exp(static_cast<long double>(max_log)));
}

namespace {

template <typename Real, typename F>
std::complex<Real> trapezoid_kernel(const F& f, int degree_bound) {
    if (degree_bound < 0) throw std::domain_error("periodic_trapezoid: negative degree bound");
    const int m = trapezoid_node_count(degree_bound);
    constexpr Real kPi = static_cast<Real>(3.14159265358979323846264338327950288L);
    CompensatedSum<Real> re;
    CompensatedSum<Real> im;
    for (int j = 0; j < m; ++j) {
        const Real phi = -kPi + (Real{2} * kPi * static_cast<Real>(j)) / static_cast<Real>(m);
        const std::complex<Real> v = f(phi);
        re.add(v.real());
        im.add(v.imag());
    }
    return {re.value() / static_cast<Real>(m), im.value() / static_cast<Real>(m)};
}

}  // namespace

std::complex<double> periodic_trapezoid(
    const std::function<std::complex<double>(double)>& f, int degree_bound) {
    // Accumulate in long double; node values stay double per the contract.
    const auto wide = trapezoid_kernel<long double>(
        [&f](long double phi) -> std::complex<long double> {
            const std::complex<double> v = f(static_cast<double>(phi));
            return {v.real(), v.imag()};
        },
        degree_bound);
    return {static_cast<double>(wide.real()), static_cast<double>(wide.imag())};
}

std::complex<long double> periodic_trapezoid_ext(
    const std::function<std::complex<long double>(long double)>& f, int degree_bound) {
    return trapezoid_kernel<long double>(f, degree_bound);
}

}  // namespace fockint::numerics
