#include "fockint/ghom.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fockint/numerics.hpp"
#include "fockint/parallel.hpp"

namespace fockint::ghom {

namespace num = fockint::numerics;
using cld = std::complex<long double>;

ParityValue::ParityValue(double v) : value(v) {
    if (!(std::abs(v) <= 1.0 + 1e-12))
        throw std::runtime_error("ParityValue: |value| exceeds 1 beyond rounding slack: " +
                                 std::to_string(v));
}

namespace {

void require_counts_match(const FockPair& src, int m1, int m2) {
    if (m1 < 0 || m2 < 0 || m1 + m2 != src.total())
        throw std::domain_error("amplitude: detector counts must sum to the source total");
}

// sqrt(T) e^{i phi} + i sqrt(R) and i sqrt(R) e^{i phi} + sqrt(T), the two
// detector factors of the single-angle amplitude integrand.
struct SplitterFactors {
    long double rt, rr;
    explicit SplitterFactors(const Splitter& s)
        : rt(std::sqrt(static_cast<long double>(s.transmittivity()))),
          rr(std::sqrt(static_cast<long double>(s.reflectivity()))) {}
    cld a(const cld& e) const { return cld{rt * e.real(), rt * e.imag() + rr}; }
    cld b(const cld& e) const { return cld{rt - rr * e.imag(), rr * e.real()}; }
};

std::complex<double> amplitude_phase_integral(const FockPair& src, const Splitter& s,
                                              int m1, int m2) {
    const int n = m1 + m2;
    const SplitterFactors fac(s);
    const auto integral = num::periodic_trapezoid_ext(
        [&](long double phi) {
            const cld e = num::polar_unit(phi);
            const cld rotation = num::polar_unit(-static_cast<long double>(src.n_alpha) * phi);
            return num::pow_int(fac.a(e), m1) * num::pow_int(fac.b(e), m2) * rotation;
        },
        n);
    const long double pref = std::exp(
        0.5L * (num::log_factorial(src.n_alpha) + num::log_factorial(src.n_beta) -
                num::log_factorial(m1) - num::log_factorial(m2)));
    return {static_cast<double>(pref * integral.real()),
            static_cast<double>(pref * integral.imag())};
}

std::complex<double> amplitude_combinatorial(const FockPair& src, const Splitter& s,
                                             int m1, int m2) {
    const int na = src.n_alpha;
    const double t = s.transmittivity();
    const double r = s.reflectivity();
    const double half_log_factorials =
        0.5 * (num::log_factorial(na) + num::log_factorial(src.n_beta) +
               num::log_factorial(m1) + num::log_factorial(m2));

    std::vector<num::SignedLogValue> terms;
    const int p_lo = std::max(0, na - m2);
    const int p_hi = std::min(m1, na);
    for (int p = p_lo; p <= p_hi; ++p) {
        const int q = na - p;
        const int et = 2 * p + m2 - na;  // power of sqrt(T)
        const int er = na + m1 - 2 * p;  // power of sqrt(R)
        if (t == 0.0 && et != 0) continue;
        if (r == 0.0 && er != 0) continue;
        double log_mag = half_log_factorials - num::log_factorial(p) -
                         num::log_factorial(m1 - p) - num::log_factorial(q) -
                         num::log_factorial(m2 - q);
        if (et != 0) log_mag += 0.5 * et * std::log(t);
        if (er != 0) log_mag += 0.5 * er * std::log(r);
        terms.push_back({(p % 2 == 0) ? 1 : -1, log_mag});
    }
    const double magnitude = num::signed_log_sum(terms);
    // i^(na + m1 - 2p) factored as i^(na + m1) * (-1)^p; the (-1)^p lives in
    // the term signs above.
    static constexpr std::complex<double> kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return kIPow[(na + m1) % 4] * magnitude;
}

double clamp_probability(double p) {
    if (p >= 0.0) return p;
    if (p >= -1e-14) return 0.0;
    throw std::runtime_error("probability fell below the rounding floor: " + std::to_string(p));
}

}  // namespace

std::complex<double> amplitude(const FockPair& src, const Splitter& s, int m1, int m2,
                               AmplitudeForm form) {
    require_counts_match(src, m1, m2);
    return form == AmplitudeForm::kPhaseIntegral ? amplitude_phase_integral(src, s, m1, m2)
                                                 : amplitude_combinatorial(src, s, m1, m2);
}

std::complex<double> amplitude(const FockPair& src, const Splitter& s,
                               const OutcomeCounts& out, AmplitudeForm form) {
    if (out.counts.size() != 2)
        throw std::domain_error("amplitude: expected a 2-detector outcome");
    return amplitude(src, s, out.counts[0], out.counts[1], form);
}

OutcomeDistribution outcome_distribution(const FockPair& src, const Splitter& s) {
    const int n = src.total();
    const int m_nodes = num::trapezoid_node_count(n);
    const SplitterFactors fac(s);

    // One pass over the quadrature nodes accumulates every amplitude
    // integral at once; the power tables make the pass O(N) per node.
    std::vector<num::CompensatedSum<long double>> re(n + 1), im(n + 1);
    std::vector<cld> apow(n + 1), bpow(n + 1);
    constexpr long double kPi = 3.14159265358979323846264338327950288L;
    for (int j = 0; j < m_nodes; ++j) {
        const long double phi = -kPi + (2.0L * kPi * j) / m_nodes;
        const cld e = num::polar_unit(phi);
        const cld a = fac.a(e);
        const cld b = fac.b(e);
        apow[0] = bpow[0] = cld{1.0L, 0.0L};
        for (int k = 1; k <= n; ++k) {
            apow[k] = apow[k - 1] * a;
            bpow[k] = bpow[k - 1] * b;
        }
        const cld rotation = num::polar_unit(-static_cast<long double>(src.n_alpha) * phi);
        for (int m1 = 0; m1 <= n; ++m1) {
            const cld v = apow[m1] * bpow[n - m1] * rotation;
            re[m1].add(v.real());
            im[m1].add(v.imag());
        }
    }

    OutcomeDistribution dist;
    const double lf_sources =
        num::log_factorial(src.n_alpha) + num::log_factorial(src.n_beta);
    for (int m1 = 0; m1 <= n; ++m1) {
        const cld integral{re[m1].value() / m_nodes, im[m1].value() / m_nodes};
        const long double weight = std::exp(static_cast<long double>(
            lf_sources - num::log_factorial(m1) - num::log_factorial(n - m1)));
        const double p = static_cast<double>(weight * std::norm(integral));
        dist.entries.emplace(OutcomeCounts{{m1, n - m1}}, clamp_probability(p));
    }
    return dist;
}

double probability_integral_form(const FockPair& src, const Splitter& s, int m1, int m2) {
    require_counts_match(src, m1, m2);
    const int n = m1 + m2;
    const int delta = src.n_alpha - src.n_beta;
    const long double t = s.transmittivity();
    const long double r = s.reflectivity();
    const long double mix = 2.0L * std::sqrt(t * r);

    const auto integral = num::periodic_trapezoid_ext(
        [&](long double big) {
            const cld e_big = num::polar_unit(big);
            const cld e_big_conj = std::conj(e_big);
            const auto inner = num::periodic_trapezoid_ext(
                [&](long double lam) {
                    const long double c = mix * std::cos(lam);
                    const cld br1 = t * e_big + r * e_big_conj - c;
                    const cld br2 = r * e_big + t * e_big_conj + c;
                    return num::pow_int(br1, m1) * num::pow_int(br2, m2);
                },
                n);
            return inner * num::polar_unit(-static_cast<long double>(delta) * big);
        },
        n + std::abs(delta));

    const long double weight = std::exp(static_cast<long double>(
        num::log_factorial(src.n_alpha) + num::log_factorial(src.n_beta) -
        num::log_factorial(m1) - num::log_factorial(m2)));
    return clamp_probability(static_cast<double>(weight * integral.real()));
}

ParityValue parity_average(const FockPair& src, const Splitter& s) {
    const int na = src.n_alpha;
    const int nb = src.n_beta;
    const int n = na + nb;
    const double t = s.transmittivity();
    const double r = s.reflectivity();
    const double asym = r - t;
    const double tr = t * r;
    const double base_log = n * std::log(2.0) + num::log_factorial(na) + num::log_factorial(nb);

    std::vector<num::SignedLogValue> terms;
    for (int p = 0; p <= n; ++p) {
        if ((n - p) % 2 != 0) continue;           // y(N - p) parity guard
        if ((na - nb + p) % 2 != 0) continue;     // y(N_alpha - N_beta + p) guard
        const int ia = (na - nb + p) / 2;
        const int ib = (p - na + nb) / 2;
        if (ia < 0 || ib < 0) continue;           // reciprocal factorial pole -> exact zero
        if (asym == 0.0 && p > 0) continue;
        if (tr == 0.0 && p < n) continue;
        double log_mag = base_log - p * std::log(2.0) -
                         2.0 * num::log_factorial((n - p) / 2) -
                         num::log_factorial(ia) - num::log_factorial(ib);
        if (p > 0) log_mag += p * std::log(std::abs(asym));
        if (p < n) log_mag += 0.5 * (n - p) * std::log(tr);
        int sign = (ib % 2 == 0) ? 1 : -1;
        if (asym < 0.0 && p % 2 != 0) sign = -sign;
        terms.push_back({sign, log_mag});
    }
    return ParityValue(num::signed_log_sum(terms));
}

ParityValue parity_from_distribution(const FockPair& src, const Splitter& s) {
    const OutcomeDistribution dist = outcome_distribution(src, s);
    num::CompensatedSum<long double> acc;
    for (const auto& [m, p] : dist.entries) {
        acc.add((m.counts[0] % 2 == 0 ? 1.0L : -1.0L) * static_cast<long double>(p));
    }
    return ParityValue(static_cast<double>(acc.value()));
}

std::vector<ScanRow> parity_scan(const FockPair& src, std::span<const double> t_grid,
                                 int threads) {
    for (double t : t_grid)
        if (!(t >= 0.0 && t <= 1.0))
            throw std::domain_error("parity_scan: grid value outside [0, 1]");
    std::vector<ScanRow> rows(t_grid.size());
    parallel_for_index(static_cast<std::int64_t>(t_grid.size()), threads, [&](std::int64_t i) {
        const double t = t_grid[static_cast<std::size_t>(i)];
        rows[static_cast<std::size_t>(i)] = {t, parity_average(src, Splitter(t)).value};
    });
    return rows;
}

double binomial_source_parity(int n_total) {
    if (n_total < 0) throw std::domain_error("binomial_source_parity: negative N");
    if (n_total % 2 != 0) return 0.0;
    return std::exp(num::log_factorial(n_total) - n_total * std::log(2.0) -
                    2.0 * num::log_factorial(n_total / 2));
}

SanakaCheck sanaka_check(int n) {
    if (n < 1) throw std::domain_error("sanaka_check: n must be positive");
    const double reflectivity = static_cast<double>(n) / (n + 1);
    const Splitter s(1.0 - reflectivity);
    const std::complex<double> amp = amplitude(FockPair(n, 1), s, 1, n);
    return {reflectivity, std::norm(amp)};
}

namespace {

// Golden-section refinement of a bracketed interior extremum.
template <typename F>
ParityExtremum golden_section_min(const F& f, double lo, double hi) {
    constexpr double kInvPhi = 0.6180339887498948482;
    double a = lo, b = hi;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > 1e-10) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

}  // namespace

ParityExtrema find_parity_extrema(const FockPair& src, int grid_points) {
    if (grid_points < 5) throw std::domain_error("find_parity_extrema: grid too coarse");
    std::vector<double> ts(grid_points);
    std::vector<double> ps(grid_points);
    for (int i = 0; i < grid_points; ++i) {
        ts[i] = static_cast<double>(i) / (grid_points - 1);
        ps[i] = parity_average(src, Splitter(ts[i])).value;
    }
    auto objective = [&src](double t) { return parity_average(src, Splitter(t)).value; };

    ParityExtrema out;
    bool found_min = false, found_max = false;
    for (int i = 1; i + 1 < grid_points; ++i) {
        if (ps[i] < ps[i - 1] && ps[i] < ps[i + 1]) {
            const auto m = golden_section_min(objective, ts[i - 1], ts[i + 1]);
            if (!found_min || m.parity < out.minimum.parity) out.minimum = m;
            found_min = true;
        }
        if (ps[i] > ps[i - 1] && ps[i] > ps[i + 1]) {
            auto neg = [&objective](double t) { return -objective(t); };
            auto m = golden_section_min(neg, ts[i - 1], ts[i + 1]);
            m.parity = -m.parity;
            if (!found_max || m.parity > out.maximum.parity) out.maximum = m;
            found_max = true;
        }
    }
    if (!found_min || !found_max)
        throw std::runtime_error("find_parity_extrema: no interior extremum on the grid");
    return out;
}

}  // namespace fockint::ghom
