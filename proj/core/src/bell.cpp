#include "fockint/bell.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "fockint/numerics.hpp"
#include "fockint/parallel.hpp"

namespace fockint::bell {

namespace num = fockint::numerics;
using cld = std::complex<long double>;

BellSettings::BellSettings(double a, double b, double ap, double bp)
    : t1(a), t2(b), t1_prime(ap), t2_prime(bp) {
    for (double t : as_array())
        if (!(t >= 0.0 && t <= 1.0))
            throw std::domain_error("BellSettings: transmittivity outside [0, 1]");
}

ReducedSettings::ReducedSettings(double a, double b) : c1(a), c2(b) {
    if (!(std::abs(c1) <= 0.5 && std::abs(c2) <= 0.5))
        throw std::domain_error("ReducedSettings: |c| must be <= 0.5");
}

BellSettings ReducedSettings::expand() const {
    return {0.5 - c1, 0.5 + c1, 0.5 + c2, 0.5 - c2};
}

namespace {

void require_even_positive(int n_total) {
    if (n_total <= 0 || n_total % 2 != 0)
        throw std::domain_error("equal sources need an even positive total particle number");
}

}  // namespace

double parity_correlator(int n_total, const Splitter& t1, const Splitter& t2) {
    require_even_positive(n_total);
    const double dt = t1.transmittivity() - t2.transmittivity();
    const double tau = std::sqrt(t1.transmittivity() * t1.reflectivity()) +
                       std::sqrt(t2.transmittivity() * t2.reflectivity());
    const double a = dt * dt;
    const double b = tau * tau;
    const double s2 = (a + b) * (a + b);
    const double w = b - a;

    // q_k = (a+b)^k P_k(w/(a+b)); |q_k| <= 1 throughout, so the three-term
    // recurrence is forward stable even where the raw series cancels
    // catastrophically.
    const int n = n_total / 2;
    double q_prev = 1.0;
    double q_cur = w;
    for (int k = 1; k < n; ++k) {
        const double q_next = ((2 * k + 1) * w * q_cur - k * s2 * q_prev) / (k + 1);
        q_prev = q_cur;
        q_cur = q_next;
    }
    return q_cur;
}

double parity_correlator_series(int n_total, const Splitter& t1, const Splitter& t2) {
    require_even_positive(n_total);
    const double dt = t1.transmittivity() - t2.transmittivity();
    const double tau = std::sqrt(t1.transmittivity() * t1.reflectivity()) +
                       std::sqrt(t2.transmittivity() * t2.reflectivity());
    const double lf_half = num::log_factorial(n_total / 2);

    std::vector<num::SignedLogValue> terms;
    for (int p = 0; p <= n_total; p += 2) {
        if (dt == 0.0 && p > 0) continue;
        if (tau == 0.0 && p < n_total) continue;
        double log_mag = 2.0 * lf_half - 2.0 * num::log_factorial(p / 2) -
                         2.0 * num::log_factorial((n_total - p) / 2);
        if (p > 0) log_mag += p * std::log(std::abs(dt));
        if (p < n_total) log_mag += (n_total - p) * std::log(tau);
        terms.push_back({(p / 2) % 2 == 0 ? 1 : -1, log_mag});
    }
    return num::signed_log_sum(terms);
}

namespace {

// Detector factors of the generating quadrature: A_i(phi) = u_i e^{i phi} + v_i
// and B_i(phi') = conj(u_i) e^{-i phi'} + conj(v_i); Omega_i = B_i A_i.
struct MapFactors {
    std::array<cld, 4> u, v;
    explicit MapFactors(const ModeMap& map) {
        for (int i = 0; i < 4; ++i) {
            const auto& c = map.coefficients[static_cast<std::size_t>(i)];
            u[static_cast<std::size_t>(i)] = cld{c.u.real(), c.u.imag()};
            v[static_cast<std::size_t>(i)] = cld{c.v.real(), c.v.imag()};
        }
    }
    cld a(int i, const cld& e) const {
        return u[static_cast<std::size_t>(i)] * e + v[static_cast<std::size_t>(i)];
    }
    cld b(int i, const cld& e_conj) const {
        return std::conj(u[static_cast<std::size_t>(i)]) * e_conj +
               std::conj(v[static_cast<std::size_t>(i)]);
    }
};

double clamp_probability(double p) {
    if (p >= 0.0) return p;
    if (p >= -1e-14) return 0.0;
    throw std::runtime_error("joint probability fell below the rounding floor");
}

void require_valid_bell_map(const ModeMap& map) {
    if (map.detector_count() != 4)
        throw std::domain_error("expected a 4-detector mode map");
    if (!validate_mode_map(map).pass())
        throw std::domain_error("mode map fails unitarity validation");
}

}  // namespace

double joint_probability(int n_total, const Splitter& t1, const Splitter& t2,
                         const OutcomeCounts& out) {
    require_even_positive(n_total);
    if (out.counts.size() != 4)
        throw std::domain_error("joint_probability: expected a 4-detector outcome");
    if (out.total() != n_total)
        throw std::domain_error("joint_probability: counts must sum to n_total");

    const MapFactors fac(bell_mode_map(t1, t2));
    const long double half_n = static_cast<long double>(n_total) / 2.0L;
    const auto integral = num::periodic_trapezoid_ext(
        [&](long double phi_p) {
            const cld e_conj = num::polar_unit(-phi_p);
            std::array<cld, 4> bs;
            for (int i = 0; i < 4; ++i) bs[static_cast<std::size_t>(i)] = fac.b(i, e_conj);
            const auto inner = num::periodic_trapezoid_ext(
                [&](long double phi) {
                    const cld e = num::polar_unit(phi);
                    cld prod{1.0L, 0.0L};
                    for (int i = 0; i < 4; ++i) {
                        const cld omega = bs[static_cast<std::size_t>(i)] * fac.a(i, e);
                        prod *= num::pow_int(omega, out.counts[static_cast<std::size_t>(i)]);
                    }
                    return prod * num::polar_unit(-half_n * phi);
                },
                n_total);
            return inner * num::polar_unit(half_n * phi_p);
        },
        n_total);

    double log_weight = 2.0 * num::log_factorial(n_total / 2);
    for (int mi : out.counts) log_weight -= num::log_factorial(mi);
    const long double p = std::exp(static_cast<long double>(log_weight)) * integral.real();
    return clamp_probability(static_cast<double>(p));
}

double parity_correlator_general(int n_total, const ModeMap& map) {
    require_even_positive(n_total);
    require_valid_bell_map(map);

    const MapFactors fac(map);
    const long double half_n = static_cast<long double>(n_total) / 2.0L;
    // Parity signs for detectors 2 and 4 flip Omega_2 and Omega_4 inside
    // the integrand; the outcome sum then exponentiates to a single power.
    static constexpr long double kSigns[4] = {1.0L, -1.0L, 1.0L, -1.0L};

    const auto integral = num::periodic_trapezoid_ext(
        [&](long double phi_p) {
            const cld e_conj = num::polar_unit(-phi_p);
            std::array<cld, 4> bs;
            for (int i = 0; i < 4; ++i) bs[static_cast<std::size_t>(i)] = fac.b(i, e_conj);
            const auto inner = num::periodic_trapezoid_ext(
                [&](long double phi) {
                    const cld e = num::polar_unit(phi);
                    cld mix{0.0L, 0.0L};
                    for (int i = 0; i < 4; ++i)
                        mix += kSigns[i] * bs[static_cast<std::size_t>(i)] * fac.a(i, e);
                    return num::pow_int(mix, n_total) * num::polar_unit(-half_n * phi);
                },
                n_total);
            return inner * num::polar_unit(half_n * phi_p);
        },
        n_total);

    const long double weight = std::exp(static_cast<long double>(
        2.0 * num::log_factorial(n_total / 2) - num::log_factorial(n_total)));
    return static_cast<double>(weight * integral.real());
}

ChshResult chsh_q(int n_total, const BellSettings& s) {
    require_even_positive(n_total);
    const Splitter a(s.t1), b(s.t2), ap(s.t1_prime), bp(s.t2_prime);
    ChshResult r;
    r.settings = s;
    r.correlators = {
        parity_correlator(n_total, a, b),
        parity_correlator(n_total, a, bp),
        parity_correlator(n_total, ap, b),
        parity_correlator(n_total, ap, bp),
    };
    r.q = r.correlators[0] + r.correlators[1] + r.correlators[2] - r.correlators[3];
    if (r.q > 2.0 * std::sqrt(2.0) + 1e-9)
        throw std::runtime_error("chsh_q: value above the Tsirelson bound");
    r.ansatz_deviation = ansatz_deviation(s);
    return r;
}

BellSettings canonicalize(const BellSettings& s) {
    const std::array<double, 4> base = s.as_array();
    const std::array<std::array<double, 4>, 4> orbit = {{
        {base[0], base[1], base[2], base[3]},
        {1.0 - base[0], 1.0 - base[1], 1.0 - base[2], 1.0 - base[3]},
        {base[1], base[0], base[3], base[2]},
        {1.0 - base[1], 1.0 - base[0], 1.0 - base[3], 1.0 - base[2]},
    }};
    const auto& best = *std::min_element(orbit.begin(), orbit.end());
    return {best[0], best[1], best[2], best[3]};
}

double ansatz_deviation(const BellSettings& s) {
    // The reduced family fixes both pair midpoints at 1/2; the deviation is
    // how far the midpoints sit from that.
    const double mid_unprimed = 0.5 * (s.t1 + s.t2) - 0.5;
    const double mid_primed = 0.5 * (s.t1_prime + s.t2_prime) - 0.5;
    return std::max(std::abs(mid_unprimed), std::abs(mid_primed));
}

namespace {

constexpr double kClampLo = 1e-12;
constexpr double kClampHi = 1.0 - 1e-12;

double clamped(double x) { return std::clamp(x, kClampLo, kClampHi); }

double q_of(int n_total, const std::array<double, 4>& x) {
    const Splitter a(clamped(x[0])), b(clamped(x[1])), ap(clamped(x[2])), bp(clamped(x[3]));
    return parity_correlator(n_total, a, b) + parity_correlator(n_total, a, bp) +
           parity_correlator(n_total, ap, b) - parity_correlator(n_total, ap, bp);
}

struct SimplexOutcome {
    double q = -4.0;
    std::array<double, 4> x{0.5, 0.5, 0.5, 0.5};
    std::int64_t evaluations = 0;
};

// Nelder-Mead maximization of Q with reflection/expansion/contraction/
// shrink, bounded evaluation budget, deterministic for a fixed start.
SimplexOutcome simplex_maximize(int n_total, const std::array<double, 4>& start,
                                std::int64_t eval_budget, int max_iterations) {
    constexpr int kDim = 4;
    struct Vertex {
        std::array<double, 4> x;
        double f;  // -Q, minimized
    };
    SimplexOutcome out;
    std::int64_t used = 0;
    auto eval = [&](const std::array<double, 4>& x) {
        ++used;
        const double q = q_of(n_total, x);
        if (q > out.q) {
            out.q = q;
            for (int i = 0; i < kDim; ++i) out.x[static_cast<std::size_t>(i)] = clamped(x[static_cast<std::size_t>(i)]);
        }
        return -q;
    };

    std::array<Vertex, kDim + 1> simplex;
    simplex[0] = {start, 0.0};
    simplex[0].f = eval(start);
    for (int i = 0; i < kDim; ++i) {
        auto x = start;
        const double step = x[static_cast<std::size_t>(i)] > 0.9 ? -0.02 : 0.02;
        x[static_cast<std::size_t>(i)] = clamped(x[static_cast<std::size_t>(i)] + step);
        simplex[static_cast<std::size_t>(i) + 1] = {x, eval(x)};
    }

    for (int iter = 0; iter < max_iterations && used + 4 <= eval_budget; ++iter) {
        std::sort(simplex.begin(), simplex.end(),
                  [](const Vertex& l, const Vertex& r) { return l.f < r.f; });
        const double f_spread = std::abs(simplex[kDim].f - simplex[0].f);
        double x_spread = 0.0;
        for (int i = 0; i < kDim; ++i)
            x_spread = std::max(x_spread, std::abs(simplex[kDim].x[static_cast<std::size_t>(i)] -
                                                   simplex[0].x[static_cast<std::size_t>(i)]));
        if (f_spread < 1e-10 && x_spread < 1e-8) break;

        std::array<double, 4> centroid{};
        for (int v = 0; v < kDim; ++v)
            for (int i = 0; i < kDim; ++i)
                centroid[static_cast<std::size_t>(i)] +=
                    simplex[static_cast<std::size_t>(v)].x[static_cast<std::size_t>(i)] / kDim;

        auto blend = [&](double coef) {
            std::array<double, 4> x;
            for (int i = 0; i < kDim; ++i)
                x[static_cast<std::size_t>(i)] =
                    centroid[static_cast<std::size_t>(i)] +
                    coef * (centroid[static_cast<std::size_t>(i)] -
                            simplex[kDim].x[static_cast<std::size_t>(i)]);
            return x;
        };

        const auto reflected = blend(1.0);
        const double f_reflected = eval(reflected);
        if (f_reflected < simplex[0].f) {
            const auto expanded = blend(2.0);
            const double f_expanded = eval(expanded);
            simplex[kDim] = f_expanded < f_reflected ? Vertex{expanded, f_expanded}
                                                     : Vertex{reflected, f_reflected};
        } else if (f_reflected < simplex[kDim - 1].f) {
            simplex[kDim] = {reflected, f_reflected};
        } else {
            const auto contracted = blend(-0.5);
            const double f_contracted = eval(contracted);
            if (f_contracted < simplex[kDim].f) {
                simplex[kDim] = {contracted, f_contracted};
            } else {
                for (int v = 1; v <= kDim; ++v) {
                    for (int i = 0; i < kDim; ++i)
                        simplex[static_cast<std::size_t>(v)].x[static_cast<std::size_t>(i)] =
                            0.5 * (simplex[static_cast<std::size_t>(v)].x[static_cast<std::size_t>(i)] +
                                   simplex[0].x[static_cast<std::size_t>(i)]);
                    simplex[static_cast<std::size_t>(v)].f =
                        eval(simplex[static_cast<std::size_t>(v)].x);
                    if (used >= eval_budget) break;
                }
            }
        }
    }
    out.evaluations = used;
    return out;
}

}  // namespace

ChshResult optimize_chsh(int n_total, const OptimizeOptions& opts) {
    require_even_positive(n_total);
    const int g = opts.grid_points;
    if (g < 2) throw std::invalid_argument("optimize_chsh: grid_points must be >= 2");
    const std::int64_t grid_evals = static_cast<std::int64_t>(g) * g;
    if (opts.budget < grid_evals)
        throw std::invalid_argument(
            "optimize_chsh: budget smaller than the stage-1 reduced-plane scan");

    // Stage 1: exhaustive reduced-plane scan; per-index results keep the
    // reduction deterministic under any thread count.
    std::vector<double> grid_q(static_cast<std::size_t>(grid_evals));
    parallel_for_index(grid_evals, opts.threads, [&](std::int64_t idx) {
        const int i = static_cast<int>(idx / g);
        const int j = static_cast<int>(idx % g);
        const double c1 = -0.5 + static_cast<double>(i) / (g - 1);
        const double c2 = -0.5 + static_cast<double>(j) / (g - 1);
        grid_q[static_cast<std::size_t>(idx)] =
            q_of(n_total, ReducedSettings(c1, c2).expand().as_array());
    });
    std::int64_t best_idx = 0;
    for (std::int64_t idx = 1; idx < grid_evals; ++idx)
        if (grid_q[static_cast<std::size_t>(idx)] > grid_q[static_cast<std::size_t>(best_idx)])
            best_idx = idx;
    const double best_c1 = -0.5 + static_cast<double>(best_idx / g) / (g - 1);
    const double best_c2 = -0.5 + static_cast<double>(best_idx % g) / (g - 1);

    // Stage 2: simplex refinement from the grid best plus seeded restarts.
    // Start points are drawn up front so the schedule is independent of
    // thread interleaving.
    const int n_starts = std::max(1, opts.restarts);
    std::vector<std::array<double, 4>> starts;
    starts.reserve(static_cast<std::size_t>(n_starts));
    starts.push_back(ReducedSettings(best_c1, best_c2).expand().as_array());
    std::mt19937_64 rng(opts.seed);
    auto unit_draw = [&rng]() {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1), platform independent
    };
    for (int r = 1; r < n_starts; ++r) {
        std::array<double, 4> x;
        for (auto& xi : x) xi = 0.02 + 0.96 * unit_draw();
        starts.push_back(x);
    }

    const std::int64_t stage2_budget = opts.budget - grid_evals;
    const std::int64_t per_start = stage2_budget / n_starts;
    std::vector<SimplexOutcome> outcomes;
    if (per_start >= 8) {  // a start costs 5 evaluations before any step
        outcomes.resize(starts.size());
        parallel_for_index(static_cast<std::int64_t>(starts.size()), opts.threads,
                           [&](std::int64_t i) {
                               outcomes[static_cast<std::size_t>(i)] = simplex_maximize(
                                   n_total, starts[static_cast<std::size_t>(i)], per_start, 2000);
                           });
    }

    SimplexOutcome best;
    best.q = grid_q[static_cast<std::size_t>(best_idx)];
    best.x = starts[0];
    std::int64_t total_evals = grid_evals;
    for (const auto& o : outcomes) {
        total_evals += o.evaluations;
        if (o.q > best.q) {
            best.q = o.q;
            best.x = o.x;
        } else if (o.q == best.q) {
            const auto lhs = canonicalize({o.x[0], o.x[1], o.x[2], o.x[3]}).as_array();
            const auto rhs = canonicalize({best.x[0], best.x[1], best.x[2], best.x[3]}).as_array();
            if (lhs < rhs) best.x = o.x;
        }
    }

    const BellSettings canonical =
        canonicalize({best.x[0], best.x[1], best.x[2], best.x[3]});
    ChshResult result = chsh_q(n_total, canonical);
    result.evaluations = total_evals;
    return result;
}

std::vector<QCurveRow> q_vs_n_curve(std::span<const int> n_values,
                                    const OptimizeOptions& opts) {
    std::vector<QCurveRow> rows;
    rows.reserve(n_values.size());
    for (int n : n_values) {
        rows.push_back({n, optimize_chsh(n, opts)});
    }
    return rows;
}

}  // namespace fockint::bell
