#ifndef FOCKINT_BELL_HPP
#define FOCKINT_BELL_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "fockint/fock.hpp"

namespace fockint::bell {

/// The four transmittivities of a CHSH run: Alice uses t1 / t1_prime,
/// Bob uses t2 / t2_prime.
struct BellSettings {
    double t1 = 0.5;
    double t2 = 0.5;
    double t1_prime = 0.5;
    double t2_prime = 0.5;

    BellSettings() = default;
    BellSettings(double a, double b, double ap, double bp);
    std::array<double, 4> as_array() const { return {t1, t2, t1_prime, t2_prime}; }
};

/// Two-parameter family {0.5-c1, 0.5+c1, 0.5+c2, 0.5-c2} that the optimal
/// settings follow; |c1|, |c2| <= 0.5 keeps the expansion inside [0, 1].
struct ReducedSettings {
    double c1 = 0.0;
    double c2 = 0.0;

    ReducedSettings(double a, double b);
    BellSettings expand() const;
};

struct ChshResult {
    double q = 0.0;
    BellSettings settings;
    std::array<double, 4> correlators{};  // <AB>, <AB'>, <A'B>, <A'B'>
    std::int64_t evaluations = 0;         // optimizer budget actually used
    double ansatz_deviation = 0.0;        // max per-coordinate distance to the reduced family
};

/// Parity correlator <AB> for equal sources N/2 each, detectors 2 and 4.
/// The closed-form alternating series resums exactly to a scaled Legendre
/// recurrence, which is evaluated here; it stays within [-1, 1] to
/// rounding for every N and settings pair. Throws std::domain_error for
/// odd or non-positive n_total.
double parity_correlator(int n_total, const Splitter& t1, const Splitter& t2);

/// The same quantity evaluated literally as the signed factorial series in
/// log space. Kept as an independent route; its accuracy degrades for
/// large N with strongly unbalanced settings, where the series terms grow
/// exponentially while the sum stays bounded.
double parity_correlator_series(int n_total, const Splitter& t1, const Splitter& t2);

/// Joint detector probability P_{m1 m2 m3 m4} from the two-angle
/// generating quadrature over the four-detector map.
double joint_probability(int n_total, const Splitter& t1, const Splitter& t2,
                         const OutcomeCounts& out);

/// <AB> through an arbitrary validated 4-detector map. The sum over
/// outcomes is folded into the integrand by flipping the signs of the
/// detector-2 and detector-4 factors, so no outcome enumeration happens.
double parity_correlator_general(int n_total, const ModeMap& map);

/// Q = <AB> + <AB'> + <A'B> - <A'B'> at fixed settings.
ChshResult chsh_q(int n_total, const BellSettings& s);

/// Maps settings to the lexicographically smallest member of their
/// symmetry orbit (complement of all four, swap of the two sides, and the
/// combination). On the reduced family this picks c1 >= 0.
BellSettings canonicalize(const BellSettings& s);

/// Max per-coordinate distance from the reduced two-parameter family.
double ansatz_deviation(const BellSettings& s);

struct OptimizeOptions {
    std::int64_t budget = 200000;  // max objective evaluations
    std::uint64_t seed = 0;
    int threads = 0;
    int grid_points = 201;  // stage-1 grid per reduced coordinate
    int restarts = 16;      // stage-2 simplex starts beyond the grid best
};

/// Two-stage maximization of Q: an exhaustive scan of the reduced (c1, c2)
/// plane, then multi-start Nelder-Mead refinement in the full
/// 4-dimensional settings space. Deterministic for fixed seed and budget.
ChshResult optimize_chsh(int n_total, const OptimizeOptions& opts = {});

struct QCurveRow {
    int n_total = 0;
    ChshResult result;
};

/// One optimized row per requested N.
std::vector<QCurveRow> q_vs_n_curve(std::span<const int> n_values,
                                    const OptimizeOptions& opts = {});

}  // namespace fockint::bell

#endif  // FOCKINT_BELL_HPP
