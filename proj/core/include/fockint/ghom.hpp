#ifndef FOCKINT_GHOM_HPP
#define FOCKINT_GHOM_HPP

#include <complex>
#include <span>
#include <vector>

#include "fockint/fock.hpp"

namespace fockint::ghom {

/// Expectation of (-1)^{m_1} over the outcome distribution.
struct ParityValue {
    double value = 0.0;
    explicit ParityValue(double v);
};

enum class AmplitudeForm {
    kPhaseIntegral,      // single-angle quadrature form (default)
    kCombinatorialSum,   // double-sum form, kept as an independent route
};

/// Output amplitude C_{m1 m2}(N_alpha, N_beta) for the two-detector
/// splitter. The two evaluation forms agree within 1e-11.
/// Throws std::domain_error if m1 + m2 != N_alpha + N_beta.
std::complex<double> amplitude(const FockPair& src, const Splitter& s, int m1, int m2,
                               AmplitudeForm form = AmplitudeForm::kPhaseIntegral);
std::complex<double> amplitude(const FockPair& src, const Splitter& s,
                               const OutcomeCounts& out,
                               AmplitudeForm form = AmplitudeForm::kPhaseIntegral);

/// Probability table over (m1, N - m1), built from |amplitude|^2 with the
/// phase-integral amplitudes. Sums to 1 within 1e-10.
OutcomeDistribution outcome_distribution(const FockPair& src, const Splitter& s);

/// P(m1, m2) from the two-angle product-form integral. Independent of the
/// amplitude route; well conditioned for |N_alpha - N_beta| small compared
/// to N, and used as a cross-check against |amplitude|^2.
double probability_integral_form(const FockPair& src, const Splitter& s, int m1, int m2);

/// Closed-form parity average (signed factorial series, evaluated in
/// log space). Collapses to the Kronecker delta at T = 1/2.
ParityValue parity_average(const FockPair& src, const Splitter& s);

/// Parity by its definition, sum of (-1)^{m1} P(m1, N - m1).
ParityValue parity_from_distribution(const FockPair& src, const Splitter& s);

struct ScanRow {
    double t = 0.0;
    double parity = 0.0;
};

/// Parity average on a transmittivity grid; rows keep the input order.
/// Grid values outside [0, 1] raise std::domain_error.
std::vector<ScanRow> parity_scan(const FockPair& src, std::span<const double> t_grid,
                                 int threads = 0);

/// Source-averaged parity at T = 1/2 for a binomial distribution of N
/// particles over the two sources: N! / (2^N (N/2)!^2) for even N, else 0.
double binomial_source_parity(int n_total);

struct SanakaCheck {
    double reflectivity = 0.0;  // n / (n + 1)
    double probability = 0.0;   // P(1, n) evaluated at that reflectivity
};

/// The (n, 1)-source filter condition: P(1, n) vanishes at R = n/(n+1).
SanakaCheck sanaka_check(int n);

struct ParityExtremum {
    double t = 0.0;
    double parity = 0.0;
};
struct ParityExtrema {
    ParityExtremum minimum;
    ParityExtremum maximum;
};

/// Interior extrema of the parity-versus-T curve: coarse scan on a grid,
/// then golden-section refinement inside the bracketing grid cells.
ParityExtrema find_parity_extrema(const FockPair& src, int grid_points = 201);

}  // namespace fockint::ghom

#endif  // FOCKINT_GHOM_HPP
