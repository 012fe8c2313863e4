#ifndef FOCKINT_ORACLE_HPP
#define FOCKINT_ORACLE_HPP

#include <complex>
#include <map>
#include <set>
#include <vector>

#include "fockint/fock.hpp"

namespace fockint::oracle {

/// The source creation-operator monomial expanded into detector creation
/// operators: a map from detector occupation multi-indices to complex
/// coefficients. Exact multinomial combinatorics, no quadrature; this is
/// the independent reference the closed forms are checked against.
struct OperatorPolynomial {
    int detector_count = 0;
    std::map<std::vector<int>, std::complex<double>> terms;
};

/// Expands a_alpha^{dag N_alpha} a_beta^{dag N_beta} through the mode map.
/// The source operators are rewritten with the adjoint of the (orthonormal
/// column) map, a_alpha^dag = sum_i u_i a_i^dag and likewise with v for
/// beta. Guarded to N_alpha + N_beta <= 12; larger inputs are refused.
OperatorPolynomial expand_state(const FockPair& src, const ModeMap& map);

/// P(m) = |coef(m)|^2 * (prod m_i!) / (N_alpha! N_beta!).
OutcomeDistribution distribution_from_expansion(const OperatorPolynomial& poly,
                                                const FockPair& src);

/// Sum over outcomes of (-1)^{sum of counts at the chosen detectors} P(m).
/// Detector indices are 1-based. An empty set returns exactly the total
/// probability.
double parity_from_expansion(const OperatorPolynomial& poly, const FockPair& src,
                             const std::set<int>& parity_detectors);

}  // namespace fockint::oracle

#endif  // FOCKINT_ORACLE_HPP
