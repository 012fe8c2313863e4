#ifndef FOCKINT_FOCK_HPP
#define FOCKINT_FOCK_HPP

#include <complex>
#include <map>
#include <vector>

namespace fockint {

/// Occupation numbers of the two source modes.
struct FockPair {
    int n_alpha = 0;
    int n_beta = 0;

    FockPair(int na, int nb);
    int total() const { return n_alpha + n_beta; }
};

/// Beam splitter with transmittivity T in [0, 1]. The reflectivity is
/// always derived as 1 - T so that T + R = 1 cannot be violated.
class Splitter {
public:
    explicit Splitter(double transmittivity);
    double transmittivity() const { return t_; }
    double reflectivity() const { return 1.0 - t_; }

private:
    double t_;
};

/// Complex linear map from the two source modes onto K detector modes,
/// a_i = u_i a_alpha + v_i a_beta. The two coefficient columns must be
/// orthonormal for the map to extend to a unitary on the full mode space.
struct ModeMap {
    struct Coefficient {
        std::complex<double> u;
        std::complex<double> v;
    };
    std::vector<Coefficient> coefficients;

    explicit ModeMap(std::vector<Coefficient> coeffs);
    int detector_count() const { return static_cast<int>(coefficients.size()); }
};

struct ModeMapValidation {
    double u_norm_residual = 0.0;       // |sum |u_i|^2 - 1|
    double v_norm_residual = 0.0;       // |sum |v_i|^2 - 1|
    double orthogonality_residual = 0.0;  // |sum conj(u_i) v_i|
    bool u_norm_ok = false;
    bool v_norm_ok = false;
    bool orthogonality_ok = false;
    bool pass() const { return u_norm_ok && v_norm_ok && orthogonality_ok; }
};

/// Detector occupation tuple (m_1, ..., m_K).
struct OutcomeCounts {
    std::vector<int> counts;

    explicit OutcomeCounts(std::vector<int> m);
    int total() const;
    auto operator<=>(const OutcomeCounts&) const = default;
};

/// Normalized probability table over detector outcomes. std::map keys give
/// a deterministic iteration order for reporting.
struct OutcomeDistribution {
    std::map<OutcomeCounts, double> entries;

    double total_probability() const;
    double probability(const OutcomeCounts& m) const;
};

/// Two-detector map of the generalized HOM splitter:
/// a_1 = sqrt(T) a_alpha + i sqrt(R) a_beta,
/// a_2 = i sqrt(R) a_alpha + sqrt(T) a_beta.
ModeMap ghom_mode_map(const Splitter& s);

/// Four-detector map of the Bell interferometer with balanced source
/// splitters and zero phase shifts:
/// a_1 = (i/sqrt2)  [sqrt(T1) a_alpha + sqrt(R1) a_beta]
/// a_2 = (-1/sqrt2) [sqrt(R1) a_alpha - sqrt(T1) a_beta]
/// a_3 = (i/sqrt2)  [sqrt(R2) a_alpha + sqrt(T2) a_beta]
/// a_4 = (1/sqrt2)  [sqrt(T2) a_alpha - sqrt(R2) a_beta]
/// The global i and -1 prefactors cancel in every probability but are kept
/// verbatim so coefficient-level checks against the expansion oracle are
/// exact.
ModeMap bell_mode_map(const Splitter& t1, const Splitter& t2);

/// Report-only invariant check with measured residuals (tolerance 1e-12).
ModeMapValidation validate_mode_map(const ModeMap& m);

}  // namespace fockint

#endif  // FOCKINT_FOCK_HPP
