#include "fockint/fock.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fockint {

FockPair::FockPair(int na, int nb) : n_alpha(na), n_beta(nb) {
    if (na < 0 || nb < 0) throw std::domain_error("FockPair: negative occupation");
}

Splitter::Splitter(double transmittivity) : t_(transmittivity) {
    if (!(t_ >= 0.0 && t_ <= 1.0))
        throw std::domain_error("Splitter: transmittivity outside [0, 1]");
}

ModeMap::ModeMap(std::vector<Coefficient> coeffs) : coefficients(std::move(coeffs)) {
    if (coefficients.size() < 2) throw std::domain_error("ModeMap: needs at least 2 detectors");
}

OutcomeCounts::OutcomeCounts(std::vector<int> m) : counts(std::move(m)) {
    for (int c : counts)
        if (c < 0) throw std::domain_error("OutcomeCounts: negative count");
}

int OutcomeCounts::total() const {
    return std::accumulate(counts.begin(), counts.end(), 0);
}

double OutcomeDistribution::total_probability() const {
    double s = 0.0;
    for (const auto& [m, p] : entries) s += p;
    return s;
}

double OutcomeDistribution::probability(const OutcomeCounts& m) const {
    auto it = entries.find(m);
    return it == entries.end() ? 0.0 : it->second;
}

ModeMap ghom_mode_map(const Splitter& s) {
    const double rt = std::sqrt(s.transmittivity());
    const double rr = std::sqrt(s.reflectivity());
    const std::complex<double> i{0.0, 1.0};
    return ModeMap{{
        {rt, i * rr},
        {i * rr, rt},
    }};
}

ModeMap bell_mode_map(const Splitter& t1, const Splitter& t2) {
    const double rt1 = std::sqrt(t1.transmittivity());
    const double rr1 = std::sqrt(t1.reflectivity());
    const double rt2 = std::sqrt(t2.transmittivity());
    const double rr2 = std::sqrt(t2.reflectivity());
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const std::complex<double> i_h{0.0, inv_sqrt2};
    return ModeMap{{
        {i_h * rt1, i_h * rr1},
        {-inv_sqrt2 * rr1, inv_sqrt2 * rt1},
        {i_h * rr2, i_h * rt2},
        {inv_sqrt2 * rt2, -inv_sqrt2 * rr2},
    }};
}

ModeMapValidation validate_mode_map(const ModeMap& m) {
    constexpr double kTol = 1e-12;
    double un = 0.0, vn = 0.0;
    std::complex<double> cross{0.0, 0.0};
    for (const auto& c : m.coefficients) {
        un += std::norm(c.u);
        vn += std::norm(c.v);
        cross += std::conj(c.u) * c.v;
    }
    ModeMapValidation r;
    r.u_norm_residual = std::abs(un - 1.0);
    r.v_norm_residual = std::abs(vn - 1.0);
    r.orthogonality_residual = std::abs(cross);
    r.u_norm_ok = r.u_norm_residual < kTol;
    r.v_norm_ok = r.v_norm_residual < kTol;
    r.orthogonality_ok = r.orthogonality_residual < kTol;
    return r;
}

}  // namespace fockint
