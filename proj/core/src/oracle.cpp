#include "fockint/oracle.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace fockint::oracle {

namespace {

constexpr int kMaxTotal = 12;

std::uint64_t factorial_u64(int n) {
    std::uint64_t f = 1;
    for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
    return f;
}

// Enumerates (sum_i c_i x_i)^n as multi-index -> coefficient, with exact
// integer multinomial factors.
void expand_power(const std::vector<std::complex<double>>& c, int n,
                  std::map<std::vector<int>, std::complex<double>>& out) {
    const int k = static_cast<int>(c.size());
    std::vector<int> idx(static_cast<std::size_t>(k), 0);
    const std::uint64_t n_fact = factorial_u64(n);

    // Walk all compositions of n into k parts.
    auto emit = [&] {
        std::uint64_t denom = 1;
        for (int i = 0; i < k; ++i) denom *= factorial_u64(idx[i]);
        std::complex<double> coef{static_cast<double>(n_fact / denom), 0.0};
        for (int i = 0; i < k; ++i) {
            for (int r = 0; r < idx[i]; ++r) coef *= c[static_cast<std::size_t>(i)];
        }
        out[idx] += coef;
    };

    // idx starts as (n, 0, ..., 0) and steps through compositions in
    // colexicographic order.
    idx[0] = n;
    while (true) {
        emit();
        int i = 0;
        while (i < k - 1 && idx[i] == 0) ++i;
        if (i == k - 1) break;
        const int carry = idx[i];
        idx[i] = 0;
        idx[0] = carry - 1;
        ++idx[i + 1];
    }
}

}  // namespace

OperatorPolynomial expand_state(const FockPair& src, const ModeMap& map) {
    if (src.total() > kMaxTotal)
        throw std::domain_error("expand_state: refusing N_alpha + N_beta > 12");
    const auto validation = validate_mode_map(map);
    if (!validation.pass())
        throw std::domain_error("expand_state: mode map fails unitarity validation");

    const int k = map.detector_count();
    std::vector<std::complex<double>> u_col(static_cast<std::size_t>(k));
    std::vector<std::complex<double>> v_col(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        u_col[static_cast<std::size_t>(i)] = map.coefficients[static_cast<std::size_t>(i)].u;
        v_col[static_cast<std::size_t>(i)] = map.coefficients[static_cast<std::size_t>(i)].v;
    }

    std::map<std::vector<int>, std::complex<double>> pa, pb;
    expand_power(u_col, src.n_alpha, pa);
    expand_power(v_col, src.n_beta, pb);

    OperatorPolynomial poly;
    poly.detector_count = k;
    std::vector<int> merged(static_cast<std::size_t>(k));
    for (const auto& [ia, ca] : pa) {
        for (const auto& [ib, cb] : pb) {
            for (int i = 0; i < k; ++i)
                merged[static_cast<std::size_t>(i)] =
                    ia[static_cast<std::size_t>(i)] + ib[static_cast<std::size_t>(i)];
            poly.terms[merged] += ca * cb;
        }
    }
    return poly;
}

OutcomeDistribution distribution_from_expansion(const OperatorPolynomial& poly,
                                                const FockPair& src) {
    const double source_norm = static_cast<double>(factorial_u64(src.n_alpha)) *
                               static_cast<double>(factorial_u64(src.n_beta));
    OutcomeDistribution dist;
    for (const auto& [m, coef] : poly.terms) {
        double weight = 1.0;
        for (int mi : m) weight *= static_cast<double>(factorial_u64(mi));
        dist.entries.emplace(OutcomeCounts{m}, std::norm(coef) * weight / source_norm);
    }
    return dist;
}

double parity_from_expansion(const OperatorPolynomial& poly, const FockPair& src,
                             const std::set<int>& parity_detectors) {
    for (int d : parity_detectors)
        if (d < 1 || d > poly.detector_count)
            throw std::domain_error("parity_from_expansion: detector index out of range");
    const OutcomeDistribution dist = distribution_from_expansion(poly, src);
    double total = 0.0;
    for (const auto& [m, p] : dist.entries) {
        int exponent = 0;
        for (int d : parity_detectors) exponent += m.counts[static_cast<std::size_t>(d - 1)];
        total += (exponent % 2 == 0 ? p : -p);
    }
    return total;
}

}  // namespace fockint::oracle
