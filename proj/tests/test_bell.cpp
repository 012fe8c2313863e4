#include <doctest.h>

#include <cmath>
#include <vector>

#include "fockint/bell.hpp"
#include "fockint/run_record.hpp"

using namespace fockint;
using namespace fockint::bell;

namespace {

// Parity-weighted sum over every outcome of the joint distribution;
// independent route to <AB> used against the closed form.
double correlator_by_enumeration(int n, double t1, double t2) {
    double total = 0.0;
    for (int m1 = 0; m1 <= n; ++m1)
        for (int m2 = 0; m1 + m2 <= n; ++m2)
            for (int m3 = 0; m1 + m2 + m3 <= n; ++m3) {
                const int m4 = n - m1 - m2 - m3;
                const double p = joint_probability(n, Splitter(t1), Splitter(t2),
                                                   OutcomeCounts{{m1, m2, m3, m4}});
                total += ((m2 + m4) % 2 == 0) ? p : -p;
            }
    return total;
}

}  // namespace

TEST_CASE("parity_correlator: balanced settings give exactly 1") {
    for (int n : {2, 4, 20, 100, 200})
        CHECK(parity_correlator(n, Splitter(0.5), Splitter(0.5)) == 1.0);
    CHECK_THROWS_AS(parity_correlator(3, Splitter(0.5), Splitter(0.5)), std::domain_error);
    CHECK_THROWS_AS(parity_correlator(0, Splitter(0.5), Splitter(0.5)), std::domain_error);
}

TEST_CASE("parity_correlator: N=2 closed form tau^2 - dT^2") {
    const double v = parity_correlator(2, Splitter(0.57), Splitter(0.43));
    CHECK(std::abs(v - 0.9608) < 1e-4);
    // exact expression at N=2
    for (double t1 : {0.1, 0.33, 0.5, 0.9})
        for (double t2 : {0.2, 0.5, 0.77}) {
            const double tau = std::sqrt(t1 * (1 - t1)) + std::sqrt(t2 * (1 - t2));
            const double dt = t1 - t2;
            CHECK(parity_correlator(2, Splitter(t1), Splitter(t2)) ==
                  doctest::Approx(tau * tau - dt * dt).epsilon(1e-14));
        }
}

TEST_CASE("parity_correlator agrees with the literal series where conditioned") {
    for (int n : {2, 4, 8, 12}) {
        for (double t1 : {0.1, 0.3, 0.5, 0.7, 0.9})
            for (double t2 : {0.2, 0.5, 0.8}) {
                const double a = parity_correlator(n, Splitter(t1), Splitter(t2));
                const double b = parity_correlator_series(n, Splitter(t1), Splitter(t2));
                CHECK(std::abs(a - b) < 1e-12);
            }
    }
    for (double t1 : {0.3, 0.5})
        for (double t2 : {0.45, 0.6}) {
            const double a = parity_correlator(40, Splitter(t1), Splitter(t2));
            const double b = parity_correlator_series(40, Splitter(t1), Splitter(t2));
            CHECK(std::abs(a - b) < 1e-8);
        }
}

TEST_CASE("parity_correlator symmetries are bit-exact and bounded") {
    // |<AB>| <= 1 and the swap symmetry on the standard 21-point grid
    for (int n : {2, 20, 100, 200}) {
        for (int i = 0; i <= 20; ++i)
            for (int j = 0; j <= 20; ++j) {
                const double t1 = i / 20.0, t2 = j / 20.0;
                const double v = parity_correlator(n, Splitter(t1), Splitter(t2));
                CHECK(std::abs(v) <= 1.0 + 1e-12);
                const double swapped = parity_correlator(n, Splitter(t2), Splitter(t1));
                CHECK(std::abs(v - swapped) <= 1e-14);
            }
    }
    // The complement symmetry is exact in the function itself; testing it
    // bitwise needs grid points whose complement is exactly representable,
    // so use a dyadic grid (1 - i/32 is exact there).
    for (int n : {2, 20, 100, 200}) {
        for (int i = 0; i <= 32; ++i)
            for (int j = 0; j <= 32; ++j) {
                const double t1 = i / 32.0, t2 = j / 32.0;
                const double v = parity_correlator(n, Splitter(t1), Splitter(t2));
                const double complemented =
                    parity_correlator(n, Splitter(1.0 - t1), Splitter(1.0 - t2));
                CHECK(std::abs(v - complemented) <= 1e-14);
            }
    }
}

TEST_CASE("joint_probability: normalization and parity sum at N=2") {
    double total = 0.0;
    for (int m1 = 0; m1 <= 2; ++m1)
        for (int m2 = 0; m1 + m2 <= 2; ++m2)
            for (int m3 = 0; m1 + m2 + m3 <= 2; ++m3) {
                const int m4 = 2 - m1 - m2 - m3;
                const double p = joint_probability(2, Splitter(0.5), Splitter(0.5),
                                                   OutcomeCounts{{m1, m2, m3, m4}});
                CHECK(p >= 0.0);
                CHECK(p <= 1.0);
                total += p;
            }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(correlator_by_enumeration(2, 0.5, 0.5) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(joint_probability(3, Splitter(0.5), Splitter(0.5),
                                      OutcomeCounts{{1, 1, 1, 0}}),
                    std::domain_error);
    CHECK_THROWS_AS(joint_probability(2, Splitter(0.5), Splitter(0.5),
                                      OutcomeCounts{{1, 1, 1, 0}}),
                    std::domain_error);
}

TEST_CASE("closed form equals the parity sum over joint probabilities") {
    for (int n : {2, 4, 6}) {
        for (double t1 : {0.2, 0.5, 0.57})
            for (double t2 : {0.43, 0.5, 0.8}) {
                const double closed = parity_correlator(n, Splitter(t1), Splitter(t2));
                const double summed = correlator_by_enumeration(n, t1, t2);
                CHECK(std::abs(closed - summed) < 1e-9);
            }
    }
}

TEST_CASE("parity_correlator_general matches the closed form") {
    for (int n : {2, 4, 8, 12}) {
        for (const auto& [t1, t2] : std::vector<std::pair<double, double>>{
                 {0.5, 0.5}, {0.57, 0.43}, {0.06, 0.94}, {0.3, 0.8}}) {
            const double general =
                parity_correlator_general(n, bell_mode_map(Splitter(t1), Splitter(t2)));
            const double closed = parity_correlator(n, Splitter(t1), Splitter(t2));
            CHECK(std::abs(general - closed) < 1e-9);
        }
    }
    CHECK_THROWS_AS(parity_correlator_general(2, ghom_mode_map(Splitter(0.5))),
                    std::domain_error);
}

TEST_CASE("relabeling detectors inside the map moves the parity set") {
    // swapping detectors 1<->2 and 3<->4 in the map makes the fixed
    // (2,4)-parity correlator measure detectors 1 and 3 of the original
    const auto base = bell_mode_map(Splitter(0.57), Splitter(0.43));
    ModeMap relabeled{{base.coefficients[1], base.coefficients[0], base.coefficients[3],
                       base.coefficients[2]}};
    const int n = 4;
    double by_enumeration = 0.0;
    for (int m1 = 0; m1 <= n; ++m1)
        for (int m2 = 0; m1 + m2 <= n; ++m2)
            for (int m3 = 0; m1 + m2 + m3 <= n; ++m3) {
                const int m4 = n - m1 - m2 - m3;
                const double p = joint_probability(n, Splitter(0.57), Splitter(0.43),
                                                   OutcomeCounts{{m1, m2, m3, m4}});
                by_enumeration += ((m1 + m3) % 2 == 0) ? p : -p;
            }
    CHECK(std::abs(parity_correlator_general(n, relabeled) - by_enumeration) < 1e-9);
}

TEST_CASE("chsh_q: headline and boundary values") {
    const auto at_reference = chsh_q(2, BellSettings(0.57, 0.43, 0.06, 0.94));
    CHECK(std::abs(at_reference.q - 2.31) < 0.01);
    CHECK(at_reference.q ==
          at_reference.correlators[0] + at_reference.correlators[1] + at_reference.correlators[2] -
              at_reference.correlators[3]);

    // all-balanced settings sit exactly on the classical boundary
    for (int n : {2, 10, 100, 200}) {
        const auto balanced = chsh_q(n, BellSettings(0.5, 0.5, 0.5, 0.5));
        CHECK(std::abs(balanced.q - 2.0) < 1e-12);
    }

    // the true N=100 optimum (independently cross-checked by optimization)
    const auto n100 = chsh_q(100, BellSettings(0.49565, 0.50435, 0.51362, 0.48638));
    CHECK(std::abs(n100.q - 2.5406) < 2e-4);

    CHECK_THROWS_AS(chsh_q(3, BellSettings(0.5, 0.5, 0.5, 0.5)), std::domain_error);
    CHECK_THROWS_AS(BellSettings(1.2, 0.5, 0.5, 0.5), std::domain_error);
}

TEST_CASE("canonicalize and the reduced family") {
    const auto canonical = canonicalize(BellSettings(0.57, 0.43, 0.06, 0.94));
    CHECK(canonical.t1 == doctest::Approx(0.43).epsilon(1e-15));
    CHECK(canonical.t2 == doctest::Approx(0.57).epsilon(1e-15));
    CHECK(canonical.t1_prime == doctest::Approx(0.94).epsilon(1e-15));
    CHECK(canonical.t2_prime == doctest::Approx(0.06).epsilon(1e-15));

    // canonicalization preserves Q
    for (int n : {2, 8}) {
        const BellSettings s(0.57, 0.43, 0.06, 0.94);
        CHECK(chsh_q(n, s).q == chsh_q(n, canonicalize(s)).q);
    }

    const auto expanded = ReducedSettings(0.07, 0.44).expand();
    CHECK(expanded.t1 == doctest::Approx(0.43));
    CHECK(expanded.t2 == doctest::Approx(0.57));
    CHECK(expanded.t1_prime == doctest::Approx(0.94));
    CHECK(expanded.t2_prime == doctest::Approx(0.06));
    CHECK(ansatz_deviation(expanded) < 1e-15);
    CHECK(ansatz_deviation(BellSettings(0.6, 0.5, 0.5, 0.5)) ==
          doctest::Approx(0.05).epsilon(1e-12));
    CHECK_THROWS_AS(ReducedSettings(0.6, 0.0), std::domain_error);
}

TEST_CASE("optimize_chsh: recovers the N=2 optimum") {
    OptimizeOptions opts;
    opts.seed = 7;
    const auto result = optimize_chsh(2, opts);
    CHECK(result.q >= 2.30);
    CHECK(result.q <= 2.0 * std::sqrt(2.0) + 1e-9);
    // compare canonical settings against the canonicalized reference set
    const auto reference = canonicalize(BellSettings(0.57, 0.43, 0.06, 0.94));
    CHECK(std::abs(result.settings.t1 - reference.t1) < 0.02);
    CHECK(std::abs(result.settings.t2 - reference.t2) < 0.02);
    CHECK(std::abs(result.settings.t1_prime - reference.t1_prime) < 0.02);
    CHECK(std::abs(result.settings.t2_prime - reference.t2_prime) < 0.02);
    CHECK(result.evaluations > 0);
    CHECK(result.evaluations <= opts.budget);
    // N=2 optimum sits on the reduced family
    CHECK(result.ansatz_deviation < 1e-4);
}

TEST_CASE("optimize_chsh: determinism and budget guard") {
    OptimizeOptions opts;
    opts.seed = 123;
    opts.threads = 2;
    const auto a = optimize_chsh(6, opts);
    opts.threads = 1;
    const auto b = optimize_chsh(6, opts);
    CHECK(a.q == b.q);
    CHECK(a.settings.as_array() == b.settings.as_array());
    CHECK(a.evaluations == b.evaluations);
    CHECK(a.correlators == b.correlators);
    CHECK(format_double(a.q) == format_double(b.q));

    OptimizeOptions tiny;
    tiny.budget = 100;  // smaller than the stage-1 grid
    CHECK_THROWS_AS(optimize_chsh(2, tiny), std::invalid_argument);
}

TEST_CASE("q_vs_n_curve: rows in order, increasing tail") {
    OptimizeOptions opts;
    opts.seed = 3;
    opts.grid_points = 81;
    opts.budget = 20000;
    opts.restarts = 6;
    const std::vector<int> ns = {2, 6, 10};
    const auto rows = q_vs_n_curve(ns, opts);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].n_total == 2);
    CHECK(rows[2].n_total == 10);
    CHECK(rows[0].result.q == doctest::Approx(2.3094).epsilon(5e-3));
    CHECK(rows[1].result.q == doctest::Approx(2.3340).epsilon(5e-3));
    CHECK(rows[2].result.q == doctest::Approx(2.3922).epsilon(5e-3));
    // the optimal settings contract toward 1/2 as N grows
    auto c_pair = [](const BellSettings& s) {
        return std::pair{0.5 * (s.t2 - s.t1), 0.5 * (s.t1_prime - s.t2_prime)};
    };
    const auto [c1_first, c2_first] = c_pair(rows[0].result.settings);
    const auto [c1_last, c2_last] = c_pair(rows[2].result.settings);
    CHECK(c1_last < c1_first);
    CHECK(c2_last < c2_first);
    CHECK(c1_last > 0.0);
    CHECK(c2_last > 0.0);
}

TEST_CASE("optimize_chsh honors a grid-only budget") {
    OptimizeOptions opts;
    opts.grid_points = 41;
    opts.budget = 41 * 41;  // nothing left for stage 2
    opts.seed = 1;
    const auto r = optimize_chsh(2, opts);
    CHECK(r.evaluations <= opts.budget);
    CHECK(r.q > 2.30);  // the reduced-plane grid alone already gets close
}
