#include <doctest.h>

#include <cmath>
#include <complex>

#include "fockint/fock.hpp"

using namespace fockint;

TEST_CASE("FockPair and Splitter validate their domains") {
    CHECK(FockPair(3, 4).total() == 7);
    CHECK_THROWS_AS(FockPair(-1, 0), std::domain_error);
    CHECK(Splitter(0.3).reflectivity() == doctest::Approx(0.7));
    CHECK_THROWS_AS(Splitter(-0.1), std::domain_error);
    CHECK_THROWS_AS(Splitter(1.1), std::domain_error);
    CHECK_THROWS_AS(Splitter(std::nan("")), std::domain_error);
}

TEST_CASE("ghom_mode_map limit cases") {
    const std::complex<double> i{0, 1};

    auto id = ghom_mode_map(Splitter(1.0));
    CHECK(id.coefficients[0].u == std::complex<double>{1, 0});
    CHECK(id.coefficients[0].v == std::complex<double>{0, 0});
    CHECK(id.coefficients[1].u == std::complex<double>{0, 0});
    CHECK(id.coefficients[1].v == std::complex<double>{1, 0});

    auto swap = ghom_mode_map(Splitter(0.0));
    CHECK(swap.coefficients[0].u == std::complex<double>{0, 0});
    CHECK(swap.coefficients[0].v == i);
    CHECK(swap.coefficients[1].u == i);
    CHECK(swap.coefficients[1].v == std::complex<double>{0, 0});

    auto balanced = ghom_mode_map(Splitter(0.5));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (const auto& c : balanced.coefficients) {
        CHECK(std::abs(c.u) == doctest::Approx(inv_sqrt2).epsilon(1e-15));
        CHECK(std::abs(c.v) == doctest::Approx(inv_sqrt2).epsilon(1e-15));
    }
    std::complex<double> cross =
        std::conj(balanced.coefficients[0].u) * balanced.coefficients[0].v +
        std::conj(balanced.coefficients[1].u) * balanced.coefficients[1].v;
    CHECK(std::abs(cross) < 1e-15);
}

TEST_CASE("bell_mode_map coefficients and unitarity") {
    auto balanced = bell_mode_map(Splitter(0.5), Splitter(0.5));
    for (const auto& c : balanced.coefficients) {
        CHECK(std::abs(c.u) == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(std::abs(c.v) == doctest::Approx(0.5).epsilon(1e-15));
    }

    auto extreme = bell_mode_map(Splitter(1.0), Splitter(0.0));
    CHECK(std::abs(extreme.coefficients[1].u) == 0.0);  // sqrt(R1) = 0
    CHECK(validate_mode_map(extreme).pass());

    auto reference_point = bell_mode_map(Splitter(0.57), Splitter(0.43));
    const auto v = validate_mode_map(reference_point);
    CHECK(v.pass());
    CHECK(v.u_norm_residual < 1e-15);
    CHECK(v.v_norm_residual < 1e-15);
    CHECK(v.orthogonality_residual < 1e-15);
    CHECK(validate_mode_map(bell_mode_map(Splitter(0.06), Splitter(0.94))).pass());
}

TEST_CASE("validate_mode_map flags non-orthogonal columns") {
    CHECK(validate_mode_map(ghom_mode_map(Splitter(0.3))).pass());
    ModeMap broken{{{{1, 0}, {1, 0}}, {{0, 0}, {0, 0}}}};
    const auto v = validate_mode_map(broken);
    CHECK_FALSE(v.pass());
    CHECK_FALSE(v.orthogonality_ok);
    CHECK(v.u_norm_ok);  // both columns are unit length here
    CHECK(v.v_norm_ok);
    CHECK(v.orthogonality_residual == doctest::Approx(1.0));
    ModeMap short_column{{{{0.5, 0}, {0, 0}}, {{0, 0}, {1, 0}}}};
    const auto sv = validate_mode_map(short_column);
    CHECK_FALSE(sv.u_norm_ok);
    CHECK(sv.u_norm_residual == doctest::Approx(0.75));
}

TEST_CASE("both constructors stay unitary on a 101-point grid") {
    for (int i = 0; i <= 100; ++i) {
        const double t = double(i) / 100.0;
        const auto g = validate_mode_map(ghom_mode_map(Splitter(t)));
        CHECK(g.u_norm_residual < 1e-14);
        CHECK(g.v_norm_residual < 1e-14);
        CHECK(g.orthogonality_residual < 1e-14);
        const auto b = validate_mode_map(bell_mode_map(Splitter(t), Splitter(1.0 - t)));
        CHECK(b.u_norm_residual < 1e-14);
        CHECK(b.v_norm_residual < 1e-14);
        CHECK(b.orthogonality_residual < 1e-14);
    }
}

TEST_CASE("ghom_mode_map(T) and ghom_mode_map(1-T) exchange detectors") {
    // Coefficient-wise, the complemented map is the detector-exchanged map
    // conjugated and rotated by a global i; probabilities therefore obey
    // the plain exchange relation, which the distribution tests cover.
    const std::complex<double> i{0, 1};
    for (double t : {0.0, 0.125, 0.3, 0.77, 1.0}) {
        const auto m = ghom_mode_map(Splitter(t));
        const auto flipped = ghom_mode_map(Splitter(1.0 - t));
        CHECK(std::abs(flipped.coefficients[0].u - i * std::conj(m.coefficients[1].u)) < 1e-15);
        CHECK(std::abs(flipped.coefficients[0].v - i * std::conj(m.coefficients[1].v)) < 1e-15);
        CHECK(std::abs(flipped.coefficients[1].u - i * std::conj(m.coefficients[0].u)) < 1e-15);
        CHECK(std::abs(flipped.coefficients[1].v - i * std::conj(m.coefficients[0].v)) < 1e-15);
    }
}

TEST_CASE("OutcomeCounts and OutcomeDistribution basics") {
    OutcomeCounts m{{2, 3}};
    CHECK(m.total() == 5);
    CHECK_THROWS_AS(OutcomeCounts({-1, 2}), std::domain_error);

    OutcomeDistribution d;
    d.entries.emplace(OutcomeCounts{{0, 1}}, 0.25);
    d.entries.emplace(OutcomeCounts{{1, 0}}, 0.75);
    CHECK(d.total_probability() == doctest::Approx(1.0));
    CHECK(d.probability(OutcomeCounts{{1, 0}}) == 0.75);
    CHECK(d.probability(OutcomeCounts{{9, 9}}) == 0.0);
}
