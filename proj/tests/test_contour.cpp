#include <catch_amalgamated.hpp>

#include <cmath>

#include <jtheta/contour.hpp>

using jtheta::Complex;
using jtheta::I;
using jtheta::pi;

TEST_CASE("ContourPath invariants")
{
    CHECK_THROWS_AS(jtheta::ContourPath({Complex{1.0, 0.0}}, false), jtheta::DomainError);
    CHECK_THROWS_AS(jtheta::ContourPath({Complex{1.0, 0.0}, Complex{1.0, 0.0}, I}, true), jtheta::DomainError);
    // wrap-around edge is checked for closed paths
    CHECK_THROWS_AS(jtheta::ContourPath({Complex{1.0, 0.0}, I, Complex{1.0, 0.0}}, true), jtheta::DomainError);
    CHECK_NOTHROW(jtheta::ContourPath({Complex{1.0, 0.0}, I, Complex{1.0, 0.0}}, false));

    const auto c = jtheta::siegel_contour(2.0);
    CHECK(c.edge_count() == 4);
    CHECK(c.signed_area() == Catch::Approx(4.0));
    CHECK(c.is_counterclockwise());
    CHECK_FALSE(c.reversed().is_counterclockwise());
    CHECK(c.reversed().signed_area() == Catch::Approx(-4.0));

    const auto unit = jtheta::siegel_contour(1.0);
    for (const auto &v : unit.vertices()) {
        CHECK(std::abs(v) == 1.0);
    }
    CHECK_THROWS_AS(jtheta::siegel_contour(0.0), jtheta::DomainError);
}

TEST_CASE("integrate_edge basics")
{
    const Complex a{0.3, -1.2};
    const Complex b{-2.0, 0.7};
    const auto one = jtheta::integrate_edge([](Complex) { return Complex{1.0, 0.0}; }, a, b);
    CHECK(std::abs(one.value - (b - a)) < 1e-15);

    const auto log_edge = jtheta::integrate_edge([](Complex z) { return 1.0 / z; }, Complex{2.0, 0.0}, I);
    CHECK(std::abs(log_edge.value - Complex{-std::log(2.0), pi / 2.0}) < 1e-12);
    CHECK(log_edge.err_est <= 1e-12);
    CHECK(log_edge.nodes >= 15);
}

TEST_CASE("integrate_edge is additive")
{
    auto f = [](Complex z) { return std::exp(z) / (z - Complex{0.0, 3.0}); };
    const Complex a{-1.0, -1.0};
    const Complex b{2.0, 1.0};
    const Complex m = a + 0.37 * (b - a);
    jtheta::QuadratureConfig cfg;
    const Complex whole = jtheta::integrate_edge(f, a, b, cfg).value;
    const Complex split = jtheta::integrate_edge(f, a, m, cfg).value + jtheta::integrate_edge(f, m, b, cfg).value;
    CHECK(std::abs(whole - split) < 2.0 * cfg.tol);
}

TEST_CASE("Cauchy: closed integrals of entire functions vanish")
{
    const auto rhombus = jtheta::siegel_contour(2.0);
    const jtheta::ContourPath triangle({Complex{-1.0, -0.5}, Complex{3.0, 0.2}, Complex{0.1, 2.5}}, true);
    for (const auto &path : {rhombus, triangle}) {
        CHECK(std::abs(jtheta::integrate_closed([](Complex z) { return z * z; }, path).value) < 1e-12);
        CHECK(std::abs(jtheta::integrate_closed([](Complex z) { return 3.0 * z * z * z - 2.0 * z + 7.0; }, path).value) <
              1e-11);
        CHECK(std::abs(jtheta::integrate_closed([](Complex z) { return std::exp(z); }, path).value) < 1e-11);
    }
}

TEST_CASE("integrate_closed picks up enclosed poles")
{
    const auto c = jtheta::siegel_contour(2.0);
    CHECK(std::abs(jtheta::integrate_closed([](Complex z) { return 1.0 / z; }, c).value - 2.0 * pi * I) < 1e-10);
    CHECK(std::abs(jtheta::integrate_closed([](Complex z) { return 1.0 / (z - 5.0); }, c).value) < 1e-10);
}

TEST_CASE("reversing a path negates the integral")
{
    auto f = [](Complex z) { return std::exp(z) / (z - Complex{0.2, 0.1}); };
    const auto c = jtheta::siegel_contour(1.5);
    const Complex forward = jtheta::integrate_closed(f, c).value;
    const Complex backward = jtheta::integrate_closed(f, c.reversed()).value;
    CHECK(std::abs(forward + backward) < 1e-13);
    CHECK(std::abs(forward - 2.0 * pi * I * std::exp(Complex{0.2, 0.1})) < 1e-11);
}

TEST_CASE("integrate_closed rejects open paths")
{
    const jtheta::ContourPath open({Complex{0.0, 0.0}, Complex{1.0, 0.0}}, false);
    CHECK_THROWS_AS(jtheta::integrate_closed([](Complex z) { return z; }, open), jtheta::DomainError);
}

TEST_CASE("unreachable tolerance raises AccuracyError")
{
    jtheta::QuadratureConfig cfg;
    cfg.max_depth = 2;
    cfg.tol = 1e-14;
    // integrable endpoint singularity that GK15 cannot resolve in two bisections
    CHECK_THROWS_AS(jtheta::integrate_edge([](Complex z) { return std::sqrt(z); }, Complex{0.0, 0.0}, Complex{1.0, 0.0},
                                           cfg),
                    jtheta::AccuracyError);
    cfg.tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), jtheta::DomainError);
}

TEST_CASE("residue_by_circle")
{
    auto r = jtheta::residue_by_circle([](Complex z) { return 1.0 / z; }, Complex{0.0, 0.0}, 0.5);
    CHECK(std::abs(r.value - 1.0) < 1e-13);
    r = jtheta::residue_by_circle([](Complex z) { return std::exp(z) / (z * z); }, Complex{0.0, 0.0}, 0.5);
    CHECK(std::abs(r.value - 1.0) < 1e-12);
    for (Complex c : {Complex{0.0, 0.0}, Complex{3.0, -2.0}, Complex{-0.4, 0.9}}) {
        for (double radius : {0.1, 1.0, 4.0}) {
            const auto s = jtheta::residue_by_circle([c](Complex z) { return 1.0 / (z - c); }, c, radius);
            CHECK(std::abs(s.value - 1.0) < 1e-12);
        }
    }
    // nothing enclosed
    r = jtheta::residue_by_circle([](Complex z) { return 1.0 / (z - 2.0); }, Complex{0.0, 0.0}, 1.0);
    CHECK(std::abs(r.value) < 1e-13);
    CHECK_THROWS_AS(jtheta::residue_by_circle([](Complex z) { return z; }, Complex{0.0, 0.0}, -1.0), jtheta::DomainError);
}
