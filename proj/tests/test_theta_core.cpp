#include <catch_amalgamated.hpp>

#include <cmath>

#include <jtheta/theta_core.hpp>
#include <jtheta/verify.hpp>

using jtheta::Complex;
using jtheta::I;
using jtheta::pi;
using jtheta::TauPoint;

namespace
{

double rel(Complex got, Complex want)
{
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

} // namespace

TEST_CASE("TauPoint rejects the closed lower half-plane")
{
    CHECK_THROWS_AS(TauPoint(Complex{0.0, 0.0}), jtheta::DomainError);
    CHECK_THROWS_AS(TauPoint(Complex{1.0, -1.0}), jtheta::DomainError);
    CHECK_THROWS_AS(TauPoint(Complex{std::nan(""), 1.0}), jtheta::DomainError);
    CHECK(std::abs(TauPoint(Complex{0.0, 0.5}).inverted().value() - Complex{0.0, 2.0}) < 1e-15);
}

TEST_CASE("EvalConfig validation")
{
    jtheta::EvalConfig cfg;
    cfg.eps = 0.0;
    CHECK_THROWS_AS(jtheta::theta1(0.3, TauPoint(I), cfg), jtheta::DomainError);
    cfg.eps = 1e-15;
    cfg.max_terms = 0;
    CHECK_THROWS_AS(jtheta::theta1(0.3, TauPoint(I), cfg), jtheta::DomainError);
}

TEST_CASE("nome")
{
    CHECK(std::abs(jtheta::nome(TauPoint(I)) - std::exp(-pi)) < 1e-17);
    CHECK(std::abs(jtheta::nome(TauPoint(2.0 * I)) - std::exp(-2.0 * pi)) < 1e-18);
    CHECK(std::abs(jtheta::nome(TauPoint(Complex{1.0, 1.0})) + std::exp(-pi)) < 1e-16);
}

TEST_CASE("theta values against the mpmath reference")
{
    // tests/oracles/freeze_values.py
    CHECK(std::abs(jtheta::theta1(0.5, TauPoint(I)) - 0.91357913815611682141) < 1e-15);
    CHECK(std::abs(jtheta::theta1(Complex{0.3, 0.1}, TauPoint(Complex{0.2, 1.3})) -
                   Complex{0.58294958688692694344, 0.22922958685918412235}) < 1e-15);
    CHECK(std::abs(jtheta::theta3(0.0, TauPoint(I)) - 1.0864348112133080146) < 1e-15);
    CHECK(std::abs(jtheta::theta2(Complex{0.2, 0.1}, TauPoint(I)) -
                   Complex{0.77365122177117316312, -0.17293153659159264492}) < 4e-15);
    CHECK(std::abs(jtheta::theta4(Complex{0.2, 0.1}, TauPoint(I)) -
                   Complex{0.96783399450056420326, 0.055105662055664264756}) < 1e-15);
    CHECK(std::abs(jtheta::theta1(0.4, TauPoint(0.1 * I)) - 2.309736112801908621) < 1e-13);
    CHECK(std::abs(jtheta::theta1(0.3, TauPoint(0.02 * I)) - 0.013204814190682494211) < 1e-12);
}

TEST_CASE("theta1 vanishes exactly at z = 0")
{
    for (Complex t : {I, Complex{0.3, 0.4}, Complex{-2.0, 5.0}}) {
        CHECK(jtheta::theta1(0.0, TauPoint(t)) == Complex{0.0, 0.0});
        CHECK(jtheta::theta1_series_oracle(0.0, TauPoint(t)).value == Complex{0.0, 0.0});
        CHECK(jtheta::inversion_rhs(0.0, TauPoint(t)) == Complex{0.0, 0.0});
        CHECK(jtheta::transformation_residual(0.0, TauPoint(t)) == 0.0);
    }
}

TEST_CASE("theta1 zeros at m + n tau")
{
    const TauPoint tau(Complex{0.3, 0.9});
    for (int m = -1; m <= 1; ++m) {
        for (int n = -1; n <= 1; ++n) {
            const Complex z = double(m) + double(n) * tau.value();
            CHECK(std::abs(jtheta::theta1(z, tau)) < 1e-10);
        }
    }
}

TEST_CASE("theta1 is odd")
{
    for (const auto &g : jtheta::general_tau_grid(7, 20)) {
        const TauPoint tau(g.tau);
        CHECK(rel(jtheta::theta1(-g.z, tau), -jtheta::theta1(g.z, tau)) < 1e-12);
    }
}

TEST_CASE("product and sine series agree on a seeded grid")
{
    jtheta::EvalConfig cfg;
    for (const auto &g : jtheta::general_tau_grid(11, 25, 0.5, 3.0)) {
        const TauPoint tau(g.tau);
        const Complex series = jtheta::theta1_series_oracle(g.z, tau, cfg).value;
        CHECK(rel(jtheta::theta1(g.z, tau, cfg), series) < 10.0 * cfg.eps);
    }
    CHECK(std::abs(jtheta::theta1(0.25, TauPoint(I)) - jtheta::theta1_series_oracle(0.25, TauPoint(I)).value) < 1e-12);
}

TEST_CASE("inversion law")
{
    for (const auto &g : jtheta::general_tau_grid(3, 25)) {
        CHECK(jtheta::transformation_residual(g.z, TauPoint(g.tau)) < 1e-10);
    }
    CHECK(jtheta::transformation_residual(Complex{0.25, -0.15}, TauPoint(Complex{0.4, 0.9})) < 1e-10);
}

TEST_CASE("half-period relations")
{
    const TauPoint tau(I);
    const Complex z{0.2, 0.1};
    CHECK(std::abs(jtheta::theta4(z, tau) - jtheta::theta3(z + 0.5, tau)) < 1e-14);
    for (const auto &g : jtheta::general_tau_grid(5, 10, 0.5, 3.0)) {
        const TauPoint t(g.tau);
        CHECK(rel(jtheta::theta2(g.z + 0.5, t), -jtheta::theta1(g.z, t)) < 1e-12);
        CHECK(rel(jtheta::theta3(g.z + 0.5, t), jtheta::theta4(g.z, t)) < 1e-12);
    }
}

TEST_CASE("argument reduction")
{
    jtheta::EvalConfig cfg;
    cfg.eps = 1e-12;
    const TauPoint small(0.02 * I);
    const auto direct = jtheta::theta1_reduced(0.3, small, cfg);
    cfg.reduction_enabled = true;
    const auto reduced = jtheta::theta1_reduced(0.3, small, cfg);
    CHECK(reduced.reduced);
    CHECK_FALSE(direct.reduced);
    CHECK(reduced.terms_used < direct.terms_used);
    CHECK(std::abs(reduced.value - direct.value) < 1e-9);

    const auto big = jtheta::theta1_reduced(Complex{0.3, 0.2}, TauPoint(3.0 * I), cfg);
    CHECK_FALSE(big.reduced);
    CHECK(big.value == jtheta::theta1(Complex{0.3, 0.2}, TauPoint(3.0 * I), cfg));

    CHECK(std::abs(jtheta::theta1_reduced(0.4, TauPoint(0.1 * I), cfg).value - jtheta::theta1(0.4, TauPoint(0.1 * I))) <
          1e-10);

    for (double e : {0.01, 0.02, 0.03, 0.04, 0.05}) {
        const TauPoint t(e * I);
        cfg.reduction_enabled = false;
        const auto d = jtheta::theta1_reduced(Complex{0.2, 0.05}, t, cfg);
        cfg.reduction_enabled = true;
        const auto r = jtheta::theta1_reduced(Complex{0.2, 0.05}, t, cfg);
        CHECK(r.terms_used < d.terms_used);
        CHECK(rel(r.value, d.value) < 1e-9);
    }
}

TEST_CASE("reduction agrees off the imaginary axis")
{
    jtheta::EvalConfig cfg;
    cfg.reduction_enabled = true;
    for (const auto &g : jtheta::general_tau_grid(19, 20, 0.2, 0.9, 0.5)) {
        if (std::abs(g.tau) >= 1.0) {
            continue;
        }
        const TauPoint t(g.tau);
        CHECK(rel(jtheta::theta1_reduced(g.z, t, cfg).value, jtheta::theta1(g.z, t)) < 1e-9);
    }
}

TEST_CASE("large |Im z| stays finite through the log scale")
{
    const TauPoint tau(I);
    const Complex z{0.3, 8.0};
    const Complex v = jtheta::theta1(z, tau);
    CHECK(jtheta::is_finite(v));
    // quasi-periodicity theta1(z + tau) = -exp(-i pi (2z + tau)) theta1(z)
    const Complex shifted = jtheta::theta1(z + tau.value(), tau);
    CHECK(rel(shifted, -std::exp(-I * pi * (2.0 * z + tau.value())) * v) < 1e-10);
}

TEST_CASE("truncation failure is reported")
{
    jtheta::EvalConfig cfg;
    cfg.max_terms = 5;
    try {
        jtheta::theta1(0.3, TauPoint(0.01 * I), cfg);
        FAIL("expected TruncationError");
    } catch (const jtheta::TruncationError &e) {
        CHECK(e.terms() == 5);
        CHECK(e.achieved_bound() > cfg.eps);
    }
}

TEST_CASE("evaluate dispatches all four functions")
{
    const TauPoint tau(I);
    const Complex z{0.2, 0.1};
    CHECK(jtheta::evaluate(jtheta::ThetaKind::theta1, z, tau).value == jtheta::theta1(z, tau));
    CHECK(jtheta::evaluate(jtheta::ThetaKind::theta2, z, tau).value == jtheta::theta2(z, tau));
    CHECK(jtheta::evaluate(jtheta::ThetaKind::theta3, z, tau).value == jtheta::theta3(z, tau));
    CHECK(jtheta::evaluate(jtheta::ThetaKind::theta4, z, tau).value == jtheta::theta4(z, tau));
    CHECK(jtheta::evaluate(jtheta::ThetaKind::theta3, z, tau).terms_used > 0);
}
