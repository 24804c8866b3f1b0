#ifndef JTHETA_SIEGEL_HPP
#define JTHETA_SIEGEL_HPP

// Numerical replay of the residue-calculus proof of the theta1 inversion law
// on the imaginary axis tau = iy.
//
// Notation used throughout: z = a + ib with b < 0 < a < 1 and y > |b|;
// N = n + 1/2; the "inverted point" is z' = z/(iy) = -iz/y at tau' = i/y.
//
//   phi(z, iy) = log theta1(z, iy) - log theta1(z', i/y)
//
// is evaluated two ways:
//   * phi_direct:  sum of principal logs of the product factors (every factor
//                  is 1 - X with |X| < 1 under the domain constraints) plus the
//                  explicit prefactor exponents;
//   * phi_lambert: the same quantity regrouped into Lambert sums over m.
//
// F_n is the meromorphic kernel whose residues inside the rhombus
// -i -> y -> i -> -y reproduce the truncated Lambert sums, and whose contour
// integral tends to -log(y^{1/2}).

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "complex.hpp"
#include "contour.hpp"
#include "errors.hpp"
#include "theta_core.hpp"

namespace jtheta
{

class SiegelDomainPoint
{
public:
    SiegelDomainPoint(double a, double b, double y, int n = 1) : m_a(a), m_b(b), m_y(y), m_n(n)
    {
        if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(y)) {
            throw DomainError("SiegelDomainPoint: non-finite coordinate");
        }
        if (!(b < 0.0 && 0.0 < a && a < 1.0)) {
            throw DomainError("SiegelDomainPoint: requires b < 0 < a < 1");
        }
        if (!(y > std::abs(b))) {
            throw DomainError("SiegelDomainPoint: requires y > |b|");
        }
        if (n < 1) {
            throw DomainError("SiegelDomainPoint: n must be a positive integer");
        }
    }

    double a() const noexcept
    {
        return m_a;
    }
    double b() const noexcept
    {
        return m_b;
    }
    double y() const noexcept
    {
        return m_y;
    }
    int n() const noexcept
    {
        return m_n;
    }
    double big_n() const noexcept
    {
        return m_n + 0.5;
    }
    Complex z() const noexcept
    {
        return {m_a, m_b};
    }
    // z / (iy)
    Complex inverted_z() const noexcept
    {
        return -I * z() / m_y;
    }

    SiegelDomainPoint with_n(int n) const
    {
        return {m_a, m_b, m_y, n};
    }

private:
    double m_a;
    double m_b;
    double m_y;
    int m_n;
};

struct SeriesConfig {
    int max_m = 100000;
    double eps = 1e-16;

    void validate() const
    {
        if (!(eps > 0.0)) {
            throw DomainError("SeriesConfig: eps must be positive");
        }
        if (max_m < 1) {
            throw DomainError("SeriesConfig: max_m must be >= 1");
        }
    }
};

struct SeriesValue {
    Complex value;
    int terms = 0;
};

struct ResidueBreakdown {
    Complex at_zero;
    std::vector<std::pair<int, Complex>> at_ik;
    std::vector<std::pair<int, Complex>> at_ky;
    Complex total_times_2pi_i;
};

namespace detail
{

// Geometric decay rate of the Lambert sums at (z, iy): the three sums decay
// like exp(-2 pi m y), exp(-2 pi m (y + Im z)), exp(2 pi m Im z).
inline double lambert_rate(Complex z, double y)
{
    return std::min(y, std::min(y + z.imag(), -z.imag()));
}

// Smallest M with 3 e^{-2 pi r (M+1)} / ((M+1)(1 - e^{-2 pi r})(1 - e^{-2 pi y})) < eps.
inline int lambert_terms(Complex z, double y, const SeriesConfig &cfg, const char *where)
{
    cfg.validate();
    const double r = lambert_rate(z, y);
    if (!(r > 0.0)) {
        throw DomainError(std::string(where) + ": Lambert sums do not converge at this point");
    }
    const double log_const = std::log(3.0) - std::log(-std::expm1(-2.0 * pi * r)) - std::log(-std::expm1(-2.0 * pi * y));
    const double log_eps = std::log(cfg.eps);
    double log_bound = 0.0;
    for (int m = 1; m <= cfg.max_m; ++m) {
        log_bound = log_const - 2.0 * pi * r * (m + 1) - std::log(double(m + 1));
        if (log_bound < log_eps) {
            return m;
        }
    }
    throw TruncationError(std::string(where) + ": Lambert tail bound not reached within max_m", std::exp(log_bound),
                          cfg.max_m);
}

// sum_{m=1}^{M} (1/m) [ 1/(1-e^{2m pi y}) + e^{2m pi i z}/(1-e^{2m pi y}) + e^{-2m pi i z} e^{2m pi y}/(1-e^{2m pi y}) ]
// written with X = 2 m pi y > 0 as -(e^{-X} + e^{2 m pi i z - X} + e^{-2 m pi i z}) / (m (1 - e^{-X})).
inline Complex lambert_sums(Complex z, double y, int terms)
{
    Complex sum{0.0, 0.0};
    for (int m = 1; m <= terms; ++m) {
        const double x = 2.0 * pi * m * y;
        const Complex phase = 2.0 * pi * m * I * z;
        const Complex numer = std::exp(-x) + std::exp(phase - x) + std::exp(-phase);
        sum -= numer / (double(m) * one_minus_exp(Complex{-x, 0.0}));
    }
    return sum;
}

// -i pi/2 + i pi z - pi y / 4 + Lambert sums, i.e. log theta1(z, iy) on the expanded branch.
inline SeriesValue log_theta1_lambert_at(Complex z, double y, const SeriesConfig &cfg)
{
    const int terms = lambert_terms(z, y, cfg, "log_theta1_lambert");
    const Complex prefix = -I * (pi / 2.0) + I * pi * z - pi * y / 4.0;
    return {require_finite(prefix + lambert_sums(z, y, terms), "log_theta1_lambert"), terms};
}

// log theta1(z, iy) as the sum of principal logs of the product factors.
inline Complex log_theta1_product_at(Complex z, double y, const SeriesConfig &cfg)
{
    cfg.validate();
    const TauPoint tau(Complex{0.0, y});
    const EvalConfig ecfg{cfg.eps, cfg.max_m, false};
    const int terms = product_terms(z, tau, ecfg, "phi_direct");
    const Complex t = tau.value();
    const Complex two_pi_i = 2.0 * pi * I;
    auto log_one_minus_exp = [](Complex xi) {
        if (!(xi.real() < 0.0)) {
            throw DomainError("phi_direct: product factor outside the unit disc");
        }
        return principal_log(one_minus_exp(xi));
    };
    Complex sum = -I * (pi / 2.0) + I * pi * z + I * pi * t / 4.0;
    for (int n = 1; n <= terms; ++n) {
        sum += log_one_minus_exp(two_pi_i * (double(n) * t));
        sum += log_one_minus_exp(two_pi_i * (z + double(n) * t));
        sum += log_one_minus_exp(two_pi_i * (double(n - 1) * t - z));
    }
    return require_finite(sum, "phi_direct");
}

} // namespace detail

// log theta1(z, iy) = log(-i e^{i pi z} e^{-pi y/4}) + three Lambert sums, with log(-i) = -i pi/2.
inline SeriesValue log_theta1_lambert(const SiegelDomainPoint &p, const SeriesConfig &cfg = {})
{
    return detail::log_theta1_lambert_at(p.z(), p.y(), cfg);
}

// phi(z, iy) from the product factors at (z, iy) and (z/(iy), i/y).
inline Complex phi_direct(const SiegelDomainPoint &p, const SeriesConfig &cfg = {})
{
    return detail::log_theta1_product_at(p.z(), p.y(), cfg) -
           detail::log_theta1_product_at(p.inverted_z(), 1.0 / p.y(), cfg);
}

// phi(z, iy) as six Lambert sums plus -pi z/y + i pi z - (pi/4)(y - 1/y).
inline SeriesValue phi_lambert(const SiegelDomainPoint &p, const SeriesConfig &cfg = {})
{
    const Complex z = p.z();
    const double y = p.y();
    const Complex zi = p.inverted_z();
    const int direct_terms = detail::lambert_terms(z, y, cfg, "phi_lambert");
    const int inverted_terms = detail::lambert_terms(zi, 1.0 / y, cfg, "phi_lambert");
    const Complex sums = detail::lambert_sums(z, y, direct_terms) - detail::lambert_sums(zi, 1.0 / y, inverted_terms);
    const Complex tail = -pi * z / y + I * pi * z - (pi / 4.0) * (y - 1.0 / y);
    return {require_finite(sums + tail, "phi_lambert"), std::max(direct_terms, inverted_terms)};
}

// Distance from zeta to the nearest pole of F_n, and that pole.
inline std::pair<double, Complex> nearest_pole(Complex zeta, const SiegelDomainPoint &p)
{
    const double big_n = p.big_n();
    const double y = p.y();
    // i k / N, k in Z (k = 0 is the pole at the origin)
    const double ki = std::round(zeta.imag() * big_n);
    const Complex pole_i{0.0, ki / big_n};
    // k y / N
    const double kr = std::round(zeta.real() * big_n / y);
    const Complex pole_r{kr * y / big_n, 0.0};
    const double di = std::abs(zeta - pole_i);
    const double dr = std::abs(zeta - pole_r);
    return di <= dr ? std::pair{di, pole_i} : std::pair{dr, pole_r};
}

// F_n(zeta) = -(1/(8 zeta)) cot(pi i N zeta) cot(pi N zeta / y)
//           + (1/zeta) (1/(1 - e^{2 pi N zeta})) e^{-2 pi i (-zN/y + N/y) zeta} / (1 - e^{-2 pi i (N/y) zeta})
inline Complex f_n(Complex zeta, const SiegelDomainPoint &p)
{
    const double big_n = p.big_n();
    const double y = p.y();
    const auto [dist, pole] = nearest_pole(zeta, p);
    if (dist < 1e-12 / big_n) {
        throw PoleProximityError("f_n: evaluation too close to a pole", pole);
    }
    const Complex z = p.z();

    const Complex cot_part = -(1.0 / (8.0 * zeta)) * cot(pi * I * big_n * zeta) * cot(pi * big_n * zeta / y);

    // Each 1/(1 - e^s) factor is split into exp(shift) * ratio so that no
    // exponential is formed with a large positive real part.
    Complex log_scale{0.0, 0.0};
    Complex ratio{1.0, 0.0};
    auto absorb = [&](Complex s) {
        if (s.real() > 0.0) {
            log_scale -= s;
            ratio *= -1.0 / one_minus_exp(-s);
        } else {
            ratio *= 1.0 / one_minus_exp(s);
        }
    };
    absorb(2.0 * pi * big_n * zeta);
    const Complex numer_exp = -2.0 * pi * I * (-z * big_n / y + big_n / y) * zeta;
    absorb(-2.0 * pi * I * (big_n / y) * zeta);
    log_scale += numer_exp;
    const Complex exp_part = (1.0 / zeta) * ratio * std::exp(log_scale);

    return require_finite(cot_part + exp_part, "f_n");
}

// Res[F_n, 0] = (i/8)(y - 1/y) + z/2 - i z^2/(2y) + i z/(2y) - 1/4
inline Complex res_zero(const SiegelDomainPoint &p)
{
    const Complex z = p.z();
    const double y = p.y();
    return I / 8.0 * (y - 1.0 / y) + z / 2.0 - I * z * z / (2.0 * y) + I * z / (2.0 * y) - 0.25;
}

namespace detail
{
inline void check_residue_index(int k, const SiegelDomainPoint &p, const char *where)
{
    if (k == 0) {
        throw DomainError(std::string(where) + ": k must be nonzero");
    }
    if (std::abs(k) > p.n()) {
        throw DomainError(std::string(where) + ": |k| must not exceed n");
    }
}
} // namespace detail

// Res[F_n, ik/N] = (1/(8 pi i k)) (1 - 2/(1 - e^{2 pi k/y}))
//                - (1/(2 pi i k)) e^{-2 pi k z/y} e^{2 pi k/y} / (1 - e^{2 pi k/y})
inline Complex res_ik(int k, const SiegelDomainPoint &p)
{
    detail::check_residue_index(k, p, "res_ik");
    const Complex z = p.z();
    const double y = p.y();
    const double x = 2.0 * pi * k / y;
    const Complex c = 1.0 / (2.0 * pi * I * double(k));
    const Complex inv = inv_one_minus_exp(Complex{x, 0.0});
    // e^x / (1 - e^x) = -1 / (1 - e^{-x})
    const Complex ratio = -inv_one_minus_exp(Complex{-x, 0.0});
    return require_finite(c / 4.0 * (1.0 - 2.0 * inv) - c * std::exp(-2.0 * pi * k * z / y) * ratio, "res_ik");
}

// Res[F_n, ky/N] = -(1/(8 pi i k)) (1 - 2/(1 - e^{2 pi k y}))
//                + (1/(2 pi i k)) e^{2 pi i k z} / (1 - e^{2 pi k y})
inline Complex res_ky(int k, const SiegelDomainPoint &p)
{
    detail::check_residue_index(k, p, "res_ky");
    const Complex z = p.z();
    const double y = p.y();
    const double x = 2.0 * pi * k * y;
    const Complex c = 1.0 / (2.0 * pi * I * double(k));
    const Complex inv = inv_one_minus_exp(Complex{x, 0.0});
    return require_finite(-c / 4.0 * (1.0 - 2.0 * inv) + c * std::exp(2.0 * pi * I * double(k) * z) * inv, "res_ky");
}

// Every residue inside the rhombus, k = -n..-1, 1..n, and 2 pi i times their sum.
inline ResidueBreakdown residue_breakdown(const SiegelDomainPoint &p)
{
    ResidueBreakdown out;
    out.at_zero = res_zero(p);
    Complex sum = out.at_zero;
    for (int k = -p.n(); k <= p.n(); ++k) {
        if (k == 0) {
            continue;
        }
        const Complex ri = res_ik(k, p);
        const Complex ry = res_ky(k, p);
        out.at_ik.emplace_back(k, ri);
        out.at_ky.emplace_back(k, ry);
        sum += ri + ry;
    }
    out.total_times_2pi_i = 2.0 * pi * I * sum;
    return out;
}

// Closed form of 2 pi i times the residue sum: the six Lambert sums truncated
// at k = n plus -(pi/4)(y - 1/y) + i pi z + pi z^2/y - pi z/y - i pi/2.
inline Complex residue_sum_closed(const SiegelDomainPoint &p)
{
    const Complex z = p.z();
    const double y = p.y();
    const Complex sums = detail::lambert_sums(z, y, p.n()) - detail::lambert_sums(p.inverted_z(), 1.0 / y, p.n());
    const Complex tail = -(pi / 4.0) * (y - 1.0 / y) + I * pi * z + pi * z * z / y - pi * z / y - I * (pi / 2.0);
    return require_finite(sums + tail, "residue_sum_closed");
}

// Edges of the rhombus in traversal order.
enum class Edge { E1, E2, E3, E4 };

inline constexpr Edge all_edges[] = {Edge::E1, Edge::E2, Edge::E3, Edge::E4};

inline const char *edge_name(Edge e)
{
    switch (e) {
        case Edge::E1:
            return "E1";
        case Edge::E2:
            return "E2";
        case Edge::E3:
            return "E3";
        case Edge::E4:
            return "E4";
    }
    return "?";
}

// E1: -i -> y, E2: y -> i, E3: i -> -y, E4: -y -> -i
inline std::pair<Complex, Complex> edge_endpoints(Edge e, double y)
{
    switch (e) {
        case Edge::E1:
            return {Complex{0.0, -1.0}, Complex{y, 0.0}};
        case Edge::E2:
            return {Complex{y, 0.0}, Complex{0.0, 1.0}};
        case Edge::E3:
            return {Complex{0.0, 1.0}, Complex{-y, 0.0}};
        case Edge::E4:
            return {Complex{-y, 0.0}, Complex{0.0, -1.0}};
    }
    throw DomainError("edge_endpoints: unknown edge");
}

// Limit of zeta F_n(zeta) on the edge as n -> infinity.
inline double edge_limit_target(Edge e)
{
    return (e == Edge::E2 || e == Edge::E4) ? 0.125 : -0.125;
}

// zeta F_n(zeta) at zeta = (1 - t) start + t end.
inline Complex edge_limit_value(Edge e, double t, const SiegelDomainPoint &p)
{
    if (!(t >= 0.05 && t <= 0.95)) {
        throw DomainError("edge_limit_value: t must lie in [0.05, 0.95]");
    }
    const auto [start, end] = edge_endpoints(e, p.y());
    const Complex zeta = (1.0 - t) * start + t * end;
    return zeta * f_n(zeta, p);
}

// |phi(z, iy) + pi z^2/y - i pi/2 + log(y^{1/2})|
inline double theorem_residual(const SiegelDomainPoint &p, const SeriesConfig &cfg = {})
{
    const Complex z = p.z();
    const double y = p.y();
    const Complex lhs = phi_lambert(p, cfg).value + pi * z * z / y - I * (pi / 2.0);
    return std::abs(lhs + 0.5 * std::log(y));
}

// |theta1(z/tau, -1/tau) - rhs| / max(1, |rhs|) for the inversion law.
inline double transformation_residual(Complex z, const TauPoint &tau, const EvalConfig &cfg = {})
{
    const Complex rhs = inversion_rhs(z, tau, cfg);
    const Complex lhs = theta1(z / tau.value(), tau.inverted(), cfg);
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

} // namespace jtheta

#endif
