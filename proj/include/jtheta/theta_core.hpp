#ifndef JTHETA_THETA_CORE_HPP
#define JTHETA_THETA_CORE_HPP

// Jacobi theta functions from the triple-product form
//
//   theta1(z, tau) = -i w q^{1/4} prod_{n>=1} (1 - q^{2n})(1 - w^2 q^{2n})(1 - w^{-2} q^{2n-2})
//   theta3(z, tau) =              prod_{n>=1} (1 - q^{2n})(1 + w^2 q^{2n-1})(1 + w^{-2} q^{2n-1})
//
// with q = exp(i pi tau), w = exp(i pi z), and the derived pair
// theta4(z) = theta3(z + 1/2), theta2(z) = -theta1(z - 1/2).
//
// Every factor is written as 1 - exp(xi) and evaluated with a complex expm1.
// Factors with |exp(xi)| > 1 are rewritten as -exp(xi) (1 - exp(-xi)) and the
// exponent xi is carried in a separate log-scale, so large |Im z| or the
// z' = z tau' produced by modular inversion cannot overflow the running
// product. The scale is applied once, at the end.
//
// Truncation: the product stops at the first M for which the geometric tail
//
//   |q|^{2M} (1 + |w|^2 + |w|^{-2}) / (1 - |q|^2) < eps
//
// holds. This bounds the sum of the neglected |exp(xi)|, i.e. the relative
// error of the truncated product to first order.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "complex.hpp"
#include "errors.hpp"

namespace jtheta
{

// A point of the upper half-plane.
class TauPoint
{
public:
    explicit TauPoint(Complex tau) : m_tau(tau)
    {
        if (!is_finite(tau)) {
            throw DomainError("TauPoint: tau is not finite");
        }
        if (!(tau.imag() > 0.0)) {
            throw DomainError("TauPoint: Im(tau) must be positive");
        }
    }

    Complex value() const noexcept
    {
        return m_tau;
    }
    double imag() const noexcept
    {
        return m_tau.imag();
    }

    // The modular inversion -1/tau, again in the upper half-plane.
    TauPoint inverted() const
    {
        return TauPoint(-1.0 / m_tau);
    }

private:
    Complex m_tau;
};

struct EvalConfig {
    double eps = 1e-15;
    int max_terms = 100000;
    bool reduction_enabled = false;

    void validate() const
    {
        if (!(eps > 0.0 && eps < 1.0)) {
            throw DomainError("EvalConfig: eps must lie in (0, 1)");
        }
        if (max_terms < 1) {
            throw DomainError("EvalConfig: max_terms must be >= 1");
        }
    }
};

struct ThetaValue {
    Complex value;
    int terms_used = 0;
    bool reduced = false;
};

inline Complex nome(const TauPoint &tau)
{
    return std::exp(I * pi * tau.value());
}

namespace detail
{

// value = mantissa * exp(log_scale); exact_zero short-circuits a vanishing factor.
struct ScaledProduct {
    Complex mantissa{1.0, 0.0};
    Complex log_scale{0.0, 0.0};
    int terms = 0;
    bool exact_zero = false;

    Complex finish(const char *where) const
    {
        if (exact_zero) {
            return Complex{0.0, 0.0};
        }
        return require_finite(mantissa * std::exp(log_scale), where);
    }

    void multiply_one_minus_exp(Complex xi)
    {
        if (exact_zero) {
            return;
        }
        // 1 - exp(xi) vanishes iff xi / (2 pi i) is an integer.
        const Complex t = xi / (2.0 * pi * I);
        const double tol = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
        if (std::abs(t - std::round(t.real())) <= tol) {
            exact_zero = true;
            return;
        }
        if (xi.real() > 0.0) {
            log_scale += xi;
            mantissa *= -one_minus_exp(-xi);
        } else {
            mantissa *= one_minus_exp(xi);
        }
        renormalise();
    }

    void renormalise()
    {
        const double m = std::abs(mantissa);
        if (m > 1e100 || (m < 1e-100 && m > 0.0)) {
            log_scale += std::log(m);
            mantissa /= m;
        }
    }
};

// log of the tail bound |q|^{2M} W / (1 - |q|^2) with W = 1 + |w|^2 + |w|^{-2}.
inline double log_tail_bound(int terms, double log_abs_q, double log_abs_w)
{
    const double a = 2.0 * log_abs_w;
    const double peak = std::abs(a);
    const double log_w_sum = peak + std::log(std::exp(-peak) + std::exp(a - peak) + std::exp(-a - peak));
    return 2.0 * terms * log_abs_q + log_w_sum - std::log(-std::expm1(2.0 * log_abs_q));
}

// Smallest M >= 1 meeting the tail bound; throws if M would exceed max_terms.
inline int product_terms(Complex z, const TauPoint &tau, const EvalConfig &cfg, const char *where)
{
    const double log_abs_q = -pi * tau.imag();
    const double log_abs_w = -pi * z.imag();
    const double log_eps = std::log(cfg.eps);
    const double m0 = log_tail_bound(0, log_abs_q, log_abs_w);
    // m0 + 2 M log|q| < log eps
    const double needed = (log_eps - m0) / (2.0 * log_abs_q);
    double m = std::floor(needed) + 1.0;
    if (m < 1.0) {
        m = 1.0;
    }
    if (!(m <= static_cast<double>(cfg.max_terms))) {
        const double achieved = std::exp(log_tail_bound(cfg.max_terms, log_abs_q, log_abs_w));
        throw TruncationError(std::string(where) + ": tail bound not reached within max_terms", achieved,
                              cfg.max_terms);
    }
    return static_cast<int>(m);
}

inline ScaledProduct theta1_scaled(Complex z, const TauPoint &tau, const EvalConfig &cfg)
{
    cfg.validate();
    if (!is_finite(z)) {
        throw DomainError("theta1: z is not finite");
    }
    const Complex t = tau.value();
    ScaledProduct p;
    p.terms = product_terms(z, tau, cfg, "theta1");
    p.mantissa = -I;
    // w q^{1/4} = exp(i pi z + i pi tau / 4); never a fourth root of q.
    p.log_scale = I * pi * z + I * pi * t / 4.0;
    const Complex two_pi_i = 2.0 * pi * I;
    for (int n = 1; n <= p.terms && !p.exact_zero; ++n) {
        p.multiply_one_minus_exp(two_pi_i * (double(n) * t));
        p.multiply_one_minus_exp(two_pi_i * (z + double(n) * t));
        p.multiply_one_minus_exp(two_pi_i * (double(n - 1) * t - z));
    }
    return p;
}

inline ScaledProduct theta3_scaled(Complex z, const TauPoint &tau, const EvalConfig &cfg)
{
    cfg.validate();
    if (!is_finite(z)) {
        throw DomainError("theta3: z is not finite");
    }
    const Complex t = tau.value();
    ScaledProduct p;
    p.terms = product_terms(z, tau, cfg, "theta3");
    const Complex two_pi_i = 2.0 * pi * I;
    // 1 + exp(xi) = 1 - exp(xi + i pi)
    for (int n = 1; n <= p.terms && !p.exact_zero; ++n) {
        const double odd = double(2 * n - 1);
        p.multiply_one_minus_exp(two_pi_i * (double(n) * t));
        p.multiply_one_minus_exp(I * pi * (2.0 * z + odd * t + 1.0));
        p.multiply_one_minus_exp(I * pi * (odd * t - 2.0 * z + 1.0));
    }
    return p;
}

} // namespace detail

inline Complex theta1(Complex z, const TauPoint &tau, const EvalConfig &cfg = {})
{
    return detail::theta1_scaled(z, tau, cfg).finish("theta1");
}

inline Complex theta3(Complex z, const TauPoint &tau, const EvalConfig &cfg = {})
{
    return detail::theta3_scaled(z, tau, cfg).finish("theta3");
}

inline Complex theta4(Complex z, const TauPoint &tau, const EvalConfig &cfg = {})
{
    return theta3(z + 0.5, tau, cfg);
}

inline Complex theta2(Complex z, const TauPoint &tau, const EvalConfig &cfg = {})
{
    return -theta1(z - 0.5, tau, cfg);
}

// Number of product factors theta1 uses at (z, tau) for cfg.
inline int theta1_terms(Complex z, const TauPoint &tau, const EvalConfig &cfg = {})
{
    cfg.validate();
    return detail::product_terms(z, tau, cfg, "theta1");
}

namespace detail
{

// Unevaluated sum hi + lo.
struct TwoDouble {
    double hi;
    double lo;
};

inline TwoDouble two_sum(double a, double b)
{
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

// a*x + b*y carried to about twice the working precision.
inline TwoDouble dot2(double a, double x, double b, double y)
{
    const double p = a * x;
    const double pe = std::fma(a, x, -p);
    const double q = b * y;
    const double qe = std::fma(b, y, -q);
    const auto s = two_sum(p, q);
    return {s.hi, s.lo + pe + qe};
}

// exp(i pi u) for u = re + i im given as two-double parts. The real part is
// reduced modulo 2 before the angle is formed, and pi * im is split with an
// fma, so large exponents do not lose the low bits of their phase or modulus.
inline Complex exp_i_pi(TwoDouble re, TwoDouble im)
{
    constexpr double pi_hi = pi;
    constexpr double pi_lo = 1.2246467991473532e-16;
    const double turn = std::fmod(re.hi, 2.0) + re.lo;
    const double m = pi_hi * im.hi;
    const double m_err = std::fma(pi_hi, im.hi, -m) + pi_hi * im.lo + pi_lo * im.hi;
    const double modulus = std::exp(-m) * (1.0 - m_err);
    const double angle = pi * turn;
    return {modulus * std::cos(angle), modulus * std::sin(angle)};
}

} // namespace detail

// Independent cross-check of theta1 through the classical sine series
//   2 sum_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1) pi z).
// Each term is written as (-i)(exp(i pi (tau k^2 + s)) - exp(i pi (tau k^2 - s))),
// k = n + 1/2, s = (2n+1) z, with the exponents formed in two-double arithmetic.
// Truncated once past the peak term with a geometric tail below eps (absolute).
inline ThetaValue theta1_series_oracle(Complex z, const TauPoint &tau, const EvalConfig &cfg = {})
{
    cfg.validate();
    if (!is_finite(z)) {
        throw DomainError("theta1_series_oracle: z is not finite");
    }
    const Complex t = tau.value();
    const double v = tau.imag();
    const double h = std::abs(z.imag());
    const double log_eps = std::log(cfg.eps);
    // log of the bound on |term n|
    auto log_term_bound = [&](double n) {
        const double k = n + 0.5;
        return std::log(2.0) - pi * v * k * k + 2.0 * k * pi * h;
    };

    Complex sum{0.0, 0.0};
    for (int n = 0; n < cfg.max_terms; ++n) {
        const double k2 = double(n) * double(n) + double(n) + 0.25;
        const double odd = double(2 * n + 1);
        const Complex plus = detail::exp_i_pi(detail::dot2(t.real(), k2, odd, z.real()),
                                              detail::dot2(t.imag(), k2, odd, z.imag()));
        const Complex minus = detail::exp_i_pi(detail::dot2(t.real(), k2, -odd, z.real()),
                                               detail::dot2(t.imag(), k2, -odd, z.imag()));
        const Complex term = -I * (plus - minus);
        sum += (n % 2 == 0) ? term : -term;

        const double next_ratio = -2.0 * pi * v * (n + 2) + 2.0 * pi * h;
        if (next_ratio < 0.0) {
            const double log_tail = log_term_bound(n + 1) - std::log(-std::expm1(next_ratio));
            if (log_tail < log_eps) {
                return {require_finite(sum, "theta1_series_oracle"), n + 1, false};
            }
        }
    }
    throw TruncationError("theta1_series_oracle: tail bound not reached within max_terms",
                          std::exp(log_term_bound(cfg.max_terms)), cfg.max_terms);
}

// Right-hand side of the inversion law
//   theta1(z/tau, -1/tau) = -i (-i tau)^{1/2} exp(i pi z^2 / tau) theta1(z, tau)
// with the principal square root.
inline Complex inversion_rhs(Complex z, const TauPoint &tau, const EvalConfig &cfg = {})
{
    const Complex t = tau.value();
    auto p = detail::theta1_scaled(z, tau, cfg);
    p.mantissa *= -I;
    p.log_scale += 0.5 * principal_log(-I * t) + I * pi * z * z / t;
    return p.finish("inversion_rhs");
}

// theta1 with a single modular inversion when |tau| < 1:
//   theta1(z, tau) = -i (-i tau')^{1/2} exp(i pi z'^2 / tau') theta1(z', tau'),
//   tau' = -1/tau, z' = z tau',
// which runs the product at Im tau' = Im tau / |tau|^2 > Im tau.
inline ThetaValue theta1_reduced(Complex z, const TauPoint &tau, const EvalConfig &cfg = {})
{
    if (!(cfg.reduction_enabled && std::abs(tau.value()) < 1.0)) {
        const auto p = detail::theta1_scaled(z, tau, cfg);
        return {p.finish("theta1"), p.terms, false};
    }
    const TauPoint inv = tau.inverted();
    const Complex tp = inv.value();
    const Complex zp = z * tp;
    auto p = detail::theta1_scaled(zp, inv, cfg);
    p.mantissa *= -I;
    p.log_scale += 0.5 * principal_log(-I * tp) + I * pi * zp * zp / tp;
    return {p.finish("theta1_reduced"), p.terms, true};
}

enum class ThetaKind { theta1, theta2, theta3, theta4 };

// Value and product length of any of the four functions. Reduction (when
// enabled in cfg) applies to theta1 and theta2, which are tied by the shift
// relation; theta3 and theta4 are always evaluated directly.
inline ThetaValue evaluate(ThetaKind kind, Complex z, const TauPoint &tau, const EvalConfig &cfg = {})
{
    switch (kind) {
        case ThetaKind::theta1:
            return theta1_reduced(z, tau, cfg);
        case ThetaKind::theta2: {
            auto r = theta1_reduced(z - 0.5, tau, cfg);
            r.value = -r.value;
            return r;
        }
        case ThetaKind::theta3: {
            const auto p = detail::theta3_scaled(z, tau, cfg);
            return {p.finish("theta3"), p.terms, false};
        }
        case ThetaKind::theta4: {
            const auto p = detail::theta3_scaled(z + 0.5, tau, cfg);
            return {p.finish("theta4"), p.terms, false};
        }
    }
    throw DomainError("evaluate: unknown theta kind");
}

} // namespace jtheta

#endif
