#ifndef JTHETA_COMPLEX_HPP
#define JTHETA_COMPLEX_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace jtheta
{

using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr Complex I{0.0, 1.0};

inline bool is_finite(Complex c) noexcept
{
    return std::isfinite(c.real()) && std::isfinite(c.imag());
}

inline Complex require_finite(Complex c, const char *where)
{
    if (!is_finite(c)) {
        throw NonFiniteError(std::string(where) + ": result is not finite");
    }
    return c;
}

// Principal logarithm, arg in (-pi, pi]. std::log places the cut on the
// negative real axis but returns -pi for a negative real with a -0.0
// imaginary part, so the sign of zero is normalised first.
inline Complex principal_log(Complex z)
{
    if (z == Complex{}) {
        throw DomainError("principal_log: zero argument");
    }
    if (z.imag() == 0.0) {
        z = Complex{z.real(), 0.0};
    }
    return std::log(z);
}

// base^exponent = exp(exponent * log(base)) with -pi < arg(base) <= pi.
inline Complex principal_pow(Complex base, Complex exponent)
{
    if (base == Complex{}) {
        throw DomainError("principal_pow: zero base");
    }
    return require_finite(std::exp(exponent * principal_log(base)), "principal_pow");
}

// exp(z) - 1 without cancellation for small |z|.
inline Complex expm1(Complex z)
{
    const double x = z.real();
    const double y = z.imag();
    const double half_sin = std::sin(0.5 * y);
    const double re = std::expm1(x) * std::cos(y) - 2.0 * half_sin * half_sin;
    const double im = std::exp(x) * std::sin(y);
    return {re, im};
}

// 1 - exp(z), accurate when exp(z) is close to 1.
inline Complex one_minus_exp(Complex z)
{
    return -expm1(z);
}

// 1 / (1 - exp(z)) without overflow for large Re z.
inline Complex inv_one_minus_exp(Complex z)
{
    if (z.real() > 0.0) {
        // 1/(1 - e^z) = -e^{-z} / (1 - e^{-z})
        return -std::exp(-z) / one_minus_exp(-z);
    }
    return 1.0 / one_minus_exp(z);
}

// cot(w) written through exp(+-2iw) so that large |Im w| saturates to -+i
// instead of overflowing.
inline Complex cot(Complex w)
{
    if (w.imag() >= 0.0) {
        // cot w = -i (1 + 2 e^{2iw} / (1 - e^{2iw}))
        const Complex e = std::exp(2.0 * I * w);
        return -I * (1.0 + 2.0 * e / one_minus_exp(2.0 * I * w));
    }
    // cot w = i (1 + 2 e^{-2iw} / (1 - e^{-2iw}))
    const Complex e = std::exp(-2.0 * I * w);
    return I * (1.0 + 2.0 * e / one_minus_exp(-2.0 * I * w));
}

} // namespace jtheta

#endif
