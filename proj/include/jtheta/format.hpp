#ifndef JTHETA_FORMAT_HPP
#define JTHETA_FORMAT_HPP

// Text forms of complex numbers and JSON numbers.
//
// Complex literals are single tokens of the form  a+bi  with either part
// optional: "i", "-2i", "0.5", "0.5-0.25i", "1e-3+2.5e-1i". Whitespace is
// rejected.

#include <array>
#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <system_error>

#include "complex.hpp"
#include "errors.hpp"

namespace jtheta
{

namespace detail
{

inline double parse_real(std::string_view text, std::string_view whole)
{
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    if (text.empty() || text.front() == '+') {
        throw DomainError("malformed complex literal '" + std::string(whole) + "'");
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw DomainError("malformed complex literal '" + std::string(whole) + "'");
    }
    return value;
}

inline std::string format_real(double value, int digits)
{
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, digits);
    if (ec != std::errc{}) {
        throw Error("format_real: buffer too small");
    }
    return std::string(buf.data(), ptr);
}

} // namespace detail

inline Complex parse_complex(std::string_view text)
{
    if (text.empty()) {
        throw DomainError("empty complex literal");
    }
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            throw DomainError("whitespace inside complex literal '" + std::string(text) + "'");
        }
    }
    if (text.back() != 'i') {
        return {detail::parse_real(text, text), 0.0};
    }

    const std::string_view body = text.substr(0, text.size() - 1);
    // Split at the last sign that is not an exponent sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    const std::string_view real_part = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
    const std::string_view imag_part = split == std::string_view::npos ? body : body.substr(split);

    double re = real_part.empty() ? 0.0 : detail::parse_real(real_part, text);
    double im = 0.0;
    if (imag_part.empty() || imag_part == "+") {
        im = 1.0;
    } else if (imag_part == "-") {
        im = -1.0;
    } else {
        im = detail::parse_real(imag_part, text);
    }
    return {re, im};
}

// "re+im i" / "re-im i" with the given number of significant digits.
inline std::string format_complex(Complex value, int digits = 15)
{
    std::string out = detail::format_real(value.real(), digits);
    out += std::signbit(value.imag()) ? '-' : '+';
    out += detail::format_real(std::abs(value.imag()), digits);
    out += 'i';
    return out;
}

// 17 significant digits; non-finite values become null.
inline std::string json_number(double value)
{
    if (!std::isfinite(value)) {
        return "null";
    }
    return detail::format_real(value, 17);
}

} // namespace jtheta

#endif
