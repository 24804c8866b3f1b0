#ifndef JTHETA_ERRORS_HPP
#define JTHETA_ERRORS_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace jtheta
{

// Base of everything the library throws.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (lower half-plane
// tau, zero base of a power, k = 0 residue index, ...).
class DomainError : public Error
{
public:
    using Error::Error;
};

// A truncated product or series could not meet its tail bound within the
// configured term cap.
class TruncationError : public Error
{
public:
    TruncationError(const std::string &what, double achieved_bound, int terms)
        : Error(what), m_achieved_bound(achieved_bound), m_terms(terms)
    {
    }

    double achieved_bound() const noexcept
    {
        return m_achieved_bound;
    }
    int terms() const noexcept
    {
        return m_terms;
    }

private:
    double m_achieved_bound;
    int m_terms;
};

// Quadrature did not reach its requested tolerance.
class AccuracyError : public Error
{
public:
    AccuracyError(const std::string &what, double error_estimate) : Error(what), m_error_estimate(error_estimate) {}

    double error_estimate() const noexcept
    {
        return m_error_estimate;
    }

private:
    double m_error_estimate;
};

// Evaluation requested too close to a pole of a meromorphic integrand.
class PoleProximityError : public DomainError
{
public:
    PoleProximityError(const std::string &what, std::complex<double> pole) : DomainError(what), m_pole(pole) {}

    std::complex<double> pole() const noexcept
    {
        return m_pole;
    }

private:
    std::complex<double> m_pole;
};

// A result left the binary64 range (overflow or NaN).
class NonFiniteError : public Error
{
public:
    using Error::Error;
};

} // namespace jtheta

#endif
