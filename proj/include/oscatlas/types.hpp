#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace oscatlas {

using Complex = std::complex<double>;

struct RealInterval {
    double lo = 0.0;
    double hi = 0.0;

    RealInterval() = default;
    RealInterval(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (!(lo <= hi)) throw std::invalid_argument("RealInterval: lo > hi");
    }
    double length() const { return hi - lo; }
    bool contains(double x) const { return lo <= x && x <= hi; }
};

// Library error hierarchy.  Callers that want to distinguish failure modes
// catch the specific type; everything derives from Error.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// gamma() at a non-positive integer; `pole` is the offending integer.
class PoleError : public Error {
public:
    PoleError(const std::string& msg, double pole_) : Error(msg), pole(pole_) {}
    double pole;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class OrderMismatch : public Error {
public:
    using Error::Error;
};

class NonpositiveLeadError : public Error {
public:
    using Error::Error;
};

class NonzeroInnerConstant : public Error {
public:
    using Error::Error;
};

class NotInvertible : public Error {
public:
    using Error::Error;
};

class BadParams : public Error {
public:
    using Error::Error;
};

// Amplitude class parameter violation: delta >= p - 1.
class InadmissibleClass : public Error {
public:
    using Error::Error;
};

// Integration-by-parts order outside the valid range for the requested use.
class OrderError : public Error {
public:
    using Error::Error;
};

class NonConvergence : public Error {
public:
    using Error::Error;
};

class CrosscheckFailure : public Error {
public:
    using Error::Error;
};

class DimensionTooLarge : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public Error {
public:
    using Error::Error;
};

class SupportTooWide : public Error {
public:
    using Error::Error;
};

class InadmissiblePhase : public Error {
public:
    using Error::Error;
};

class DomainPowerMismatch : public Error {
public:
    using Error::Error;
};

class BadDimension : public Error {
public:
    using Error::Error;
};

class SignConstraintViolation : public Error {
public:
    using Error::Error;
};

class ConfigParse : public Error {
public:
    using Error::Error;
};

enum class Sign { plus, minus };

inline int sign_value(Sign s) { return s == Sign::plus ? +1 : -1; }
inline Sign flip(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }
inline char sign_char(Sign s) { return s == Sign::plus ? '+' : '-'; }

// Gauss symbol [x]: the greatest integer <= x.
inline long gauss_floor(double x) { return static_cast<long>(std::floor(x)); }

// [x): the greatest integer strictly less than x.
inline long strict_floor(double x) {
    double f = std::floor(x);
    if (f == x) return static_cast<long>(f) - 1;
    return static_cast<long>(f);
}

inline double positive_part(double t) { return t > 0.0 ? t : 0.0; }

}  // namespace oscatlas
