#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <string_view>

namespace almaff {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// All engine errors carry the module they came from; the CLI prints them as
// "error: <module>: <message>".
struct Error : std::runtime_error {
    std::string module;
    Error(std::string mod, const std::string& msg)
        : std::runtime_error(msg), module(std::move(mod)) {}
};

// Exact number: rational, or a + b*sqrt(d) in a real quadratic field.
// Invariants: d == 0 iff b == 0 (plain rational); otherwise d >= 2 square-free
// and b != 0.  Equality is representation equality.
class Scalar {
    Rat a_, b_;
    long d_ = 0;

  public:
    Scalar() = default;
    Scalar(long v) : a_(v) {}
    Scalar(const Int& v) : a_(v) {}
    Scalar(Rat v) : a_(std::move(v)) {}
    Scalar(Rat a, Rat b, long d);

    static Scalar sqrt_of(long d) { return Scalar(Rat(0), Rat(1), d); }

    bool is_rational() const { return d_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_integer() const { return d_ == 0 && denominator(a_) == 1; }
    const Rat& qa() const { return a_; }
    const Rat& qb() const { return b_; }
    long field() const { return d_; }

    int sign() const;
    Scalar operator-() const;
    Scalar inverse() const;

    friend Scalar operator+(const Scalar& x, const Scalar& y);
    friend Scalar operator-(const Scalar& x, const Scalar& y);
    friend Scalar operator*(const Scalar& x, const Scalar& y);
    friend Scalar operator/(const Scalar& x, const Scalar& y);
    Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
    Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
    Scalar& operator*=(const Scalar& y) { return *this = *this * y; }
    Scalar& operator/=(const Scalar& y) { return *this = *this / y; }

    bool operator==(const Scalar& y) const {
        return d_ == y.d_ && a_ == y.a_ && b_ == y.b_;
    }
    bool operator!=(const Scalar& y) const { return !(*this == y); }

    // Total order used only for canonical forms: rationals (numeric) first,
    // then quadratics by (d, a, b).  Not the numeric order across fields.
    int cmp_key(const Scalar& y) const;

    // Text encoding: "p", "p/q", or "(p + q*sqrt(d))/r" with r > 0.
    std::string str() const;
    static Scalar parse(std::string_view s);

    // numeric magnitude bound: max(|num|, |den|) over the components
    Int height() const;
};

inline Scalar abs(const Scalar& x) { return x.sign() < 0 ? -x : x; }

} // namespace almaff
