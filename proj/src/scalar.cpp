#include "almaff/scalar.hpp"
#include <regex>

namespace almaff {

static bool squarefree(long d) {
    for (long p = 2; p * p <= d; ++p)
        if (d % (p * p) == 0) return false;
    return true;
}

Scalar::Scalar(Rat a, Rat b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    if (b_ == 0) {
        d_ = 0;
    } else {
        if (d_ < 2) throw Error("scalar", "quadratic field needs d >= 2");
        if (!squarefree(d_)) throw Error("scalar", "d must be square-free: " + std::to_string(d_));
    }
}

int Scalar::sign() const {
    auto rsign = [](const Rat& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); };
    if (d_ == 0) return rsign(a_);
    int sa = rsign(a_), sb = rsign(b_);
    if (sa == 0) return sb;
    if (sb == 0) return sa;
    if (sa == sb) return sa;
    // a, b of opposite sign: compare a^2 with b^2 d
    Rat t = a_ * a_ - b_ * b_ * d_;
    return sa > 0 ? rsign(t) : -rsign(t);
}

Scalar Scalar::operator-() const {
    Scalar r;
    r.a_ = -a_; r.b_ = -b_; r.d_ = d_;
    return r;
}

static long join_field(const Scalar& x, const Scalar& y) {
    long dx = x.field(), dy = y.field();
    if (dx == 0) return dy;
    if (dy == 0 || dy == dx) return dx;
    throw Error("scalar", "mixed quadratic fields: sqrt(" + std::to_string(dx) +
                              ") vs sqrt(" + std::to_string(dy) + ")");
}

Scalar operator+(const Scalar& x, const Scalar& y) {
    long d = join_field(x, y);
    return Scalar(x.a_ + y.a_, x.b_ + y.b_, d == 0 ? 2 : d);
}

Scalar operator-(const Scalar& x, const Scalar& y) { return x + (-y); }

Scalar operator*(const Scalar& x, const Scalar& y) {
    long d = join_field(x, y);
    if (d == 0) return Scalar(x.a_ * y.a_);
    return Scalar(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, d);
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw Error("scalar", "division by zero");
    if (d_ == 0) return Scalar(Rat(1) / a_);
    Rat nrm = a_ * a_ - b_ * b_ * d_; // nonzero: sqrt(d) irrational
    return Scalar(a_ / nrm, -b_ / nrm, d_);
}

Scalar operator/(const Scalar& x, const Scalar& y) {
    join_field(x, y);
    return x * y.inverse();
}

int Scalar::cmp_key(const Scalar& y) const {
    if (d_ != y.d_) {
        if (d_ == 0) return -1;
        if (y.d_ == 0) return 1;
        return d_ < y.d_ ? -1 : 1;
    }
    if (a_ != y.a_) return a_ < y.a_ ? -1 : 1;
    if (b_ != y.b_) return b_ < y.b_ ? -1 : 1;
    return 0;
}

static std::string int_str(const Int& v) { return v.str(); }

std::string Scalar::str() const {
    if (d_ == 0) {
        if (denominator(a_) == 1) return int_str(numerator(a_));
        return int_str(numerator(a_)) + "/" + int_str(denominator(a_));
    }
    Int r = lcm(denominator(a_), denominator(b_));
    Int p = numerator(a_) * (r / denominator(a_));
    Int q = numerator(b_) * (r / denominator(b_));
    return "(" + int_str(p) + " + " + int_str(q) + "*sqrt(" + std::to_string(d_) + "))/" +
           int_str(r);
}

Scalar Scalar::parse(std::string_view sv) {
    static const std::regex re_int(R"(^\s*(-?\d+)\s*$)");
    static const std::regex re_rat(R"(^\s*(-?\d+)\s*/\s*(\d+)\s*$)");
    static const std::regex re_quad(
        R"(^\s*\(\s*(-?\d+)\s*\+\s*(-?\d+)\s*\*\s*sqrt\s*\(\s*(\d+)\s*\)\s*\)\s*/\s*(\d+)\s*$)");
    std::string s(sv);
    std::smatch m;
    if (std::regex_match(s, m, re_int)) return Scalar(Rat(Int(m[1].str())));
    if (std::regex_match(s, m, re_rat)) {
        Int den(m[2].str());
        if (den == 0) throw Error("scalar", "zero denominator in \"" + s + "\"");
        return Scalar(Rat(Int(m[1].str()), den));
    }
    if (std::regex_match(s, m, re_quad)) {
        Int r(m[4].str());
        if (r == 0) throw Error("scalar", "zero denominator in \"" + s + "\"");
        long d = std::stol(m[3].str());
        return Scalar(Rat(Int(m[1].str()), r), Rat(Int(m[2].str()), r), d);
    }
    throw Error("scalar", "cannot parse scalar \"" + s + "\"");
}

Int Scalar::height() const {
    Int h = abs(numerator(a_));
    if (denominator(a_) > h) h = denominator(a_);
    if (abs(numerator(b_)) > h) h = abs(numerator(b_));
    if (denominator(b_) > h) h = denominator(b_);
    return h;
}

} // namespace almaff
