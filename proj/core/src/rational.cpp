#include "commdet/rational.hpp"

#include <algorithm>

namespace commdet {

namespace {

Rat::Int igcd(Rat::Int a, Rat::Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Rat::Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::string int128_to_string(Rat::Int v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                              : static_cast<unsigned __int128>(v);
    std::string s;
    while (u > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

}  // namespace

Rat::Int Rat::checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r))
        throw FeasibilityError("Rat: 128-bit overflow in exact arithmetic");
    return r;
}

void Rat::normalize() {
    require(den_ != 0, "Rat: zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    Int g = igcd(num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
    if (num_ == 0) den_ = 1;
}

Rat::Rat(long long n, long long d) : num_(n), den_(d) { normalize(); }

Rat Rat::from_ints(Int n, Int d) {
    Rat r;
    r.num_ = n;
    r.den_ = d;
    r.normalize();
    return r;
}

Rat Rat::operator+(const Rat& o) const {
    // Cross-reduce first to keep intermediates small.
    Int g = igcd(den_, o.den_);
    Int ld = den_ / g;
    Int rd = o.den_ / g;
    Int n = checked_mul(num_, rd);
    Int m = checked_mul(o.num_, ld);
    if (__builtin_add_overflow(n, m, &n))
        throw FeasibilityError("Rat: 128-bit overflow in exact arithmetic");
    return from_ints(n, checked_mul(checked_mul(ld, rd), g));
}

Rat Rat::operator-(const Rat& o) const {
    Rat neg = o;
    neg.num_ = -neg.num_;
    return *this + neg;
}

Rat Rat::operator*(const Rat& o) const {
    Int g1 = igcd(num_, o.den_);
    Int g2 = igcd(o.num_, den_);
    return from_ints(checked_mul(num_ / g1, o.num_ / g2),
                     checked_mul(den_ / g2, o.den_ / g1));
}

Rat Rat::operator/(const Rat& o) const {
    require(o.num_ != 0, "Rat: division by zero");
    Rat inv = from_ints(o.den_, o.num_);
    return *this * inv;
}

Rat Rat::pow(int e) const {
    require(e >= 0, "Rat: negative exponent");
    Rat r(1);
    for (int i = 0; i < e; ++i) r *= *this;
    return r;
}

double Rat::to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rat::to_string() const {
    return int128_to_string(num_) + "/" + int128_to_string(den_);
}

}  // namespace commdet
