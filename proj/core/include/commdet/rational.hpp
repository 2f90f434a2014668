#pragma once

// Exact rational arithmetic on 128-bit integers, enough for exhaustive
// likelihood sums over all graphs on <= 5 vertices with dyadic edge
// probabilities.  Overflow raises FeasibilityError instead of wrapping.

#include <string>

#include "commdet/errors.hpp"

namespace commdet {

class Rat {
public:
    using Int = __int128;

    Rat() : num_(0), den_(1) {}
    Rat(long long n) : num_(n), den_(1) {}
    Rat(long long n, long long d);

    static Rat from_ints(Int n, Int d);

    Int num() const { return num_; }
    Int den() const { return den_; }

    Rat operator+(const Rat& o) const;
    Rat operator-(const Rat& o) const;
    Rat operator*(const Rat& o) const;
    Rat operator/(const Rat& o) const;
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }

    bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rat& o) const { return !(*this == o); }

    Rat pow(int e) const;
    double to_double() const;
    std::string to_string() const;  // "num/den"

private:
    Int num_;
    Int den_;  // > 0, gcd(|num|, den) == 1

    void normalize();
    static Int checked_mul(Int a, Int b);
};

}  // namespace commdet
