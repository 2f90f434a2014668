#pragma once

#include <stdexcept>
#include <string>

namespace commdet {

// Raised when an exact computation would exceed its enforced cap
// (exact scan vertex cap, enumeration node budgets, exhaustive-sum sizes).
class FeasibilityError : public std::runtime_error {
public:
    explicit FeasibilityError(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace commdet
