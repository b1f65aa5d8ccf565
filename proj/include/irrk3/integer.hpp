#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace irrk3 {

/// Arbitrary-precision signed integer used for every invariant computation.
using Integer = boost::multiprecision::cpp_int;

/// Raised when an argument lies outside the domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Integer ceil_div(const Integer& a, const Integer& b) {
    return -floor_div(-a, b);
}

inline bool is_even(const Integer& a) { return (a % 2) == 0; }

/// floor(sqrt(a)) for a >= 0.
inline Integer isqrt(const Integer& a) {
    if (a < 0) throw DomainError("isqrt of a negative integer");
    return boost::multiprecision::sqrt(a);
}

inline std::string to_string(const Integer& a) { return a.str(); }

/// Narrowing conversion that refuses to wrap.
inline std::int64_t to_int64(const Integer& a) {
    if (a > std::numeric_limits<std::int64_t>::max() || a < std::numeric_limits<std::int64_t>::min())
        throw DomainError("integer " + a.str() + " does not fit in 64 bits");
    return a.convert_to<std::int64_t>();
}

}  // namespace irrk3
