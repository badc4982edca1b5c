#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace quadmap {

// Exact rational scalar. cpp_rational keeps gcd-reduced form with positive
// denominator, which is exactly the invariant we need.
using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

// High-precision float for the few irrational critical values (>= 50 digits).
using BigFloat = boost::multiprecision::cpp_bin_float_50;

using Point = std::vector<Rat>;

inline Int floor_div(const Int& num, const Int& den) {
    // den > 0
    Int q = num / den;
    if (num % den != 0 && num < 0) --q;
    return q;
}

inline Int rat_floor(const Rat& x) {
    return floor_div(numerator(x), denominator(x));
}

// Reduce to the torus representative in [0, 1).
inline Rat mod1(const Rat& x) {
    return x - Rat(rat_floor(x));
}

inline double to_double(const Rat& x) {
    return static_cast<double>(x);
}

inline BigFloat to_bigfloat(const Rat& x) {
    return BigFloat(numerator(x).str()) / BigFloat(denominator(x).str());
}

inline std::string rat_to_string(const Rat& x) {
    std::string s = numerator(x).str();
    if (denominator(x) != 1) s += "/" + denominator(x).str();
    return s;
}

// Parses "p/q" or "p". Throws std::invalid_argument on malformed input.
inline Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::runtime_error& e) {
        throw std::invalid_argument("bad rational literal '" + s + "'");
    }
}

}  // namespace quadmap
