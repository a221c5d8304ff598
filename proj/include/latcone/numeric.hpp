#pragma once

// Exact scalar types shared by every module. Integers are arbitrary
// precision, rationals are always kept in lowest terms with a positive
// denominator.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

#include "latcone/errors.hpp"

namespace latcone {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline int sign(const Int& x) { return x < 0 ? -1 : (x > 0 ? 1 : 0); }
inline int sign(const Rat& x) { return x < 0 ? -1 : (x > 0 ? 1 : 0); }

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw input_error("rational with zero denominator");
    return Rat(num) / Rat(den);
}

// floor(p/q) for q != 0; cpp_int division alone truncates toward zero.
inline Int floor_div(Int p, Int q) {
    if (q == 0) throw input_error("division by zero");
    if (q < 0) { p = -p; q = -q; }
    Int d = p / q;
    if (p % q != 0 && p < 0) --d;
    return d;
}

inline Int ceil_div(const Int& p, const Int& q) { return -floor_div(-p, q); }

inline Int rat_floor(const Rat& r) { return floor_div(numerator(r), denominator(r)); }
inline Int rat_ceil(const Rat& r) { return ceil_div(numerator(r), denominator(r)); }
inline bool is_integral(const Rat& r) { return denominator(r) == 1; }

// Strict decimal-string parsing; big values must survive verbatim.
inline Int parse_int(const std::string& s) {
    if (s.empty()) throw input_error("empty integer literal");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw input_error("bad integer literal: '" + s + "'");
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') throw input_error("bad integer literal: '" + s + "'");
    return Int(s);
}

// Accepts "p" or "p/q" with q > 0.
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(parse_int(s));
    Int num = parse_int(s.substr(0, slash));
    Int den = parse_int(s.substr(slash + 1));
    if (den <= 0) throw input_error("bad rational literal (denominator must be positive): '" + s + "'");
    return make_rat(num, den);
}

inline std::string to_string(const Int& x) { return x.str(); }

inline std::string to_string(const Rat& r) {
    if (is_integral(r)) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

} // namespace latcone
