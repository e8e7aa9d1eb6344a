#pragma once

// Exact arithmetic used everywhere: arbitrary-precision integers for lattice
// data, rationals in lowest terms (positive denominator) for vector spaces.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace prevar {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVec = std::vector<Int>;
using QVec = std::vector<Rational>;

inline Int rational_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int rational_den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline std::string int_to_string(const Int& v) { return v.str(); }

// "p" when the denominator is 1, "p/q" otherwise.
inline std::string rational_to_string(const Rational& r) {
    if (rational_den(r) == 1) return rational_num(r).str();
    return rational_num(r).str() + "/" + rational_den(r).str();
}

inline Rational rational_from_string(const std::string& text) {
    auto parse_int = [](const std::string& s) -> Int {
        if (s.empty()) throw std::invalid_argument("empty integer literal");
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (start == s.size()) throw std::invalid_argument("sign without digits: '" + s + "'");
        for (std::size_t i = start; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9')
                throw std::invalid_argument("not an integer literal: '" + s + "'");
        return Int(s);
    };
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(parse_int(text));
    Int num = parse_int(text.substr(0, slash));
    Int den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    return Rational(num, den);
}

inline long long to_int64(const Int& v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        throw std::overflow_error("integer too large for serialization: " + v.str());
    return static_cast<long long>(v);
}

inline Int int_abs(const Int& v) { return v < 0 ? Int(-v) : v; }

inline Int int_gcd(const Int& a, const Int& b) {
    return boost::multiprecision::gcd(int_abs(a), int_abs(b));
}

inline bool is_zero(const IntVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

inline bool is_zero(const QVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

// Divides out the gcd of the entries; direction is preserved (no sign flip).
inline IntVec primitive(IntVec v) {
    Int g = 0;
    for (const auto& x : v) g = int_gcd(g, x);
    if (g <= 1) return v;
    for (auto& x : v) x /= g;
    return v;
}

inline QVec to_qvec(const IntVec& v) {
    QVec out;
    out.reserve(v.size());
    for (const auto& x : v) out.emplace_back(x);
    return out;
}

// Clears denominators and divides by the content: the primitive integer
// vector spanning the same ray as q. Zero maps to zero.
inline IntVec integral_direction(const QVec& q) {
    Int scale = 1;
    for (const auto& x : q) {
        Int d = rational_den(x);
        scale = scale / int_gcd(scale, d) * d;
    }
    IntVec out;
    out.reserve(q.size());
    for (const auto& x : q) out.push_back(rational_num(x) * (scale / rational_den(x)));
    return primitive(std::move(out));
}

inline Int dot(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    Int acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

inline Rational dot(const IntVec& a, const QVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    Rational acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += Rational(a[i]) * b[i];
    return acc;
}

inline Rational dot(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    Rational acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

inline IntVec vec_sub(const IntVec& a, const IntVec& b) {
    IntVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

inline IntVec vec_add(const IntVec& a, const IntVec& b) {
    IntVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

// c1*a + c2*b
inline IntVec vec_comb(const Int& c1, const IntVec& a, const Int& c2, const IntVec& b) {
    IntVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = c1 * a[i] + c2 * b[i];
    return out;
}

}  // namespace prevar
