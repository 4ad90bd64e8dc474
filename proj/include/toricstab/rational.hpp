#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <initializer_list>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "toricstab/error.hpp"

namespace toricstab {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Element of N or M; which lattice is meant depends on context.
using LatticeVector = std::vector<Integer>;
/// Point of M (x) Q, e.g. a polytope vertex.
using RationalVector = std::vector<Rational>;

/// Canonical "p/q" form with q > 0, always including the denominator.
inline std::string to_string(const Rational& q) {
    return boost::multiprecision::numerator(q).str() + "/" +
           boost::multiprecision::denominator(q).str();
}

inline Rational parse_rational(std::string_view text) {
    auto parse_int = [&](std::string_view s) -> Integer {
        if (s.empty()) throw Error(ErrorCode::ParseError, "empty number in '" + std::string(text) + "'");
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw Error(ErrorCode::ParseError, "bad number '" + std::string(text) + "'");
        for (std::size_t k = i; k < s.size(); ++k) {
            if (s[k] < '0' || s[k] > '9')
                throw Error(ErrorCode::ParseError, "bad number '" + std::string(text) + "'");
        }
        Integer v(std::string(s.substr(i)));
        return s[0] == '-' ? Integer(-v) : v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    Integer num = parse_int(text.substr(0, slash));
    Integer den = parse_int(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

inline Integer factorial(int n) {
    Integer r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline RationalVector to_rational(const LatticeVector& v) {
    return RationalVector(v.begin(), v.end());
}

inline LatticeVector make_lattice(std::initializer_list<long long> coords) {
    LatticeVector v;
    v.reserve(coords.size());
    for (long long c : coords) v.emplace_back(c);
    return v;
}

template <typename A, typename B>
auto pairing(const std::vector<A>& u, const std::vector<B>& v) {
    if (u.size() != v.size()) throw Error(ErrorCode::DimMismatch, "pairing of vectors with different lengths");
    using R = std::conditional_t<std::is_same_v<A, Rational> || std::is_same_v<B, Rational>, Rational, Integer>;
    R s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += R(u[i]) * R(v[i]);
    return s;
}

}  // namespace toricstab
