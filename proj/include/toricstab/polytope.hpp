#pragma once

// Polytope of a torus-invariant divisor H = sum a_alpha D_alpha:
//   P = { v : <v, alpha> >= -a_alpha for every ray alpha },
// with one vertex per maximal cone and one facet per ray.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "toricstab/fan.hpp"

namespace toricstab {

struct ToricDivisor {
    std::vector<Rational> coeffs;  // indexed like Fan::rays

    friend bool operator==(const ToricDivisor&, const ToricDivisor&) = default;
};

struct Polytope {
    Fan fan;
    ToricDivisor divisor;
    RationalMatrix vertices;            // v_sigma, indexed like fan.max_cones
    std::vector<IndexSet> facet_cones;  // per ray: maximal cones containing it

    RationalMatrix facet_vertices(std::size_t ray) const {
        RationalMatrix out;
        for (auto c : facet_cones.at(ray)) out.push_back(vertices[c]);
        return out;
    }
};

/// Vol(P_alpha) per ray, lattice-normalized.
struct VolumeTable {
    std::vector<Rational> vol;

    Rational total() const {
        Rational s = 0;
        for (const auto& v : vol) s += v;
        return s;
    }
    friend bool operator==(const VolumeTable&, const VolumeTable&) = default;
};

inline ToricDivisor anticanonical(const Fan& f) {
    return ToricDivisor{std::vector<Rational>(f.rays.size(), Rational(1))};
}

inline ToricDivisor scaled(const ToricDivisor& d, const Rational& k) {
    ToricDivisor out(d);
    for (auto& a : out.coeffs) a *= k;
    return out;
}

inline Polytope polytope_from_divisor(const Fan& f, const ToricDivisor& a) {
    if (a.coeffs.size() != f.rays.size())
        throw Error(ErrorCode::DimMismatch, "divisor has " + std::to_string(a.coeffs.size()) + " coefficients for " +
                                                std::to_string(f.rays.size()) + " rays");
    Polytope p{f, a, {}, std::vector<IndexSet>(f.rays.size())};
    const auto n = static_cast<std::size_t>(f.dim);
    for (std::size_t ci = 0; ci < f.max_cones.size(); ++ci) {
        const auto& cone = f.max_cones[ci];
        // <v, alpha_j> = -a_j for the n rays of the cone.
        RationalMatrix aug;
        for (auto j : cone) {
            RationalVector row = to_rational(f.rays[j]);
            row.push_back(-a.coeffs[j]);
            aug.push_back(std::move(row));
        }
        auto pivots = detail::rref(aug);
        if (pivots.size() != n || pivots.back() == n) throw Error(ErrorCode::NotSmoothCone, "singular maximal cone");
        RationalVector v(n);
        for (std::size_t r = 0; r < n; ++r) v[r] = aug[r][n];
        p.vertices.push_back(std::move(v));
        for (auto j : cone) p.facet_cones[j].push_back(ci);
    }
    return p;
}

/// Strict convexity of the support function: <v_sigma, beta> > -a_beta for
/// every maximal cone sigma and every ray beta outside it.
inline bool is_ample(const Polytope& p) {
    const Fan& f = p.fan;
    for (std::size_t ci = 0; ci < f.max_cones.size(); ++ci) {
        const auto& cone = f.max_cones[ci];
        for (std::size_t b = 0; b < f.rays.size(); ++b) {
            if (std::find(cone.begin(), cone.end(), b) != cone.end()) continue;
            if (pairing(p.vertices[ci], f.rays[b]) <= -p.divisor.coeffs[b]) return false;
        }
    }
    return true;
}

inline bool is_ample(const Fan& f, const ToricDivisor& a) { return is_ample(polytope_from_divisor(f, a)); }

inline VolumeTable facet_volumes(const Polytope& p) {
    if (!is_ample(p)) throw Error(ErrorCode::NonAmple, "facet volumes need an ample divisor");
    VolumeTable t;
    for (std::size_t r = 0; r < p.fan.rays.size(); ++r) t.vol.push_back(lattice_volume(p.facet_vertices(r), p.fan.rays[r]));
    return t;
}

/// Integral vertices and the origin as the only interior lattice point.
/// Lattice points are enumerated over the vertex bounding box.
inline bool is_reflexive(const Polytope& p) {
    if (!is_ample(p)) throw Error(ErrorCode::Degenerate, "polytope of a non-ample divisor");
    const auto n = static_cast<std::size_t>(p.fan.dim);
    std::vector<long long> lo(n), hi(n);
    for (std::size_t c = 0; c < n; ++c) {
        Rational mn = p.vertices.front()[c], mx = mn;
        for (const auto& v : p.vertices) {
            if (denominator(v[c]) != 1) return false;
            mn = std::min(mn, v[c]);
            mx = std::max(mx, v[c]);
        }
        lo[c] = static_cast<long long>(numerator(mn));
        hi[c] = static_cast<long long>(numerator(mx));
    }
    std::vector<std::vector<long long>> rays;
    std::vector<long long> bound;
    for (std::size_t r = 0; r < p.fan.rays.size(); ++r) {
        std::vector<long long> ray;
        for (const auto& x : p.fan.rays[r]) ray.push_back(static_cast<long long>(x));
        rays.push_back(std::move(ray));
        if (denominator(p.divisor.coeffs[r]) != 1) return false;
        bound.push_back(static_cast<long long>(-numerator(p.divisor.coeffs[r])));
    }
    std::vector<long long> x(lo);
    std::size_t interior = 0;
    bool origin_inside = false;
    for (;;) {
        bool inside = true;
        for (std::size_t r = 0; r < rays.size() && inside; ++r) {
            long long s = 0;
            for (std::size_t c = 0; c < n; ++c) s += rays[r][c] * x[c];
            inside = s > bound[r];
        }
        if (inside) {
            ++interior;
            if (std::all_of(x.begin(), x.end(), [](long long v) { return v == 0; })) origin_inside = true;
        }
        std::size_t c = 0;
        while (c < n && x[c] == hi[c]) {
            x[c] = lo[c];
            ++c;
        }
        if (c == n) break;
        ++x[c];
    }
    return interior == 1 && origin_inside;
}

}  // namespace toricstab
