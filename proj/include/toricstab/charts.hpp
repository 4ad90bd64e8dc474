#pragma once

// Chart-level model of torus-equivariant vector fields. On the affine chart of
// a smooth maximal cone sigma with rays alpha_1..alpha_n and dual basis
// m_1..m_n, the coordinates are z_i = chi(m_i) and d/dz_i has weight -m_i.
// A monomial derivation chi(u) d_v (v in N (x) Q, d_v the invariant field
// acting on chi(m) by <m, v>) expands as
//   chi(u) d_v = sum_i <m_i, v> chi(u + m_i) d/dz_i,
// and is regular on the chart iff every exponent u + m_i with nonzero
// coefficient lies in the semigroup S_sigma.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "toricstab/sheafdata.hpp"

namespace toricstab {

struct Chart {
    std::size_t cone_index = 0;
    IndexSet rays;      // ray indices in the order of fan.max_cones[cone_index]
    IntegerMatrix gens;  // alpha_i
    IntegerMatrix dual;  // m_i with <m_i, alpha_j> = delta_ij

    bool in_semigroup(const LatticeVector& m) const {
        return std::all_of(gens.begin(), gens.end(), [&](const LatticeVector& a) { return pairing(m, a) >= 0; });
    }
};

struct MonomialDerivation {
    LatticeVector u;   // weight in M
    RationalVector v;  // direction in N (x) Q
};

/// coeff * chi(exponent) * d/dz_index
struct ChartTerm {
    Rational coeff;
    LatticeVector exponent;
    std::size_t index = 0;

    friend bool operator==(const ChartTerm&, const ChartTerm&) = default;
};

inline Chart chart_of(const Fan& f, std::size_t cone_index) {
    if (cone_index >= f.max_cones.size()) throw Error(ErrorCode::NotMaximal, "no maximal cone " + std::to_string(cone_index));
    Chart c;
    c.cone_index = cone_index;
    c.rays = f.max_cones[cone_index];
    for (auto r : c.rays) c.gens.push_back(f.rays[r]);
    c.dual = dual_basis(c.gens);
    return c;
}

inline Chart chart_of(const Fan& f, const ConeRef& sigma) {
    auto idx = find_max_cone(f, sigma.rays);
    if (!idx) throw Error(ErrorCode::NotMaximal, "cone " + detail::format_set(sigma.rays) + " is not maximal");
    return chart_of(f, *idx);
}

inline std::vector<ChartTerm> expand_in_chart(const MonomialDerivation& d, const Chart& c) {
    std::vector<ChartTerm> out;
    for (std::size_t i = 0; i < c.dual.size(); ++i) {
        Rational coeff = pairing(c.dual[i], d.v);
        if (coeff == 0) continue;
        LatticeVector exponent(d.u);
        for (std::size_t k = 0; k < exponent.size(); ++k) exponent[k] += c.dual[i][k];
        out.push_back({coeff, std::move(exponent), i});
    }
    return out;
}

inline bool is_regular(const MonomialDerivation& d, const Chart& c) {
    auto terms = expand_in_chart(d, c);
    return std::all_of(terms.begin(), terms.end(), [&](const ChartTerm& t) { return c.in_semigroup(t.exponent); });
}

/// The term c * chi(w) d/dz_i as a monomial derivation: chi(w - m_i) d_{c alpha_i}.
inline MonomialDerivation to_derivation(const ChartTerm& t, const Chart& c) {
    MonomialDerivation d;
    d.u = t.exponent;
    for (std::size_t k = 0; k < d.u.size(); ++k) d.u[k] -= c.dual[t.index][k];
    for (const auto& x : c.gens[t.index]) d.v.push_back(t.coeff * Rational(x));
    return d;
}

/// A rational vector field written in one chart: (exponent, index) -> coefficient.
using ChartField = std::map<std::pair<LatticeVector, std::size_t>, Rational>;

inline ChartField expand_sum(const std::vector<MonomialDerivation>& ds, const Chart& c) {
    ChartField field;
    for (const auto& d : ds) {
        for (auto& t : expand_in_chart(d, c)) {
            auto& slot = field[{t.exponent, t.index}];
            slot += t.coeff;
            if (slot == 0) field.erase({t.exponent, t.index});
        }
    }
    return field;
}

/// dim E^sigma_u for E = TX: the number of i with u + m_i in S_sigma.
inline int weight_space_dim(const Fan& f, const ConeRef& sigma, const LatticeVector& u) {
    const Chart c = chart_of(f, sigma);
    int count = 0;
    for (const auto& m : c.dual) {
        LatticeVector w(u);
        for (std::size_t k = 0; k < w.size(); ++k) w[k] += m[k];
        if (c.in_semigroup(w)) ++count;
    }
    return count;
}

/// d(TX, alpha, lambda) read off the maximal cone `cone_index` containing the ray:
/// the weight lambda * m_alpha pairs to lambda with alpha and to 0 with the
/// other rays of the cone, so only the alpha-direction constrains membership.
inline int ray_weight_dim(const Fan& f, std::size_t ray, long long lambda, std::size_t cone_index) {
    const Chart c = chart_of(f, cone_index);
    auto pos = std::find(c.rays.begin(), c.rays.end(), ray);
    if (pos == c.rays.end()) throw Error(ErrorCode::BadIndex, "ray is not in the chosen cone");
    LatticeVector u = c.dual[static_cast<std::size_t>(pos - c.rays.begin())];
    for (auto& x : u) x *= lambda;
    return weight_space_dim(f, ConeRef{f.max_cones[cone_index]}, u);
}

struct RankOneWitness {
    LatticeVector direction;
    std::vector<LatticeVector> weights;  // generator weight per maximal cone
};

/// Dimension of the span of the rays at level -1.
inline int minus_one_span_dim(const Fan& f, const LambdaVector& lambda) {
    IntegerMatrix rows;
    for (std::size_t r = 0; r < lambda.size(); ++r)
        if (lambda[r] == -1) rows.push_back(f.rays[r]);
    return rows.empty() ? 0 : rank_of(rows);
}

/// Searches for a rank-one subsheaf with the given lambda-vector generated on
/// each chart by chi(u_sigma) d_v for one direction v. The weight is pinned by
/// <alpha, u_sigma> = lambda_alpha on the rays of sigma; the sheaf exists iff
/// every such generator is regular on its chart (gluing is automatic because
/// u_sigma - u_tau is orthogonal to the common face).
inline std::optional<RankOneWitness> rank_one_exists(const Fan& f, const LambdaVector& lambda) {
    auto check = validate_lambda_vector(f, lambda);
    if (!check.ok()) throw Error(ErrorCode::InvalidLambda, check.violations.front());

    std::vector<Chart> charts;
    std::vector<LatticeVector> weights;
    for (std::size_t ci = 0; ci < f.max_cones.size(); ++ci) {
        charts.push_back(chart_of(f, ci));
        const Chart& c = charts.back();
        LatticeVector u(static_cast<std::size_t>(f.dim), Integer(0));
        for (std::size_t i = 0; i < c.rays.size(); ++i)
            for (std::size_t k = 0; k < u.size(); ++k) u[k] += Integer(lambda[c.rays[i]]) * c.dual[i][k];
        weights.push_back(std::move(u));
    }

    IntegerMatrix lines;
    auto add_line = [&](const LatticeVector& v) {
        LatticeVector p = primitive_vector(v);
        for (const auto& l : lines)
            if (rank_of(IntegerMatrix{l, p}) == 1) return;
        lines.push_back(std::move(p));
    };
    for (const auto& r : f.rays) add_line(r);
    bool any_minus_one = std::find(lambda.begin(), lambda.end(), -1) != lambda.end();
    if (!any_minus_one) add_line(detail::generic_point(static_cast<std::size_t>(f.dim), {}));

    for (const auto& line : lines) {
        const RationalVector v = to_rational(line);
        bool ok = true;
        for (std::size_t ci = 0; ci < charts.size() && ok; ++ci) ok = is_regular({weights[ci], v}, charts[ci]);
        if (ok) return RankOneWitness{line, weights};
    }
    return std::nullopt;
}

}  // namespace toricstab
