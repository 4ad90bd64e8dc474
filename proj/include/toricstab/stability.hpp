#pragma once

// Slope stability of TX with respect to an ample polarization.
//
// Candidates are the saturated equivariant subsheaves F_V of TX attached to a
// proper subspace V of N (x) Q spanned by rays: e(F_V, alpha, -1) = 1 exactly
// when alpha lies in V, and every other jump sits at level 0. Within a fixed
// rank, enlarging a subsheaf never lowers its degree, so the maximal slope of
// rank dim V is attained by some F_V. A subspace containing no ray gives degree
// 0, below mu(TX) because every facet volume is positive.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "toricstab/sheafdata.hpp"

namespace toricstab {

enum class Status { Stable, StrictlySemistable, Unstable };

inline std::string_view to_string(Status s) {
    switch (s) {
        case Status::Stable: return "stable";
        case Status::StrictlySemistable: return "semistable";
        case Status::Unstable: return "unstable";
    }
    return "unknown";
}

struct SubsheafCandidate {
    Subspace space;
    int rank = 0;
    IndexSet rays_in_space;
    JumpData jump;
    std::optional<Rational> slope;
};

struct RankSummary {
    int rank = 0;
    Rational realizable_max;                  // best candidate slope of this rank (0 if none)
    std::optional<Rational> admissible_bound;  // omitted for fans with many rays
};

struct StabilityVerdict {
    Status status = Status::Stable;
    Rational mu_tx;
    VolumeTable volumes;
    std::optional<SubsheafCandidate> best;  // empty only in dimension 1
    std::vector<SubsheafCandidate> candidates;
    std::vector<RankSummary> ranks;
    std::vector<std::string> notes;
};

struct DecideOptions {
    std::size_t max_rays = 24;
    std::size_t admissible_bound_max_rays = 16;
};

inline JumpData candidate_jump_data(const Fan& f, const IndexSet& rays_in_space, int rank) {
    JumpData j;
    for (std::size_t r = 0; r < f.rays.size(); ++r) {
        const bool inside = std::binary_search(rays_in_space.begin(), rays_in_space.end(), r);
        std::vector<Jump> ray;
        if (inside) {
            ray.push_back({-1, 1});
            if (rank > 1) ray.push_back({0, rank - 1});
        } else {
            ray.push_back({0, rank});
        }
        j.per_ray.push_back(std::move(ray));
    }
    return j;
}

/// Distinct proper subspaces spanned by nonempty sets of rays, grown one ray
/// at a time and deduplicated by Hermite form. Sorted by (rank, ray set).
inline std::vector<SubsheafCandidate> enumerate_candidates(const Fan& f, std::size_t max_rays = 24) {
    if (f.rays.size() > max_rays)
        throw Error(ErrorCode::TooManyRays, std::to_string(f.rays.size()) + " rays exceed the cap of " + std::to_string(max_rays));
    const int n = f.dim;
    std::set<Subspace> seen;
    std::vector<SubsheafCandidate> out;
    auto visit = [&](const IntegerMatrix& gens) {
        Subspace v = hermite_canonical(gens);
        if (v.dim >= n || !seen.insert(v).second) return;
        SubsheafCandidate c;
        c.rank = v.dim;
        for (std::size_t r = 0; r < f.rays.size(); ++r)
            if (subspace_contains(v, f.rays[r])) c.rays_in_space.push_back(r);
        c.space = std::move(v);
        c.jump = candidate_jump_data(f, c.rays_in_space, c.rank);
        out.push_back(std::move(c));
    };
    for (const auto& ray : f.rays) visit({ray});
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t r = 0; r < f.rays.size(); ++r) {
            if (std::binary_search(out[i].rays_in_space.begin(), out[i].rays_in_space.end(), r)) continue;
            IntegerMatrix gens = out[i].space.basis;
            gens.push_back(f.rays[r]);
            visit(gens);
        }
    }
    std::sort(out.begin(), out.end(), [](const SubsheafCandidate& a, const SubsheafCandidate& b) {
        if (a.rank != b.rank) return a.rank < b.rank;
        return a.rays_in_space < b.rays_in_space;
    });
    return out;
}

/// (n-1)! * sum_{alpha in V} Vol(P_alpha) / dim V.
inline Rational candidate_slope(const SubsheafCandidate& c, const VolumeTable& vols, int n) {
    for (const auto& v : vols.vol)
        if (v <= 0) throw Error(ErrorCode::NonAmple, "facet volumes must be positive");
    Rational s = 0;
    for (auto r : c.rays_in_space) s += vols.vol.at(r);
    return Rational(factorial(n - 1)) * s / Rational(c.rank);
}

/// mu(TX) = (n-1)! * sum_alpha Vol(P_alpha) / n.
inline Rational tangent_slope(const VolumeTable& vols, int n) {
    return Rational(factorial(n - 1)) * vols.total() / Rational(n);
}

inline StabilityVerdict decide(const Fan& f, const ToricDivisor& a, const DecideOptions& opts = {}) {
    require_valid(f);
    if (f.rays.size() > opts.max_rays)
        throw Error(ErrorCode::TooManyRays, std::to_string(f.rays.size()) + " rays exceed the cap of " + std::to_string(opts.max_rays));
    const Polytope p = polytope_from_divisor(f, a);
    if (!is_ample(p)) throw Error(ErrorCode::NonAmple, "divisor is not ample");
    const int n = f.dim;

    StabilityVerdict v;
    v.volumes = facet_volumes(p);
    v.mu_tx = tangent_slope(v.volumes, n);
    v.candidates = enumerate_candidates(f, opts.max_rays);
    for (auto& c : v.candidates) c.slope = candidate_slope(c, v.volumes, n);

    // Ordered reduction: candidates are sorted by (rank, ray set), so the first
    // strict maximum is the tie-break winner.
    const SubsheafCandidate* best = nullptr;
    for (const auto& c : v.candidates)
        if (!best || *c.slope > *best->slope) best = &c;
    if (best) v.best = *best;

    if (!best || *best->slope < v.mu_tx) v.status = Status::Stable;
    else if (*best->slope == v.mu_tx) v.status = Status::StrictlySemistable;
    else v.status = Status::Unstable;

    for (int r = 1; r < n; ++r) {
        RankSummary s;
        s.rank = r;
        s.realizable_max = 0;
        for (const auto& c : v.candidates)
            if (c.rank == r) s.realizable_max = std::max(s.realizable_max, *c.slope);
        if (f.rays.size() <= opts.admissible_bound_max_rays) s.admissible_bound = admissible_slope_bound(f, r, v.volumes);
        v.ranks.push_back(std::move(s));
    }

    v.notes.push_back(
        "search covers saturated equivariant subsheaves whose generic fiber is spanned by rays; within a rank these "
        "dominate every other equivariant subsheaf");
    v.notes.push_back("subspaces containing no ray give degree 0 < mu(TX) and are never maximizers");
    if (v.status == Status::Stable)
        v.notes.push_back("stable verdict holds relative to the span-of-rays reduction of equivariant subsheaves");
    return v;
}

struct Certificate {
    int rank = 0;
    LambdaMatrix lambda;
    IntegerMatrix subspace_basis;
    IndexSet rays_in_space;
    Rational slope;
    Rational mu_tx;
};

/// The maximizer rendered as a lambda-matrix; empty when there is no proper candidate.
inline std::optional<Certificate> certificate(const StabilityVerdict& v) {
    if (!v.best) return std::nullopt;
    Certificate c;
    c.rank = v.best->rank;
    c.lambda = lambda_matrix_from_jump(v.best->jump);
    c.subspace_basis = v.best->space.basis;
    c.rays_in_space = v.best->rays_in_space;
    c.slope = *v.best->slope;
    c.mu_tx = v.mu_tx;
    return c;
}

struct ClosedFormVerdict {
    Status status = Status::Stable;
    Rational a;  // a1 + a3 - m a2
    Rational b;  // a2 + a4
    Rational mu_tx;
    Rational best_slope;
};

/// F_m by hand: the lines span(a2) = span(a4) with slope 2a + mb and span(a1),
/// span(a3) with slope b each; for m = 0 the lines span(a1) = span(a3) merge
/// and carry 2b. mu(TX) = a + (m+2)b/2.
inline ClosedFormVerdict hirzebruch_closed_form(int m, const Rational& a1, const Rational& a2, const Rational& a3,
                                                const Rational& a4) {
    ClosedFormVerdict v;
    v.a = a1 + a3 - Rational(m) * a2;
    v.b = a2 + a4;
    if (v.a <= 0 || v.b <= 0) throw Error(ErrorCode::NonAmple, "Hirzebruch polarization needs a > 0 and b > 0");
    v.mu_tx = v.a + Rational(m + 2) * v.b / 2;
    const Rational fiber_line = 2 * v.a + Rational(m) * v.b;
    const Rational section_line = m == 0 ? Rational(2 * v.b) : v.b;
    v.best_slope = std::max(fiber_line, section_line);
    if (v.best_slope < v.mu_tx) v.status = Status::Stable;
    else if (v.best_slope == v.mu_tx) v.status = Status::StrictlySemistable;
    else v.status = Status::Unstable;
    return v;
}

}  // namespace toricstab
