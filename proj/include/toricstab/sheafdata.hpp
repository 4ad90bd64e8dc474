#pragma once

// Combinatorial data of an equivariant subsheaf F of TX: per ray alpha the
// jumps e(F, alpha, lambda) of its weight filtration, the lambda-vector /
// lambda-matrix presentations, and the rank and degree formulas
//   rank F = sum_lambda e(F, alpha, lambda)          (any alpha)
//   deg F  = -(n-1)! sum_{alpha, lambda} lambda e(F, alpha, lambda) Vol(P_alpha).

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "toricstab/polytope.hpp"

namespace toricstab {

struct Jump {
    long long lambda = 0;
    long long e = 0;

    friend bool operator==(const Jump&, const Jump&) = default;
};

/// Nonzero jumps per ray, sorted by lambda with equal levels merged.
struct JumpData {
    std::vector<std::vector<Jump>> per_ray;

    friend bool operator==(const JumpData&, const JumpData&) = default;
};

using LambdaVector = std::vector<long long>;

/// r x p integer matrix, entries[i][j] = lambda_ij. Column j lists the jump
/// levels of ray j with multiplicity, sorted ascending.
struct LambdaMatrix {
    std::vector<std::vector<long long>> entries;

    std::size_t rank() const { return entries.size(); }
    std::size_t num_rays() const { return entries.empty() ? 0 : entries.front().size(); }
    friend bool operator==(const LambdaMatrix&, const LambdaMatrix&) = default;
};

struct LambdaCheck {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

inline JumpData normalized(JumpData j) {
    for (auto& ray : j.per_ray) {
        std::map<long long, long long> merged;
        for (const auto& jump : ray) merged[jump.lambda] += jump.e;
        ray.clear();
        for (const auto& [lambda, e] : merged)
            if (e != 0) ray.push_back({lambda, e});
    }
    return j;
}

/// e(TX, alpha, -1) = 1 and e(TX, alpha, 0) = n - 1 on every ray.
inline JumpData tangent_jump_data(const Fan& f) {
    JumpData j;
    for (std::size_t r = 0; r < f.rays.size(); ++r) {
        std::vector<Jump> ray{{-1, 1}};
        if (f.dim > 1) ray.push_back({0, f.dim - 1});
        j.per_ray.push_back(std::move(ray));
    }
    return j;
}

/// Structural problems: lambda < -1, non-positive e, e(-1) > 1, rank mismatch.
inline std::vector<std::string> check_jump_data(const JumpData& j) {
    std::vector<std::string> out;
    long long common = -1;
    for (std::size_t r = 0; r < j.per_ray.size(); ++r) {
        long long sum = 0;
        for (const auto& jump : j.per_ray[r]) {
            if (jump.lambda < -1) out.push_back("ray " + std::to_string(r) + ": level " + std::to_string(jump.lambda) + " below -1");
            if (jump.e <= 0) out.push_back("ray " + std::to_string(r) + ": non-positive jump");
            if (jump.lambda == -1 && jump.e > 1) out.push_back("ray " + std::to_string(r) + ": jump at -1 exceeds 1");
            sum += jump.e;
        }
        if (r == 0) common = sum;
        else if (sum != common) out.push_back("ray " + std::to_string(r) + ": jump sum " + std::to_string(sum) + " differs from " + std::to_string(common));
    }
    return out;
}

inline long long rank_of(const JumpData& j) {
    if (j.per_ray.empty()) throw Error(ErrorCode::InconsistentRank, "no rays");
    long long rank = -1;
    IndexSet bad;
    for (std::size_t r = 0; r < j.per_ray.size(); ++r) {
        long long sum = 0;
        for (const auto& jump : j.per_ray[r]) sum += jump.e;
        if (r == 0) rank = sum;
        else if (sum != rank) bad.push_back(r);
    }
    if (!bad.empty()) throw Error(ErrorCode::InconsistentRank, "per-ray jump sums disagree at rays " + detail::format_set(bad));
    return rank;
}

namespace detail {

inline void check_volumes(const JumpData& j, const VolumeTable& vols) {
    if (vols.vol.size() != j.per_ray.size()) throw Error(ErrorCode::DimMismatch, "volume table size differs from ray count");
    for (const auto& v : vols.vol)
        if (v <= 0) throw Error(ErrorCode::NonAmple, "facet volumes must be positive");
}

}  // namespace detail

inline Rational degree_of(const JumpData& j, const VolumeTable& vols, int n) {
    detail::check_volumes(j, vols);
    Rational s = 0;
    for (std::size_t r = 0; r < j.per_ray.size(); ++r) {
        for (const auto& jump : j.per_ray[r]) s += Rational(jump.lambda * jump.e) * vols.vol[r];
    }
    return -Rational(factorial(n - 1)) * s;
}

inline Rational slope_of(const JumpData& j, const VolumeTable& vols, int n) {
    const long long r = rank_of(j);
    if (r <= 0) throw Error(ErrorCode::BadRank, "slope of a rank-zero sheaf");
    return degree_of(j, vols, n) / Rational(r);
}

inline JumpData jump_from_lambda_vector(const LambdaVector& lambda) {
    JumpData j;
    for (auto l : lambda) j.per_ray.push_back({{l, 1}});
    return j;
}

inline JumpData jump_from_lambda_matrix(const LambdaMatrix& m) {
    JumpData j;
    j.per_ray.resize(m.num_rays());
    for (const auto& row : m.entries)
        for (std::size_t c = 0; c < row.size(); ++c) j.per_ray[c].push_back({row[c], 1});
    return normalized(std::move(j));
}

/// Column j lists ray j's levels with multiplicity, ascending.
inline LambdaMatrix lambda_matrix_from_jump(const JumpData& j) {
    const auto r = static_cast<std::size_t>(rank_of(j));
    LambdaMatrix m;
    m.entries.assign(r, std::vector<long long>(j.per_ray.size(), 0));
    for (std::size_t c = 0; c < j.per_ray.size(); ++c) {
        std::size_t row = 0;
        const JumpData column = normalized(JumpData{{j.per_ray[c]}});
        for (const auto& jump : column.per_ray.front())
            for (long long k = 0; k < jump.e; ++k) m.entries[row++][c] = jump.lambda;
    }
    return m;
}

/// Necessary conditions for a rank-one subsheaf: one level per ray, each at
/// least -1, and no two -1 levels on rays spanning a cone. Passing does not
/// imply that such a subsheaf exists.
inline LambdaCheck validate_lambda_vector(const Fan& f, const LambdaVector& lambda) {
    LambdaCheck out;
    if (lambda.size() != f.rays.size()) {
        out.violations.push_back("(1) expected " + std::to_string(f.rays.size()) + " entries, got " + std::to_string(lambda.size()));
        return out;
    }
    for (std::size_t i = 0; i < lambda.size(); ++i)
        if (lambda[i] < -1) out.violations.push_back("(3) entry " + std::to_string(i) + " is below -1");
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        for (std::size_t j = i + 1; j < lambda.size(); ++j) {
            if (lambda[i] == -1 && lambda[j] == -1 && is_cone(f, {i, j}))
                out.violations.push_back("(4) rays " + std::to_string(i) + "," + std::to_string(j) + " span a cone and both are -1");
        }
    }
    return out;
}

inline LambdaCheck validate_lambda_matrix(const Fan& f, const LambdaMatrix& m) {
    LambdaCheck out;
    const std::size_t p = f.rays.size();
    const std::size_t r = m.rank();
    if (r == 0) {
        out.violations.push_back("(4) empty matrix");
        return out;
    }
    for (const auto& row : m.entries) {
        if (row.size() != p) {
            out.violations.push_back("(1) rows must have " + std::to_string(p) + " entries");
            return out;
        }
    }
    for (std::size_t j = 0; j < p; ++j) {
        if (m.entries[0][j] < -1) out.violations.push_back("(3) column " + std::to_string(j) + " has an entry below -1");
        for (std::size_t i = 1; i < r; ++i) {
            if (m.entries[i][j] < m.entries[i - 1][j]) {
                out.violations.push_back("(3) column " + std::to_string(j) + " is not sorted");
                break;
            }
        }
        if (r >= 2 && m.entries[0][j] == -1 && m.entries[1][j] == -1)
            out.violations.push_back("(6) column " + std::to_string(j) + " starts with (-1,-1)");
    }
    // (5): within one row, at most r of the rays of any maximal cone are -1;
    // any r+1 of them would form a cone.
    for (std::size_t i = 0; i < r; ++i) {
        for (const auto& cone : f.max_cones) {
            std::size_t count = 0;
            for (auto j : cone) count += m.entries[i][j] == -1 ? 1 : 0;
            if (count > r) {
                out.violations.push_back("(5) row " + std::to_string(i) + " has " + std::to_string(count) +
                                         " entries -1 on cone " + detail::format_set(cone));
                break;
            }
        }
    }
    return out;
}

/// ((n-1)!/r) * sum_alpha Vol(P_alpha), valid for 1 <= r < n.
inline Rational slope_upper_bound(long long r, const VolumeTable& vols, int n) {
    if (r < 1 || r >= n) throw Error(ErrorCode::BadRank, "rank must satisfy 1 <= r < n");
    return Rational(factorial(n - 1)) * vols.total() / Rational(r);
}

/// The same bound refined by the admissibility conditions: at most one -1 per
/// column, and no cone with more than r rays at level -1. Maximizes over the
/// -1 pattern S with |S ∩ sigma| <= r for every maximal cone sigma.
inline Rational admissible_slope_bound(const Fan& f, long long r, const VolumeTable& vols) {
    const int n = f.dim;
    if (r < 1 || r >= n) throw Error(ErrorCode::BadRank, "rank must satisfy 1 <= r < n");
    const std::size_t p = f.rays.size();
    if (p > 24) throw Error(ErrorCode::TooManyRays, "admissible bound enumerates 2^p ray sets");
    std::vector<unsigned long> cone_masks;
    for (const auto& c : f.max_cones) {
        unsigned long mask = 0;
        for (auto j : c) mask |= 1UL << j;
        cone_masks.push_back(mask);
    }
    Rational best = 0;
    for (unsigned long s = 1; s < (1UL << p); ++s) {
        bool ok = std::all_of(cone_masks.begin(), cone_masks.end(), [&](unsigned long mask) {
            return static_cast<long long>(__builtin_popcountl(s & mask)) <= r;
        });
        if (!ok) continue;
        Rational sum = 0;
        for (std::size_t j = 0; j < p; ++j)
            if (s & (1UL << j)) sum += vols.vol[j];
        best = std::max(best, sum);
    }
    return Rational(factorial(n - 1)) * best / Rational(r);
}

/// For equal-rank data with j1's sorted levels dominating j2's on every ray,
/// deg j1 <= deg j2. Returns whether the inequality holds.
inline bool degree_monotonicity_check(const JumpData& j1, const JumpData& j2, const VolumeTable& vols, int n) {
    if (rank_of(j1) != rank_of(j2)) throw Error(ErrorCode::RankMismatch, "jump data of different ranks");
    if (j1.per_ray.size() != j2.per_ray.size()) throw Error(ErrorCode::DimMismatch, "jump data on different fans");
    const LambdaMatrix a = lambda_matrix_from_jump(j1);
    const LambdaMatrix b = lambda_matrix_from_jump(j2);
    for (std::size_t i = 0; i < a.rank(); ++i)
        for (std::size_t j = 0; j < a.num_rays(); ++j)
            if (a.entries[i][j] < b.entries[i][j]) throw Error(ErrorCode::NotDominated, "first argument must dominate the second");
    return degree_of(j1, vols, n) <= degree_of(j2, vols, n);
}

}  // namespace toricstab
