#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "toricstab/lattice.hpp"

namespace toricstab {

using IndexSet = std::vector<std::size_t>;

/// A fan given by its rays and maximal cones. Ray order is significant: every
/// certificate refers to rays by their index in `rays`.
struct Fan {
    int dim = 0;
    IntegerMatrix rays;
    std::vector<IndexSet> max_cones;  // each sorted, size dim

    std::size_t num_rays() const { return rays.size(); }
    friend bool operator==(const Fan&, const Fan&) = default;
};

/// Sorted set of ray indices naming a cone of a fan.
struct ConeRef {
    IndexSet rays;
};

enum class FanIssue {
    BadDimension,
    BadIndex,
    NonPrimitiveRay,
    DuplicateRay,
    NotSmooth,
    NotComplete,
    BadIntersection,
};

inline std::string_view to_string(FanIssue k) {
    switch (k) {
        case FanIssue::BadDimension: return "BadDimension";
        case FanIssue::BadIndex: return "BadIndex";
        case FanIssue::NonPrimitiveRay: return "NonPrimitiveRay";
        case FanIssue::DuplicateRay: return "DuplicateRay";
        case FanIssue::NotSmooth: return "NotSmooth";
        case FanIssue::NotComplete: return "NotComplete";
        case FanIssue::BadIntersection: return "BadIntersection";
    }
    return "Unknown";
}

struct FanViolation {
    FanIssue issue;
    IndexSet where;  // ray index, cone rays or wall rays depending on the issue
    std::string message;
};

struct FanReport {
    std::vector<FanViolation> violations;

    bool ok() const { return violations.empty(); }
    bool has(FanIssue issue) const {
        return std::any_of(violations.begin(), violations.end(),
                           [&](const FanViolation& v) { return v.issue == issue; });
    }
    std::string summary() const {
        std::string s;
        for (const auto& v : violations) {
            if (!s.empty()) s += "; ";
            s += std::string(to_string(v.issue)) + ": " + v.message;
        }
        return s;
    }
};

namespace detail {

inline std::string format_set(const IndexSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + "}";
}

// A point on the moment curve that lies on none of the given hyperplanes.
inline LatticeVector generic_point(std::size_t n, const IntegerMatrix& normals) {
    for (long long t = 2;; ++t) {
        LatticeVector p(n);
        Integer x = 1;
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = x;
            x *= t;
        }
        if (std::none_of(normals.begin(), normals.end(), [&](const LatticeVector& h) { return pairing(h, p) == 0; }))
            return p;
    }
}

}  // namespace detail

/// Checks primitivity, uniqueness, smoothness, completeness (every wall shared
/// by exactly two cones on opposite sides, connected adjacency) and that the
/// cones cover a generic point exactly once.
inline FanReport validate_fan(const Fan& f) {
    FanReport rep;
    auto add = [&](FanIssue k, IndexSet where, std::string msg) {
        rep.violations.push_back({k, std::move(where), std::move(msg)});
    };
    if (f.dim < 1) {
        add(FanIssue::BadDimension, {}, "dimension must be at least 1");
        return rep;
    }
    const auto n = static_cast<std::size_t>(f.dim);
    for (std::size_t i = 0; i < f.rays.size(); ++i) {
        if (f.rays[i].size() != n) {
            add(FanIssue::BadDimension, {i}, "ray " + std::to_string(i) + " has wrong length");
        } else if (!is_primitive(f.rays[i])) {
            add(FanIssue::NonPrimitiveRay, {i}, "ray " + std::to_string(i) + " is not primitive");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (f.rays[j] == f.rays[i]) add(FanIssue::DuplicateRay, {i}, "ray " + std::to_string(i) + " repeats ray " + std::to_string(j));
        }
    }
    if (f.max_cones.empty()) add(FanIssue::NotComplete, {}, "no maximal cones");
    for (const auto& c : f.max_cones) {
        IndexSet s(c);
        std::sort(s.begin(), s.end());
        if (s.size() != n || std::adjacent_find(s.begin(), s.end()) != s.end()) {
            add(FanIssue::BadDimension, s, "cone " + detail::format_set(s) + " does not have " + std::to_string(n) + " distinct rays");
        }
        for (auto i : s) {
            if (i >= f.rays.size()) add(FanIssue::BadIndex, s, "cone " + detail::format_set(s) + " references ray " + std::to_string(i));
        }
    }
    if (!rep.ok()) return rep;

    for (const auto& c : f.max_cones) {
        IntegerMatrix gens;
        for (auto i : c) gens.push_back(f.rays[i]);
        Integer det = determinant(gens);
        if (abs(det) != 1) add(FanIssue::NotSmooth, c, "cone " + detail::format_set(c) + " has determinant " + det.str());
    }

    // wall -> (cone index, omitted ray)
    std::map<IndexSet, std::vector<std::pair<std::size_t, std::size_t>>> walls;
    for (std::size_t ci = 0; ci < f.max_cones.size(); ++ci) {
        IndexSet c(f.max_cones[ci]);
        std::sort(c.begin(), c.end());
        for (std::size_t drop = 0; drop < c.size(); ++drop) {
            IndexSet wall;
            for (std::size_t k = 0; k < c.size(); ++k)
                if (k != drop) wall.push_back(c[k]);
            walls[wall].push_back({ci, c[drop]});
        }
    }
    IntegerMatrix normals;
    std::vector<std::vector<std::size_t>> adjacency(f.max_cones.size());
    for (const auto& [wall, users] : walls) {
        IntegerMatrix gens;
        for (auto i : wall) gens.push_back(f.rays[i]);
        IntegerMatrix kernel = integer_kernel(gens, n);
        if (kernel.size() != 1) continue;  // degenerate wall, reported as NotSmooth already
        const LatticeVector& h = kernel.front();
        normals.push_back(h);
        if (users.size() == 1) {
            add(FanIssue::NotComplete, wall, "wall " + detail::format_set(wall) + " bounds only one maximal cone");
        } else if (users.size() > 2) {
            add(FanIssue::BadIntersection, wall, "wall " + detail::format_set(wall) + " bounds " + std::to_string(users.size()) + " maximal cones");
        } else {
            Integer s1 = pairing(h, f.rays[users[0].second]);
            Integer s2 = pairing(h, f.rays[users[1].second]);
            if (s1 * s2 >= 0) add(FanIssue::BadIntersection, wall, "cones on wall " + detail::format_set(wall) + " overlap");
            adjacency[users[0].first].push_back(users[1].first);
            adjacency[users[1].first].push_back(users[0].first);
        }
    }
    if (!rep.ok()) return rep;

    std::vector<bool> seen(f.max_cones.size(), false);
    std::queue<std::size_t> todo;
    todo.push(0);
    seen[0] = true;
    std::size_t reached = 1;
    while (!todo.empty()) {
        auto c = todo.front();
        todo.pop();
        for (auto d : adjacency[c]) {
            if (!seen[d]) {
                seen[d] = true;
                ++reached;
                todo.push(d);
            }
        }
    }
    if (reached != f.max_cones.size()) add(FanIssue::NotComplete, {}, "maximal cones are not connected through walls");

    // Covering degree at a generic point must be exactly one.
    LatticeVector p = detail::generic_point(n, normals);
    std::size_t covering = 0;
    for (const auto& c : f.max_cones) {
        RationalMatrix gens;
        for (auto i : c) gens.push_back(to_rational(f.rays[i]));
        auto coeffs = solve_in_span(gens, to_rational(p));
        if (coeffs && std::all_of(coeffs->begin(), coeffs->end(), [](const Rational& x) { return x > 0; })) ++covering;
    }
    if (covering != 1) add(FanIssue::BadIntersection, {}, "a generic point lies in " + std::to_string(covering) + " maximal cones");
    return rep;
}

inline const Fan& require_valid(const Fan& f) {
    auto rep = validate_fan(f);
    if (!rep.ok()) throw Error(ErrorCode::InvalidFan, rep.summary());
    return f;
}

/// True iff the index set is a face of some maximal cone (smooth fans: generator subsets).
inline bool is_cone(const Fan& f, IndexSet rays) {
    for (auto i : rays) {
        if (i >= f.rays.size()) throw Error(ErrorCode::BadIndex, "ray index " + std::to_string(i) + " out of range");
    }
    std::sort(rays.begin(), rays.end());
    return std::any_of(f.max_cones.begin(), f.max_cones.end(), [&](const IndexSet& c) {
        IndexSet s(c);
        std::sort(s.begin(), s.end());
        return std::includes(s.begin(), s.end(), rays.begin(), rays.end());
    });
}

inline std::optional<std::size_t> find_max_cone(const Fan& f, IndexSet rays) {
    std::sort(rays.begin(), rays.end());
    for (std::size_t i = 0; i < f.max_cones.size(); ++i) {
        IndexSet s(f.max_cones[i]);
        std::sort(s.begin(), s.end());
        if (s == rays) return i;
    }
    return std::nullopt;
}

namespace detail {

inline LatticeVector unit(std::size_t n, std::size_t i) {
    LatticeVector v(n, Integer(0));
    v[i] = 1;
    return v;
}

inline Fan finish(Fan f) {
    for (auto& c : f.max_cones) std::sort(c.begin(), c.end());
    return require_valid(f), f;
}

}  // namespace detail

/// P^n: rays e_1..e_n, -(e_1+..+e_n); cone i omits ray i.
inline Fan construct_projective_space(int n) {
    if (n < 1) throw Error(ErrorCode::BadDimension, "projective space needs n >= 1");
    const auto d = static_cast<std::size_t>(n);
    Fan f;
    f.dim = n;
    for (std::size_t i = 0; i < d; ++i) f.rays.push_back(detail::unit(d, i));
    f.rays.push_back(LatticeVector(d, Integer(-1)));
    for (std::size_t omit = 0; omit <= d; ++omit) {
        IndexSet c;
        for (std::size_t i = 0; i <= d; ++i)
            if (i != omit) c.push_back(i);
        f.max_cones.push_back(c);
    }
    return detail::finish(std::move(f));
}

/// Hirzebruch surface F_m: rays (1,0), (0,1), (-1,m), (0,-1); cones <a_i, a_{i+1}>.
inline Fan construct_hirzebruch(int m) {
    if (m < 0) throw Error(ErrorCode::BadTwist, "Hirzebruch twist must be >= 0");
    Fan f;
    f.dim = 2;
    f.rays = {make_lattice({1, 0}), make_lattice({0, 1}), make_lattice({-1, m}), make_lattice({0, -1})};
    f.max_cones = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
    return detail::finish(std::move(f));
}

/// P(O + O(t_1) + ... + O(t_k)) over P^d in Z^{k+d}. Fiber rays e_1..e_k and
/// -(e_1+..+e_k) come first, then base rays e_{k+1}..e_{k+d} and
/// -(e_{k+1}+..+e_{k+d}) + sum t_i e_i. Cones omit one fiber and one base ray.
inline Fan construct_proj_split(int base_dim, const std::vector<long long>& twists) {
    if (base_dim < 1 || twists.empty()) throw Error(ErrorCode::BadDimension, "proj-split needs base >= 1 and at least one twist");
    const std::size_t k = twists.size();
    const auto d = static_cast<std::size_t>(base_dim);
    const std::size_t n = k + d;
    Fan f;
    f.dim = static_cast<int>(n);
    for (std::size_t i = 0; i < k; ++i) f.rays.push_back(detail::unit(n, i));
    LatticeVector fiber_last(n, Integer(0));
    for (std::size_t i = 0; i < k; ++i) fiber_last[i] = -1;
    f.rays.push_back(fiber_last);
    for (std::size_t j = 0; j < d; ++j) f.rays.push_back(detail::unit(n, k + j));
    LatticeVector base_last(n, Integer(0));
    for (std::size_t i = 0; i < k; ++i) base_last[i] = twists[i];
    for (std::size_t j = 0; j < d; ++j) base_last[k + j] = -1;
    f.rays.push_back(base_last);
    for (std::size_t fo = 0; fo <= k; ++fo) {
        for (std::size_t bo = 0; bo <= d; ++bo) {
            IndexSet c;
            for (std::size_t i = 0; i <= k; ++i)
                if (i != fo) c.push_back(i);
            for (std::size_t j = 0; j <= d; ++j)
                if (j != bo) c.push_back(k + 1 + j);
            f.max_cones.push_back(c);
        }
    }
    return detail::finish(std::move(f));
}

/// P(O + O(m)) over P^{n-1} with the base coordinates first: rays e_1..e_n,
/// -e_n, (-1,..,-1,m). Ray n-1 and ray n (0-based) are the fiber rays.
inline Fan construct_projectivized_line_bundle(int n, int m) {
    if (n < 2) throw Error(ErrorCode::BadDimension, "line bundle projectivization needs n >= 2");
    const auto d = static_cast<std::size_t>(n);
    Fan f;
    f.dim = n;
    for (std::size_t i = 0; i < d; ++i) f.rays.push_back(detail::unit(d, i));
    LatticeVector down(d, Integer(0));
    down[d - 1] = -1;
    f.rays.push_back(down);
    LatticeVector last(d, Integer(-1));
    last[d - 1] = m;
    f.rays.push_back(last);
    IndexSet base;
    for (std::size_t i = 0; i + 1 < d; ++i) base.push_back(i);
    base.push_back(d + 1);
    for (std::size_t fiber : {d - 1, d}) {
        for (std::size_t omit : base) {
            IndexSet c;
            for (auto b : base)
                if (b != omit) c.push_back(b);
            c.push_back(fiber);
            f.max_cones.push_back(c);
        }
    }
    return detail::finish(std::move(f));
}

inline Fan construct_product(const Fan& a, const Fan& b) {
    require_valid(a);
    require_valid(b);
    const auto na = static_cast<std::size_t>(a.dim), nb = static_cast<std::size_t>(b.dim);
    Fan f;
    f.dim = a.dim + b.dim;
    for (const auto& r : a.rays) {
        LatticeVector v(r);
        v.resize(na + nb, Integer(0));
        f.rays.push_back(v);
    }
    for (const auto& r : b.rays) {
        LatticeVector v(na, Integer(0));
        v.insert(v.end(), r.begin(), r.end());
        f.rays.push_back(v);
    }
    for (const auto& ca : a.max_cones) {
        for (const auto& cb : b.max_cones) {
            IndexSet c(ca);
            for (auto j : cb) c.push_back(a.rays.size() + j);
            f.max_cones.push_back(c);
        }
    }
    return detail::finish(std::move(f));
}

struct NamedFan {
    std::string name;
    Fan fan;
};

/// Smooth Fano toric 4-folds of Picard number at most two.
inline std::vector<NamedFan> catalog_fano4() {
    return {
        {"P4", construct_projective_space(4)},
        {"B1", construct_projectivized_line_bundle(4, 3)},
        {"B2", construct_projectivized_line_bundle(4, 2)},
        {"B3", construct_projectivized_line_bundle(4, 1)},
        {"B4", construct_product(construct_projective_space(1), construct_projective_space(3))},
        {"B5", construct_proj_split(1, {1, 0, 0})},
        {"C1", construct_proj_split(2, {2, 0})},
        {"C2", construct_proj_split(2, {1, 0})},
        {"C3", construct_proj_split(2, {1, 1})},
        {"C4", construct_product(construct_projective_space(2), construct_projective_space(2))},
    };
}

}  // namespace toricstab
