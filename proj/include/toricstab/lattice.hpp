#pragma once

// Exact linear algebra over the lattices N and M: primitive vectors,
// saturated subspaces in Hermite form, dual bases and lattice-normalized
// volumes of facets.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "toricstab/rational.hpp"

namespace toricstab {

using IntegerMatrix = std::vector<LatticeVector>;
using RationalMatrix = std::vector<RationalVector>;

/// Saturated sublattice V ∩ N of a rational subspace V, stored as the
/// row-style Hermite normal form of a lattice basis. Equal subspaces have
/// bit-identical representations.
struct Subspace {
    int dim = 0;
    IntegerMatrix basis;

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.dim == b.dim && a.basis == b.basis;
    }
    friend bool operator<(const Subspace& a, const Subspace& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.basis < b.basis;
    }
};

namespace detail {

inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Returns (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0.
inline std::tuple<Integer, Integer, Integer> extended_gcd(const Integer& a, const Integer& b) {
    Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        Integer q = old_r / r;
        Integer tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

inline std::size_t width_of(const auto& rows, std::size_t fallback = 0) {
    return rows.empty() ? fallback : rows.front().size();
}

inline void check_width(const auto& rows, std::size_t n) {
    for (const auto& r : rows) {
        if (r.size() != n) throw Error(ErrorCode::DimMismatch, "rows of unequal length");
    }
}

// In-place reduced row echelon form; returns pivot columns.
inline std::vector<std::size_t> rref(RationalMatrix& a) {
    std::vector<std::size_t> pivots;
    if (a.empty()) return pivots;
    const std::size_t cols = a.front().size();
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
        std::size_t p = row;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[row]);
        Rational inv = 1 / a[row][c];
        for (auto& x : a[row]) x *= inv;
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == row || a[r][c] == 0) continue;
            Rational f = a[r][c];
            for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[row][k];
        }
        pivots.push_back(c);
        ++row;
    }
    a.resize(row);
    return pivots;
}

inline RationalMatrix to_rational_matrix(const IntegerMatrix& m) {
    RationalMatrix r;
    r.reserve(m.size());
    for (const auto& row : m) r.push_back(to_rational(row));
    return r;
}

// Basis of {x in Q^cols : rows * x = 0}.
inline RationalMatrix rational_kernel(RationalMatrix rows, std::size_t cols) {
    auto pivots = rref(rows);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    RationalMatrix out;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        RationalVector v(cols, Rational(0));
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -rows[r][f];
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace detail

inline Integer content(const LatticeVector& v) {
    Integer g = 0;
    for (const auto& c : v) g = boost::multiprecision::gcd(g, Integer(abs(c)));
    return g;
}

inline bool is_zero(const LatticeVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Integer& c) { return c == 0; });
}

inline LatticeVector primitive_vector(const LatticeVector& v) {
    Integer g = content(v);
    if (g == 0) throw Error(ErrorCode::ZeroVector, "primitive_vector of the zero vector");
    LatticeVector out(v);
    for (auto& c : out) c /= g;
    return out;
}

inline bool is_primitive(const LatticeVector& v) { return content(v) == 1; }

inline int rank_of(const RationalMatrix& rows) {
    RationalMatrix copy = rows;
    return static_cast<int>(detail::rref(copy).size());
}

inline int rank_of(const IntegerMatrix& rows) { return rank_of(detail::to_rational_matrix(rows)); }

inline Rational determinant(RationalMatrix a) {
    const std::size_t n = a.size();
    for (const auto& r : a) {
        if (r.size() != n) throw Error(ErrorCode::DimMismatch, "determinant of a non-square matrix");
    }
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a[r][c] == 0) continue;
            Rational f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

inline Integer determinant(const IntegerMatrix& a) {
    return boost::multiprecision::numerator(determinant(detail::to_rational_matrix(a)));
}

/// Coefficients c with sum_i c_i * rows[i] == target, or nullopt when the
/// target is outside the rational span. Rows are assumed independent.
inline std::optional<RationalVector> solve_in_span(const RationalMatrix& rows, const RationalVector& target) {
    const std::size_t n = target.size();
    detail::check_width(rows, n);
    const std::size_t k = rows.size();
    // Augmented system [rows^T | target], n equations in k unknowns.
    RationalMatrix aug(n, RationalVector(k + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) aug[i][j] = rows[j][i];
        aug[i][k] = target[i];
    }
    auto pivots = detail::rref(aug);
    if (!pivots.empty() && pivots.back() == k) return std::nullopt;
    RationalVector coeffs(k, Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) coeffs[pivots[r]] = aug[r][k];
    return coeffs;
}

/// Row-style Hermite normal form of the lattice spanned by `rows`: zero rows
/// dropped, pivots positive and strictly increasing, entries above a pivot
/// reduced into [0, pivot).
inline IntegerMatrix hermite_normal_form(IntegerMatrix a) {
    if (a.empty()) return a;
    const std::size_t cols = a.front().size();
    detail::check_width(a, cols);
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
        // Euclid across rows until a single nonzero remains in column c.
        for (;;) {
            std::size_t best = a.size();
            for (std::size_t r = row; r < a.size(); ++r) {
                if (a[r][c] != 0 && (best == a.size() || abs(a[r][c]) < abs(a[best][c]))) best = r;
            }
            if (best == a.size()) break;
            std::swap(a[row], a[best]);
            bool done = true;
            for (std::size_t r = row + 1; r < a.size(); ++r) {
                if (a[r][c] == 0) continue;
                Integer q = a[r][c] / a[row][c];
                for (std::size_t k = c; k < cols; ++k) a[r][k] -= q * a[row][k];
                if (a[r][c] != 0) done = false;
            }
            if (done) break;
        }
        if (row == a.size() || a[row][c] == 0) continue;
        if (a[row][c] < 0) {
            for (auto& x : a[row]) x = -x;
        }
        for (std::size_t r = 0; r < row; ++r) {
            Integer q = detail::floor_div(a[r][c], a[row][c]);
            if (q == 0) continue;
            for (std::size_t k = c; k < cols; ++k) a[r][k] -= q * a[row][k];
        }
        ++row;
    }
    a.resize(row);
    return a;
}

/// Lattice basis of {x in Z^n : rows * x = 0}, via unimodular column operations.
inline IntegerMatrix integer_kernel(IntegerMatrix a, std::size_t n) {
    detail::check_width(a, n);
    IntegerMatrix u(n, LatticeVector(n, Integer(0)));  // columns of U are stored as u[col]
    for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
    auto combine = [&](std::size_t c1, std::size_t c2, const Integer& x, const Integer& y, const Integer& z,
                       const Integer& w) {
        // (col c1, col c2) <- (x*c1 + y*c2, z*c1 + w*c2)
        for (auto& row : a) {
            Integer p = x * row[c1] + y * row[c2];
            Integer q = z * row[c1] + w * row[c2];
            row[c1] = std::move(p);
            row[c2] = std::move(q);
        }
        LatticeVector p(n), q(n);
        for (std::size_t k = 0; k < n; ++k) {
            p[k] = x * u[c1][k] + y * u[c2][k];
            q[k] = z * u[c1][k] + w * u[c2][k];
        }
        u[c1] = std::move(p);
        u[c2] = std::move(q);
    };
    std::size_t col = 0;
    for (std::size_t i = 0; i < a.size() && col < n; ++i) {
        for (std::size_t j = col + 1; j < n; ++j) {
            if (a[i][j] == 0) continue;
            Integer av = a[i][col], bv = a[i][j];
            auto [g, x, y] = detail::extended_gcd(av, bv);
            combine(col, j, x, y, Integer(-bv / g), Integer(av / g));
        }
        if (a[i][col] != 0) ++col;
    }
    IntegerMatrix kernel(u.begin() + static_cast<std::ptrdiff_t>(col), u.end());
    return kernel;
}

/// Saturation of the row span: a canonical basis of span_Q(rows) ∩ Z^n.
inline Subspace hermite_canonical(const IntegerMatrix& rows) {
    if (rows.empty()) throw Error(ErrorCode::ZeroSpan, "no generators");
    const std::size_t n = rows.front().size();
    detail::check_width(rows, n);
    if (std::all_of(rows.begin(), rows.end(), [](const LatticeVector& r) { return is_zero(r); }))
        throw Error(ErrorCode::ZeroSpan, "all generators are zero");
    IntegerMatrix complement = integer_kernel(rows, n);
    IntegerMatrix lattice;
    if (complement.empty()) {
        lattice.assign(n, LatticeVector(n, Integer(0)));
        for (std::size_t i = 0; i < n; ++i) lattice[i][i] = 1;
    } else {
        lattice = integer_kernel(complement, n);
    }
    Subspace s;
    s.basis = hermite_normal_form(std::move(lattice));
    s.dim = static_cast<int>(s.basis.size());
    return s;
}

inline bool subspace_contains(const Subspace& v, const LatticeVector& x) {
    if (!v.basis.empty() && v.basis.front().size() != x.size())
        throw Error(ErrorCode::DimMismatch, "vector dimension differs from subspace ambient dimension");
    if (is_zero(x)) return true;
    return solve_in_span(detail::to_rational_matrix(v.basis), to_rational(x)).has_value();
}

/// Dual basis m_1..m_n in M with <m_i, rays_j> = delta_ij.
inline IntegerMatrix dual_basis(const IntegerMatrix& rays) {
    const std::size_t n = rays.size();
    detail::check_width(rays, n);
    Integer det = determinant(rays);
    if (abs(det) != 1) throw Error(ErrorCode::NotSmoothCone, "cone generators have determinant " + det.str());
    // Solve rays * m_i = e_i column by column: m_i is the i-th column of rays^{-1}.
    RationalMatrix aug(n, RationalVector(2 * n, Rational(0)));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug[r][c] = Rational(rays[r][c]);
        aug[r][n + r] = 1;
    }
    detail::rref(aug);
    IntegerMatrix dual(n, LatticeVector(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Rational& e = aug[k][n + i];
            dual[i][k] = boost::multiprecision::numerator(e);
        }
    }
    return dual;
}

/// Z-basis of the sublattice {m in M : <m, alpha> = 0}, in Hermite form.
inline IntegerMatrix facet_lattice_basis(const LatticeVector& alpha) {
    if (is_zero(alpha)) throw Error(ErrorCode::ZeroVector, "facet_lattice_basis of the zero vector");
    return hermite_normal_form(integer_kernel({alpha}, alpha.size()));
}

namespace detail {

inline int affine_dim(const RationalMatrix& pts, const std::vector<std::size_t>& idx) {
    if (idx.size() <= 1) return 0;
    RationalMatrix diffs;
    for (std::size_t k = 1; k < idx.size(); ++k) {
        RationalVector d(pts[idx[k]]);
        for (std::size_t c = 0; c < d.size(); ++c) d[c] -= pts[idx[0]][c];
        diffs.push_back(std::move(d));
    }
    return rank_of(diffs);
}

// Facets of conv(pts[idx]) inside its own affine hull, as sorted index sets.
inline std::vector<std::vector<std::size_t>> facets_of(const RationalMatrix& pts,
                                                       const std::vector<std::size_t>& idx, int k) {
    // Local affine chart of dimension k.
    const RationalVector& origin = pts[idx[0]];
    RationalMatrix diffs;
    for (std::size_t q : idx) {
        RationalVector d(pts[q]);
        for (std::size_t c = 0; c < d.size(); ++c) d[c] -= origin[c];
        diffs.push_back(std::move(d));
    }
    RationalMatrix directions = diffs;
    rref(directions);
    RationalMatrix local;
    for (const auto& d : diffs) local.push_back(*solve_in_span(directions, d));

    std::set<std::vector<std::size_t>> found;
    const std::size_t m = idx.size();
    std::vector<std::size_t> pick(static_cast<std::size_t>(k));
    // Enumerate k-subsets in lexicographic order.
    for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
    while (true) {
        RationalMatrix span;
        for (std::size_t j = 1; j < pick.size(); ++j) {
            RationalVector d(local[pick[j]]);
            for (std::size_t c = 0; c < d.size(); ++c) d[c] -= local[pick[0]][c];
            span.push_back(std::move(d));
        }
        if (rank_of(span) == k - 1) {
            RationalMatrix normal = rational_kernel(span, static_cast<std::size_t>(k));
            const RationalVector& w = normal.front();
            bool pos = false, neg = false;
            std::vector<std::size_t> on;
            for (std::size_t q = 0; q < m; ++q) {
                Rational s = 0;
                for (std::size_t c = 0; c < w.size(); ++c) s += w[c] * (local[q][c] - local[pick[0]][c]);
                if (s > 0) pos = true;
                else if (s < 0) neg = true;
                else on.push_back(idx[q]);
            }
            if (!(pos && neg)) found.insert(on);
        }
        // next combination
        std::size_t i = pick.size();
        while (i > 0 && pick[i - 1] == m - pick.size() + (i - 1)) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < pick.size(); ++j) pick[j] = pick[j - 1] + 1;
    }
    return {found.begin(), found.end()};
}

// Pulling triangulation: cone from the smallest-index point over every facet
// not containing it, recursively. Points are assumed distinct.
inline std::vector<std::vector<std::size_t>> pulling_triangulation(const RationalMatrix& pts,
                                                                   const std::vector<std::size_t>& idx) {
    const int k = affine_dim(pts, idx);
    if (k == 0) return {{idx.front()}};
    const std::size_t apex = *std::min_element(idx.begin(), idx.end());
    std::vector<std::vector<std::size_t>> out;
    for (const auto& facet : facets_of(pts, idx, k)) {
        if (std::find(facet.begin(), facet.end(), apex) != facet.end()) continue;
        for (auto simplex : pulling_triangulation(pts, facet)) {
            simplex.insert(simplex.begin(), apex);
            out.push_back(std::move(simplex));
        }
    }
    return out;
}

}  // namespace detail

/// Volume of conv(vertices) measured in the given Z-basis of alpha's
/// orthogonal sublattice. Vertices must lie on one hyperplane <v, alpha> = c.
/// A hull of dimension below n-1 has volume 0; for n = 1 the single point has
/// volume 1.
inline Rational lattice_volume(const RationalMatrix& vertices, const LatticeVector& alpha, const IntegerMatrix& facet_basis) {
    if (vertices.empty()) throw Error(ErrorCode::EmptyFacet, "facet has no vertices");
    const std::size_t n = alpha.size();
    if (is_zero(alpha)) throw Error(ErrorCode::ZeroVector, "facet normal is zero");
    detail::check_width(vertices, n);
    const Rational level = pairing(vertices.front(), alpha);
    for (const auto& v : vertices) {
        if (pairing(v, alpha) != level)
            throw Error(ErrorCode::NotOnFacetHyperplane, "vertices do not share a level of <., alpha>");
    }
    if (n == 1) return 1;

    RationalMatrix pts = vertices;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    const RationalMatrix basis = detail::to_rational_matrix(facet_basis);
    RationalMatrix coords;
    coords.reserve(pts.size());
    for (const auto& p : pts) {
        RationalVector d(p);
        for (std::size_t c = 0; c < n; ++c) d[c] -= pts.front()[c];
        auto x = solve_in_span(basis, d);
        if (!x) throw Error(ErrorCode::DimMismatch, "facet basis does not span the hyperplane");
        coords.push_back(std::move(*x));
    }
    std::vector<std::size_t> all(coords.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    if (detail::affine_dim(coords, all) < static_cast<int>(n) - 1) return 0;

    Rational total = 0;
    for (const auto& simplex : detail::pulling_triangulation(coords, all)) {
        RationalMatrix edges;
        for (std::size_t j = 1; j < simplex.size(); ++j) {
            RationalVector e(coords[simplex[j]]);
            for (std::size_t c = 0; c < e.size(); ++c) e[c] -= coords[simplex[0]][c];
            edges.push_back(std::move(e));
        }
        total += abs(determinant(std::move(edges)));
    }
    return total / Rational(factorial(static_cast<int>(n) - 1));
}

inline Rational lattice_volume(const RationalMatrix& vertices, const LatticeVector& alpha) {
    if (is_zero(alpha)) throw Error(ErrorCode::ZeroVector, "facet normal is zero");
    return lattice_volume(vertices, alpha, facet_lattice_basis(alpha));
}

}  // namespace toricstab
