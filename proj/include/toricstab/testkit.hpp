#pragma once

// Fixtures and independent oracles for tests: deterministic lambda fuzzers,
// random smooth fans with ample divisors, Brion-type volume formulas, and the
// golden-case loader.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "toricstab/io.hpp"

namespace toricstab::testkit {

/// Valid lambda-vectors with levels in -1..3: draws uniformly, then lifts the
/// later of any two -1 entries on a common cone to 0.
class LambdaStream {
public:
    LambdaStream(const Fan& f, std::uint64_t seed) : fan_(f), rng_(seed) {}

    LambdaVector next() {
        LambdaVector l(fan_.rays.size());
        for (auto& x : l) x = static_cast<long long>(rng_() % 5) - 1;
        for (std::size_t j = 0; j < l.size(); ++j) {
            if (l[j] != -1) continue;
            for (std::size_t i = 0; i < j; ++i) {
                if (l[i] == -1 && is_cone(fan_, {i, j})) {
                    l[j] = 0;
                    break;
                }
            }
        }
        return l;
    }

private:
    Fan fan_;
    std::mt19937_64 rng_;
};

inline std::vector<LambdaVector> fuzz_lambda(const Fan& f, std::uint64_t seed, std::size_t count) {
    LambdaStream s(f, seed);
    std::vector<LambdaVector> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(s.next());
    return out;
}

/// Valid rank-r lambda-matrix: sorted columns in -1..3 with at most one -1,
/// then -1 entries beyond r in a maximal cone lifted to 0.
inline LambdaMatrix fuzz_lambda_matrix(const Fan& f, std::size_t r, std::mt19937_64& rng) {
    const std::size_t p = f.rays.size();
    LambdaMatrix m;
    m.entries.assign(r, std::vector<long long>(p, 0));
    for (std::size_t j = 0; j < p; ++j) {
        std::vector<long long> col(r);
        for (std::size_t i = 0; i < r; ++i) col[i] = static_cast<long long>(rng() % (i == 0 ? 5 : 4)) - (i == 0 ? 1 : 0);
        std::sort(col.begin(), col.end());
        for (std::size_t i = 0; i < r; ++i) m.entries[i][j] = col[i];
    }
    for (const auto& cone : f.max_cones) {
        std::size_t count = 0;
        for (auto j : cone) {
            if (m.entries[0][j] != -1) continue;
            if (++count > r) m.entries[0][j] = 0;
        }
    }
    return m;
}

/// A column-wise raise of `m`: each entry goes up by 0..2, columns re-sorted.
inline LambdaMatrix raised(const LambdaMatrix& m, std::mt19937_64& rng) {
    LambdaMatrix out(m);
    for (std::size_t j = 0; j < m.num_rays(); ++j) {
        std::vector<long long> col;
        for (std::size_t i = 0; i < m.rank(); ++i) col.push_back(m.entries[i][j] + static_cast<long long>(rng() % 3));
        std::sort(col.begin(), col.end());
        for (std::size_t i = 0; i < m.rank(); ++i) out.entries[i][j] = col[i];
    }
    return out;
}

/// Image of the fan under a unimodular change of coordinates rays -> rays * g.
inline Fan transformed(const Fan& f, const IntegerMatrix& g) {
    Fan out(f);
    for (auto& ray : out.rays) {
        LatticeVector w(ray.size(), Integer(0));
        for (std::size_t k = 0; k < ray.size(); ++k)
            for (std::size_t c = 0; c < ray.size(); ++c) w[c] += ray[k] * g[k][c];
        ray = std::move(w);
    }
    return out;
}

/// Product of random elementary matrices, determinant +-1.
inline IntegerMatrix random_unimodular(std::size_t n, std::mt19937_64& rng, int steps = 6) {
    IntegerMatrix g(n, LatticeVector(n, Integer(0)));
    for (std::size_t i = 0; i < n; ++i) g[i][i] = 1;
    if (n < 2) return g;
    for (int s = 0; s < steps; ++s) {
        std::size_t i = rng() % n, j = rng() % n;
        if (i == j) continue;
        long long k = static_cast<long long>(rng() % 5) - 2;
        for (std::size_t c = 0; c < n; ++c) g[i][c] += k * g[j][c];
    }
    if (rng() % 2) std::swap(g[0], g[1]);
    return g;
}

/// One of the standard constructions with random parameters, in random coordinates.
inline Fan random_fan(std::mt19937_64& rng) {
    Fan f;
    switch (rng() % 6) {
        case 0: f = construct_projective_space(1 + static_cast<int>(rng() % 4)); break;
        case 1: f = construct_hirzebruch(static_cast<int>(rng() % 5)); break;
        case 2: {
            std::vector<long long> t(1 + rng() % 2);
            for (auto& x : t) x = static_cast<long long>(rng() % 5) - 2;
            f = construct_proj_split(1 + static_cast<int>(rng() % 2), t);
            break;
        }
        case 3: f = construct_projectivized_line_bundle(2 + static_cast<int>(rng() % 3), static_cast<int>(rng() % 4)); break;
        case 4: f = construct_product(construct_hirzebruch(static_cast<int>(rng() % 3)), construct_projective_space(1)); break;
        default: f = construct_product(construct_projective_space(1), construct_projective_space(1 + static_cast<int>(rng() % 2))); break;
    }
    return transformed(f, random_unimodular(static_cast<std::size_t>(f.dim), rng));
}

/// Rejection sampling of integral ample divisors with coefficients in 0..bound.
inline std::optional<ToricDivisor> random_ample(const Fan& f, std::mt19937_64& rng, int bound = 6, int tries = 2000) {
    for (int t = 0; t < tries; ++t) {
        ToricDivisor d;
        for (std::size_t i = 0; i < f.rays.size(); ++i) d.coeffs.emplace_back(static_cast<long long>(rng() % (bound + 1)));
        if (is_ample(f, d)) return d;
    }
    return std::nullopt;
}

namespace detail {

inline LatticeVector generic_weight(std::size_t n) {
    LatticeVector c(n);
    Integer x = 1;
    for (std::size_t i = 0; i < n; ++i) {
        c[i] = x;
        x = x * 7 + 3;
    }
    return c;
}

inline Rational power(const Rational& x, std::size_t k) {
    Rational r = 1;
    for (std::size_t i = 0; i < k; ++i) r *= x;
    return r;
}

}  // namespace detail

/// Normalized n-volume of P by Lawrence's vertex formula:
///   Vol(P) = (1/n!) sum_sigma <c, v_sigma>^n / prod_i (-<c, m_i^sigma>)
/// for c off every edge direction. Shifts c along a curve until generic.
inline Rational brion_volume(const Polytope& p) {
    const auto n = static_cast<std::size_t>(p.fan.dim);
    std::vector<IntegerMatrix> duals;
    for (const auto& cone : p.fan.max_cones) {
        IntegerMatrix gens;
        for (auto j : cone) gens.push_back(p.fan.rays[j]);
        duals.push_back(dual_basis(gens));
    }
    LatticeVector c = detail::generic_weight(n);
    for (int shift = 0;; ++shift) {
        bool generic = true;
        for (const auto& d : duals)
            for (const auto& m : d) generic = generic && pairing(c, m) != 0;
        if (generic) break;
        c[shift % n] += 1 + shift;
    }
    Rational s = 0;
    for (std::size_t ci = 0; ci < duals.size(); ++ci) {
        Rational num = detail::power(pairing(p.vertices[ci], to_rational(c)), n);
        Rational den = 1;
        for (const auto& m : duals[ci]) den *= -Rational(pairing(c, m));
        s += num / den;
    }
    return s / Rational(factorial(static_cast<int>(n)));
}

/// Vol(P_alpha) by the same formula inside the facet: the vertices are v_sigma
/// for sigma containing alpha and the edges m_i^sigma for alpha_i != alpha.
inline Rational brion_facet_volume(const Polytope& p, std::size_t ray) {
    const auto n = static_cast<std::size_t>(p.fan.dim);
    if (n == 1) return 1;
    std::vector<std::pair<std::size_t, IntegerMatrix>> edges;
    for (auto ci : p.facet_cones.at(ray)) {
        const auto& cone = p.fan.max_cones[ci];
        IntegerMatrix gens;
        for (auto j : cone) gens.push_back(p.fan.rays[j]);
        IntegerMatrix dual = dual_basis(gens), e;
        for (std::size_t i = 0; i < cone.size(); ++i)
            if (cone[i] != ray) e.push_back(dual[i]);
        edges.emplace_back(ci, std::move(e));
    }
    LatticeVector c = detail::generic_weight(n);
    for (int shift = 0;; ++shift) {
        bool generic = true;
        for (const auto& [ci, e] : edges)
            for (const auto& m : e) generic = generic && pairing(c, m) != 0;
        if (generic) break;
        c[shift % n] += 1 + shift;
    }
    Rational s = 0;
    for (const auto& [ci, e] : edges) {
        Rational num = detail::power(pairing(p.vertices[ci], to_rational(c)), n - 1);
        Rational den = 1;
        for (const auto& m : e) den *= -Rational(pairing(c, m));
        s += num / den;
    }
    return s / Rational(factorial(static_cast<int>(n - 1)));
}

/// d/dt Vol(P_{a + t(-K)}) at t = 0, exact: Lagrange differentiation of the
/// degree-n volume polynomial sampled at t = 0..n.
inline Rational volume_derivative(const Fan& f, const ToricDivisor& a) {
    const int n = f.dim;
    std::vector<Rational> y;
    for (int t = 0; t <= n; ++t) {
        ToricDivisor d(a);
        for (auto& x : d.coeffs) x += t;
        y.push_back(brion_volume(polytope_from_divisor(f, d)));
    }
    // derivative at 0 of the interpolant through (t, y_t), t = 0..n
    Rational s = 0;
    for (int k = 0; k <= n; ++k) {
        // L_k'(0) for nodes 0..n
        Rational dk = 0;
        if (k == 0) {
            for (int j = 1; j <= n; ++j) dk -= Rational(1, j);
        } else {
            Rational prod = 1;
            for (int j = 0; j <= n; ++j) {
                if (j == k || j == 0) continue;
                prod *= Rational(-j) / Rational(k - j);
            }
            dk = prod / Rational(k);
        }
        s += dk * y[static_cast<std::size_t>(k)];
    }
    return s;
}

struct GoldenCase {
    std::string id;
    std::string fan;      // built-in name, see named_fan
    std::string divisor;  // "anticanonical" or comma separated coefficients
    std::optional<std::vector<Rational>> volumes;
    std::optional<Rational> mu_tx;
    std::optional<Rational> max_slope;
    std::optional<Status> verdict;
    std::optional<int> rank;
    std::optional<IndexSet> rays;
    std::map<std::string, std::string> provenance;  // field -> source
};

inline std::vector<GoldenCase> golden_suite(const std::string& path) {
    Json doc = parse_json_text(read_text_file(path));
    std::vector<GoldenCase> out;
    for (const auto& j : toricstab::detail::field(doc, "cases")) {
        GoldenCase g;
        g.id = toricstab::detail::field(j, "id").get<std::string>();
        g.fan = toricstab::detail::field(j, "fan").get<std::string>();
        g.divisor = toricstab::detail::field(j, "divisor").get<std::string>();
        const Json& e = toricstab::detail::field(j, "expect");
        if (e.contains("volumes")) g.volumes = toricstab::detail::rationals_from_json(e["volumes"], "volumes");
        if (e.contains("mu_tx")) g.mu_tx = parse_rational(e["mu_tx"].get<std::string>());
        if (e.contains("max_slope")) g.max_slope = parse_rational(e["max_slope"].get<std::string>());
        if (e.contains("verdict")) g.verdict = status_from_string(e["verdict"].get<std::string>());
        if (e.contains("rank")) g.rank = e["rank"].get<int>();
        if (e.contains("rays")) g.rays = e["rays"].get<IndexSet>();
        for (auto it = j["provenance"].begin(); it != j["provenance"].end(); ++it)
            g.provenance[it.key()] = it.value().get<std::string>();
        out.push_back(std::move(g));
    }
    return out;
}

/// Field-level differences between a golden case and the pipeline's answer.
inline std::vector<std::string> check_golden(const GoldenCase& g) {
    std::vector<std::string> diffs;
    auto cite = [&](const std::string& field) {
        auto it = g.provenance.find(field);
        return it == g.provenance.end() ? std::string() : " [" + it->second + "]";
    };
    Fan f = resolve_fan(g.fan);
    ToricDivisor a = g.divisor == "anticanonical" ? anticanonical(f) : parse_divisor(g.divisor);
    Report r = make_report(f, a);
    if (g.volumes && *g.volumes != r.volumes.vol) {
        std::string got;
        for (const auto& v : r.volumes.vol) got += to_string(v) + " ";
        diffs.push_back(g.id + ": volumes got " + got + cite("volumes"));
    }
    if (g.mu_tx && *g.mu_tx != r.mu_tx)
        diffs.push_back(g.id + ": mu_tx expected " + to_string(*g.mu_tx) + " got " + to_string(r.mu_tx) + cite("mu_tx"));
    const Rational best = r.certificate ? r.certificate->slope : Rational(0);
    if (g.max_slope && *g.max_slope != best)
        diffs.push_back(g.id + ": max_slope expected " + to_string(*g.max_slope) + " got " + to_string(best) + cite("max_slope"));
    if (g.verdict && *g.verdict != r.verdict)
        diffs.push_back(g.id + ": verdict expected " + std::string(to_string(*g.verdict)) + " got " +
                        std::string(to_string(r.verdict)) + cite("verdict"));
    if (g.rank && (!r.certificate || *g.rank != r.certificate->rank))
        diffs.push_back(g.id + ": rank expected " + std::to_string(*g.rank) + cite("rank"));
    if (g.rays && (!r.certificate || *g.rays != r.certificate->rays_in_space))
        diffs.push_back(g.id + ": certificate rays expected " + toricstab::detail::format_set(*g.rays) + cite("rays"));
    return diffs;
}

}  // namespace toricstab::testkit
