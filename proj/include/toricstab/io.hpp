#pragma once

// File formats: fan JSON, analysis report JSON, comma-separated lists, and
// named built-in fans.

#include <fstream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "toricstab/stability.hpp"

namespace toricstab {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json matrix_json(const IntegerMatrix& m) {
    Json out = Json::array();
    for (const auto& row : m) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(static_cast<long long>(x));
        out.push_back(std::move(r));
    }
    return out;
}

inline IntegerMatrix matrix_from_json(const Json& j, const char* what) {
    if (!j.is_array()) throw Error(ErrorCode::ParseError, std::string(what) + " must be an array");
    IntegerMatrix m;
    for (const auto& row : j) {
        if (!row.is_array()) throw Error(ErrorCode::ParseError, std::string(what) + " rows must be arrays");
        LatticeVector v;
        for (const auto& x : row) {
            if (!x.is_number_integer()) throw Error(ErrorCode::ParseError, std::string(what) + " entries must be integers");
            v.emplace_back(x.get<long long>());
        }
        m.push_back(std::move(v));
    }
    return m;
}

inline Json rationals_json(const std::vector<Rational>& v) {
    Json out = Json::array();
    for (const auto& q : v) out.push_back(to_string(q));
    return out;
}

inline std::vector<Rational> rationals_from_json(const Json& j, const char* what) {
    if (!j.is_array()) throw Error(ErrorCode::ParseError, std::string(what) + " must be an array");
    std::vector<Rational> out;
    for (const auto& x : j) {
        if (!x.is_string()) throw Error(ErrorCode::ParseError, std::string(what) + " entries must be \"p/q\" strings");
        out.push_back(parse_rational(x.get<std::string>()));
    }
    return out;
}

inline const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
    return j.at(key);
}

}  // namespace detail

inline Json fan_to_json(const Fan& f) {
    Json j;
    j["dim"] = f.dim;
    j["rays"] = detail::matrix_json(f.rays);
    Json cones = Json::array();
    for (const auto& c : f.max_cones) cones.push_back(c);
    j["max_cones"] = std::move(cones);
    return j;
}

/// Structural parse only; the caller decides whether to validate.
inline Fan fan_from_json(const Json& j) {
    Fan f;
    const Json& dim = detail::field(j, "dim");
    if (!dim.is_number_integer()) throw Error(ErrorCode::ParseError, "'dim' must be an integer");
    f.dim = dim.get<int>();
    f.rays = detail::matrix_from_json(detail::field(j, "rays"), "rays");
    const Json& cones = detail::field(j, "max_cones");
    if (!cones.is_array()) throw Error(ErrorCode::ParseError, "max_cones must be an array");
    for (const auto& c : cones) {
        IndexSet s;
        if (!c.is_array()) throw Error(ErrorCode::ParseError, "max_cones rows must be arrays");
        for (const auto& x : c) {
            if (!x.is_number_integer() || x.get<long long>() < 0)
                throw Error(ErrorCode::ParseError, "cone entries must be non-negative integers");
            s.push_back(x.get<std::size_t>());
        }
        std::sort(s.begin(), s.end());
        f.max_cones.push_back(std::move(s));
    }
    return f;
}

inline Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Fan read_fan_file(const std::string& path) { return fan_from_json(parse_json_text(read_text_file(path))); }

/// Built-in fans: P<n>, F<m>, PL<n>_<m> (P(O + O(m)) over P^{n-1}), and the ten catalog names.
inline std::optional<Fan> named_fan(const std::string& name) {
    std::smatch m;
    if (std::regex_match(name, m, std::regex("P([0-9]+)"))) return construct_projective_space(std::stoi(m[1]));
    if (std::regex_match(name, m, std::regex("F([0-9]+)"))) return construct_hirzebruch(std::stoi(m[1]));
    if (std::regex_match(name, m, std::regex("PL([0-9]+)_([0-9]+)")))
        return construct_projectivized_line_bundle(std::stoi(m[1]), std::stoi(m[2]));
    for (auto& nf : catalog_fano4())
        if (nf.name == name) return nf.fan;
    return std::nullopt;
}

/// A path to a fan file, or a built-in name when no such file exists.
inline Fan resolve_fan(const std::string& spec) {
    if (std::ifstream(spec).good()) return read_fan_file(spec);
    if (auto f = named_fan(spec)) return *f;
    throw Error(ErrorCode::ParseError, "no fan file or built-in fan named '" + spec + "'");
}

inline std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline ToricDivisor parse_divisor(const std::string& text) {
    ToricDivisor d;
    for (const auto& s : split_list(text)) d.coeffs.push_back(parse_rational(s));
    return d;
}

inline std::vector<long long> parse_integer_list(const std::string& text) {
    std::vector<long long> out;
    for (const auto& s : split_list(text)) {
        Rational q = parse_rational(s);
        if (denominator(q) != 1) throw Error(ErrorCode::ParseError, "'" + s + "' is not an integer");
        out.push_back(static_cast<long long>(numerator(q)));
    }
    return out;
}

struct Report {
    Fan fan;
    ToricDivisor divisor;
    bool ample = false;
    VolumeTable volumes;
    Rational mu_tx;
    Status verdict = Status::Stable;
    std::optional<Certificate> certificate;
    std::vector<RankSummary> ranks;
    std::vector<std::string> notes;

    friend bool operator==(const Report& a, const Report& b) {
        auto same_cert = [](const std::optional<Certificate>& x, const std::optional<Certificate>& y) {
            if (x.has_value() != y.has_value()) return false;
            if (!x) return true;
            return x->rank == y->rank && x->lambda == y->lambda && x->subspace_basis == y->subspace_basis &&
                   x->rays_in_space == y->rays_in_space && x->slope == y->slope;
        };
        auto same_ranks = [](const std::vector<RankSummary>& x, const std::vector<RankSummary>& y) {
            if (x.size() != y.size()) return false;
            for (std::size_t i = 0; i < x.size(); ++i)
                if (x[i].rank != y[i].rank || x[i].realizable_max != y[i].realizable_max ||
                    x[i].admissible_bound != y[i].admissible_bound)
                    return false;
            return true;
        };
        return a.fan == b.fan && a.divisor == b.divisor && a.ample == b.ample && a.volumes == b.volumes &&
               a.mu_tx == b.mu_tx && a.verdict == b.verdict && same_cert(a.certificate, b.certificate) &&
               same_ranks(a.ranks, b.ranks) && a.notes == b.notes;
    }
};

inline Report make_report(const Fan& f, const ToricDivisor& a, const DecideOptions& opts = {}) {
    StabilityVerdict v = decide(f, a, opts);
    Report r;
    r.fan = f;
    r.divisor = a;
    r.ample = true;
    r.volumes = v.volumes;
    r.mu_tx = v.mu_tx;
    r.verdict = v.status;
    r.certificate = certificate(v);
    r.ranks = v.ranks;
    r.notes = v.notes;
    return r;
}

inline Status status_from_string(const std::string& s) {
    if (s == "stable") return Status::Stable;
    if (s == "semistable") return Status::StrictlySemistable;
    if (s == "unstable") return Status::Unstable;
    throw Error(ErrorCode::ParseError, "unknown verdict '" + s + "'");
}

inline Json report_to_json(const Report& r) {
    Json j;
    j["fan"] = fan_to_json(r.fan);
    j["divisor"] = detail::rationals_json(r.divisor.coeffs);
    j["ample"] = r.ample;
    j["volumes"] = detail::rationals_json(r.volumes.vol);
    j["mu_tx"] = to_string(r.mu_tx);
    j["verdict"] = std::string(to_string(r.verdict));
    if (r.certificate) {
        const auto& c = *r.certificate;
        Json cj;
        cj["rank"] = c.rank;
        cj["lambda_matrix"] = c.lambda.entries;
        cj["subspace_basis"] = detail::matrix_json(c.subspace_basis);
        cj["rays"] = c.rays_in_space;
        cj["slope"] = to_string(c.slope);
        j["certificate"] = std::move(cj);
    } else {
        j["certificate"] = nullptr;
    }
    Json ranks = Json::array();
    for (const auto& s : r.ranks) {
        Json sj;
        sj["rank"] = s.rank;
        sj["realizable_max"] = to_string(s.realizable_max);
        sj["admissible_bound"] = s.admissible_bound ? Json(to_string(*s.admissible_bound)) : Json(nullptr);
        ranks.push_back(std::move(sj));
    }
    j["rank_summary"] = std::move(ranks);
    j["notes"] = r.notes;
    return j;
}

inline Report report_from_json(const Json& j) {
    Report r;
    r.fan = fan_from_json(detail::field(j, "fan"));
    r.divisor.coeffs = detail::rationals_from_json(detail::field(j, "divisor"), "divisor");
    r.ample = detail::field(j, "ample").get<bool>();
    r.volumes.vol = detail::rationals_from_json(detail::field(j, "volumes"), "volumes");
    r.mu_tx = parse_rational(detail::field(j, "mu_tx").get<std::string>());
    r.verdict = status_from_string(detail::field(j, "verdict").get<std::string>());
    const Json& cj = detail::field(j, "certificate");
    if (!cj.is_null()) {
        Certificate c;
        c.rank = detail::field(cj, "rank").get<int>();
        c.lambda.entries = detail::field(cj, "lambda_matrix").get<std::vector<std::vector<long long>>>();
        c.subspace_basis = detail::matrix_from_json(detail::field(cj, "subspace_basis"), "subspace_basis");
        c.rays_in_space = detail::field(cj, "rays").get<IndexSet>();
        c.slope = parse_rational(detail::field(cj, "slope").get<std::string>());
        c.mu_tx = r.mu_tx;
        r.certificate = std::move(c);
    }
    for (const auto& sj : detail::field(j, "rank_summary")) {
        RankSummary s;
        s.rank = detail::field(sj, "rank").get<int>();
        s.realizable_max = parse_rational(detail::field(sj, "realizable_max").get<std::string>());
        const Json& b = detail::field(sj, "admissible_bound");
        if (!b.is_null()) s.admissible_bound = parse_rational(b.get<std::string>());
        r.ranks.push_back(std::move(s));
    }
    r.notes = detail::field(j, "notes").get<std::vector<std::string>>();
    return r;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace toricstab
