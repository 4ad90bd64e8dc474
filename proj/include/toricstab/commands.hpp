#pragma once

// Command implementations behind the toricstab executable. Each command
// renders its whole output into a string first, so error paths print nothing
// on stdout.

#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "toricstab/charts.hpp"
#include "toricstab/io.hpp"

namespace toricstab {

enum ExitCode : int {
    ExitOk = 0,
    ExitDisagree = 1,
    ExitInvalidFan = 2,
    ExitNonAmple = 3,
    ExitParse = 4,
    ExitInvalidLambda = 5,
    ExitTooManyRays = 6,
    ExitInternal = 7,
};

inline int exit_code_for(ErrorCode c) {
    switch (c) {
        case ErrorCode::InvalidFan:
        case ErrorCode::NotSmoothCone:
        case ErrorCode::NotMaximal: return ExitInvalidFan;
        case ErrorCode::NonAmple: return ExitNonAmple;
        case ErrorCode::ParseError:
        case ErrorCode::DimMismatch:
        case ErrorCode::BadDimension:
        case ErrorCode::BadTwist:
        case ErrorCode::BadIndex: return ExitParse;
        case ErrorCode::InvalidLambda: return ExitInvalidLambda;
        case ErrorCode::TooManyRays: return ExitTooManyRays;
        default: return ExitInternal;
    }
}

namespace detail {

template <typename F>
int run_command(std::ostream& out, std::ostream& err, F&& body) {
    try {
        std::string text = body();
        out << text;
        return ExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const nlohmann::json::exception& e) {
        err << "error: ParseError: " << e.what() << "\n";
        return ExitParse;
    }
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
    f << text;
}

inline std::string format_vector(const LatticeVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
    return s + ")";
}

}  // namespace detail

struct AnalyzeArgs {
    std::string fan;
    bool anticanonical = false;
    std::string divisor;
    std::optional<std::string> out_path;
    std::size_t max_rays = 24;
};

inline int cmd_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err) {
    return detail::run_command(out, err, [&] {
        Fan f = resolve_fan(args.fan);
        require_valid(f);
        if (args.anticanonical == !args.divisor.empty())
            throw Error(ErrorCode::ParseError, "give exactly one of --anticanonical and --divisor");
        ToricDivisor a = args.anticanonical ? anticanonical(f) : parse_divisor(args.divisor);
        DecideOptions opts;
        opts.max_rays = args.max_rays;
        std::string text = dump(report_to_json(make_report(f, a, opts)));
        if (args.out_path) detail::write_file(*args.out_path, text);
        return text;
    });
}

struct ConstructArgs {
    std::string kind;
    std::vector<std::string> params;
    int base = -1;
    std::string twists;
};

inline int cmd_construct(const ConstructArgs& args, std::ostream& out, std::ostream& err) {
    return detail::run_command(out, err, [&] {
        auto one_int = [&]() {
            if (args.params.size() != 1) throw Error(ErrorCode::ParseError, args.kind + " takes one integer");
            auto v = parse_integer_list(args.params[0]);
            if (v.size() != 1) throw Error(ErrorCode::ParseError, args.kind + " takes one integer");
            return v[0];
        };
        Fan f;
        if (args.kind == "pn") {
            f = construct_projective_space(static_cast<int>(one_int()));
        } else if (args.kind == "hirzebruch") {
            f = construct_hirzebruch(static_cast<int>(one_int()));
        } else if (args.kind == "proj-split") {
            if (args.base < 1 || args.twists.empty()) throw Error(ErrorCode::ParseError, "proj-split needs --base and --twists");
            f = construct_proj_split(args.base, parse_integer_list(args.twists));
        } else if (args.kind == "product") {
            if (args.params.size() != 2) throw Error(ErrorCode::ParseError, "product takes two fans");
            f = construct_product(require_valid(resolve_fan(args.params[0])), require_valid(resolve_fan(args.params[1])));
        } else {
            throw Error(ErrorCode::ParseError, "unknown kind '" + args.kind + "'");
        }
        return dump(fan_to_json(f));
    });
}

struct CatalogRow {
    std::string name;
    Status status;
    std::optional<int> rank;  // rank of the maximal-slope subsheaf, unless stable
    Rational mu_tx;
    Rational best_slope;
};

inline std::vector<CatalogRow> catalog_rows() {
    std::vector<CatalogRow> rows;
    for (const auto& nf : catalog_fano4()) {
        auto v = decide(nf.fan, anticanonical(nf.fan));
        CatalogRow r{nf.name, v.status, std::nullopt, v.mu_tx, *v.best->slope};
        if (v.status != Status::Stable) r.rank = v.best->rank;
        rows.push_back(std::move(r));
    }
    return rows;
}

inline int cmd_catalog(bool json, std::ostream& out, std::ostream& err) {
    return detail::run_command(out, err, [&] {
        auto rows = catalog_rows();
        if (json) {
            Json j = Json::array();
            for (const auto& r : rows) {
                Json row;
                row["name"] = r.name;
                row["verdict"] = std::string(to_string(r.status));
                row["rank"] = r.rank ? Json(*r.rank) : Json(nullptr);
                row["mu_tx"] = to_string(r.mu_tx);
                row["max_slope"] = to_string(r.best_slope);
                j.push_back(std::move(row));
            }
            return dump(j);
        }
        std::ostringstream s;
        s << std::left << std::setw(6) << "name" << std::setw(12) << "verdict" << std::setw(6) << "rank"
          << std::setw(10) << "mu_tx" << "max_slope\n";
        for (const auto& r : rows) {
            std::string rank = r.rank ? std::to_string(*r.rank) : "-";
            s << std::setw(6) << r.name << std::setw(12) << std::string(to_string(r.status)) << std::setw(6) << rank
              << std::setw(10) << to_string(r.mu_tx) << to_string(r.best_slope) << "\n";
        }
        return s.str();
    });
}

struct Range {
    long long lo = 0;
    long long hi = 0;
};

/// "lo:hi" or a single value.
inline Range parse_range(const std::string& text) {
    auto colon = text.find(':');
    Range r;
    auto to_int = [&](const std::string& s) {
        auto v = parse_integer_list(s);
        if (v.size() != 1) throw Error(ErrorCode::ParseError, "bad range '" + text + "'");
        return v[0];
    };
    if (colon == std::string::npos) {
        r.lo = r.hi = to_int(text);
    } else {
        r.lo = to_int(text.substr(0, colon));
        r.hi = to_int(text.substr(colon + 1));
    }
    if (r.lo > r.hi) throw Error(ErrorCode::ParseError, "empty range '" + text + "'");
    return r;
}

struct ScanArgs {
    std::string kind = "hirzebruch";
    int m = 0;
    std::string a1 = "0:3", a2 = "0:3", a3 = "0:3", a4 = "0:3";
    std::optional<std::string> out_path;
};

inline int cmd_scan(const ScanArgs& args, std::ostream& out, std::ostream& err) {
    return detail::run_command(out, err, [&] {
        if (args.kind != "hirzebruch") throw Error(ErrorCode::ParseError, "scan supports only hirzebruch");
        if (args.m < 0) throw Error(ErrorCode::ParseError, "m must be non-negative");
        const Range r1 = parse_range(args.a1), r2 = parse_range(args.a2), r3 = parse_range(args.a3), r4 = parse_range(args.a4);
        const Fan f = construct_hirzebruch(args.m);
        std::ostringstream s;
        s << "a1,a2,a3,a4,a,b,ample,verdict\n";
        for (long long x1 = r1.lo; x1 <= r1.hi; ++x1)
            for (long long x2 = r2.lo; x2 <= r2.hi; ++x2)
                for (long long x3 = r3.lo; x3 <= r3.hi; ++x3)
                    for (long long x4 = r4.lo; x4 <= r4.hi; ++x4) {
                        ToricDivisor d{{Rational(x1), Rational(x2), Rational(x3), Rational(x4)}};
                        const long long a = x1 + x3 - args.m * x2, b = x2 + x4;
                        const bool ample = is_ample(f, d);
                        s << x1 << ',' << x2 << ',' << x3 << ',' << x4 << ',' << a << ',' << b << ','
                          << (ample ? "true" : "false") << ','
                          << (ample ? std::string(to_string(decide(f, d).status)) : std::string("skipped")) << "\n";
                    }
        if (args.out_path) detail::write_file(*args.out_path, s.str());
        return s.str();
    });
}

struct OracleArgs {
    std::string fan;
    std::string lambda;
};

inline int cmd_oracle(const OracleArgs& args, std::ostream& out, std::ostream& err) {
    bool agree = true;
    int rc = detail::run_command(out, err, [&] {
        Fan f = resolve_fan(args.fan);
        require_valid(f);
        LambdaVector lambda = parse_integer_list(args.lambda);
        auto witness = rank_one_exists(f, lambda);
        const int span = minus_one_span_dim(f, lambda);
        const bool predicted = span <= 1;
        agree = predicted == witness.has_value();
        std::ostringstream s;
        s << "witness: " << (witness ? detail::format_vector(witness->direction) : std::string("non-existent")) << "\n";
        s << "span criterion: dim " << span << " -> " << (predicted ? "exists" : "non-existent") << "\n";
        s << (agree ? "AGREE" : "DISAGREE") << "\n";
        return s.str();
    });
    if (rc == ExitOk && !agree) return ExitDisagree;
    return rc;
}

}  // namespace toricstab
