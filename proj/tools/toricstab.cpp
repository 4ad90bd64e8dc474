#include <iostream>

#include <CLI11.hpp>

#include "toricstab/commands.hpp"

using namespace toricstab;

int main(int argc, char** argv) {
    CLI::App app{"Slope stability of tangent bundles of smooth projective toric varieties"};
    app.require_subcommand(1);

    AnalyzeArgs analyze;
    std::string analyze_out;
    auto* a = app.add_subcommand("analyze", "Decide stability of TX for a fan and an ample divisor");
    a->add_option("fan", analyze.fan, "Fan JSON file or built-in name (P<n>, F<m>, PL<n>_<m>, P4, B1..B5, C1..C4)")->required();
    a->add_flag("--anticanonical", analyze.anticanonical, "Use the anticanonical divisor");
    a->add_option("--divisor", analyze.divisor, "Divisor coefficients, comma separated (p or p/q)");
    a->add_option("--out", analyze_out, "Also write the report to this file");
    a->add_option("--max-rays", analyze.max_rays, "Refuse fans with more rays than this");
    a->add_flag("--json", "Accepted for symmetry; the report is always JSON");

    ConstructArgs construct;
    auto* c = app.add_subcommand("construct", "Print the fan of a standard construction");
    c->add_option("kind", construct.kind, "pn | hirzebruch | proj-split | product")->required();
    c->add_option("params", construct.params, "pn: n; hirzebruch: m; product: two fans");
    c->add_option("--base", construct.base, "proj-split: base dimension");
    c->add_option("--twists", construct.twists, "proj-split: comma separated twists");

    bool catalog_json = false;
    auto* cat = app.add_subcommand("catalog", "Verdicts for the Fano 4-folds of Picard number at most 2");
    cat->add_flag("--json", catalog_json, "Emit JSON instead of a table");

    ScanArgs scan;
    std::string scan_out;
    auto* s = app.add_subcommand("scan", "Scan polarizations of a Hirzebruch surface and emit CSV");
    s->add_option("kind", scan.kind, "hirzebruch")->required();
    s->add_option("m", scan.m, "Twist of F_m")->required();
    s->add_option("--a1", scan.a1, "Range lo:hi for a1");
    s->add_option("--a2", scan.a2, "Range lo:hi for a2");
    s->add_option("--a3", scan.a3, "Range lo:hi for a3");
    s->add_option("--a4", scan.a4, "Range lo:hi for a4");
    s->add_option("--out", scan_out, "Also write the CSV to this file");

    OracleArgs oracle;
    auto* o = app.add_subcommand("oracle", "Chart-level existence check for a rank-one lambda-vector");
    o->add_option("fan", oracle.fan, "Fan JSON file or built-in name")->required();
    o->add_option("--lambda", oracle.lambda, "Comma separated levels, e.g. --lambda=0,-1,0,-1")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : ExitParse;
    }

    if (*a) {
        if (!analyze_out.empty()) analyze.out_path = analyze_out;
        return cmd_analyze(analyze, std::cout, std::cerr);
    }
    if (*c) return cmd_construct(construct, std::cout, std::cerr);
    if (*cat) return cmd_catalog(catalog_json, std::cout, std::cerr);
    if (*s) {
        if (!scan_out.empty()) scan.out_path = scan_out;
        return cmd_scan(scan, std::cout, std::cerr);
    }
    return cmd_oracle(oracle, std::cout, std::cerr);
}
