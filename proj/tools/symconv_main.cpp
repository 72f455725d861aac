// Command-line front end: classification of quadratic forms, the eta
// constant, the rank-one-convex-but-not-polyconvex form pipeline, and 2d
// translation bounds. All reports embed config, version and the tolerance
// table, and are byte-identical for identical invocations.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "symconv/form_json.hpp"
#include "symconv/polycert.hpp"
#include "symconv/quadform.hpp"
#include "symconv/roc.hpp"
#include "symconv/translate.hpp"
#include "symconv/version.hpp"

using nlohmann::json;
using namespace symconv;

namespace {

json tolerance_table() {
    return json{{"certify_lambda_min", tol::kCertifyLambdaMin},
                {"cone_nonneg", tol::kConeNonneg},
                {"inconclusive_band", tol::kInconclusiveBand},
                {"rank_pivot", tol::kRankPivot},
                {"structure_zero", tol::kStructureZero},
                {"quad_fit", tol::kQuadFit},
                {"scan_witness", tol::kScanWitness},
                {"grid_uniform", tol::kGridUniform},
                {"odot_unit", tol::kOdotUnit}};
}

json base_config(std::uint64_t seed, int grid) {
    return json{{"seed", seed},
                {"grid", grid},
                {"version", kVersion},
                {"tolerances", tolerance_table()}};
}

template <std::size_t N>
json num_array(const std::array<double, N>& a) {
    json j = json::array();
    for (double v : a) j.push_back(v);
    return j;
}

template <int D>
json cone_json(const ConeMinResult<D>& c) {
    json j;
    j["min_value"] = c.min_value;
    j["argmin_a"] = num_array(c.argmin.a);
    j["argmin_b"] = num_array(c.argmin.b);
    j["method"] = c.method;
    j["grid_resolution"] = c.grid_resolution;
    j["certified_gap"] =
        std::isfinite(c.certified_gap) ? json(c.certified_gap) : json("unbounded");
    return j;
}

void write_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + out_path);
    os << text;
}

void write_report(const json& j, const std::string& out_path) {
    write_text(j.dump(2) + "\n", out_path);
}

std::optional<AnyQuadForm> builtin_form(int dim, const std::string& name,
                                        std::uint64_t seed) {
    const Catalog& cat = builtin_forms();
    if (dim == 2) {
        if (name == "norm2") return AnyQuadForm(cat.norm2_2d);
        if (name == "det") return AnyQuadForm(cat.det2);
        if (name == "neg_det") return AnyQuadForm(cat.neg_det2);
        if (name == "zero") return AnyQuadForm(cat.zero_2d);
        return std::nullopt;
    }
    if (name == "norm2") return AnyQuadForm(cat.norm2_3d);
    if (name == "f0") return AnyQuadForm(cat.f0);
    if (name == "zero") return AnyQuadForm(cat.zero_3d);
    if (name == "counterexample")
        return AnyQuadForm(cat.f_eta(compute_eta(64, 200, seed).eta));
    const char* pos[3] = {"cof11", "cof22", "cof33"};
    const char* neg[3] = {"neg_cof11", "neg_cof22", "neg_cof33"};
    for (int i = 0; i < 3; ++i) {
        if (name == pos[i]) return AnyQuadForm(cat.cof_entries[i]);
        if (name == neg[i]) return AnyQuadForm(cat.neg_cof_entries[i]);
    }
    return std::nullopt;
}

AnyQuadForm load_form(int dim, const std::string& source, std::uint64_t seed) {
    if (source.rfind("builtin:", 0) == 0) {
        auto f = builtin_form(dim, source.substr(8), seed);
        if (!f)
            throw FormParseError("form JSON: field 'form' names no builtin \"" +
                                 source.substr(8) + "\" for dim " + std::to_string(dim));
        return *f;
    }
    std::ifstream is(source);
    if (!is) throw FormParseError("form JSON: cannot open file " + source);
    json j;
    try {
        is >> j;
    } catch (const json::parse_error& e) {
        throw FormParseError(std::string("form JSON: parse error: ") + e.what());
    }
    AnyQuadForm f = form_from_json(j);
    const int got = std::holds_alternative<QuadForm2>(f) ? 2 : 3;
    if (got != dim)
        throw FormParseError("form JSON: field 'dim' (" + std::to_string(got) +
                             ") does not match --dim " + std::to_string(dim));
    return f;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

int run_classify(int dim, const std::string& form_arg, int grid, std::uint64_t seed,
                 const std::string& out_path) {
    AnyQuadForm form = load_form(dim, form_arg, seed);
    ClassifyOptions opt;
    opt.cone.grid = grid;
    opt.cone.seed = seed;
    opt.cert.seed = seed;

    json rep;
    rep["command"] = "classify";
    rep["config"] = base_config(seed, grid);
    rep["config"]["dim"] = dim;
    rep["config"]["form"] = form_arg;

    bool inconclusive = false;
    std::visit(
        [&](const auto& f) {
            const auto res = classify(f, opt);
            rep["label"] = f.label;
            rep["class"] = to_string(res.cls);
            rep["convexity"] = {{"convex", res.convexity.convex},
                                {"min_eigenvalue", res.convexity.min_eigenvalue}};
            if (res.cone) rep["cone"] = cone_json(*res.cone);
            if (res.cert2) {
                rep["certificate"] = {
                    {"kind",
                     res.cert2->kind == Certificate2d::Kind::polyconvex ? "polyconvex"
                                                                        : "refuted"},
                    {"alpha", res.cert2->alpha},
                    {"objective", res.cert2->objective}};
                if (res.cert2->kind == Certificate2d::Kind::refuted)
                    rep["certificate"]["witness"] = num_array(res.cert2->witness.u);
            }
            if (res.cert3) {
                rep["certificate"] = {
                    {"kind", res.cert3->kind == Certificate3d::Kind::polyconvex
                                 ? "polyconvex"
                                 : "numerically_refuted"},
                    {"best_A", num_array(res.cert3->best_A.u)},
                    {"best_phi", res.cert3->best_phi},
                    {"inconclusive", res.cert3->inconclusive}};
            }
            inconclusive = res.inconclusive;
            rep["inconclusive"] = inconclusive;
        },
        form);

    write_report(rep, out_path);
    return inconclusive ? 2 : 0;
}

int run_eta(int grid, std::uint64_t seed, const std::string& out_path) {
    const EtaResult r = compute_eta(grid, 200, seed);
    json rep;
    rep["command"] = "eta";
    rep["config"] = base_config(seed, grid);
    rep["eta"] = r.eta;
    rep["argmin_a"] = num_array(r.argmin.a);
    rep["argmin_b"] = num_array(r.argmin.b);
    rep["grid"] = r.search.grid_resolution;
    rep["certified_gap"] = r.search.certified_gap;
    rep["checks"] = {{"lemma_structure", r.structure.all_pass ? "pass" : "fail"}};
    write_report(rep, out_path);
    return r.flagged ? 2 : 0;
}

int run_counterexample(int grid, std::uint64_t seed, const std::string& out_path) {
    const EtaResult eta = compute_eta(grid, 200, seed);
    const QuadForm3 f = builtin_forms().f_eta(eta.eta);

    MinOptions cone_opt;
    cone_opt.grid = grid;
    cone_opt.seed = seed;
    const auto sr = is_sym_rank_one_convex(f, cone_opt);

    CertifyOptions cert_opt;
    cert_opt.seed = seed;
    const auto cert = certify_3d(f, cert_opt);
    const bool spc = cert.kind == Certificate3d::Kind::polyconvex;

    const auto ref = linear_system_refutation(eta.argmin, eta.eta);

    json rep;
    rep["command"] = "counterexample";
    rep["config"] = base_config(seed, grid);
    rep["eta"] = eta.eta;
    rep["argmin_a"] = num_array(eta.argmin.a);
    rep["argmin_b"] = num_array(eta.argmin.b);
    rep["structure_checks_pass"] = eta.structure.all_pass;
    rep["sr1c"] = sr.sr1c;
    rep["cone_min"] = sr.cone.min_value;
    rep["spc"] = spc;
    rep["best_phi"] = cert.best_phi;
    rep["best_A"] = num_array(cert.best_A.u);
    rep["inconclusive"] = cert.inconclusive;
    rep["linear_system_inconsistent"] = ref.inconsistent;
    rep["rank_L"] = ref.rank_L;
    rep["rank_aug"] = ref.rank_aug;
    write_report(rep, out_path);

    std::ostringstream sum;
    sum << "eta = " << fmt_double(eta.eta) << "\n"
        << "symmetric rank-one convex: " << (sr.sr1c ? "yes" : "no")
        << " (cone min " << fmt_double(sr.cone.min_value) << ")\n"
        << "symmetric polyconvex: " << (spc ? "yes" : "no") << " (best margin "
        << fmt_double(cert.best_phi) << ")\n"
        << "linear system at minimizer: "
        << (ref.inconsistent ? "inconsistent" : "consistent") << " (rank L = "
        << ref.rank_L << ", rank [L|c] = " << ref.rank_aug << ")\n";
    std::cerr << sum.str();
    return cert.inconclusive ? 2 : 0;
}

int run_translate(const std::string& wells_path, const std::string& box_arg, int res,
                  const std::string& alphas_arg, std::uint64_t seed,
                  const std::string& out_path) {
    double lo = 0.0, hi = 0.0;
    {
        std::istringstream bs(box_arg);
        char comma = 0;
        if (!(bs >> lo >> comma >> hi) || comma != ',' || !(lo < hi))
            throw FormParseError("form JSON: field '--box' must be \"lo,hi\" with lo < hi");
    }
    std::vector<double> alphas;
    {
        std::istringstream as(alphas_arg);
        std::string tok;
        while (std::getline(as, tok, ',')) {
            try {
                alphas.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw FormParseError("form JSON: field '--alphas' has a non-numeric entry");
            }
        }
    }

    WellSet ws;
    if (wells_path.empty()) {
        // Default fixture: the two compatible wells +-(e1 (.) e2).
        ws.wells = {SymMat2::from_embedded({0.0, 0.0, kSqrt2 * 0.5}),
                      SymMat2::from_embedded({0.0, 0.0, -kSqrt2 * 0.5})};
        ws.moduli = {1.0, 1.0};
    } else {
        std::ifstream is(wells_path);
        if (!is) throw FormParseError("form JSON: cannot open file " + wells_path);
        json j;
        try {
            is >> j;
        } catch (const json::parse_error& e) {
            throw FormParseError(std::string("form JSON: parse error: ") + e.what());
        }
        ws = wells_from_json(j);
    }

    const auto tb =
        translation_bound_2d(make_multiwell(ws.wells, ws.moduli), lo, hi, res, alphas);

    std::ostringstream os;
    os << "# version=" << kVersion << " seed=" << seed << " box=" << fmt_double(lo) << ","
       << fmt_double(hi) << " res=" << res << " alphas=" << alphas_arg << "\n";
    os << "# tolerances:";
    const json tols = tolerance_table();
    for (const auto& [k, v] : tols.items())
        os << " " << k << "=" << fmt_double(v.get<double>());
    os << "\n";
    os << "u1,u2,u3,f,envelope,bound,best_alpha\n";
    std::size_t idx = 0;
    for (int i = 0; i < res; ++i)
        for (int j = 0; j < res; ++j)
            for (int k = 0; k < res; ++k) {
                os << fmt_double(tb.f_samples.axes[0][i]) << ','
                   << fmt_double(tb.f_samples.axes[1][j]) << ','
                   << fmt_double(tb.f_samples.axes[2][k]) << ','
                   << fmt_double(tb.f_samples.values[idx]) << ','
                   << fmt_double(tb.envelope.values[idx]) << ','
                   << fmt_double(tb.bound.values[idx]) << ','
                   << fmt_double(tb.best_alpha[idx]) << "\n";
                ++idx;
            }
    write_text(os.str(), out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized convexity certification for symmetric-matrix energies"};
    app.require_subcommand(1);

    int dim = 3;
    std::string form_arg;
    std::uint64_t seed = 1;
    int grid = 32;
    int eta_grid = 64;
    std::string out_path;
    std::string format = "json";
    std::string wells_path;
    std::string box_arg = "-1,1";
    int res = 64;
    std::string alphas_arg = "0,0.25,0.5,1,2,4";

    auto* c_classify = app.add_subcommand("classify", "classify a quadratic form");
    c_classify->add_option("--dim", dim, "2 or 3")->required()->check(CLI::IsMember({2, 3}));
    c_classify->add_option("--form", form_arg, "form JSON file or builtin:<name>")
        ->required();
    c_classify->add_option("--grid", grid, "cone search resolution");
    c_classify->add_option("--seed", seed, "random seed");
    c_classify->add_option("--out", out_path, "output file (default stdout)");
    c_classify->add_option("--format", format)->check(CLI::IsMember({"json"}));

    auto* c_eta = app.add_subcommand("eta", "compute the cone minimum of f0");
    c_eta->add_option("--grid", eta_grid, "search grid resolution (>= 16)");
    c_eta->add_option("--seed", seed, "random seed");
    c_eta->add_option("--out", out_path, "output file (default stdout)");
    c_eta->add_option("--format", format)->check(CLI::IsMember({"json"}));

    auto* c_cex = app.add_subcommand(
        "counterexample", "run the full rank-one-convex vs polyconvex pipeline");
    c_cex->add_option("--grid", eta_grid, "search grid resolution (>= 16)");
    c_cex->add_option("--seed", seed, "random seed");
    c_cex->add_option("--out", out_path, "output file (default stdout)");
    c_cex->add_option("--format", format)->check(CLI::IsMember({"json"}));

    auto* c_tr = app.add_subcommand("translate", "2d translation-method lower bound");
    c_tr->add_option("--f", wells_path, "wells JSON file (default: two-well fixture)");
    c_tr->add_option("--box", box_arg, "axis range lo,hi (applies to all axes)");
    c_tr->add_option("--res", res, "grid resolution per axis");
    c_tr->add_option("--alphas", alphas_arg, "comma-separated translator weights");
    c_tr->add_option("--seed", seed, "random seed");
    c_tr->add_option("--out", out_path, "output file (default stdout)");
    c_tr->add_option("--format", format)->check(CLI::IsMember({"csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (c_classify->parsed()) return run_classify(dim, form_arg, grid, seed, out_path);
        if (c_eta->parsed()) return run_eta(eta_grid, seed, out_path);
        if (c_cex->parsed()) return run_counterexample(eta_grid, seed, out_path);
        if (c_tr->parsed())
            return run_translate(wells_path, box_arg, res, alphas_arg, seed, out_path);
    } catch (const FormParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
