// Acceptance suite: nine end-to-end criteria covering the identity layer,
// convexity equivalences, the eta constant, the rank-one-convex-but-not-
// polyconvex pipeline, certification agreement batteries, the polyaffine
// characterization, and the translation-bound sandwich. Prints one verdict
// line per criterion; the exit code is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "symconv/polycert.hpp"
#include "symconv/quadform.hpp"
#include "symconv/rng.hpp"
#include "symconv/roc.hpp"
#include "symconv/translate.hpp"

using namespace symconv;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void verdict(int num, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", num, detail.c_str());
    if (!pass) ++g_failures;
}

double elapsed_s(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool rel_ok(double lhs, double rhs, double scale) {
    return std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(scale));
}

Mat2 random_mat2(Rng& rng) {
    Mat2 f;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) f(i, j) = rng.uniform(-2.0, 2.0);
    return f;
}

Mat3 random_mat3(Rng& rng) {
    Mat3 f;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) f(i, j) = rng.uniform(-2.0, 2.0);
    return f;
}

SymMat3 random_sym3(Rng& rng, double s = 1.0) {
    SymMat3 e;
    for (double& x : e.u) x = rng.uniform(-s, s);
    return e;
}

// --- criterion 1: split/cofactor/adjugate identities on random matrices ---
void criterion_1() {
    const auto t0 = Clock::now();
    Rng rng(0xAC1DULL);
    const int N = 10000;
    int bad = 0;

    for (int t = 0; t < N; ++t) {  // det F = det F^s + det F^a in 2d
        Mat2 f = random_mat2(rng);
        auto v = det_split_2d(f);
        if (!rel_ok(v[0], v[1] + v[2], v[0])) ++bad;
    }
    for (int t = 0; t < N; ++t) {  // cof F^s = (cof F)^s - cof F^a in 3d
        Mat3 f = random_mat3(rng);
        auto v = cof_split_3d(f);
        SymMat3 rhs = v[1] - v[2];
        for (int k = 0; k < 6; ++k)
            if (!rel_ok(v[0].u[k], rhs.u[k], v[0].frob())) ++bad;
    }
    for (int t = 0; t < N; ++t) {  // (cof F) F^T = (det F) I
        Mat3 f = random_mat3(rng);
        Mat3 lhs = cof(f).matmul(f.transposed());
        const double d = det(f);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (!rel_ok(lhs(i, j), i == j ? d : 0.0, d)) ++bad;
    }
    for (int t = 0; t < N; ++t) {  // cof(a (.) b) = -1/4 (a x b) (x) (a x b)
        CompatDir3 d;
        for (int i = 0; i < 3; ++i) {
            d.a[i] = rng.uniform(-2.0, 2.0);
            d.b[i] = rng.uniform(-2.0, 2.0);
        }
        Mat3 lhs = cof(d.odot().to_matrix());
        Vec3 x = d.cross_ab();
        Mat3 rhs = Mat3::outer(x, x) * -0.25;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (!rel_ok(lhs(i, j), rhs(i, j), rhs.frob())) ++bad;
    }

    const double dt = elapsed_s(t0);
    std::ostringstream ss;
    ss << "identity suite (det split, cof split, adjugate, cone cofactor) on 10^4 "
          "random matrices each: "
       << bad << " violations at rel tol 1e-10, " << dt << " s (budget 5 s)";
    verdict(1, bad == 0 && dt < 5.0, ss.str());
}

// --- criterion 2: PSD == pointwise nonnegative == convex for q_A ---
void criterion_2() {
    Rng rng(0xC2ULL);
    int disagreements = 0;
    for (int t = 0; t < 100; ++t) {
        SymMat3 A;
        if (t % 3 == 0) {
            A = random_sym3(rng);
        } else {
            Mat3 g = random_mat3(rng);
            Mat3 gg = g.matmul(g.transposed());
            A = SymMat3::from_matrix(t % 3 == 1 ? gg : gg * -1.0);
        }
        const bool psd = sym_eigenvalues(A)[0] >= -1e-10 * std::max(1.0, A.frob());
        double worst = std::numeric_limits<double>::infinity();
        for (int s = 0; s < 1000; ++s)
            worst = std::min(worst, qa_eval(A, random_mat3(rng)));
        const bool nonneg = worst >= -1e-9;
        const bool convex = qa_is_convex(A);
        if (psd != nonneg || nonneg != convex) ++disagreements;
    }
    std::ostringstream ss;
    ss << "antisymmetric-part form q_A on 100 random A (1000 samples each): PSD == "
          "nonnegative == convex with "
       << disagreements << " disagreements";
    verdict(2, disagreements == 0, ss.str());
}

// --- criterion 3: example battery for +-det and +-cof_ii ---
void criterion_3() {
    const Catalog& cat = builtin_forms();
    bool ok = true;
    std::ostringstream ss;

    auto cn = certify_2d(cat.neg_det2);
    const bool neg_det_ok = cn.kind == Certificate2d::Kind::polyconvex &&
                            translator_margin(cat.neg_det2, cn.alpha) >= -1e-9;
    ok = ok && neg_det_ok;

    auto cp = certify_2d(cat.det2);
    const double wit_val =
        cat.det2.eval(cp.witness) +
        cp.alpha * det2_embedded(cp.witness.u[0], cp.witness.u[1], cp.witness.u[2]);
    const bool det2_ok = cp.kind == Certificate2d::Kind::refuted &&
                         std::abs(cp.witness.frob() - 1.0) <= 1e-9 && wit_val < -1e-6;
    ok = ok && det2_ok;

    CompatDir3 dir{{1, 0, 0}, {0, 1, 0}};
    auto s_pos = directional_convexity_scan(Closure3(&Catalog::det3_closure),
                                            SymMat3::from_embedded({-1, -1, 1, 0, 0, 0}),
                                            dir, -1.0, 1.0, 201);
    auto s_neg = directional_convexity_scan(
        [](const SymMat3& e) { return -Catalog::det3_closure(e); },
        SymMat3::from_embedded({1, 1, -1, 0, 0, 0}), dir, -1.0, 1.0, 201);
    const bool det3_ok = s_pos.nonconvex_witness && s_pos.witness_index >= 0 &&
                         s_neg.nonconvex_witness && s_neg.witness_index >= 0;
    ok = ok && det3_ok;

    bool cof_ok = true;
    for (int i = 0; i < 3; ++i) {
        auto v = is_sym_rank_one_convex(cat.cof_entries[i]);
        cof_ok = cof_ok && !v.sr1c &&
                 std::abs(v.cone.argmin.odot().frob() - 1.0) <= 1e-9 &&
                 cat.cof_entries[i].eval(v.cone.argmin.odot()) < -1e-6;
    }
    ok = ok && cof_ok;

    bool neg_cof_ok = true;
    for (int i = 0; i < 3; ++i) {
        auto c = certify_3d(cat.neg_cof_entries[i]);
        Vec3 e{};
        e[i] = 1.0;
        SymMat3 diff = c.best_A - SymMat3::from_matrix(Mat3::outer(e, e));
        neg_cof_ok = neg_cof_ok && c.kind == Certificate3d::Kind::polyconvex &&
                     diff.frob() <= 1e-6 &&
                     translator_margin(cat.neg_cof_entries[i], c.best_A) >= -1e-9;
    }
    ok = ok && neg_cof_ok;

    ss << "example battery: -det2 certified (alpha " << cn.alpha
       << "), +det2 refuted by unit witness, +-det3 refuted by directional scans, "
          "+cof_ii refuted on the cone, -cof_ii certified with basis translators";
    verdict(3, ok, ss.str());
}

// --- criterion 4: eta by two independent searches ---
void criterion_4() {
    const auto t0 = Clock::now();
    EtaResult grid = compute_eta(64, 200, 1);
    MinOptions ro;
    ro.restarts = 1000;
    ro.polish_iters = 200;
    ro.seed = 1;
    auto rest = min_over_compatible_restarts(builtin_forms().f0, ro);
    const double dt = elapsed_s(t0);
    const double diff = std::abs(grid.eta - rest.min_value);
    const bool ok = diff <= 1e-6 && grid.eta > 0.0 && grid.eta <= 1.0 / 3.0 + 1e-9 &&
                    grid.structure.all_pass && dt < 60.0;
    std::ostringstream ss;
    ss << "eta = " << grid.eta << " (grid+polish) vs " << rest.min_value
       << " (1000 restarts), diff " << diff
       << "; in (0, 1/3]; minimizer structure checks pass; " << dt << " s (budget 60 s)";
    verdict(4, ok, ss.str());
}

// --- criterion 5: end-to-end counterexample pipeline ---
void criterion_5() {
    const Catalog& cat = builtin_forms();
    EtaResult eta = compute_eta(64, 200, 1);
    QuadForm3 f = cat.f_eta(eta.eta);

    MinOptions mo;
    mo.grid = 64;
    mo.seed = 1;
    auto cone = min_over_compatible(f, mo);
    const bool sr1c_ok = cone.min_value >= -1e-7;

    auto cert = certify_3d(f);
    const bool refute_ok = cert.best_phi < -1e-4;

    auto ref = linear_system_refutation(eta.argmin, eta.eta);
    const bool rank_ok = ref.rank_L < ref.rank_aug;

    EtaResult eta2 = compute_eta(64, 200, 1);
    auto cert2 = certify_3d(cat.f_eta(eta2.eta));
    bool det_ok = eta.eta == eta2.eta && cert.best_phi == cert2.best_phi;
    for (int k = 0; k < 6; ++k)
        det_ok = det_ok && cert.best_A.u[k] == cert2.best_A.u[k];

    std::ostringstream ss;
    ss << "counterexample pipeline: cone min " << cone.min_value
       << " >= -1e-7; best certification margin " << cert.best_phi
       << " < -1e-4 over 20 restarts; rank L = " << ref.rank_L << " < rank [L|c] = "
       << ref.rank_aug << " at the computed minimizer; bitwise deterministic rerun: "
       << (det_ok ? "yes" : "no");
    verdict(5, sr1c_ok && refute_ok && rank_ok && det_ok, ss.str());
}

// --- criterion 6: 2d certificate agrees with the cone verdict ---
void criterion_6() {
    Rng rng(0xC6ULL);
    int excluded = 0, disagreements = 0, checked = 0;
    for (int t = 0; t < 100; ++t) {
        std::array<double, 6> up{};
        for (double& x : up) x = rng.uniform(-1.0, 1.0);
        QuadForm2 f = quadform_from_coeffs_2d(up, "rand");
        auto cert = certify_2d(f);
        MinOptions mo;
        mo.grid = 64;
        mo.seed = 1;
        auto sr = is_sym_rank_one_convex(f, mo);
        if (std::abs(cert.objective) < 1e-7 || std::abs(sr.cone.min_value) < 1e-7) {
            ++excluded;
            continue;
        }
        ++checked;
        if ((cert.kind == Certificate2d::Kind::polyconvex) != sr.sr1c) ++disagreements;
    }
    std::ostringstream ss;
    ss << "2d equivalence on 100 random forms: " << checked << " compared, " << excluded
       << " boundary forms excluded, " << disagreements << " disagreements";
    verdict(6, disagreements == 0, ss.str());
}

// --- criterion 7: triple agreement for -A:cof forms ---
void criterion_7() {
    Rng rng(0xC7ULL);
    int disagreements = 0;
    for (int t = 0; t < 100; ++t) {
        SymMat3 A;
        if (t < 40) {
            A = random_sym3(rng);
        } else {
            Mat3 g = random_mat3(rng);
            Mat3 gg = g.matmul(g.transposed());
            A = SymMat3::from_matrix(t < 80 ? gg
                                            : gg * -1.0 - Mat3::identity() * 0.05);
        }
        auto rep = cor_b_equivalence(A);
        if (rep.sr1c != rep.spc || rep.spc != rep.psd) ++disagreements;
    }
    std::ostringstream ss;
    ss << "-A:cof triple agreement (rank-one convex == polyconvex == PSD) on 100 "
          "random A: "
       << disagreements << " disagreements";
    verdict(7, disagreements == 0, ss.str());
}

// --- criterion 8: polyaffine quadratics are exactly the zero forms ---
void criterion_8() {
    const Catalog& cat = builtin_forms();
    int violations = 0, both_count = 0;

    auto check2 = [&](const QuadForm2& f) {
        const bool both = certify_2d(f).kind == Certificate2d::Kind::polyconvex &&
                          certify_2d(-f).kind == Certificate2d::Kind::polyconvex;
        if (both) ++both_count;
        if (both != (f.frob() <= 1e-9)) ++violations;
    };
    auto check3 = [&](const QuadForm3& f) {
        const bool both = certify_3d(f).kind == Certificate3d::Kind::polyconvex &&
                          certify_3d(-f).kind == Certificate3d::Kind::polyconvex;
        if (both) ++both_count;
        if (both != (f.frob() <= 1e-9)) ++violations;
    };

    check2(cat.det2);
    check2(cat.neg_det2);
    check2(cat.norm2_2d);
    check2(cat.zero_2d);
    check3(cat.f0);
    check3(cat.norm2_3d);
    check3(cat.zero_3d);
    for (int i = 0; i < 3; ++i) {
        check3(cat.cof_entries[i]);
        check3(cat.neg_cof_entries[i]);
    }

    Rng rng(0xC8ULL);
    for (int t = 0; t < 50; ++t) {
        std::array<double, 6> up{};
        for (double& x : up) x = rng.uniform(-1.0, 1.0);
        check2(quadform_from_coeffs_2d(up, "rand2"));
    }
    for (int t = 0; t < 50; ++t) {
        std::array<double, 21> up{};
        for (double& x : up) x = rng.uniform(-1.0, 1.0);
        check3(quadform_from_coeffs_3d(up, "rand3"));
    }

    std::ostringstream ss;
    ss << "polyaffine scan over catalog + 100 random forms: " << both_count
       << " forms with f and -f both certified (all with |Q| <= 1e-9), " << violations
       << " violations";
    verdict(8, violations == 0, ss.str());
}

// --- criterion 9: translation sandwich on the two-well fixture ---
void criterion_9() {
    const auto t0 = Clock::now();
    std::vector<SymMat2> wells = {SymMat2::from_embedded({0.0, 0.0, 1.0 / kSqrt2}),
                                  SymMat2::from_embedded({0.0, 0.0, -1.0 / kSqrt2})};
    auto f = make_multiwell(wells, {1.0, 1.0});
    auto tb = translation_bound_2d(f, -1.0, 1.0, 64, {0.0, 0.25, 0.5, 1.0, 2.0, 4.0});

    double scale = 0.0;
    for (double v : tb.f_samples.values) scale = std::max(scale, std::abs(v));
    int sandwich_bad = 0;
    for (std::size_t i = 0; i < tb.bound.size(); ++i) {
        if (tb.envelope.values[i] > tb.bound.values[i] + 1e-9 * scale) ++sandwich_bad;
        if (tb.bound.values[i] > tb.f_samples.values[i] + 1e-9 * scale) ++sandwich_bad;
    }
    const double mid = eval_trilinear(tb.bound, 0.0, 0.0, 0.0);

    // 1d double well against its analytic convex envelope.
    const int n = 601;
    std::vector<double> xs(n), v(n), duals(2 * n + 1);
    for (int i = 0; i < n; ++i) {
        xs[i] = -3.0 + i * (6.0 / (n - 1));
        const double d1 = xs[i] - 1.0, d2 = xs[i] + 1.0;
        v[i] = std::min(d1 * d1, d2 * d2);
    }
    for (int j = 0; j <= 2 * n; ++j) duals[j] = (j - n) * (8.0 / n);
    auto conj = legendre_1d(xs, v, duals);
    auto env1d = legendre_1d(duals, conj, xs);
    double worst_kink = 0.0, worst_flat = 0.0;
    for (int i = 0; i < n; ++i) {
        const double ax = std::abs(xs[i]);
        const double exact = ax <= 1.0 ? 0.0 : (ax - 1.0) * (ax - 1.0);
        const double err = std::abs(env1d[i] - exact);
        if (std::abs(ax - 1.0) < 0.05)
            worst_kink = std::max(worst_kink, err);
        else
            worst_flat = std::max(worst_flat, err);
    }

    const double dt = elapsed_s(t0);
    const bool ok = sandwich_bad == 0 && mid <= 1e-3 && worst_kink <= 1e-3 &&
                    worst_flat <= 1e-6 && dt < 120.0;
    std::ostringstream ss;
    ss << "translation sandwich at 64^3: envelope <= bound <= f with " << sandwich_bad
       << " violations; midpoint bound " << mid << " <= 1e-3; 1d double-well envelope "
       << "error " << worst_flat << " (flat) / " << worst_kink << " (near kinks); " << dt
       << " s (budget 120 s)";
    verdict(9, ok, ss.str());
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (g_failures == 0)
        std::printf("all 9 acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria FAILED\n", g_failures);
    return g_failures;
}
