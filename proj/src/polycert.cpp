#include "symconv/polycert.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "symconv/eigen_jacobi.hpp"
#include "symconv/rng.hpp"
#include "symconv/version.hpp"

namespace symconv {
namespace {

SymMat3 basis_sym3(int m) {
    std::array<double, 6> u{};
    u[m] = 1.0;
    return SymMat3::from_embedded(u);
}

double frob_inner(const SqMat6& x, const SqMat6& y) {
    double s = 0.0;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) s += x[i][j] * y[i][j];
    return s;
}

SqMat6 add(const SqMat6& x, const SqMat6& y) {
    SqMat6 r;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) r[i][j] = x[i][j] + y[i][j];
    return r;
}

SymMat3 psd_project(const SymMat3& a) {
    const auto eig = eig_sym<3>(a.to_matrix().m);
    Mat3 m;
    for (int k = 0; k < 3; ++k) {
        const double lam = std::max(eig.values[k], 0.0);
        if (lam == 0.0) continue;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                m(i, j) += lam * eig.vectors[k][i] * eig.vectors[k][j];
    }
    return SymMat3::from_matrix(m);
}

// Solves the 6x6 system G x = rhs by Gaussian elimination, partial pivoting.
std::array<double, 6> solve6(std::array<std::array<double, 6>, 6> g,
                             std::array<double, 6> rhs) {
    for (int col = 0; col < 6; ++col) {
        int piv = col;
        for (int i = col + 1; i < 6; ++i)
            if (std::abs(g[i][col]) > std::abs(g[piv][col])) piv = i;
        std::swap(g[col], g[piv]);
        std::swap(rhs[col], rhs[piv]);
        if (g[col][col] == 0.0) throw std::runtime_error("singular normal equations");
        for (int i = col + 1; i < 6; ++i) {
            const double m = g[i][col] / g[col][col];
            for (int j = col; j < 6; ++j) g[i][j] -= m * g[col][j];
            rhs[i] -= m * rhs[col];
        }
    }
    std::array<double, 6> x{};
    for (int i = 5; i >= 0; --i) {
        double s = rhs[i];
        for (int j = i + 1; j < 6; ++j) s -= g[i][j] * x[j];
        x[i] = s / g[i][i];
    }
    return x;
}

// Least-squares seed: the A minimizing |Q_f + C(A)|_F, PSD-projected. When f
// is exactly -A0:cof with A0 PSD this lands on A0 and certifies immediately.
SymMat3 least_squares_seed(const QuadForm3& f) {
    std::array<SqMat6, 6> basis_c;
    for (int m = 0; m < 6; ++m) basis_c[m] = cof_translator_matrix(basis_sym3(m));
    std::array<std::array<double, 6>, 6> gram{};
    std::array<double, 6> rhs{};
    for (int m = 0; m < 6; ++m) {
        for (int n = 0; n < 6; ++n) gram[m][n] = frob_inner(basis_c[m], basis_c[n]);
        rhs[m] = -frob_inner(f.Q, basis_c[m]);
    }
    return psd_project(SymMat3::from_embedded(solve6(gram, rhs)));
}

int rank_gauss(std::array<std::array<double, 7>, 6> m, int cols, double threshold) {
    int rank = 0;
    for (int col = 0; col < cols && rank < 6; ++col) {
        int piv = rank;
        for (int i = rank + 1; i < 6; ++i)
            if (std::abs(m[i][col]) > std::abs(m[piv][col])) piv = i;
        if (std::abs(m[piv][col]) <= threshold) continue;
        std::swap(m[rank], m[piv]);
        for (int i = rank + 1; i < 6; ++i) {
            const double f = m[i][col] / m[rank][col];
            for (int j = col; j < cols; ++j) m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

SqMat6 cof_translator_matrix(const SymMat3& A) {
    auto g = [&](const SymMat3& e) { return ddot(A, cof(e)); };
    SqMat6 c{};
    std::array<double, 6> diag{};
    for (int i = 0; i < 6; ++i) diag[i] = g(basis_sym3(i));
    for (int i = 0; i < 6; ++i) {
        c[i][i] = diag[i];
        for (int j = i + 1; j < 6; ++j) {
            std::array<double, 6> u{};
            u[i] = 1.0;
            u[j] = 1.0;
            c[i][j] = c[j][i] = 0.5 * (g(SymMat3::from_embedded(u)) - diag[i] - diag[j]);
        }
    }
    return c;
}

QuadForm2::SqMat det2_matrix() {
    // det eps = u1 u2 - u3^2 / 2 in embedded coordinates.
    return {{{0.0, 0.5, 0.0}, {0.5, 0.0, 0.0}, {0.0, 0.0, -0.5}}};
}

double translator_margin(const QuadForm2& f, double alpha) {
    auto q = f.Q;
    const auto d = det2_matrix();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) q[i][j] += alpha * d[i][j];
    return lambda_min<3>(q);
}

double translator_margin(const QuadForm3& f, const SymMat3& A) {
    return lambda_min<6>(add(f.Q, cof_translator_matrix(A)));
}

Certificate2d certify_2d(const QuadForm2& f) {
    auto g = [&](double alpha) { return translator_margin(f, alpha); };

    double best_alpha = 0.0;
    double best_val = g(0.0);
    auto consider = [&](double a, double v) {
        if (v > best_val) {
            best_val = v;
            best_alpha = a;
        }
    };

    // Bracket: double until the objective decreases at the right edge. The
    // objective tends to -infinity, so this terminates quickly.
    double hi = 1.0;
    double g_half = best_val;
    double g_hi = g(hi);
    consider(hi, g_hi);
    int guard = 0;
    while (g_hi >= g_half && ++guard < 64) {
        hi *= 2.0;
        g_half = g_hi;
        g_hi = g(hi);
        consider(hi, g_hi);
    }

    // Golden-section maximization of the concave objective on [0, hi].
    constexpr double invphi = 0.6180339887498949;
    double lo = 0.0;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double v1 = g(x1);
    double v2 = g(x2);
    consider(x1, v1);
    consider(x2, v2);
    for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + hi); ++it) {
        if (v1 >= v2) {
            hi = x2;
            x2 = x1;
            v2 = v1;
            x1 = hi - invphi * (hi - lo);
            v1 = g(x1);
            consider(x1, v1);
        } else {
            lo = x1;
            x1 = x2;
            v1 = v2;
            x2 = lo + invphi * (hi - lo);
            v2 = g(x2);
            consider(x2, v2);
        }
    }

    Certificate2d cert;
    cert.alpha = best_alpha;
    cert.objective = best_val;
    if (best_val >= -tol::kCertifyLambdaMin) {
        cert.kind = Certificate2d::Kind::polyconvex;
    } else {
        cert.kind = Certificate2d::Kind::refuted;
        auto q = f.Q;
        const auto d = det2_matrix();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) q[i][j] += best_alpha * d[i][j];
        cert.witness = SymMat2::from_embedded(eig_sym<3>(q).vectors[0]);
    }
    return cert;
}

Certificate3d certify_3d(const QuadForm3& f, const CertifyOptions& opt) {
    if (opt.restarts < 1 || opt.budget < opt.restarts)
        throw std::invalid_argument("certify_3d needs restarts >= 1 and budget >= restarts");
    Rng rng(opt.seed);
    const long long per_restart = opt.budget / opt.restarts;

    Certificate3d out;
    out.best_phi = -1e300;

    auto phi_and_grad = [&](const SymMat3& a, SymMat3* grad) {
        const auto m = add(f.Q, cof_translator_matrix(a));
        const auto eig = eig_sym<6>(m);
        if (grad) {
            SymMat3 g;
            int cnt = 0;
            for (int k = 0; k < 6 && eig.values[k] <= eig.values[0] + 1e-10; ++k) {
                g = g + cof(SymMat3::from_embedded(eig.vectors[k]));
                ++cnt;
            }
            *grad = g * (1.0 / cnt);
        }
        return eig.values[0];
    };

    for (int r = 0; r < opt.restarts && out.best_phi < 0.0; ++r) {
        SymMat3 a;
        if (r == 1) {
            a = SymMat3::identity();
        } else if (r == 2) {
            a = least_squares_seed(f);
        } else if (r >= 3) {
            Mat3 gmat;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) gmat(i, j) = rng.normal();
            a = SymMat3::from_matrix(gmat.matmul(gmat.transposed()) * (1.0 / 3.0));
        }
        for (long long k = 1; k <= per_restart; ++k) {
            SymMat3 grad;
            const double phi = phi_and_grad(a, &grad);
            if (phi > out.best_phi) {
                out.best_phi = phi;
                out.best_A = a;
            }
            if (phi >= 0.0) break;
            a = psd_project(a + grad * (1.0 / double(k)));
        }
        const double phi_end = phi_and_grad(a, nullptr);
        if (phi_end > out.best_phi) {
            out.best_phi = phi_end;
            out.best_A = a;
        }
    }

    out.kind = out.best_phi >= -tol::kCertifyLambdaMin
                   ? Certificate3d::Kind::polyconvex
                   : Certificate3d::Kind::numerically_refuted;
    out.inconclusive = std::abs(out.best_phi) < tol::kInconclusiveBand;
    return out;
}

LinearSystem build_linear_system(const Vec3& a, const Vec3& b, double eta) {
    CompatDir3 dir{a, b};
    if (std::abs(dir.odot().frob() - 1.0) > tol::kOdotUnit)
        throw std::invalid_argument("linear system requires |a (.) b| = 1");
    const double p11 = a[0] * b[0], p22 = a[1] * b[1], p33 = a[2] * b[2];
    const double s12 = a[0] * b[1] + a[1] * b[0];
    const double s13 = a[0] * b[2] + a[2] * b[0];
    const double s23 = a[1] * b[2] + a[2] * b[1];
    const double w = 2.0 * (1.0 - eta);

    LinearSystem sys;
    sys.L = {{{0, p33, p22, 0, 0, -s23},
              {p33, 0, p11, 0, -s13, 0},
              {p22, p11, 0, -s12, 0, 0},
              {0, 0, -s12, -2.0 * p33, s23, s13},
              {0, -s13, 0, s23, -2.0 * p22, s12},
              {-s23, 0, 0, s13, s12, -2.0 * p11}}};
    sys.c = {-w * p11, -w * p22, -w * p33,
             s13 + s23 - w * s12,
             s12 + s23 - w * s13,
             s12 + s13 - w * s23};
    return sys;
}

RefutationReport linear_system_refutation(const CompatDir3& dir, double eta) {
    RefutationReport rep;
    rep.system = build_linear_system(dir.a, dir.b, eta);

    std::array<std::array<double, 7>, 6> l{};
    std::array<std::array<double, 7>, 6> aug{};
    double scale_l = 0.0;
    double scale_aug = 0.0;
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
            l[i][j] = aug[i][j] = rep.system.L[i][j];
            scale_l = std::max(scale_l, std::abs(l[i][j]));
        }
        aug[i][6] = rep.system.c[i];
        scale_aug = std::max(scale_aug, std::abs(aug[i][6]));
    }
    scale_aug = std::max(scale_aug, scale_l);

    rep.rank_L = rank_gauss(l, 6, tol::kRankPivot * scale_l);
    rep.rank_aug = rank_gauss(aug, 7, tol::kRankPivot * scale_aug);
    rep.inconsistent = rep.rank_aug > rep.rank_L;
    return rep;
}

const char* to_string(ConvexClass c) {
    switch (c) {
        case ConvexClass::none: return "none";
        case ConvexClass::sym_rank_one_convex: return "symmetric_rank_one_convex";
        case ConvexClass::sym_polyconvex: return "symmetric_polyconvex";
        case ConvexClass::convex: return "convex";
    }
    return "none";
}

namespace {

template <int D>
Classification<D> classify_impl(const QuadForm<D>& f, const ClassifyOptions& opt) {
    Classification<D> out;
    out.convexity = is_convex(f);
    if (out.convexity.convex) {
        out.cls = ConvexClass::convex;
        return out;
    }
    out.cone = min_over_compatible(f, opt.cone);
    bool poly = false;
    if constexpr (D == 2) {
        out.cert2 = certify_2d(f);
        poly = out.cert2->kind == Certificate2d::Kind::polyconvex;
    } else {
        out.cert3 = certify_3d(f, opt.cert);
        poly = out.cert3->kind == Certificate3d::Kind::polyconvex;
        out.inconclusive = out.cert3->inconclusive;
    }
    if (poly) {
        out.cls = ConvexClass::sym_polyconvex;
    } else if (out.cone->min_value >= -tol::kConeNonneg) {
        out.cls = ConvexClass::sym_rank_one_convex;
    } else {
        out.cls = ConvexClass::none;
    }
    return out;
}

}  // namespace

Classification<2> classify(const QuadForm2& f, const ClassifyOptions& opt) {
    return classify_impl<2>(f, opt);
}
Classification<3> classify(const QuadForm3& f, const ClassifyOptions& opt) {
    return classify_impl<3>(f, opt);
}

CorBReport cor_b_equivalence(const SymMat3& A, const ClassifyOptions& opt) {
    QuadForm3 f;
    f.label = "neg_A_cof";
    const auto c = cof_translator_matrix(A);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) f.Q[i][j] = -c[i][j];

    CorBReport rep;
    const auto sr = is_sym_rank_one_convex(f, opt.cone);
    rep.sr1c = sr.sr1c;
    rep.cone_min = sr.cone.min_value;
    const auto cert = certify_3d(f, opt.cert);
    rep.spc = cert.kind == Certificate3d::Kind::polyconvex;
    rep.best_phi = cert.best_phi;
    rep.lambda_min_A = sym_eigenvalues(A)[0];
    rep.psd = rep.lambda_min_A >= -1e-10 * A.frob();
    return rep;
}

}  // namespace symconv
