#include "symconv/quadform.hpp"

#include <cmath>

#include "symconv/eigen_jacobi.hpp"
#include "symconv/rng.hpp"
#include "symconv/version.hpp"

namespace symconv {
namespace {

template <int D, class F>
QuadForm<D> build_impl(const F& f, std::string label) {
    constexpr int K = QuadForm<D>::K;
    QuadForm<D> q;
    q.label = std::move(label);

    auto basis = [](int i) {
        std::array<double, K> u{};
        u[i] = 1.0;
        return SymMat<D>::from_embedded(u);
    };

    std::array<double, K> diag{};
    for (int i = 0; i < K; ++i) diag[i] = f(basis(i));

    // Polarization: Q_ij = (f(e_i + e_j) - f(e_i) - f(e_j)) / 2.
    for (int i = 0; i < K; ++i) {
        q.Q[i][i] = diag[i];
        for (int j = i + 1; j < K; ++j) {
            std::array<double, K> u{};
            u[i] = 1.0;
            u[j] = 1.0;
            const double fij = f(SymMat<D>::from_embedded(u));
            q.Q[i][j] = q.Q[j][i] = 0.5 * (fij - diag[i] - diag[j]);
        }
    }

    // Validate the fit on fixed pseudo-random points; non-quadratic inputs
    // (constant/linear parts, higher order terms) leave a residual here.
    Rng rng(0x51ab5eedULL);
    const double qnorm = q.frob();
    for (int s = 0; s < 32; ++s) {
        std::array<double, K> u{};
        for (int i = 0; i < K; ++i) u[i] = rng.uniform(-2.0, 2.0);
        const SymMat<D> e = SymMat<D>::from_embedded(u);
        const double want = f(e);
        const double got = q.eval(e);
        const double r2 = dot<K>(u, u);
        const double scale = std::max({1.0, std::abs(want), qnorm * r2});
        if (!std::isfinite(want) || std::abs(want - got) > 1e-10 * scale) {
            throw NotQuadraticError("not quadratic: \"" + q.label +
                                    "\" deviates from its polarization fit");
        }
    }
    return q;
}

template <int D>
QuadForm<D> from_upper(const double* upper, std::string label) {
    constexpr int K = QuadForm<D>::K;
    QuadForm<D> q;
    q.label = std::move(label);
    int idx = 0;
    for (int i = 0; i < K; ++i)
        for (int j = i; j < K; ++j) {
            q.Q[i][j] = q.Q[j][i] = upper[idx];
            ++idx;
        }
    return q;
}

template <int D>
ConvexityResult is_convex_impl(const QuadForm<D>& f) {
    ConvexityResult r;
    r.min_eigenvalue = lambda_min<QuadForm<D>::K>(f.Q);
    r.convex = r.min_eigenvalue >= -1e-10 * f.frob();
    return r;
}

}  // namespace

QuadForm2 build_quadform_2d(const Closure2& f, std::string label) {
    return build_impl<2>(f, std::move(label));
}

QuadForm3 build_quadform_3d(const Closure3& f, std::string label) {
    return build_impl<3>(f, std::move(label));
}

QuadForm2 quadform_from_coeffs_2d(const std::array<double, 6>& upper, std::string label) {
    return from_upper<2>(upper.data(), std::move(label));
}

QuadForm3 quadform_from_coeffs_3d(const std::array<double, 21>& upper, std::string label) {
    return from_upper<3>(upper.data(), std::move(label));
}

ConvexityResult is_convex(const QuadForm2& f) { return is_convex_impl<2>(f); }
ConvexityResult is_convex(const QuadForm3& f) { return is_convex_impl<3>(f); }

double qa_eval(const SymMat3& A, const Mat3& F) {
    auto [s, anti] = sym_split(F);
    (void)s;
    return ddot(A, SymMat3::from_matrix(cof(anti)));
}

bool qa_is_convex(const SymMat3& A) {
    auto ev = sym_eigenvalues(A);
    return ev[0] >= -1e-10 * A.frob();
}

std::array<double, 3> sym_eigenvalues(const SymMat3& e) {
    return eig_sym<3>(e.to_matrix().m).values;
}

std::array<double, 2> sym_eigenvalues(const SymMat2& e) {
    return eig_sym<2>(e.to_matrix().m).values;
}

QuadForm3 Catalog::f_eta(double eta) const {
    QuadForm3 q = f0;
    for (int i = 0; i < 6; ++i) q.Q[i][i] -= eta;
    q.label = "f0 - eta*norm2 (eta=" + std::to_string(eta) + ")";
    return q;
}

double Catalog::det3_closure(const SymMat3& e) { return det(e); }

double Catalog::det_on_positive_definite(const SymMat2& e) {
    auto ev = sym_eigenvalues(e);
    return ev[0] > 0.0 ? det(e) : 0.0;
}

namespace {
int negative_eigs(const SymMat3& e) {
    auto ev = sym_eigenvalues(e);
    int n = 0;
    for (double v : ev)
        if (v < 0.0) ++n;
    return n;
}
}  // namespace

double Catalog::absdet_one_negative_eig(const SymMat3& e) {
    return negative_eigs(e) == 1 ? std::abs(det(e)) : 0.0;
}

double Catalog::absdet_two_negative_eig(const SymMat3& e) {
    return negative_eigs(e) == 2 ? std::abs(det(e)) : 0.0;
}

const Catalog& builtin_forms() {
    static const Catalog cat = [] {
        Catalog c;
        // In matrix entries: (e13-e23)^2 + (e12-e13)^2 + (e12-e23)^2 + e11^2 +
        // e22^2 + e33^2; written below in embedded coordinates (off-diagonal
        // carries sqrt2) so the polarized coefficients come out exact.
        c.f0 = build_quadform_3d(
            [](const SymMat3& e) {
                const double d1 = e.u[4] - e.u[5], d2 = e.u[3] - e.u[4], d3 = e.u[3] - e.u[5];
                return 0.5 * (d1 * d1 + d2 * d2 + d3 * d3) + e.u[0] * e.u[0] +
                       e.u[1] * e.u[1] + e.u[2] * e.u[2];
            },
            "f0");
        c.det2 = build_quadform_2d([](const SymMat2& e) { return det(e); }, "det");
        c.neg_det2 = build_quadform_2d([](const SymMat2& e) { return -det(e); }, "neg_det");
        c.norm2_2d = build_quadform_2d(
            [](const SymMat2& e) { return dot<3>(e.u, e.u); }, "norm2");
        c.norm2_3d = build_quadform_3d(
            [](const SymMat3& e) { return dot<6>(e.u, e.u); }, "norm2");
        c.zero_2d = build_quadform_2d([](const SymMat2&) { return 0.0; }, "zero");
        c.zero_3d = build_quadform_3d([](const SymMat3&) { return 0.0; }, "zero");
        const char* names[3] = {"cof11", "cof22", "cof33"};
        const char* neg_names[3] = {"neg_cof11", "neg_cof22", "neg_cof33"};
        for (int i = 0; i < 3; ++i) {
            c.cof_entries[i] = build_quadform_3d(
                [i](const SymMat3& e) { return cof_diag(e)[i]; }, names[i]);
            c.neg_cof_entries[i] = build_quadform_3d(
                [i](const SymMat3& e) { return -cof_diag(e)[i]; }, neg_names[i]);
        }
        return c;
    }();
    return cat;
}

}  // namespace symconv
