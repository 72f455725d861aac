// Symmetric polyconvexity certificates for quadratic forms.
//
// 2d: f is symmetric polyconvex iff some alpha >= 0 makes f + alpha*det
// pointwise nonnegative; we maximize lambda_min(Q_f + alpha*Q_det) over alpha.
// 3d: f is symmetric polyconvex iff some PSD A makes f + A:cof nonnegative;
// we maximize phi(A) = lambda_min(Q_f + C(A)) over the PSD cone by projected
// supergradient ascent. A certificate with phi >= -1e-9 is self-validating;
// failure to find one is numerical evidence only, and for cone minimizers of
// the catalog form f0 the exact linear-system route below gives a rank-based
// refutation certificate.
#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "symconv/quadform.hpp"
#include "symconv/roc.hpp"
#include "symconv/smallmat.hpp"

namespace symconv {

using SqMat6 = QuadForm3::SqMat;

// C(A): coefficient matrix of eps -> A : cof(eps) in the embedded basis;
// linear in A.
SqMat6 cof_translator_matrix(const SymMat3& A);

// Coefficient matrix of det on 2x2 symmetric matrices.
QuadForm2::SqMat det2_matrix();

// lambda_min(Q_f + alpha Q_det) resp. lambda_min(Q_f + C(A)).
double translator_margin(const QuadForm2& f, double alpha);
double translator_margin(const QuadForm3& f, const SymMat3& A);

struct Certificate2d {
    enum class Kind { polyconvex, refuted };
    Kind kind = Kind::refuted;
    double alpha = 0.0;       // best translator weight found (>= 0)
    double objective = 0.0;   // lambda_min(Q_f + alpha Q_det) at that alpha
    SymMat2 witness;          // refuted: unit direction with f + alpha*det < 0
};

// Maximizes the concave map alpha -> lambda_min(Q_f + alpha Q_det) on
// [0, inf): bracket by doubling until the objective drops at the right edge,
// then golden-section. Polyconvex iff the maximum is >= -1e-9.
Certificate2d certify_2d(const QuadForm2& f);

struct CertifyOptions {
    int restarts = 20;
    long long budget = 50000;  // total ascent iterations across restarts
    std::uint64_t seed = 1;
};

struct Certificate3d {
    enum class Kind { polyconvex, numerically_refuted };
    Kind kind = Kind::numerically_refuted;
    SymMat3 best_A;
    double best_phi = 0.0;
    // Set when the search ends with |best_phi| < 1e-9: the form sits at the
    // certification boundary and the verdict is not numerically separable.
    bool inconclusive = false;
};

// Projected supergradient ascent on phi(A) = lambda_min(Q_f + C(A)) over PSD
// A. Restarts seed from A = 0, A = I, a least-squares fit of C(A) to -Q_f,
// and random PSD matrices; step 1/k within each restart; supergradients
// average cof over the near-minimal eigenspace (degeneracy window 1e-10).
// Polyconvex iff best phi >= -1e-9.
Certificate3d certify_3d(const QuadForm3& f, const CertifyOptions& opt = {});

struct LinearSystem {
    std::array<std::array<double, 6>, 6> L{};
    std::array<double, 6> c{};
};

// The 6x6 stationarity system for a translator certificate at a unit cone
// direction a (.) b of f0: unknowns x = (A11, A22, A33, A12, A13, A23).
// Requires |a (.) b| = 1 within 1e-9.
LinearSystem build_linear_system(const Vec3& a, const Vec3& b, double eta);

struct RefutationReport {
    bool inconsistent = false;
    int rank_L = 0;
    int rank_aug = 0;
    LinearSystem system;
};

// Rank comparison of L and [L|c] by Gaussian elimination with partial
// pivoting; pivots below 1e-10 times the largest input entry count as zero.
// inconsistent == (rank_aug > rank_L).
RefutationReport linear_system_refutation(const CompatDir3& dir, double eta);

enum class ConvexClass { none = 0, sym_rank_one_convex = 1, sym_polyconvex = 2, convex = 3 };

const char* to_string(ConvexClass c);

struct ClassifyOptions {
    MinOptions cone;
    CertifyOptions cert;
};

template <int D>
struct Classification {
    ConvexClass cls = ConvexClass::none;
    ConvexityResult convexity;
    std::optional<Certificate2d> cert2;       // D == 2
    std::optional<Certificate3d> cert3;       // D == 3
    std::optional<ConeMinResult<D>> cone;     // computed when convexity fails
    bool inconclusive = false;
};

// Strongest class along convex => symmetric polyconvex => symmetric rank-one
// convex, with the certificate or refutation witness at each boundary probed.
Classification<2> classify(const QuadForm2& f, const ClassifyOptions& opt = {});
Classification<3> classify(const QuadForm3& f, const ClassifyOptions& opt = {});

// Polyaffine means f and -f are both symmetric polyconvex; for quadratic
// forms that forces Q = 0, for affine inputs it always holds.
template <int D>
struct AffineForm {
    SymMat<D> B;
    double b0 = 0.0;
};

template <int D>
bool is_polyaffine(const QuadForm<D>& f) {
    return f.frob() <= 1e-9;
}

template <int D>
bool is_polyaffine(const AffineForm<D>&) {
    return true;
}

struct CorBReport {
    bool sr1c = false;
    bool spc = false;
    bool psd = false;
    double cone_min = 0.0;
    double best_phi = 0.0;
    double lambda_min_A = 0.0;
};

// For f = -A:cof: symmetric rank-one convexity, symmetric polyconvexity and
// positive semidefiniteness of A are decided by three independent procedures;
// the contract is that they agree.
CorBReport cor_b_equivalence(const SymMat3& A, const ClassifyOptions& opt = {});

}  // namespace symconv
