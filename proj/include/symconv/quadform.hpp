// Quadratic forms on symmetric matrices, stored as symmetric coefficient
// matrices in the embedded basis: f(eps) = embed(eps)^T Q embed(eps).
// Non-quadratic test energies are carried as plain closures, never as a
// coefficient matrix; build_quadform rejects them.
#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "symconv/smallmat.hpp"

namespace symconv {

class NotQuadraticError : public std::runtime_error {
public:
    explicit NotQuadraticError(const std::string& what) : std::runtime_error(what) {}
};

template <int D>
struct QuadForm {
    static constexpr int K = D * (D + 1) / 2;
    using SqMat = std::array<std::array<double, K>, K>;

    SqMat Q{};
    std::string label;

    double eval_embedded(const std::array<double, K>& u) const {
        double s = 0.0;
        for (int i = 0; i < K; ++i) {
            double row = 0.0;
            for (int j = 0; j < K; ++j) row += Q[i][j] * u[j];
            s += u[i] * row;
        }
        return s;
    }

    double eval(const SymMat<D>& e) const { return eval_embedded(e.u); }

    double frob() const {
        double s = 0.0;
        for (int i = 0; i < K; ++i)
            for (int j = 0; j < K; ++j) s += Q[i][j] * Q[i][j];
        return std::sqrt(s);
    }

    QuadForm operator*(double c) const {
        QuadForm r = *this;
        for (auto& row : r.Q)
            for (double& x : row) x *= c;
        return r;
    }
    QuadForm operator+(const QuadForm& o) const {
        QuadForm r = *this;
        for (int i = 0; i < K; ++i)
            for (int j = 0; j < K; ++j) r.Q[i][j] += o.Q[i][j];
        return r;
    }
    QuadForm operator-() const { return *this * -1.0; }
};

using QuadForm2 = QuadForm<2>;
using QuadForm3 = QuadForm<3>;

using Closure2 = std::function<double(const SymMat2&)>;
using Closure3 = std::function<double(const SymMat3&)>;

// Builds Q by polarization on the embedded basis, then validates the fit on a
// fixed set of pseudo-random sample points (relative tolerance 1e-10). Inputs
// that are not quadratic (affine parts, higher order, non-even) fail the
// validation and raise NotQuadraticError.
QuadForm2 build_quadform_2d(const Closure2& f, std::string label);
QuadForm3 build_quadform_3d(const Closure3& f, std::string label);

// Builds from the upper triangle of Q, row major, in the embedded basis.
QuadForm2 quadform_from_coeffs_2d(const std::array<double, 6>& upper, std::string label);
QuadForm3 quadform_from_coeffs_3d(const std::array<double, 21>& upper, std::string label);

template <int D>
std::vector<double> upper_triangle(const QuadForm<D>& f) {
    std::vector<double> out;
    for (int i = 0; i < QuadForm<D>::K; ++i)
        for (int j = i; j < QuadForm<D>::K; ++j) out.push_back(f.Q[i][j]);
    return out;
}

struct ConvexityResult {
    bool convex = false;
    double min_eigenvalue = 0.0;
};

// Convex iff lambda_min(Q) >= -1e-10 * |Q|_F.
ConvexityResult is_convex(const QuadForm2& f);
ConvexityResult is_convex(const QuadForm3& f);

// q_A(F) = A : cof(F^a); depends on F only through its antisymmetric part,
// and equals A x . x for the axial vector x of F^a.
struct AntiQuadForm {
    SymMat3 A;
};

double qa_eval(const SymMat3& A, const Mat3& F);
// Convex iff A is PSD (lambda_min(A) >= -1e-10 * |A|_F).
bool qa_is_convex(const SymMat3& A);

// 3x3 eigendecomposition of a SymMat3 in matrix coordinates, ascending.
std::array<double, 3> sym_eigenvalues(const SymMat3& e);
std::array<double, 2> sym_eigenvalues(const SymMat2& e);

// Built-in energies used across tests and the CLI.
//
// Quadratic members:
//   f0          sum of squared diagonal entries plus the three squared
//               off-diagonal differences (e13-e23)^2 + (e12-e13)^2 + (e12-e23)^2
//   f_eta(t)    f0 - t*|eps|^2, as an exact coefficient-matrix identity
//   det2        det on 2x2 symmetric matrices; neg_det2 its negation
//   cof_entry(i)     eps -> (cof eps)_ii for i in {0,1,2}
//   neg_cof_entry(i) its negation
//   norm2_*     |eps|^2; zero_* the zero form
//
// Non-quadratic closures:
//   det3_closure              eps -> det eps (3d)
//   det_on_positive_definite  2d: det eps when eps is positive definite, else 0
//   absdet_one_negative_eig   3d: |det eps| when exactly one eigenvalue < 0, else 0
//   absdet_two_negative_eig   3d: |det eps| when exactly two eigenvalues < 0, else 0
struct Catalog {
    QuadForm3 f0;
    QuadForm2 det2;
    QuadForm2 neg_det2;
    QuadForm2 norm2_2d;
    QuadForm3 norm2_3d;
    QuadForm2 zero_2d;
    QuadForm3 zero_3d;
    std::array<QuadForm3, 3> cof_entries;
    std::array<QuadForm3, 3> neg_cof_entries;

    QuadForm3 f_eta(double eta) const;

    static double det3_closure(const SymMat3& e);
    static double det_on_positive_definite(const SymMat2& e);
    static double absdet_one_negative_eig(const SymMat3& e);
    static double absdet_two_negative_eig(const SymMat3& e);
};

const Catalog& builtin_forms();

}  // namespace symconv
