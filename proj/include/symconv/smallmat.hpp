// Small dense 2x2/3x3 matrices, symmetric matrices in isometric embedded
// coordinates, and compatible directions a (.) b = (a (x) b + b (x) a)/2.
//
// Embedding convention: a symmetric d x d matrix is stored as the vector
//   d=3: (e11, e22, e33, sqrt2*e12, sqrt2*e13, sqrt2*e23)
//   d=2: (e11, e22, sqrt2*e12)
// so that the Euclidean inner product of embedded vectors equals the
// Frobenius inner product of the matrices.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace symconv {

inline constexpr double kSqrt2 = 1.4142135623730951;

template <std::size_t N>
using Vec = std::array<double, N>;

using Vec2 = Vec<2>;
using Vec3 = Vec<3>;

template <std::size_t N>
double dot(const Vec<N>& x, const Vec<N>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += x[i] * y[i];
    return s;
}

template <std::size_t N>
double norm(const Vec<N>& x) {
    return std::sqrt(dot(x, x));
}

template <std::size_t N>
Vec<N> scaled(const Vec<N>& x, double s) {
    Vec<N> r{};
    for (std::size_t i = 0; i < N; ++i) r[i] = s * x[i];
    return r;
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

// Dense square matrix, row major.
template <int D>
struct Mat {
    std::array<std::array<double, D>, D> m{};

    double& operator()(int i, int j) { return m[i][j]; }
    double operator()(int i, int j) const { return m[i][j]; }

    static Mat identity() {
        Mat r;
        for (int i = 0; i < D; ++i) r.m[i][i] = 1.0;
        return r;
    }

    static Mat outer(const Vec<D>& a, const Vec<D>& b) {
        Mat r;
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j) r.m[i][j] = a[i] * b[j];
        return r;
    }

    Mat transposed() const {
        Mat r;
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j) r.m[i][j] = m[j][i];
        return r;
    }

    Mat operator+(const Mat& o) const {
        Mat r;
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j) r.m[i][j] = m[i][j] + o.m[i][j];
        return r;
    }
    Mat operator-(const Mat& o) const {
        Mat r;
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j) r.m[i][j] = m[i][j] - o.m[i][j];
        return r;
    }
    Mat operator*(double s) const {
        Mat r;
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j) r.m[i][j] = s * m[i][j];
        return r;
    }
    Mat matmul(const Mat& o) const {
        Mat r;
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j) {
                double s = 0.0;
                for (int k = 0; k < D; ++k) s += m[i][k] * o.m[k][j];
                r.m[i][j] = s;
            }
        return r;
    }
    double frob() const {
        double s = 0.0;
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j) s += m[i][j] * m[i][j];
        return std::sqrt(s);
    }
};

using Mat2 = Mat<2>;
using Mat3 = Mat<3>;

template <int D>
double ddot(const Mat<D>& x, const Mat<D>& y) {
    double s = 0.0;
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) s += x.m[i][j] * y.m[i][j];
    return s;
}

// Symmetric matrix stored in embedded coordinates (canonical representation).
template <int D>
struct SymMat {
    static constexpr int K = D * (D + 1) / 2;
    std::array<double, K> u{};

    static SymMat from_matrix(const Mat<D>& f) {
        SymMat r;
        if constexpr (D == 2) {
            r.u = {f(0, 0), f(1, 1), kSqrt2 * 0.5 * (f(0, 1) + f(1, 0))};
        } else {
            r.u = {f(0, 0), f(1, 1), f(2, 2),
                   kSqrt2 * 0.5 * (f(0, 1) + f(1, 0)),
                   kSqrt2 * 0.5 * (f(0, 2) + f(2, 0)),
                   kSqrt2 * 0.5 * (f(1, 2) + f(2, 1))};
        }
        return r;
    }

    static SymMat from_embedded(const std::array<double, K>& v) {
        SymMat r;
        r.u = v;
        return r;
    }

    static SymMat identity() {
        SymMat r;
        for (int i = 0; i < D; ++i) r.u[i] = 1.0;
        return r;
    }

    Mat<D> to_matrix() const {
        Mat<D> f;
        if constexpr (D == 2) {
            f(0, 0) = u[0];
            f(1, 1) = u[1];
            f(0, 1) = f(1, 0) = u[2] / kSqrt2;
        } else {
            f(0, 0) = u[0];
            f(1, 1) = u[1];
            f(2, 2) = u[2];
            f(0, 1) = f(1, 0) = u[3] / kSqrt2;
            f(0, 2) = f(2, 0) = u[4] / kSqrt2;
            f(1, 2) = f(2, 1) = u[5] / kSqrt2;
        }
        return f;
    }

    // Matrix entry (i, j); i, j in [0, D).
    double entry(int i, int j) const {
        if (i == j) return u[i];
        if (i > j) std::swap(i, j);
        if constexpr (D == 2) {
            return u[2] / kSqrt2;
        } else {
            int idx = (i == 0) ? (j == 1 ? 3 : 4) : 5;
            return u[idx] / kSqrt2;
        }
    }

    double frob() const { return norm<K>(u); }
    double trace() const {
        double s = 0.0;
        for (int i = 0; i < D; ++i) s += u[i];
        return s;
    }

    SymMat operator+(const SymMat& o) const {
        SymMat r;
        for (int i = 0; i < K; ++i) r.u[i] = u[i] + o.u[i];
        return r;
    }
    SymMat operator-(const SymMat& o) const {
        SymMat r;
        for (int i = 0; i < K; ++i) r.u[i] = u[i] - o.u[i];
        return r;
    }
    SymMat operator*(double s) const {
        SymMat r;
        for (int i = 0; i < K; ++i) r.u[i] = s * u[i];
        return r;
    }
};

using SymMat2 = SymMat<2>;
using SymMat3 = SymMat<3>;

template <int D>
double ddot(const SymMat<D>& x, const SymMat<D>& y) {
    return dot<SymMat<D>::K>(x.u, y.u);
}

// (F^s, F^a) with F = F^s + F^a, F^s symmetric, F^a antisymmetric.
template <int D>
std::pair<SymMat<D>, Mat<D>> sym_split(const Mat<D>& f) {
    Mat<D> anti;
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) anti.m[i][j] = 0.5 * (f.m[i][j] - f.m[j][i]);
    return {SymMat<D>::from_matrix(f), anti};
}

inline double det(const Mat2& f) {
    return f(0, 0) * f(1, 1) - f(0, 1) * f(1, 0);
}

inline double det(const Mat3& f) {
    return f(0, 0) * (f(1, 1) * f(2, 2) - f(1, 2) * f(2, 1)) -
           f(0, 1) * (f(1, 0) * f(2, 2) - f(1, 2) * f(2, 0)) +
           f(0, 2) * (f(1, 0) * f(2, 1) - f(1, 1) * f(2, 0));
}

template <int D>
double det(const SymMat<D>& e) {
    return det(e.to_matrix());
}

// Cofactor matrix: cof(F)_ij = (-1)^(i+j) * minor_ij, so (det F) I = cof(F) F^T.
inline Mat2 cof(const Mat2& f) {
    Mat2 r;
    r(0, 0) = f(1, 1);
    r(0, 1) = -f(1, 0);
    r(1, 0) = -f(0, 1);
    r(1, 1) = f(0, 0);
    return r;
}

inline Mat3 cof(const Mat3& f) {
    Mat3 r;
    r(0, 0) = f(1, 1) * f(2, 2) - f(1, 2) * f(2, 1);
    r(0, 1) = -(f(1, 0) * f(2, 2) - f(1, 2) * f(2, 0));
    r(0, 2) = f(1, 0) * f(2, 1) - f(1, 1) * f(2, 0);
    r(1, 0) = -(f(0, 1) * f(2, 2) - f(0, 2) * f(2, 1));
    r(1, 1) = f(0, 0) * f(2, 2) - f(0, 2) * f(2, 0);
    r(1, 2) = -(f(0, 0) * f(2, 1) - f(0, 1) * f(2, 0));
    r(2, 0) = f(0, 1) * f(1, 2) - f(0, 2) * f(1, 1);
    r(2, 1) = -(f(0, 0) * f(1, 2) - f(0, 2) * f(1, 0));
    r(2, 2) = f(0, 0) * f(1, 1) - f(0, 1) * f(1, 0);
    return r;
}

template <int D>
SymMat<D> cof(const SymMat<D>& e) {
    return SymMat<D>::from_matrix(cof(e.to_matrix()));
}

// ((cof e)_11, (cof e)_22, (cof e)_33).
inline Vec3 cof_diag(const SymMat3& e) {
    Mat3 c = cof(e.to_matrix());
    return {c(0, 0), c(1, 1), c(2, 2)};
}

// ((cof e)_12, (cof e)_13, (cof e)_23).
inline Vec3 cof_off(const SymMat3& e) {
    Mat3 c = cof(e.to_matrix());
    return {c(0, 1), c(0, 2), c(1, 2)};
}

// (det F, det F^s, det F^a); the first equals the sum of the other two.
inline std::array<double, 3> det_split_2d(const Mat2& f) {
    auto [s, a] = sym_split(f);
    return {det(f), det(s), det(a)};
}

// (cof F^s, (cof F)^s, cof F^a); the first equals the second minus the third.
inline std::array<SymMat3, 3> cof_split_3d(const Mat3& f) {
    auto [s, a] = sym_split(f);
    Mat3 cf = cof(f);
    return {cof(s), SymMat3::from_matrix(cf), SymMat3::from_matrix(cof(a))};
}

// Axial vector x of the antisymmetric part: F^a_23 = x1... with
// F^a = [[0, x3, -x2], [-x3, 0, x1], [x2, -x1, 0]], so cof F^a = x (x) x.
inline Vec3 axial(const Mat3& f) {
    return {0.5 * (f(1, 2) - f(2, 1)),
            0.5 * (f(2, 0) - f(0, 2)),
            0.5 * (f(0, 1) - f(1, 0))};
}

// Compatible direction a (.) b; the rank-one cone of the symmetrized setting.
template <int D>
struct CompatDir {
    Vec<D> a{};
    Vec<D> b{};

    SymMat<D> odot() const {
        Mat<D> f = Mat<D>::outer(a, b);
        return SymMat<D>::from_matrix((f + f.transposed()) * 0.5);
    }

    Vec3 cross_ab() const
        requires(D == 3)
    {
        return cross(a, b);
    }

    // Rescales (a, b) jointly so |a (.) b| = 1; returns false when a (.) b = 0.
    bool normalize_odot() {
        double n = odot().frob();
        if (!(n > 0.0)) return false;
        double s = 1.0 / std::sqrt(n);
        a = scaled<D>(a, s);
        b = scaled<D>(b, s);
        return true;
    }
};

using CompatDir2 = CompatDir<2>;
using CompatDir3 = CompatDir<3>;

}  // namespace symconv
