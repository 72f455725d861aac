// Cyclic Jacobi eigendecomposition for small symmetric matrices.
// Deterministic (fixed sweep order), ascending eigenvalue order.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace symconv {

template <int N>
struct EigSym {
    std::array<double, N> values{};                 // ascending
    std::array<std::array<double, N>, N> vectors{}; // vectors[k] pairs with values[k]
};

// Converges when the off-diagonal Frobenius mass drops below 1e-14 times the
// matrix Frobenius norm; hard cap of 100 sweeps.
template <int N>
EigSym<N> eig_sym(std::array<std::array<double, N>, N> s) {
    std::array<std::array<double, N>, N> v{};
    for (int i = 0; i < N; ++i) v[i][i] = 1.0;

    double total = 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) total += s[i][j] * s[i][j];
    const double tol2 = 1e-28 * total;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off2 = 0.0;
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j) off2 += 2.0 * s[i][j] * s[i][j];
        if (off2 <= tol2) break;

        for (int p = 0; p < N - 1; ++p) {
            for (int q = p + 1; q < N; ++q) {
                const double apq = s[p][q];
                if (apq == 0.0) continue;
                const double tau = (s[q][q] - s[p][p]) / (2.0 * apq);
                const double t = (tau >= 0.0)
                                     ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                     : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = t * c;

                for (int k = 0; k < N; ++k) {
                    const double skp = s[k][p];
                    const double skq = s[k][q];
                    s[k][p] = c * skp - sn * skq;
                    s[k][q] = sn * skp + c * skq;
                }
                for (int k = 0; k < N; ++k) {
                    const double spk = s[p][k];
                    const double sqk = s[q][k];
                    s[p][k] = c * spk - sn * sqk;
                    s[q][k] = sn * spk + c * sqk;
                }
                for (int k = 0; k < N; ++k) {
                    const double vkp = v[k][p];
                    const double vkq = v[k][q];
                    v[k][p] = c * vkp - sn * vkq;
                    v[k][q] = sn * vkp + c * vkq;
                }
            }
        }
    }

    std::array<int, N> order{};
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return s[i][i] < s[j][j]; });

    EigSym<N> out;
    for (int k = 0; k < N; ++k) {
        out.values[k] = s[order[k]][order[k]];
        for (int r = 0; r < N; ++r) out.vectors[k][r] = v[r][order[k]];
        // Sign convention: first entry of largest magnitude is nonnegative.
        int imax = 0;
        for (int r = 1; r < N; ++r)
            if (std::abs(out.vectors[k][r]) > std::abs(out.vectors[k][imax])) imax = r;
        if (out.vectors[k][imax] < 0.0)
            for (int r = 0; r < N; ++r) out.vectors[k][r] = -out.vectors[k][r];
    }
    return out;
}

template <int N>
double lambda_min(const std::array<std::array<double, N>, N>& s) {
    return eig_sym<N>(s).values[0];
}

}  // namespace symconv
