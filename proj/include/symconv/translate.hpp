// Grid-based convex envelopes and 2d translation-method lower bounds.
//
// The envelope of sampled data is the biconjugate computed with two exact
// discrete Legendre-Fenchel transforms, factored dimension by dimension.
// Dual slope grids are symmetric uniform grids on [-padding_slope,
// padding_slope] (slope 0 always a node) of roughly twice the primal
// resolution. padding_slope doubles as the assumed linear growth rate outside
// the sampled box; the envelope keeps the input's padding_slope, which makes
// a second application reuse identical slope grids and reproduce its input
// exactly.
#pragma once

#include <array>
#include <functional>
#include <vector>

#include "symconv/quadform.hpp"
#include "symconv/smallmat.hpp"

namespace symconv {

struct GridFn {
    std::array<std::vector<double>, 3> axes;  // strictly increasing, uniform
    std::vector<double> values;               // index ((i * n1) + j) * n2 + k
    double padding_slope = 1.0;

    int n(int axis) const { return static_cast<int>(axes[axis].size()); }
    std::size_t size() const { return values.size(); }
    double& at(int i, int j, int k) {
        return values[(static_cast<std::size_t>(i) * n(1) + j) * n(2) + k];
    }
    double at(int i, int j, int k) const {
        return values[(static_cast<std::size_t>(i) * n(1) + j) * n(2) + k];
    }

    // Samples f over [lo, hi]^3 in embedded coordinates at res points per
    // axis and sets the default padding_slope (twice the largest one-sided
    // boundary slope, at least 1).
    static GridFn sample(const Closure2& f, double lo, double hi, int res);

    void set_default_padding();
    // Uniform axes (1e-12 relative) and finite values; throws otherwise.
    void validate() const;
};

// Exact discrete conjugate: out[j] = max_i (duals[j] * xs[i] - vals[i]),
// computed by a lower-hull walk in O(n + m).
std::vector<double> legendre_1d(const std::vector<double>& xs,
                                const std::vector<double>& vals,
                                const std::vector<double>& duals);

// Largest convex minorant of the samples representable by tangent planes with
// slopes on the dual grids; always <= input at the nodes, idempotent.
GridFn convex_envelope(const GridFn& g);

struct TranslationBound {
    std::vector<double> alpha_grid;
    GridFn f_samples;
    GridFn envelope;                // plain convex envelope of f (alpha = 0)
    GridFn bound;                   // pointwise max over alpha of (f + a det)^c - a det
    std::vector<double> best_alpha; // per node, argmax alpha (0 on ties)
};

// Lower bound for the symmetric quasiconvex envelope of f on a grid: for each
// alpha >= 0, convexify f + alpha*det and subtract alpha*det again. The
// alpha = 0 envelope term always participates in the max, so the bound never
// falls below the plain convex envelope.
TranslationBound translation_bound_2d(const Closure2& f, double lo, double hi, int res,
                                      const std::vector<double>& alphas);

// det in embedded 2x2 coordinates.
inline double det2_embedded(double u0, double u1, double u2) {
    return u0 * u1 - 0.5 * u2 * u2;
}

double eval_trilinear(const GridFn& g, double x, double y, double z);

// f(eps) = min_i moduli[i] * |eps - wells[i]|^2.
Closure2 make_multiwell(std::vector<SymMat2> wells, std::vector<double> moduli);

}  // namespace symconv
