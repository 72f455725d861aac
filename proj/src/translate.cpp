#include "symconv/translate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace symconv {
namespace {

void check_uniform(const std::vector<double>& ax) {
    if (ax.size() < 2) throw std::invalid_argument("grid axis needs at least 2 points");
    const double h = ax[1] - ax[0];
    if (!(h > 0.0)) throw std::invalid_argument("grid axis must be strictly increasing");
    const double span = ax.back() - ax.front();
    for (std::size_t i = 1; i < ax.size(); ++i) {
        if (std::abs(ax[i] - ax[i - 1] - h) > 1e-12 * std::max(1.0, span))
            throw std::invalid_argument("grid axis not uniform");
    }
}

// Symmetric dual slope grid: 2n + 1 nodes on [-p, p], zero exactly included.
std::vector<double> dual_axis(int n, double p) {
    std::vector<double> s(2 * n + 1);
    const double step = p / n;
    for (int j = 0; j <= 2 * n; ++j) s[j] = (j - n) * step;
    return s;
}

// Applies the 1d transform along `axis` to every fiber of a 3d row-major
// array, optionally negating the fiber first (the sign flip that chains
// per-axis conjugates into a joint one).
std::vector<double> pass(const std::vector<double>& in, std::array<int, 3> dims, int axis,
                         const std::vector<double>& xs, const std::vector<double>& ss,
                         bool negate, std::array<int, 3>& out_dims) {
    out_dims = dims;
    out_dims[axis] = static_cast<int>(ss.size());
    std::vector<double> out(static_cast<std::size_t>(out_dims[0]) * out_dims[1] * out_dims[2]);

    const int n_in = dims[axis];
    std::array<std::size_t, 3> stride_in = {static_cast<std::size_t>(dims[1]) * dims[2],
                                            static_cast<std::size_t>(dims[2]), 1};
    std::array<std::size_t, 3> stride_out = {
        static_cast<std::size_t>(out_dims[1]) * out_dims[2],
        static_cast<std::size_t>(out_dims[2]), 1};

    const int oa = axis == 0 ? 1 : 0;
    const int ob = axis == 2 ? 1 : 2;
    std::vector<double> fiber(n_in);
    for (int u = 0; u < dims[oa]; ++u)
        for (int v = 0; v < dims[ob]; ++v) {
            const std::size_t base_in = u * stride_in[oa] + v * stride_in[ob];
            const std::size_t base_out = u * stride_out[oa] + v * stride_out[ob];
            for (int t = 0; t < n_in; ++t) {
                const double x = in[base_in + t * stride_in[axis]];
                fiber[t] = negate ? -x : x;
            }
            const auto conj = legendre_1d(xs, fiber, ss);
            for (std::size_t t = 0; t < conj.size(); ++t)
                out[base_out + t * stride_out[axis]] = conj[t];
        }
    return out;
}

// Joint conjugate over all three axes: grids `from` -> grids `to`.
std::vector<double> conjugate3(std::vector<double> vals, std::array<int, 3> dims,
                               const std::array<std::vector<double>, 3>& from,
                               const std::array<std::vector<double>, 3>& to,
                               std::array<int, 3>& out_dims) {
    std::array<int, 3> d = dims;
    auto a = pass(vals, d, 2, from[2], to[2], false, out_dims);
    d = out_dims;
    auto b = pass(a, d, 1, from[1], to[1], true, out_dims);
    d = out_dims;
    return pass(b, d, 0, from[0], to[0], true, out_dims);
}

}  // namespace

std::vector<double> legendre_1d(const std::vector<double>& xs,
                                const std::vector<double>& vals,
                                const std::vector<double>& duals) {
    const std::size_t n = xs.size();
    if (vals.size() != n || n == 0)
        throw std::invalid_argument("legendre_1d: mismatched or empty input");

    // Lower convex hull of (x_i, v_i), dropping points on or above a chord.
    std::vector<int> hull;
    hull.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        while (hull.size() >= 2) {
            const int p = hull[hull.size() - 2];
            const int q = hull.back();
            const double cross = (xs[q] - xs[p]) * (vals[i] - vals[p]) -
                                 (vals[q] - vals[p]) * (xs[i] - xs[p]);
            if (cross <= 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(static_cast<int>(i));
    }

    // For ascending slopes the maximizing hull vertex moves monotonically.
    std::vector<double> out(duals.size());
    std::size_t h = 0;
    for (std::size_t j = 0; j < duals.size(); ++j) {
        const double s = duals[j];
        while (h + 1 < hull.size() &&
               s * xs[hull[h + 1]] - vals[hull[h + 1]] >=
                   s * xs[hull[h]] - vals[hull[h]])
            ++h;
        out[j] = s * xs[hull[h]] - vals[hull[h]];
    }
    return out;
}

GridFn GridFn::sample(const Closure2& f, double lo, double hi, int res) {
    if (res < 2) throw std::invalid_argument("grid resolution must be at least 2");
    if (!(lo < hi)) throw std::invalid_argument("grid box must have lo < hi");
    GridFn g;
    const double h = (hi - lo) / (res - 1);
    for (int ax = 0; ax < 3; ++ax) {
        g.axes[ax].resize(res);
        for (int i = 0; i < res; ++i) g.axes[ax][i] = lo + i * h;
    }
    g.values.resize(static_cast<std::size_t>(res) * res * res);
    std::size_t idx = 0;
    for (int i = 0; i < res; ++i)
        for (int j = 0; j < res; ++j)
            for (int k = 0; k < res; ++k) {
                const SymMat2 e = SymMat2::from_embedded(
                    {g.axes[0][i], g.axes[1][j], g.axes[2][k]});
                g.values[idx++] = f(e);
            }
    g.validate();
    g.set_default_padding();
    return g;
}

void GridFn::set_default_padding() {
    double worst = 0.0;
    const std::array<int, 3> dims = {n(0), n(1), n(2)};
    for (int axis = 0; axis < 3; ++axis) {
        const double h = axes[axis][1] - axes[axis][0];
        const int oa = axis == 0 ? 1 : 0;
        const int ob = axis == 2 ? 1 : 2;
        const std::array<std::size_t, 3> stride = {
            static_cast<std::size_t>(dims[1]) * dims[2], static_cast<std::size_t>(dims[2]),
            1};
        for (int u = 0; u < dims[oa]; ++u)
            for (int v = 0; v < dims[ob]; ++v) {
                const std::size_t base = u * stride[oa] + v * stride[ob];
                const std::size_t sa = stride[axis];
                const int m = dims[axis];
                worst = std::max(worst,
                                 std::abs(values[base + sa] - values[base]) / h);
                worst = std::max(worst, std::abs(values[base + (m - 1) * sa] -
                                                 values[base + (m - 2) * sa]) /
                                            h);
            }
    }
    padding_slope = std::max(1.0, 2.0 * worst);
}

void GridFn::validate() const {
    for (const auto& ax : axes) check_uniform(ax);
    if (values.size() != static_cast<std::size_t>(n(0)) * n(1) * n(2))
        throw std::invalid_argument("grid value count does not match axes");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("grid contains non-finite value");
    if (!(padding_slope > 0.0) || !std::isfinite(padding_slope))
        throw std::invalid_argument("padding_slope must be positive and finite");
}

GridFn convex_envelope(const GridFn& g) {
    g.validate();
    std::array<std::vector<double>, 3> duals;
    for (int ax = 0; ax < 3; ++ax) duals[ax] = dual_axis(g.n(ax), g.padding_slope);

    std::array<int, 3> dims = {g.n(0), g.n(1), g.n(2)};
    std::array<int, 3> dual_dims;
    auto star = conjugate3(g.values, dims, g.axes, duals, dual_dims);
    std::array<int, 3> back_dims;
    auto env = conjugate3(std::move(star), dual_dims, duals, g.axes, back_dims);

    GridFn out;
    out.axes = g.axes;
    out.values = std::move(env);
    out.padding_slope = g.padding_slope;
    return out;
}

TranslationBound translation_bound_2d(const Closure2& f, double lo, double hi, int res,
                                      const std::vector<double>& alphas) {
    if (alphas.empty()) throw std::invalid_argument("alpha grid must not be empty");
    for (double a : alphas)
        if (!(a >= 0.0) || !std::isfinite(a))
            throw std::invalid_argument("alpha values must be finite and >= 0");

    TranslationBound tb;
    tb.alpha_grid = alphas;
    tb.f_samples = GridFn::sample(f, lo, hi, res);
    tb.envelope = convex_envelope(tb.f_samples);

    std::vector<double> dets(tb.f_samples.size());
    {
        std::size_t idx = 0;
        for (int i = 0; i < res; ++i)
            for (int j = 0; j < res; ++j)
                for (int k = 0; k < res; ++k)
                    dets[idx++] = det2_embedded(tb.f_samples.axes[0][i],
                                                tb.f_samples.axes[1][j],
                                                tb.f_samples.axes[2][k]);
    }

    tb.bound = tb.envelope;
    tb.best_alpha.assign(tb.f_samples.size(), 0.0);

    for (double alpha : alphas) {
        if (alpha == 0.0) continue;  // the plain envelope term is always included
        GridFn shifted;
        shifted.axes = tb.f_samples.axes;
        shifted.values.resize(tb.f_samples.size());
        for (std::size_t i = 0; i < shifted.values.size(); ++i)
            shifted.values[i] = tb.f_samples.values[i] + alpha * dets[i];
        shifted.set_default_padding();
        const GridFn env = convex_envelope(shifted);
        for (std::size_t i = 0; i < env.values.size(); ++i) {
            const double term = env.values[i] - alpha * dets[i];
            if (term > tb.bound.values[i]) {
                tb.bound.values[i] = term;
                tb.best_alpha[i] = alpha;
            }
        }
    }
    return tb;
}

double eval_trilinear(const GridFn& g, double x, double y, double z) {
    const std::array<double, 3> p = {x, y, z};
    std::array<int, 3> i0;
    std::array<double, 3> w;
    for (int ax = 0; ax < 3; ++ax) {
        const auto& a = g.axes[ax];
        const double h = a[1] - a[0];
        double t = (p[ax] - a.front()) / h;
        t = std::min(std::max(t, 0.0), double(g.n(ax) - 1));
        int i = static_cast<int>(t);
        i = std::min(i, g.n(ax) - 2);
        i0[ax] = i;
        w[ax] = t - i;
    }
    double out = 0.0;
    for (int di = 0; di < 2; ++di)
        for (int dj = 0; dj < 2; ++dj)
            for (int dk = 0; dk < 2; ++dk) {
                const double wt = (di ? w[0] : 1 - w[0]) * (dj ? w[1] : 1 - w[1]) *
                                  (dk ? w[2] : 1 - w[2]);
                out += wt * g.at(i0[0] + di, i0[1] + dj, i0[2] + dk);
            }
    return out;
}

Closure2 make_multiwell(std::vector<SymMat2> wells, std::vector<double> moduli) {
    if (wells.empty() || wells.size() != moduli.size())
        throw std::invalid_argument("wells and moduli must be nonempty and equal length");
    return [wells = std::move(wells), moduli = std::move(moduli)](const SymMat2& e) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < wells.size(); ++i) {
            const SymMat2 d = e - wells[i];
            best = std::min(best, moduli[i] * dot<3>(d.u, d.u));
        }
        return best;
    };
}

}  // namespace symconv
