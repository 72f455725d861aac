#include "symconv/roc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "symconv/eigen_jacobi.hpp"
#include "symconv/rng.hpp"

namespace symconv {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kBig = 1e30;

// Angle parameterization of the two unit vectors: D=3 uses (theta, phi) per
// sphere (4 coordinates total), D=2 uses one angle per circle (2 total).
template <int D>
constexpr int n_angles() {
    return 2 * (D - 1);
}

template <int D>
void angles_to_pair(const std::array<double, 4>& x, Vec<D>& a, Vec<D>& b) {
    if constexpr (D == 3) {
        a = {std::sin(x[0]) * std::cos(x[1]), std::sin(x[0]) * std::sin(x[1]),
             std::cos(x[0])};
        b = {std::sin(x[2]) * std::cos(x[3]), std::sin(x[2]) * std::sin(x[3]),
             std::cos(x[2])};
    } else {
        a = {std::cos(x[0]), std::sin(x[0])};
        b = {std::cos(x[1]), std::sin(x[1])};
    }
}

template <int D>
std::array<double, QuadForm<D>::K> odot_embedded(const Vec<D>& a, const Vec<D>& b) {
    constexpr double h = kSqrt2 * 0.5;
    if constexpr (D == 3) {
        return {a[0] * b[0], a[1] * b[1], a[2] * b[2],
                h * (a[0] * b[1] + a[1] * b[0]), h * (a[0] * b[2] + a[2] * b[0]),
                h * (a[1] * b[2] + a[2] * b[1])};
    } else {
        return {a[0] * b[0], a[1] * b[1], h * (a[0] * b[1] + a[1] * b[0])};
    }
}

// f(a (.) b) / |a (.) b|^2 for unit a, b given by angles; kBig on the
// numerically degenerate set |a (.) b| <= 1e-8 (for unit vectors
// |a (.) b|^2 = (|a.b|^2 + 1)/2 >= 1/2, so the guard never fires there;
// it protects the polish should it wander).
template <int D>
double ratio_objective(const QuadForm<D>& f, const std::array<double, 4>& x) {
    Vec<D> a, b;
    angles_to_pair<D>(x, a, b);
    const auto e = odot_embedded<D>(a, b);
    const double n2 = dot<QuadForm<D>::K>(e, e);
    if (n2 <= 1e-16) return kBig;
    return f.eval_embedded(e) / n2;
}

// Nelder-Mead in n dimensions, fixed iteration count, deterministic.
template <int D>
std::array<double, 4> nelder_mead(const QuadForm<D>& f, std::array<double, 4> x0,
                                  double step, int iters) {
    constexpr int n = n_angles<D>();
    struct Pt {
        std::array<double, 4> x;
        double v;
    };
    std::array<Pt, n + 1> s;
    s[0] = {x0, ratio_objective<D>(f, x0)};
    for (int i = 0; i < n; ++i) {
        auto x = x0;
        x[i] += step;
        s[i + 1] = {x, ratio_objective<D>(f, x)};
    }
    auto order = [&] {
        std::stable_sort(s.begin(), s.end(),
                         [](const Pt& p, const Pt& q) { return p.v < q.v; });
    };
    for (int it = 0; it < iters; ++it) {
        order();
        std::array<double, 4> cen{};
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) cen[k] += s[i].x[k] / n;
        auto along = [&](double t) {
            std::array<double, 4> x{};
            for (int k = 0; k < n; ++k) x[k] = cen[k] + t * (cen[k] - s[n].x[k]);
            return x;
        };
        const auto xr = along(1.0);
        const double vr = ratio_objective<D>(f, xr);
        if (vr < s[0].v) {
            const auto xe = along(2.0);
            const double ve = ratio_objective<D>(f, xe);
            s[n] = ve < vr ? Pt{xe, ve} : Pt{xr, vr};
        } else if (vr < s[n - 1].v) {
            s[n] = {xr, vr};
        } else {
            const auto xc = along(vr < s[n].v ? 0.5 : -0.5);
            const double vc = ratio_objective<D>(f, xc);
            if (vc < std::min(vr, s[n].v)) {
                s[n] = {xc, vc};
            } else {
                for (int i = 1; i <= n; ++i) {
                    for (int k = 0; k < n; ++k)
                        s[i].x[k] = s[0].x[k] + 0.5 * (s[i].x[k] - s[0].x[k]);
                    s[i].v = ratio_objective<D>(f, s[i].x);
                }
            }
        }
    }
    order();
    return s[0].x;
}

// Scales (a, b) to |a (.) b| = 1 and picks the lexicographically smaller of
// the two sign-equivalent embeddings; writes min_value as a plain evaluation
// at the stored argmin so result and report agree exactly.
template <int D>
void finalize(const QuadForm<D>& f, const std::array<double, 4>& angles,
              ConeMinResult<D>& out) {
    Vec<D> a, b;
    angles_to_pair<D>(angles, a, b);
    CompatDir<D> dir{a, b};
    if (!dir.normalize_odot())
        throw std::runtime_error("cone minimization landed on a degenerate direction");
    const auto e = dir.odot();
    std::array<double, QuadForm<D>::K> neg{};
    for (int i = 0; i < QuadForm<D>::K; ++i) neg[i] = -e.u[i];
    if (std::lexicographical_compare(neg.begin(), neg.end(), e.u.begin(), e.u.end()))
        dir.a = scaled<D>(dir.a, -1.0);
    out.argmin = dir;
    out.min_value = f.eval(dir.odot());
}

// Worst-case angle-gradient bound of the ratio objective: per coordinate
// |dg| <= 4 |Q|_2 |e'| / |e| <= 4 sqrt2 |Q|_2 (|e| >= 1/sqrt2, |e'| <= 1).
template <int D>
double lipschitz_gap(const QuadForm<D>& f, double cover_radius) {
    const auto ev = eig_sym<QuadForm<D>::K>(f.Q).values;
    const double qnorm = std::max(std::abs(ev.front()), std::abs(ev.back()));
    const double per_coord = 4.0 * kSqrt2 * qnorm;
    return per_coord * std::sqrt(double(n_angles<D>())) * cover_radius;
}

template <int D>
ConeMinResult<D> grid_polish(const QuadForm<D>& f, const MinOptions& opt) {
    const int n = opt.grid;
    if (n < 4) throw std::invalid_argument("grid resolution must be at least 4");

    double best = kBig;
    std::array<double, 4> best_x{};

    if constexpr (D == 3) {
        // theta rows for the first sphere stop at the equator: the objective
        // is even under a -> -a, so one hemisphere covers the quotient.
        const int half = (n - 1) / 2 + 1;
        std::vector<double> theta(n), phi(n);
        for (int i = 0; i < n; ++i) theta[i] = kPi * i / (n - 1);
        for (int j = 0; j < n; ++j) phi[j] = 2.0 * kPi * j / n;
        for (int ia = 0; ia < half; ++ia)
            for (int ja = 0; ja < n; ++ja)
                for (int ib = 0; ib < n; ++ib)
                    for (int jb = 0; jb < n; ++jb) {
                        const std::array<double, 4> x{theta[ia], phi[ja], theta[ib],
                                                      phi[jb]};
                        const double v = ratio_objective<D>(f, x);
                        if (v < best) {
                            best = v;
                            best_x = x;
                        }
                    }
    } else {
        for (int ja = 0; ja < n; ++ja)
            for (int jb = 0; jb < n; ++jb) {
                const std::array<double, 4> x{kPi * ja / n, 2.0 * kPi * jb / n, 0, 0};
                const double v = ratio_objective<D>(f, x);
                if (v < best) {
                    best = v;
                    best_x = x;
                }
            }
    }
    if (best >= kBig) throw std::runtime_error("grid search found no admissible direction");

    const double h_theta = kPi / (n - 1);
    const double h_phi = 2.0 * kPi / n;
    const auto polished = nelder_mead<D>(f, best_x, 0.5 * h_phi, opt.polish_iters);
    const double pv = ratio_objective<D>(f, polished);

    ConeMinResult<D> out;
    out.method = "grid+polish";
    out.grid_resolution = n;
    double cover2 = 0.0;
    if constexpr (D == 3)
        cover2 = 2.0 * (h_theta * h_theta + h_phi * h_phi);
    else
        cover2 = 2.0 * h_phi * h_phi;
    out.certified_gap = lipschitz_gap<D>(f, 0.5 * std::sqrt(cover2));
    finalize<D>(f, pv <= best ? polished : best_x, out);
    return out;
}

template <int D>
ConeMinResult<D> restarts_search(const QuadForm<D>& f, const MinOptions& opt) {
    Rng rng(opt.seed);
    double best = kBig;
    std::array<double, 4> best_x{};
    for (int r = 0; r < opt.restarts; ++r) {
        std::array<double, 4> x{};
        if constexpr (D == 3) {
            x[0] = std::acos(1.0 - 2.0 * rng.uniform01());
            x[1] = 2.0 * kPi * rng.uniform01();
            x[2] = std::acos(1.0 - 2.0 * rng.uniform01());
            x[3] = 2.0 * kPi * rng.uniform01();
        } else {
            x[0] = 2.0 * kPi * rng.uniform01();
            x[1] = 2.0 * kPi * rng.uniform01();
        }
        const auto polished = nelder_mead<D>(f, x, 0.1, opt.polish_iters);
        const double v = ratio_objective<D>(f, polished);
        if (v < best) {
            best = v;
            best_x = polished;
        }
    }
    if (best >= kBig) throw std::runtime_error("restart search found no admissible direction");
    ConeMinResult<D> out;
    out.method = "restarts";
    out.grid_resolution = 0;
    out.certified_gap = std::numeric_limits<double>::infinity();
    finalize<D>(f, best_x, out);
    return out;
}

template <int D>
DirectionalScan<D> scan_impl(const std::function<double(const SymMat<D>&)>& f,
                             const SymMat<D>& base, const CompatDir<D>& dir, double t0,
                             double t1, int n) {
    if (n < 5) throw std::invalid_argument("directional scan needs at least 5 samples");
    DirectionalScan<D> out;
    const SymMat<D> step = dir.odot();
    out.ts.resize(n);
    out.values.resize(n);
    for (int i = 0; i < n; ++i) {
        const double t = t0 + (t1 - t0) * i / (n - 1);
        out.ts[i] = t;
        const double v = f(base + step * t);
        if (!std::isfinite(v))
            throw std::runtime_error("non-finite value in directional scan");
        out.values[i] = v;
        out.scale = std::max(out.scale, std::abs(v));
    }
    out.second_differences.resize(n - 2);
    for (int i = 1; i + 1 < n; ++i) {
        const double d2 = out.values[i + 1] - 2.0 * out.values[i] + out.values[i - 1];
        out.second_differences[i - 1] = d2;
        if (!out.nonconvex_witness && d2 < -1e-9 * out.scale) {
            out.nonconvex_witness = true;
            out.witness_index = i - 1;
        }
    }
    return out;
}

}  // namespace

ConeMinResult<3> min_over_compatible(const QuadForm3& f, const MinOptions& opt) {
    return grid_polish<3>(f, opt);
}
ConeMinResult<2> min_over_compatible(const QuadForm2& f, const MinOptions& opt) {
    return grid_polish<2>(f, opt);
}
ConeMinResult<3> min_over_compatible_restarts(const QuadForm3& f, const MinOptions& opt) {
    return restarts_search<3>(f, opt);
}
ConeMinResult<2> min_over_compatible_restarts(const QuadForm2& f, const MinOptions& opt) {
    return restarts_search<2>(f, opt);
}

StructureReport minimizer_structure_check(const CompatDir3& dir) {
    StructureReport r;
    const double z = 1e-7 * std::max(norm<3>(dir.a), norm<3>(dir.b));
    auto nz = [&](double x) { return std::abs(x) >= z; };
    constexpr int pi[3] = {0, 0, 1};
    constexpr int pj[3] = {1, 2, 2};
    r.all_pass = true;
    for (int i = 0; i < 3; ++i) {
        r.component_pair[i] = nz(dir.a[i]) || nz(dir.b[i]);
        r.a_pair[i] = nz(dir.a[pi[i]]) || nz(dir.a[pj[i]]);
        r.b_pair[i] = nz(dir.b[pi[i]]) || nz(dir.b[pj[i]]);
        r.all_pass = r.all_pass && r.component_pair[i] && r.a_pair[i] && r.b_pair[i];
    }
    return r;
}

EtaResult compute_eta(int grid_n, int polish_iters, std::uint64_t seed) {
    if (grid_n < 16) throw std::invalid_argument("eta computation requires grid >= 16");
    MinOptions opt;
    opt.grid = grid_n;
    opt.polish_iters = polish_iters;
    opt.seed = seed;
    EtaResult r;
    r.search = min_over_compatible(builtin_forms().f0, opt);
    r.eta = r.search.min_value;
    r.argmin = r.search.argmin;
    if (!(r.eta > 0.0 && r.eta <= 1.0 / 3.0 + 1e-9))
        throw std::runtime_error("eta outside its provable range (0, 1/3]");
    r.structure = minimizer_structure_check(r.argmin);
    r.flagged = !r.structure.all_pass;
    return r;
}

DirectionalScan<2> directional_convexity_scan(const Closure2& f, const SymMat2& base,
                                              const CompatDir2& dir, double t0, double t1,
                                              int n) {
    return scan_impl<2>(f, base, dir, t0, t1, n);
}
DirectionalScan<3> directional_convexity_scan(const Closure3& f, const SymMat3& base,
                                              const CompatDir3& dir, double t0, double t1,
                                              int n) {
    return scan_impl<3>(f, base, dir, t0, t1, n);
}

Sr1cResult<3> is_sym_rank_one_convex(const QuadForm3& f, const MinOptions& opt) {
    Sr1cResult<3> r;
    r.cone = min_over_compatible(f, opt);
    r.sr1c = r.cone.min_value >= -1e-9;
    return r;
}
Sr1cResult<2> is_sym_rank_one_convex(const QuadForm2& f, const MinOptions& opt) {
    Sr1cResult<2> r;
    r.cone = min_over_compatible(f, opt);
    r.sr1c = r.cone.min_value >= -1e-9;
    return r;
}

}  // namespace symconv
