// Symmetric rank-one convexity machinery: global minimization of quadratic
// forms over the compatible cone { a (.) b : |a (.) b| = 1 }, directional
// convexity scans for arbitrary energies, and the constant eta = min of the
// catalog form f0 over that cone.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "symconv/quadform.hpp"
#include "symconv/smallmat.hpp"

namespace symconv {

template <int D>
struct ConeMinResult {
    double min_value = 0.0;
    CompatDir<D> argmin;       // normalized so |a (.) b| = 1
    std::string method;        // "grid+polish" or "restarts"
    int grid_resolution = 0;   // 0 for the restarts method
    double certified_gap = 0.0;
};

struct MinOptions {
    int grid = 32;             // samples per angle coordinate
    int polish_iters = 200;    // Nelder-Mead iterations
    int restarts = 1000;       // only for the restarts method
    std::uint64_t seed = 1;
};

// Minimizes f(a (.) b) / |a (.) b|^2 over unit vectors a, b: a spherical-angle
// grid (antipodal half kept for a), then Nelder-Mead polish in the angles.
// certified_gap is a worst-case Lipschitz bound on how far below the reported
// minimum the true cone minimum can lie, from the grid covering radius.
ConeMinResult<3> min_over_compatible(const QuadForm3& f, const MinOptions& opt = {});
ConeMinResult<2> min_over_compatible(const QuadForm2& f, const MinOptions& opt = {});

// Same objective, minimized by random restarts of the polish alone; carries no
// covering bound (certified_gap = infinity).
ConeMinResult<3> min_over_compatible_restarts(const QuadForm3& f, const MinOptions& opt = {});
ConeMinResult<2> min_over_compatible_restarts(const QuadForm2& f, const MinOptions& opt = {});

// Zero-pattern conditions a cone minimizer of f0 must satisfy: per component i,
// (a_i, b_i) != (0, 0); per component pair i < j, (a_i, a_j) != (0, 0) and
// (b_i, b_j) != (0, 0). An entry counts as zero below 1e-7 * max(|a|, |b|).
struct StructureReport {
    std::array<bool, 3> component_pair{};  // (a_i, b_i)
    std::array<bool, 3> a_pair{};          // (a_i, a_j), pairs (0,1),(0,2),(1,2)
    std::array<bool, 3> b_pair{};
    bool all_pass = false;
};

StructureReport minimizer_structure_check(const CompatDir3& dir);

struct EtaResult {
    double eta = 0.0;
    CompatDir3 argmin;
    ConeMinResult<3> search;
    StructureReport structure;
    bool flagged = false;  // structure check failed; result still reported
};

// eta = min of f0 over the compatible unit set, via grid + polish.
// Requires grid_n >= 16. The value always lands in (0, 1/3].
EtaResult compute_eta(int grid_n = 64, int polish_iters = 200, std::uint64_t seed = 1);

template <int D>
struct DirectionalScan {
    std::vector<double> ts;
    std::vector<double> values;               // f(base + t * (a (.) b))
    std::vector<double> second_differences;   // values[i+1] - 2 values[i] + values[i-1]
    double scale = 0.0;                       // max |values|
    bool nonconvex_witness = false;
    int witness_index = -1;                   // index into second_differences
};

// Samples t -> f(base + t * dir.odot()) on n uniform points of [t0, t1]
// (n >= 5) and flags a witness when a second difference drops below
// -1e-9 * scale. Throws on non-finite values.
DirectionalScan<2> directional_convexity_scan(const Closure2& f, const SymMat2& base,
                                              const CompatDir2& dir, double t0, double t1,
                                              int n);
DirectionalScan<3> directional_convexity_scan(const Closure3& f, const SymMat3& base,
                                              const CompatDir3& dir, double t0, double t1,
                                              int n);

template <int D>
struct Sr1cResult {
    bool sr1c = false;
    ConeMinResult<D> cone;
};

// True iff the cone minimum is >= -1e-9.
Sr1cResult<3> is_sym_rank_one_convex(const QuadForm3& f, const MinOptions& opt = {});
Sr1cResult<2> is_sym_rank_one_convex(const QuadForm2& f, const MinOptions& opt = {});

}  // namespace symconv
