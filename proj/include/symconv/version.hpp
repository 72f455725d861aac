#pragma once

namespace symconv {

inline constexpr const char* kVersion = "0.1.0";

// Named tolerances used across the decision procedures. Reports echo this
// table so a stored report pins down the thresholds it was produced with.
namespace tol {
inline constexpr double kCertifyLambdaMin = 1e-9;   // PSD slack accepted in certificates
inline constexpr double kConeNonneg = 1e-9;         // rank-one convexity verdict threshold
inline constexpr double kInconclusiveBand = 1e-9;   // |best objective| below this: inconclusive
inline constexpr double kRankPivot = 1e-10;         // pivot threshold factor (times max |entry|)
inline constexpr double kStructureZero = 1e-7;      // minimizer zero-pattern check (times max coord)
inline constexpr double kQuadFit = 1e-9;            // quadratic-consistency residual (times scale)
inline constexpr double kScanWitness = 1e-9;        // second-difference witness (times value scale)
inline constexpr double kGridUniform = 1e-12;       // axis uniformity check
inline constexpr double kOdotUnit = 1e-9;           // |a (.) b| = 1 precondition slack
}  // namespace tol

}  // namespace symconv
