#pragma once

#include <vector>

#include "engine.hpp"
#include "family.hpp"

namespace nifslab {

inline constexpr int kDefaultPressureDepth = 20;
inline constexpr double kDefaultBowenTolerance = 1e-9;
inline constexpr double kBowenCeiling = 64.0;

// log Z_{n,t}(s) by exhaustive enumeration of I_n^{n+length-1}, accumulating
// in the log domain with pairwise reduction. Subject to the word budget.
double partition_log_sum_range(const MapSchedule& family, Complex t, double s, int start_level, int length,
                               std::uint64_t budget = kDefaultEnumerationCap);

// log Z_{n,t}(s) over I^n (anchored at level 1).
double partition_log_sum(const MapSchedule& family, Complex t, double s, int n,
                         std::uint64_t budget = kDefaultEnumerationCap);

// Per-parameter pressure table. Because every map in the catalog is affine,
// ||D phi_omega|| is the product of per-level scale moduli and the partition
// sum factors per level; this route is exact and O(depth) per evaluation.
// The enumerated route above stays as the independent cross-check.
class PressureEvaluator {
public:
    PressureEvaluator(const MapSchedule& family, Complex t, int depth = kDefaultPressureDepth);

    int depth() const { return static_cast<int>(log_scales_.size()); }
    Complex parameter() const { return t_; }

    double log_partition(int n, double s) const;
    // (1/n) log Z_{n,t}(s)
    double level_average(int n, double s) const;
    // liminf estimated as the minimum over the trailing half of the depths.
    double liminf_estimate(double s) const;
    // max - min over the same window; reported as an uncertainty proxy.
    double window_spread(double s) const;
    int window_start() const { return depth() - depth() / 2; }

private:
    Complex t_;
    std::vector<std::vector<double>> log_scales_; // [level-1][symbol]
};

// Lower pressure estimate at exponent s.
double pressure(const MapSchedule& family, Complex t, double s, int depth = kDefaultPressureDepth);

struct BowenResult {
    double s = 0.0;
    bool infinite = false;     // pressure still positive at the s ceiling
    double bracket_lo = 0.0;   // pressure(bracket_lo) >= 0
    double bracket_hi = 0.0;   // pressure(bracket_hi) <= 0
    double residual = 0.0;     // |pressure(s)| at the returned root
    double window_spread = 0.0;
    int depth = 0;
};

// Bowen dimension s(t) by bisection on the monotone pressure estimate.
BowenResult bowen_dimension(const MapSchedule& family, Complex t, double tolerance = kDefaultBowenTolerance,
                            int depth = kDefaultPressureDepth);

struct ContinuityScan {
    std::vector<Complex> path;
    std::vector<double> bowen;      // s(t) per path point (or +inf marker as inf)
    std::vector<double> step_ratio; // |ds|/|dt| per segment
    double max_step_ratio = 0.0;
    double max_step = 0.0;
};

// s(t) along a parameter path with finite-difference moduli.
ContinuityScan bowen_continuity_scan(const MapSchedule& family, const std::vector<Complex>& path,
                                     double tolerance = kDefaultBowenTolerance,
                                     int depth = kDefaultPressureDepth);

} // namespace nifslab
