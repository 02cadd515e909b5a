#pragma once

#include <optional>
#include <string>
#include <vector>

#include "engine.hpp"
#include "family.hpp"
#include "gibbs.hpp"
#include "pressure.hpp"

namespace nifslab {

struct PointCloud {
    int dim = 2;
    std::vector<Complex> points;
    double error_bound = 0.0; // uniform address truncation bound
    Complex grid_anchor{0.0, 0.0}; // lower-left corner of X's bounding box

    // provenance
    std::string family;
    Complex t{0.0, 0.0};
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    std::string sampler; // "uniform" or "gibbs(n=..,s=..)"

    std::size_t size() const { return points.size(); }
    double diameter() const;
    Box bounding_box() const;
};

struct SamplerSpec {
    bool use_gibbs = false;
    int gibbs_level = 8;
    double gibbs_s = -1.0; // < 0: Bowen root minus eps/4
};

// Address points of independently seeded streams; per-point truncation error
// stays below `tolerance`. Deterministic in (seed, count) for any thread count.
PointCloud sample_limit_set(const MapSchedule& family, Complex t, long count, double tolerance,
                            const SamplerSpec& sampler, std::uint64_t seed, int threads = 1);

struct BoxCountRow {
    double eps = 0.0;
    std::uint64_t boxes = 0; // median over anchor jitters
};

struct DimensionEstimate {
    double estimate = 0.0;
    double residual = 0.0; // rms residual of the log-log fit
    std::vector<BoxCountRow> rows;
    std::string method = "box-counting";
};

// Dyadic default: `count` scales from diameter/4 downward, clipped above the
// sampling noise floor (10x the truncation bound).
std::vector<double> default_scale_ladder(const PointCloud& cloud, int count = 8);

inline constexpr int kBoxJitterOffsets = 5;

// Least-squares slope of log N(eps) against log(1/eps); N is the median count
// over jittered grid anchors.
DimensionEstimate box_counting(const PointCloud& cloud, const std::vector<double>& scales);

struct EnergyResult {
    double value = 0.0;
    bool overflow = false;
    std::uint64_t excluded_pairs = 0; // pairs below the error bound
};

// Empirical s-energy: mean over ordered distinct pairs of |x_i - x_j|^(-s).
EnergyResult s_energy(const PointCloud& cloud, double s);

struct AreaRow {
    double eps = 0.0;
    std::uint64_t boxes = 0;
    double covered = 0.0; // N(eps) * eps^m
};

struct AreaTable {
    std::vector<AreaRow> rows;
    std::string verdict; // positive-area-consistent | inconclusive
    double fine_ratio = 0.0; // covered at finest / covered at next scale
};

inline constexpr double kAreaFloor = 1e-3;

AreaTable area_positivity(const PointCloud& cloud, const std::vector<double>& scales,
                          double floor = kAreaFloor);

struct SweepRecord {
    Complex t{0.0, 0.0};
    bool ok = false;
    std::string error;
    double bowen = 0.0;
    bool bowen_infinite = false;
    double target = 0.0; // min{m, s(t)}
    double box_estimate = 0.0;
    double box_residual = 0.0;
    std::string verdict; // dim-match | dim-mismatch | area-positive | area-inconclusive | error
    double area_fine = 0.0;
    double area_ratio = 0.0;
};

struct SweepResult {
    std::vector<SweepRecord> records;
    double conforming_fraction = 0.0;
    int failures = 0;
    double match_tolerance = 0.0;
};

inline constexpr double kDimensionMatchTolerance = 0.15;
inline constexpr double kConformingThreshold = 0.9; // engineering default, flagged in output

// One record per grid parameter: Bowen root, box estimate, and either the
// dimension-match or the positive-area verdict depending on s(t) vs m.
SweepResult dimension_sweep(const MapSchedule& family, const std::vector<Complex>& grid, long points,
                            double tolerance, double match_tol, std::uint64_t seed, int threads = 1,
                            const SamplerSpec& sampler = {});

} // namespace nifslab
