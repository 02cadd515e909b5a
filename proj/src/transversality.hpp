#pragma once

#include <string>
#include <vector>

#include "engine.hpp"
#include "family.hpp"
#include "symbolic.hpp"

namespace nifslab {

inline constexpr int kSeriesTruncation = 256;

// Truncation of a power series +-1 + sum_{j>=1} a_j t^j with a_j in [-1,1].
// Evaluation inside |t| <= rho < 1 carries the geometric tail bound
// rho^(L+1) / (1 - rho) for truncation length L.
class BoundedPowerSeries {
public:
    BoundedPowerSeries(double leading, std::vector<double> coefficients);

    double leading() const { return leading_; }
    const std::vector<double>& coefficients() const { return coefficients_; }
    int truncation_length() const { return static_cast<int>(coefficients_.size()); }

    Complex eval(Complex t) const;
    Complex derivative(Complex t) const;
    double tail_bound(double rho) const;
    double derivative_tail_bound(double rho) const;

    // Membership in the coefficient class: leading +-1, |a_j| <= 1.
    bool in_class(double slack = 1e-12) const;

private:
    double leading_ = 1.0;
    std::vector<double> coefficients_;
};

// n * (pi_{n,t}(omega) - pi_{n,t}(tau)) as a power series in t, for streams
// anchored at level n with omega_n != tau_n. Requires a power-series family
// (maps z -> t z + b with t-free real translations).
BoundedPowerSeries difference_series(const MapSchedule& family, const SymbolStream& omega,
                                     const SymbolStream& tau, int n, int truncation = kSeriesTruncation);

enum class ZeroExclusion { excluded, not_covered_by_theorem };

// Double-zero exclusion region for the class: non-real t with |t| < 2*5^(-5/8).
ZeroExclusion double_zero_exclusion(Complex t);

struct ZeroSearchResult {
    double min_value = 0.0; // smallest achieved max(|f|, |f'|)
    Complex location{0.0, 0.0};
    long trial_index = -1;
    long below_threshold = 0; // trials whose minimum fell below the threshold
    long trials = 0;
};

// Randomized falsification probe: random class members, damped descent on
// max(|f|,|f'|)^2 from random starts inside the region. Deterministic in the
// seed; a clean run is consistency evidence, not a proof.
ZeroSearchResult double_zero_search(const ParameterRegion& region, long trials, int restarts,
                                    double threshold, std::uint64_t seed, int truncation = 64,
                                    int threads = 1);

struct SublevelRow {
    double radius = 0.0;        // r in |pi diff| <= r
    std::uint64_t cells_inside = 0;
    std::uint64_t cells_boundary = 0;
    double area_inside = 0.0;   // fully-inside cells only
    double area_band = 0.0;     // boundary cells, reported as uncertainty
};

struct TransversalityReport {
    int n = 0;
    double cell = 0.0;
    std::uint64_t cells_in_region = 0;
    std::uint64_t cells_clipped = 0; // grid cells inside G but outside U
    std::vector<SublevelRow> rows;
    double c_hat = 0.0; // max over radii of area_inside / r^m
    double series_tail = 0.0;
};

// Grid-cell measurement of L_2({t in G : |pi_{n,t}(omega) - pi_{n,t}(tau)| <= r})
// for each radius, where G is a disk intersected with the parameter region.
TransversalityReport empirical_transversality(const MapSchedule& family, Complex g_center, double g_radius,
                                              const SymbolStream& omega, const SymbolStream& tau, int n,
                                              const std::vector<double>& radii, double cell_size,
                                              int truncation = kSeriesTruncation);

// Sublevel-set mask for visual inspection: 0 outside, 128 boundary band,
// 255 fully inside. Row-major, top row first.
struct MaskImage {
    int width = 0, height = 0;
    std::vector<unsigned char> pixels;
};

MaskImage transversality_mask(const MapSchedule& family, Complex g_center, double g_radius,
                              const SymbolStream& omega, const SymbolStream& tau, int n, double radius,
                              double cell_size, int truncation = kSeriesTruncation);

// Random stream pair at level n with omega_n != tau_n, used by the C_n fit.
std::pair<SymbolStream, SymbolStream> random_pair_at_level(const MapSchedule& family, int n,
                                                           std::uint64_t seed);

} // namespace nifslab
