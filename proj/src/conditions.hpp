#pragma once

#include <string>
#include <vector>

#include "engine.hpp"
#include "family.hpp"

namespace nifslab {

// gamma estimate: largest per-map derivative norm over the grid and levels
// 1..depth. Exact per level for the affine catalog.
double estimate_contraction(const MapSchedule& family, const std::vector<Complex>& grid, int depth);

// K(t) estimate: worst derivative-norm ratio over sampled words and point
// pairs. Affine conformal maps have spatially constant derivatives, so the
// measured ratio is identically 1; the sampling stays in place as the
// procedure the report documents.
double estimate_distortion(const MapSchedule& family, Complex t, int depth, int samples,
                           std::uint64_t seed = 1);

// Largest tested radius delta such that all sampled parameters within it of
// t0 keep every per-level log-scale gap below eta. Lattice and samples are
// fixed by the seed, so the result is antitone in 1/eta by construction.
double distortion_continuity_delta(const MapSchedule& family, double eta, Complex t0, int lattice = 64,
                                   int angles = 32);

struct FamilyDistance {
    double map_sup = 0.0;        // sup_j max_i sup_X |phi(x;t1) - phi(x;t2)|
    double derivative_sup = 0.0; // same for the derivatives
    int depth = 0;
};

// Closed-form affine sup over the ball X, maximized over levels 1..depth.
FamilyDistance family_sup_distance(const MapSchedule& family, Complex t1, Complex t2, int depth);

struct ConditionEntry {
    int index = 0;
    std::string name;
    std::string status; // verified-exactly | verified-on-samples | failed | delegated
    std::string detail; // witness or measurement summary
};

struct ContinuityRow {
    double eta = 0.0;
    Complex t0{0.0, 0.0};
    double delta = 0.0;
};

struct ConditionReport {
    std::string family;
    int dim = 2;
    double declared_gamma = 0.0;
    double estimated_gamma = 0.0;
    double estimated_distortion = 1.0;
    int grid_size = 0;
    int sample_count = 0;
    std::vector<ConditionEntry> entries;
    std::vector<ContinuityRow> continuity_table;
    double address_modulus = 0.0; // condition 5 Lipschitz-style proxy

    bool all_passed() const;
    std::string to_text() const;
};

// Runs the condition battery over a parameter grid. Condition 6 is reported
// as delegated to the transversality machinery.
ConditionReport verify_conditions(const MapSchedule& family, const std::vector<Complex>& grid, int depth,
                                  int samples, std::uint64_t seed = 1);

} // namespace nifslab
