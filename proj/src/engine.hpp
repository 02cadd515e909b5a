#pragma once

#include <vector>

#include "family.hpp"
#include "symbolic.hpp"

namespace nifslab {

// phi_{omega,t} together with its provenance.
struct ComposedMap {
    AffineMap map;
    Word word;
    Complex t{0.0, 0.0};

    double derivative_norm() const { return map.derivative_norm(); }
};

// Map evaluations for a fixed parameter, cached per level. Growing the cache
// is not thread safe; call ensure_depth before sharing across workers.
class ScheduleEvaluator {
public:
    ScheduleEvaluator(const MapSchedule& family, Complex t);

    const MapSchedule& family() const { return *family_; }
    Complex parameter() const { return t_; }

    const AffineMap& map(int level, int symbol);
    void ensure_depth(int max_level);
    const AffineMap& cached(int level, int symbol) const;

private:
    const MapSchedule* family_;
    Complex t_;
    std::vector<std::vector<AffineMap>> levels_;
};

// phi_{omega,t} = phi^{(n)}_{omega_n} ∘ ... ∘ phi^{(n+|omega|-1)}; the empty
// word composes to the identity.
ComposedMap compose(const MapSchedule& family, const Word& word, Complex t);

double derivative_norm(const ComposedMap& map);

struct AddressPoint {
    Complex point{0.0, 0.0};
    int depth = 0;
    double error_bound = 0.0;
};

inline constexpr int kAddressDepthCeiling = 10000;

// pi_{n,t}(omega) as the limit of phi_{omega|_j,t}(center X), truncated at
// the first depth whose composed contraction pushes the cylinder diameter
// below `tolerance`.
AddressPoint address(const MapSchedule& family, const SymbolStream& stream, Complex t, double tolerance,
                     int depth_ceiling = kAddressDepthCeiling);

// Same, reusing a prepared evaluator (hot path for cloud sampling). The
// const overload reads exclusively from the pre-extended cache and is safe
// to share across workers after ensure_depth.
AddressPoint address(ScheduleEvaluator& eval, const SymbolStream& stream, double tolerance,
                     int depth_ceiling = kAddressDepthCeiling);
AddressPoint address_prepared(const ScheduleEvaluator& eval, const SymbolStream& stream, double tolerance,
                              int depth_ceiling = kAddressDepthCeiling);

// Families whose maps are z -> t z + b_i^{(j)} with t-free translations have
// address maps given by the power series sum_i b^{(n+i-1)} t^{i-1}.
bool is_power_series_family(const MapSchedule& family);

// Coefficients b^{(n+i-1)}_{omega_{n+i-1}}, i = 1..length, of that series.
std::vector<Complex> address_series(const MapSchedule& family, const SymbolStream& stream, int n, int length);

struct OscReport {
    bool violated = false;
    int witness_level = 0;   // first violating level when violated
    int witness_a = 0, witness_b = 0;
    int tested_depth = 0;
    double witness_gap = 0.0; // centre distance minus radii sum at the witness
};

// Per-level interior disjointness of map images of X (ball images, closed
// form). A pass only certifies the tested levels.
OscReport osc_check(const MapSchedule& family, Complex t, int depth);

} // namespace nifslab
