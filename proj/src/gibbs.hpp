#pragma once

#include <vector>

#include "engine.hpp"
#include "family.hpp"
#include "symbolic.hpp"

namespace nifslab {

// Finite-level Gibbs-like measure: cylinder masses over I^n proportional to
// ||D phi_{omega,t}||^s. The weak-* limit object is not constructible; every
// consumer works with a fixed level n plus the cylinder bound certificate.
class GibbsMeasure {
public:
    GibbsMeasure(const MapSchedule& family, Complex t, double s, int level,
                 std::uint64_t budget = kDefaultEnumerationCap);

    const MapSchedule& family() const { return *family_; }
    Complex parameter() const { return t_; }
    double exponent() const { return s_; }
    int level() const { return level_; }
    std::uint64_t table_size() const { return static_cast<std::uint64_t>(log_norms_.size()); }
    double log_normalizer() const { return log_z_; }

    // Level-n word at a table index (enumeration order) and its mass.
    Word word_at(std::uint64_t index) const;
    double log_mass_at(std::uint64_t index) const;

    // Mass of the cylinder [omega] for |omega| <= level, anchored at level 1,
    // aggregated over all level-n extensions.
    double cylinder_mass(const Word& word) const;
    double cylinder_log_mass(const Word& word) const;

    struct Certificate {
        bool ok = true;
        double worst_slack = -std::numeric_limits<double>::infinity(); // max log(mass) - log(bound)
        std::uint64_t checked = 0;
        Word worst_word;
    };

    // Verifies mass([omega]) <= K^s ||D phi_omega||^s / Z_{m}(s) for every
    // prefix depth m <= level, with Z_m recomputed by the enumerated route.
    Certificate verify_bound(double distortion_K = 1.0, double log_slack = 1e-12) const;

    // Draws the first n symbols from the mass table; positions beyond level n
    // follow `tail` (default: per-level uniform, hashed from the seed).
    SymbolStream sample_stream(std::uint64_t seed) const;
    SymbolStream sample_stream(std::uint64_t seed, const SymbolStream& tail) const;

    // Total mass in the log domain; 0 up to accumulation error.
    double log_total_mass() const;

private:
    std::uint64_t prefix_range(const Word& word, std::uint64_t* stride) const;

    const MapSchedule* family_;
    Complex t_;
    double s_ = 0.0;
    int level_ = 0;
    std::vector<double> log_norms_; // log ||D phi_omega|| per level-n word
    std::vector<double> cumulative_; // CDF over the table, sampling hot path
    std::vector<std::uint64_t> strides_;
    double log_z_ = 0.0;
};

GibbsMeasure build_gibbs(const MapSchedule& family, Complex t, double s, int level,
                         std::uint64_t budget = kDefaultEnumerationCap);

// Default exponent for measure-driven dimension runs: the Bowen root minus
// epsilon/4 (clamped at 0).
double default_gibbs_exponent(const MapSchedule& family, Complex t, double epsilon = 0.1);

} // namespace nifslab
