#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "expr.hpp"
#include "symbolic.hpp"
#include "util.hpp"

namespace nifslab {

// Contraction modulus of the reference example: 2 * 5^(-5/8), the radius of
// the double-zero-free parameter disk and also the uniform contraction bound.
inline double gamma_star() { return 2.0 * std::pow(5.0, -0.625); }

struct Ball {
    Complex center{0.0, 0.0};
    double radius = 1.0;

    bool contains(Complex p, double slack = 0.0) const { return std::abs(p - center) <= radius + slack; }
};

// The compact seed set X (a closed ball) inside the open extension domain V.
struct AmbientSpace {
    int dim = 2; // 1 or 2
    Ball domain;    // X
    Ball extension; // V, strictly larger

    double diameter() const { return 2.0 * domain.radius; }
    // r and L from the lower-distance-bound lemma: r = min(|X|, gap/2), L = |X|/r.
    double lemma_gap_r() const;
    double lemma_constant_L() const { return diameter() / lemma_gap_r(); }

    void validate() const;
};

struct Box {
    double re_lo = 0, re_hi = 0, im_lo = 0, im_hi = 0;
};

// Admissible parameter set U. Decidable membership plus a bounding box.
class ParameterRegion {
public:
    enum class Kind { none, disk, disk_nonreal, interval };

    static ParameterRegion none();
    static ParameterRegion disk(Complex center, double radius, bool exclude_real, std::string tag);
    static ParameterRegion interval(double lo, double hi, std::string tag);

    bool contains(Complex t) const;
    // Distance from t to the complement of the region (0 outside).
    double boundary_distance(Complex t) const;
    Box bounding_box() const;
    int dim() const { return dim_; }
    Kind kind() const { return kind_; }
    const std::string& tag() const { return tag_; }

private:
    Kind kind_ = Kind::none;
    int dim_ = 2;
    Complex center_{0.0, 0.0};
    double radius_ = 0.0;
    double lo_ = 0.0, hi_ = 0.0;
    std::string tag_;
};

// Affine conformal map x -> scale*x + offset. For dim-1 families the values
// are real-valued complex numbers; the derivative norm is |scale| either way.
struct AffineMap {
    Complex scale{1.0, 0.0};
    Complex offset{0.0, 0.0};

    Complex apply(Complex x) const { return scale * x + offset; }
    // Composition this∘inner: apply(inner(x)).
    AffineMap after(const AffineMap& inner) const {
        return {scale * inner.scale, scale * inner.offset + offset};
    }
    double derivative_norm() const { return std::abs(scale); }
    static AffineMap identity() { return {Complex(1.0, 0.0), Complex(0.0, 0.0)}; }
};

struct MapRule {
    Expr scale;
    Expr translate;
};

struct LevelSpec {
    std::vector<MapRule> maps; // one per symbol
};

// A parameterized NIFS family: for each level j >= 1 a finite collection of
// affine conformal self-maps of X, as a function of the parameter t. Levels
// are generated by a periodic list of rule specs whose expressions may still
// depend on the absolute level j (so the generated maps need not be periodic).
class MapSchedule {
public:
    MapSchedule(std::string name, AmbientSpace space, std::vector<LevelSpec> periodic_levels,
                ParameterRegion region, double declared_gamma);

    const std::string& name() const { return name_; }
    const AmbientSpace& space() const { return space_; }
    const AlphabetSchedule& alphabet() const { return alphabet_; }
    const ParameterRegion& region() const { return region_; }
    double declared_gamma() const { return declared_gamma_; }

    AffineMap map_at(int level, int symbol, Complex t) const;

    // True when every map rule has a spatially constant derivative that does
    // not depend on the level within one period slot. Holds for the whole
    // affine catalog; partition sums then factor per level.
    bool scales_level_free() const { return scales_level_free_; }
    bool depends_on_parameter() const { return depends_on_t_; }

    // Contraction admissibility at t: every map in levels 1..depth has
    // derivative norm < 1. This is the requirement for compositions and
    // address maps to converge; membership in U is a separate, stricter test.
    bool contraction_admissible(Complex t, int depth = 16) const;
    void require_admissible(Complex t) const;

    // Largest per-map derivative norm over levels 1..depth (exact per level).
    double contraction_factor(Complex t, int depth = 16) const;

    // Whether phi_{i,t}^{(j)}(X) stays inside X, as a closed-form ball check.
    bool self_map_ok(Complex t, int level, int symbol, double slack = 1e-9) const;

    int rule_period() const { return static_cast<int>(levels_.size()); }
    const LevelSpec& level_spec(int level) const {
        return levels_[static_cast<std::size_t>(level - 1) % levels_.size()];
    }

private:
    std::string name_;
    AmbientSpace space_;
    std::vector<LevelSpec> levels_;
    AlphabetSchedule alphabet_;
    ParameterRegion region_;
    double declared_gamma_ = 1.0;
    bool scales_level_free_ = true;
    bool depends_on_t_ = false;
};

// Built-in families. Keys: "paper-example", "cantor-third".
MapSchedule catalog_family(const std::string& key);
std::vector<std::string> catalog_keys();

// Load a family from a JSON configuration document (see README for schema).
MapSchedule family_from_json_text(const std::string& text);
MapSchedule family_from_file(const std::string& path);

// One-line JSON description used by the C API and record provenance.
std::string family_describe(const MapSchedule& family);

} // namespace nifslab
