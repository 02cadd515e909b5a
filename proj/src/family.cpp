#include "family.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nifslab {

double AmbientSpace::lemma_gap_r() const {
    const double gap = extension.radius - (std::abs(domain.center - extension.center) + domain.radius);
    return std::min(diameter(), gap / 2.0);
}

void AmbientSpace::validate() const {
    if (dim != 1 && dim != 2) fail(Errc::invalid_argument, "ambient dimension must be 1 or 2");
    if (domain.radius <= 0.0) fail(Errc::invalid_argument, "domain ball X needs positive radius");
    const double gap = extension.radius - (std::abs(domain.center - extension.center) + domain.radius);
    if (gap <= 0.0) fail(Errc::invalid_argument, "extension ball V must strictly contain X");
    if (dim == 1 && (domain.center.imag() != 0.0 || extension.center.imag() != 0.0))
        fail(Errc::invalid_argument, "dim-1 ambient balls must be real intervals");
}

ParameterRegion ParameterRegion::none() {
    ParameterRegion r;
    r.kind_ = Kind::none;
    r.dim_ = 1;
    r.tag_ = "none";
    return r;
}

ParameterRegion ParameterRegion::disk(Complex center, double radius, bool exclude_real, std::string tag) {
    if (radius <= 0.0) fail(Errc::invalid_argument, "parameter disk needs positive radius");
    ParameterRegion r;
    r.kind_ = exclude_real ? Kind::disk_nonreal : Kind::disk;
    r.dim_ = 2;
    r.center_ = center;
    r.radius_ = radius;
    r.tag_ = std::move(tag);
    return r;
}

ParameterRegion ParameterRegion::interval(double lo, double hi, std::string tag) {
    if (!(lo < hi)) fail(Errc::invalid_argument, "parameter interval needs lo < hi");
    ParameterRegion r;
    r.kind_ = Kind::interval;
    r.dim_ = 1;
    r.lo_ = lo;
    r.hi_ = hi;
    r.tag_ = std::move(tag);
    return r;
}

bool ParameterRegion::contains(Complex t) const {
    switch (kind_) {
    case Kind::none: return true;
    case Kind::disk: return std::abs(t - center_) < radius_;
    case Kind::disk_nonreal: return std::abs(t - center_) < radius_ && t.imag() != 0.0;
    case Kind::interval: return t.imag() == 0.0 && t.real() > lo_ && t.real() < hi_;
    }
    return false;
}

double ParameterRegion::boundary_distance(Complex t) const {
    if (!contains(t)) return 0.0;
    switch (kind_) {
    case Kind::none: return std::numeric_limits<double>::infinity();
    case Kind::disk: return radius_ - std::abs(t - center_);
    case Kind::disk_nonreal:
        return std::min(radius_ - std::abs(t - center_), std::abs(t.imag()));
    case Kind::interval: return std::min(t.real() - lo_, hi_ - t.real());
    }
    return 0.0;
}

Box ParameterRegion::bounding_box() const {
    switch (kind_) {
    case Kind::none: return {-1.0, 1.0, 0.0, 0.0};
    case Kind::disk:
    case Kind::disk_nonreal:
        return {center_.real() - radius_, center_.real() + radius_, center_.imag() - radius_,
                center_.imag() + radius_};
    case Kind::interval: return {lo_, hi_, 0.0, 0.0};
    }
    return {};
}

MapSchedule::MapSchedule(std::string name, AmbientSpace space, std::vector<LevelSpec> periodic_levels,
                         ParameterRegion region, double declared_gamma)
    : name_(std::move(name)),
      space_(space),
      levels_(std::move(periodic_levels)),
      region_(std::move(region)),
      declared_gamma_(declared_gamma) {
    space_.validate();
    if (levels_.empty()) fail(Errc::invalid_argument, "family needs at least one level spec");
    std::vector<int> sizes;
    sizes.reserve(levels_.size());
    for (const LevelSpec& spec : levels_) {
        if (spec.maps.empty()) fail(Errc::invalid_argument, "level spec needs at least one map");
        sizes.push_back(static_cast<int>(spec.maps.size()));
        for (const MapRule& rule : spec.maps) {
            if (rule.scale.depends_on_level()) scales_level_free_ = false;
            if (rule.scale.depends_on_t() || rule.translate.depends_on_t()) depends_on_t_ = true;
        }
    }
    alphabet_ = AlphabetSchedule(std::move(sizes));
    if (!(declared_gamma_ > 0.0 && declared_gamma_ < 1.0))
        fail(Errc::invalid_argument, "declared contraction bound must lie in (0,1)");
}

AffineMap MapSchedule::map_at(int level, int symbol, Complex t) const {
    if (level < 1) fail(Errc::invalid_argument, "level must be >= 1");
    const LevelSpec& spec = level_spec(level);
    if (symbol < 0 || symbol >= static_cast<int>(spec.maps.size()))
        fail(Errc::invalid_argument, "symbol " + std::to_string(symbol + 1) + " out of range at level " +
                                         std::to_string(level));
    const MapRule& rule = spec.maps[static_cast<std::size_t>(symbol)];
    return {rule.scale.eval(t, level), rule.translate.eval(t, level)};
}

bool MapSchedule::contraction_admissible(Complex t, int depth) const {
    return contraction_factor(t, depth) < 1.0;
}

void MapSchedule::require_admissible(Complex t) const {
    if (!contraction_admissible(t))
        fail(Errc::domain, "parameter (" + std::to_string(t.real()) + "," + std::to_string(t.imag()) +
                               ") is not uniformly contracting for family " + name_);
}

double MapSchedule::contraction_factor(Complex t, int depth) const {
    // Scales that are level-free within a rule slot only need one period.
    const int levels = scales_level_free_ ? rule_period() : std::max(depth, rule_period());
    double worst = 0.0;
    for (int j = 1; j <= levels; ++j) {
        const LevelSpec& spec = level_spec(j);
        for (std::size_t i = 0; i < spec.maps.size(); ++i) {
            const double c = std::abs(spec.maps[i].scale.eval(t, j));
            if (!std::isfinite(c)) fail(Errc::domain, "non-finite scale factor at level " + std::to_string(j));
            worst = std::max(worst, c);
        }
    }
    return worst;
}

bool MapSchedule::self_map_ok(Complex t, int level, int symbol, double slack) const {
    const AffineMap map = map_at(level, symbol, t);
    const Ball& X = space_.domain;
    // image of ball(c,R) is ball(a*c+b, |a|R)
    const Complex image_center = map.apply(X.center);
    const double image_radius = map.derivative_norm() * X.radius;
    return std::abs(image_center - X.center) + image_radius <= X.radius + slack;
}

namespace {

MapSchedule make_paper_example() {
    const double gamma = gamma_star();
    const double radius = 1.0 / (1.0 - gamma);
    AmbientSpace space;
    space.dim = 2;
    space.domain = {Complex(0.0, 0.0), radius};
    space.extension = {Complex(0.0, 0.0), 1.25 * radius};
    LevelSpec level;
    level.maps.push_back({Expr::parse("t"), Expr::parse("0")});
    level.maps.push_back({Expr::parse("t"), Expr::parse("1/j")});
    return MapSchedule("paper-example", space, {level},
                       ParameterRegion::disk(Complex(0.0, 0.0), gamma, true, "non-real disk |t| < 2*5^(-5/8)"),
                       gamma);
}

MapSchedule make_cantor_third() {
    AmbientSpace space;
    space.dim = 1;
    space.domain = {Complex(0.5, 0.0), 0.5};
    space.extension = {Complex(0.5, 0.0), 0.8};
    LevelSpec level;
    level.maps.push_back({Expr::parse("1/3"), Expr::parse("0")});
    level.maps.push_back({Expr::parse("1/3"), Expr::parse("2/3")});
    return MapSchedule("cantor-third", space, {level}, ParameterRegion::none(), 1.0 / 3.0);
}

} // namespace

MapSchedule catalog_family(const std::string& key) {
    if (key == "paper-example") return make_paper_example();
    if (key == "cantor-third") return make_cantor_third();
    fail(Errc::invalid_argument, "unknown catalog family \"" + key + "\"");
}

std::vector<std::string> catalog_keys() { return {"paper-example", "cantor-third"}; }

namespace {

using nlohmann::json;

Complex json_point(const json& v) {
    if (v.is_number()) return Complex(v.get<double>(), 0.0);
    if (v.is_array() && v.size() == 2) return Complex(v[0].get<double>(), v[1].get<double>());
    fail(Errc::parse, "expected number or [re, im] pair");
}

ParameterRegion parse_region(const json& v) {
    if (v.is_null()) return ParameterRegion::none();
    const std::string kind = v.value("kind", "none");
    const std::string tag = v.value("tag", kind);
    if (kind == "none") return ParameterRegion::none();
    if (kind == "disk" || kind == "disk-nonreal") {
        Complex center = v.contains("center") ? json_point(v.at("center")) : Complex(0.0, 0.0);
        return ParameterRegion::disk(center, v.at("radius").get<double>(), kind == "disk-nonreal", tag);
    }
    if (kind == "interval")
        return ParameterRegion::interval(v.at("lo").get<double>(), v.at("hi").get<double>(), tag);
    fail(Errc::parse, "unknown parameter region kind \"" + kind + "\"");
}

} // namespace

MapSchedule family_from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const std::exception& e) {
        fail(Errc::parse, std::string("family config: ") + e.what());
    }
    try {
        const json& space_doc = doc.at("space");
        AmbientSpace space;
        space.dim = space_doc.at("dim").get<int>();
        space.domain = {json_point(space_doc.at("center")), space_doc.at("radius").get<double>()};
        if (space_doc.contains("extension_radius"))
            space.extension = {space.domain.center, space_doc.at("extension_radius").get<double>()};
        else
            space.extension = {space.domain.center, 1.5 * space.domain.radius};

        std::vector<LevelSpec> levels;
        for (const json& level_doc : doc.at("levels")) {
            LevelSpec spec;
            for (const json& map_doc : level_doc.at("maps")) {
                MapRule rule;
                rule.scale = Expr::parse(map_doc.at("scale").get<std::string>());
                rule.translate = Expr::parse(map_doc.at("translate").get<std::string>());
                spec.maps.push_back(std::move(rule));
            }
            levels.push_back(std::move(spec));
        }
        ParameterRegion region =
            doc.contains("parameter") ? parse_region(doc.at("parameter")) : ParameterRegion::none();
        const double gamma = doc.value("gamma", 0.0);
        if (!(gamma > 0.0 && gamma < 1.0))
            fail(Errc::parse, "family config requires a declared contraction bound \"gamma\" in (0,1)");
        return MapSchedule(doc.value("name", "unnamed"), space, std::move(levels), std::move(region), gamma);
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        fail(Errc::parse, std::string("family config: ") + e.what());
    }
}

MapSchedule family_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::io, "cannot open family config \"" + path + "\"");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return family_from_json_text(buffer.str());
}

std::string family_describe(const MapSchedule& family) {
    nlohmann::json doc;
    doc["name"] = family.name();
    doc["dim"] = family.space().dim;
    doc["domain_center"] = {family.space().domain.center.real(), family.space().domain.center.imag()};
    doc["domain_radius"] = family.space().domain.radius;
    doc["gamma"] = family.declared_gamma();
    doc["alphabet_period"] = family.alphabet().period();
    nlohmann::json sizes = nlohmann::json::array();
    for (int j = 1; j <= family.alphabet().period(); ++j) sizes.push_back(family.alphabet().size_at(j));
    doc["alphabet_sizes"] = sizes;
    doc["parameter_region"] = family.region().tag();
    return doc.dump();
}

} // namespace nifslab
