#include "engine.hpp"

namespace nifslab {

ScheduleEvaluator::ScheduleEvaluator(const MapSchedule& family, Complex t) : family_(&family), t_(t) {
    family.require_admissible(t);
}

const AffineMap& ScheduleEvaluator::map(int level, int symbol) {
    ensure_depth(level);
    return cached(level, symbol);
}

void ScheduleEvaluator::ensure_depth(int max_level) {
    while (static_cast<int>(levels_.size()) < max_level) {
        const int level = static_cast<int>(levels_.size()) + 1;
        const LevelSpec& spec = family_->level_spec(level);
        std::vector<AffineMap> maps;
        maps.reserve(spec.maps.size());
        for (std::size_t i = 0; i < spec.maps.size(); ++i)
            maps.push_back(family_->map_at(level, static_cast<int>(i), t_));
        levels_.push_back(std::move(maps));
    }
}

const AffineMap& ScheduleEvaluator::cached(int level, int symbol) const {
    if (level < 1 || level > static_cast<int>(levels_.size()))
        fail(Errc::internal, "evaluator cache miss at level " + std::to_string(level));
    const auto& maps = levels_[static_cast<std::size_t>(level - 1)];
    if (symbol < 0 || symbol >= static_cast<int>(maps.size()))
        fail(Errc::invalid_argument, "symbol out of range at level " + std::to_string(level));
    return maps[static_cast<std::size_t>(symbol)];
}

ComposedMap compose(const MapSchedule& family, const Word& word, Complex t) {
    validate_word(word, family.alphabet());
    if (!word.empty()) family.require_admissible(t);
    AffineMap acc = AffineMap::identity();
    for (int k = 0; k < word.length(); ++k) {
        const AffineMap next = family.map_at(word.start_level + k, word.symbols[static_cast<std::size_t>(k)], t);
        acc = acc.after(next);
    }
    return {acc, word, t};
}

double derivative_norm(const ComposedMap& map) { return map.derivative_norm(); }

namespace {

template <typename MapLookup>
AddressPoint address_impl(const AmbientSpace& space, const SymbolStream& stream, double tolerance,
                          int depth_ceiling, MapLookup&& lookup) {
    if (tolerance <= 0.0) fail(Errc::invalid_argument, "address tolerance must be positive");
    const double diam = space.diameter();
    AffineMap acc = AffineMap::identity();
    int depth = 0;
    while (acc.derivative_norm() * diam > tolerance) {
        if (depth >= depth_ceiling)
            fail(Errc::depth_ceiling,
                 "address truncation needs more than " + std::to_string(depth_ceiling) + " levels");
        const int level = stream.start_level() + depth;
        acc = acc.after(lookup(level, stream.at(depth)));
        ++depth;
    }
    AddressPoint out;
    out.point = acc.apply(space.domain.center);
    out.depth = depth;
    out.error_bound = acc.derivative_norm() * diam;
    return out;
}

} // namespace

AddressPoint address(const MapSchedule& family, const SymbolStream& stream, Complex t, double tolerance,
                     int depth_ceiling) {
    ScheduleEvaluator eval(family, t);
    return address(eval, stream, tolerance, depth_ceiling);
}

AddressPoint address(ScheduleEvaluator& eval, const SymbolStream& stream, double tolerance, int depth_ceiling) {
    return address_impl(eval.family().space(), stream, tolerance, depth_ceiling,
                        [&eval](int level, int symbol) -> const AffineMap& { return eval.map(level, symbol); });
}

AddressPoint address_prepared(const ScheduleEvaluator& eval, const SymbolStream& stream, double tolerance,
                              int depth_ceiling) {
    return address_impl(eval.family().space(), stream, tolerance, depth_ceiling,
                        [&eval](int level, int symbol) -> const AffineMap& { return eval.cached(level, symbol); });
}

bool is_power_series_family(const MapSchedule& family) {
    static const Complex probes[2] = {Complex(0.31, 0.17), Complex(-0.12, 0.05)};
    for (int slot = 1; slot <= family.rule_period(); ++slot) {
        const LevelSpec& spec = family.level_spec(slot);
        for (const MapRule& rule : spec.maps) {
            for (int j : {slot, slot + family.rule_period(), slot + 7 * family.rule_period()}) {
                if (rule.scale.eval(probes[0], j) != probes[0]) return false;
                if (rule.scale.eval(probes[1], j) != probes[1]) return false;
                if (rule.translate.eval(probes[0], j) != rule.translate.eval(probes[1], j)) return false;
            }
        }
    }
    return true;
}

std::vector<Complex> address_series(const MapSchedule& family, const SymbolStream& stream, int n, int length) {
    if (!is_power_series_family(family))
        fail(Errc::invalid_argument, "family \"" + family.name() + "\" is not of the power-series form");
    if (stream.start_level() != n)
        fail(Errc::invalid_argument, "stream must be anchored at level n");
    if (length < 0) fail(Errc::invalid_argument, "series length must be >= 0");
    std::vector<Complex> coeffs;
    coeffs.reserve(static_cast<std::size_t>(length));
    const Complex any_t(0.0, 0.0); // translations are t-free
    for (int i = 1; i <= length; ++i) {
        const int level = n + i - 1;
        const int symbol = stream.at(i - 1);
        const LevelSpec& spec = family.level_spec(level);
        coeffs.push_back(spec.maps[static_cast<std::size_t>(symbol)].translate.eval(any_t, level));
    }
    return coeffs;
}

OscReport osc_check(const MapSchedule& family, Complex t, int depth) {
    if (depth < 1) fail(Errc::invalid_argument, "osc_check depth must be >= 1");
    family.require_admissible(t);
    const Ball& X = family.space().domain;
    OscReport report;
    report.tested_depth = depth;
    for (int j = 1; j <= depth; ++j) {
        const int nsym = family.alphabet().size_at(j);
        std::vector<AffineMap> maps;
        maps.reserve(static_cast<std::size_t>(nsym));
        for (int i = 0; i < nsym; ++i) maps.push_back(family.map_at(j, i, t));
        for (int a = 0; a < nsym; ++a) {
            for (int b = a + 1; b < nsym; ++b) {
                const Complex ca = maps[a].apply(X.center);
                const Complex cb = maps[b].apply(X.center);
                const double radii = (maps[a].derivative_norm() + maps[b].derivative_norm()) * X.radius;
                const double gap = std::abs(ca - cb) - radii;
                if (gap < 0.0) {
                    report.violated = true;
                    report.witness_level = j;
                    report.witness_a = a;
                    report.witness_b = b;
                    report.witness_gap = gap;
                    return report;
                }
            }
        }
    }
    return report;
}

} // namespace nifslab
