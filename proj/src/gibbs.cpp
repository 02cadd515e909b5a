#include "gibbs.hpp"

#include "pressure.hpp"
#include "rng.hpp"

namespace nifslab {

GibbsMeasure::GibbsMeasure(const MapSchedule& family, Complex t, double s, int level, std::uint64_t budget)
    : family_(&family), t_(t), s_(s), level_(level) {
    if (s < 0.0) fail(Errc::invalid_argument, "gibbs exponent must be >= 0");
    if (level < 1) fail(Errc::invalid_argument, "gibbs level must be >= 1");
    family.require_admissible(t);
    const std::uint64_t count = family.alphabet().word_count(1, level, budget);

    // strides_[k] = number of level-n words extending a fixed prefix of
    // length k; table indices follow the lexicographic enumeration order.
    strides_.assign(static_cast<std::size_t>(level) + 1, 1);
    for (int k = level - 1; k >= 0; --k)
        strides_[static_cast<std::size_t>(k)] =
            strides_[static_cast<std::size_t>(k) + 1] *
            static_cast<std::uint64_t>(family.alphabet().size_at(k + 1));

    log_norms_.reserve(count);
    std::vector<double> running(static_cast<std::size_t>(level) + 1, 0.0);
    std::vector<int> word(static_cast<std::size_t>(level), 0);
    std::vector<std::vector<double>> log_scales(static_cast<std::size_t>(level));
    for (int j = 1; j <= level; ++j) {
        const int nsym = family.alphabet().size_at(j);
        auto& row = log_scales[static_cast<std::size_t>(j - 1)];
        for (int i = 0; i < nsym; ++i) row.push_back(std::log(family.map_at(j, i, t).derivative_norm()));
    }
    int pos = 0;
    while (true) {
        while (pos < level) {
            running[static_cast<std::size_t>(pos) + 1] =
                running[static_cast<std::size_t>(pos)] +
                log_scales[static_cast<std::size_t>(pos)][static_cast<std::size_t>(word[static_cast<std::size_t>(pos)])];
            ++pos;
        }
        log_norms_.push_back(running[static_cast<std::size_t>(level)]);
        --pos;
        while (pos >= 0) {
            auto& digit = word[static_cast<std::size_t>(pos)];
            if (++digit < static_cast<int>(log_scales[static_cast<std::size_t>(pos)].size())) break;
            digit = 0;
            --pos;
        }
        if (pos < 0) break;
    }

    std::vector<double> terms;
    terms.reserve(log_norms_.size());
    for (double ln : log_norms_) terms.push_back(s_ * ln);
    log_z_ = log_sum_pairwise(terms);

    cumulative_.reserve(log_norms_.size());
    double acc = 0.0;
    for (std::uint64_t k = 0; k < table_size(); ++k) {
        acc += std::exp(s_ * log_norms_[static_cast<std::size_t>(k)] - log_z_);
        cumulative_.push_back(acc);
    }
}

Word GibbsMeasure::word_at(std::uint64_t index) const {
    if (index >= table_size()) fail(Errc::invalid_argument, "gibbs table index out of range");
    Word w;
    w.start_level = 1;
    w.symbols.resize(static_cast<std::size_t>(level_));
    for (int k = 0; k < level_; ++k) {
        const std::uint64_t stride = strides_[static_cast<std::size_t>(k) + 1];
        w.symbols[static_cast<std::size_t>(k)] = static_cast<int>(index / stride);
        index %= stride;
    }
    return w;
}

double GibbsMeasure::log_mass_at(std::uint64_t index) const {
    if (index >= table_size()) fail(Errc::invalid_argument, "gibbs table index out of range");
    return s_ * log_norms_[static_cast<std::size_t>(index)] - log_z_;
}

std::uint64_t GibbsMeasure::prefix_range(const Word& word, std::uint64_t* stride) const {
    if (word.start_level != 1) fail(Errc::invalid_argument, "cylinder words are anchored at level 1");
    if (word.length() > level_)
        fail(Errc::invalid_argument, "cylinder word deeper than the gibbs table level");
    validate_word(word, family_->alphabet());
    std::uint64_t base = 0;
    for (int k = 0; k < word.length(); ++k)
        base += static_cast<std::uint64_t>(word.symbols[static_cast<std::size_t>(k)]) *
                strides_[static_cast<std::size_t>(k) + 1];
    *stride = strides_[static_cast<std::size_t>(word.length())];
    return base;
}

double GibbsMeasure::cylinder_log_mass(const Word& word) const {
    std::uint64_t stride = 0;
    const std::uint64_t base = prefix_range(word, &stride);
    std::vector<double> terms;
    terms.reserve(stride);
    for (std::uint64_t k = 0; k < stride; ++k)
        terms.push_back(s_ * log_norms_[static_cast<std::size_t>(base + k)] - log_z_);
    return log_sum_pairwise(terms);
}

double GibbsMeasure::cylinder_mass(const Word& word) const { return std::exp(cylinder_log_mass(word)); }

double GibbsMeasure::log_total_mass() const {
    Word empty;
    empty.start_level = 1;
    return cylinder_log_mass(empty);
}

GibbsMeasure::Certificate GibbsMeasure::verify_bound(double distortion_K, double log_slack) const {
    Certificate cert;
    const double log_k = std::log(distortion_K);
    for (int m = 0; m <= level_; ++m) {
        const double log_z_m = partition_log_sum(*family_, t_, s_, m);
        enumerate_words(family_->alphabet(), 1, m, kDefaultEnumerationCap, [&](const Word& w) {
            const double log_mass = cylinder_log_mass(w);
            const double norm = compose(*family_, w, t_).map.derivative_norm();
            const double log_bound = s_ * std::log(norm) + s_ * log_k - log_z_m;
            const double slack = log_mass - log_bound;
            ++cert.checked;
            if (slack > cert.worst_slack) {
                cert.worst_slack = slack;
                cert.worst_word = w;
            }
            if (slack > log_slack) cert.ok = false;
        });
    }
    return cert;
}

SymbolStream GibbsMeasure::sample_stream(std::uint64_t seed) const {
    return sample_stream(seed, SymbolStream::random(1, hash_combine(seed, 0x7a11ULL), family_->alphabet()));
}

SymbolStream GibbsMeasure::sample_stream(std::uint64_t seed, const SymbolStream& tail) const {
    Rng rng(seed);
    const double u = rng.next_double();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    const std::uint64_t chosen =
        it == cumulative_.end() ? table_size() - 1
                                : static_cast<std::uint64_t>(it - cumulative_.begin());
    const Word w = word_at(chosen);
    return SymbolStream::with_prefix(w.symbols, tail);
}

GibbsMeasure build_gibbs(const MapSchedule& family, Complex t, double s, int level, std::uint64_t budget) {
    return GibbsMeasure(family, t, s, level, budget);
}

double default_gibbs_exponent(const MapSchedule& family, Complex t, double epsilon) {
    const BowenResult r = bowen_dimension(family, t);
    if (r.infinite) return kBowenCeiling;
    return std::max(0.0, r.s - epsilon / 4.0);
}

} // namespace nifslab
