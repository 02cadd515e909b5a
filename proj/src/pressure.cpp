#include "pressure.hpp"

namespace nifslab {

namespace {

// Streaming pairwise reduction in the log domain: slot k holds the merged
// sum of 2^k pushed terms, so memory stays logarithmic in the word count.
class LogAccumulator {
public:
    void push(double log_term) {
        for (std::size_t k = 0;; ++k) {
            if (k == slots_.size()) {
                slots_.push_back(log_term);
                return;
            }
            if (slots_[k] == kNegInf) {
                slots_[k] = log_term;
                return;
            }
            log_term = log_add(slots_[k], log_term);
            slots_[k] = kNegInf;
        }
    }

    double total() const {
        double acc = kNegInf;
        for (double s : slots_) acc = log_add(acc, s);
        return acc;
    }

private:
    std::vector<double> slots_;
};

} // namespace

double partition_log_sum_range(const MapSchedule& family, Complex t, double s, int start_level, int length,
                               std::uint64_t budget) {
    if (s < 0.0) fail(Errc::invalid_argument, "pressure exponent must be >= 0");
    if (length < 0) fail(Errc::invalid_argument, "partition sum length must be >= 0");
    family.require_admissible(t);
    family.alphabet().word_count(start_level, length, budget);
    if (length == 0) return 0.0; // single empty word, norm 1

    // Per-level log scale factors, evaluated once.
    std::vector<std::vector<double>> log_scales(static_cast<std::size_t>(length));
    for (int k = 0; k < length; ++k) {
        const int level = start_level + k;
        const int nsym = family.alphabet().size_at(level);
        auto& row = log_scales[static_cast<std::size_t>(k)];
        row.reserve(static_cast<std::size_t>(nsym));
        for (int i = 0; i < nsym; ++i)
            row.push_back(std::log(family.map_at(level, i, t).derivative_norm()));
    }

    LogAccumulator acc;
    std::vector<int> word(static_cast<std::size_t>(length), 0);
    std::vector<double> running(static_cast<std::size_t>(length) + 1, 0.0);
    int pos = 0;
    // Iterative DFS keeping the running log norm of the current prefix.
    while (true) {
        while (pos < length) {
            running[static_cast<std::size_t>(pos) + 1] =
                running[static_cast<std::size_t>(pos)] +
                log_scales[static_cast<std::size_t>(pos)][static_cast<std::size_t>(word[static_cast<std::size_t>(pos)])];
            ++pos;
        }
        acc.push(s * running[static_cast<std::size_t>(length)]);
        // advance the mixed-radix counter
        --pos;
        while (pos >= 0) {
            auto& digit = word[static_cast<std::size_t>(pos)];
            if (++digit < static_cast<int>(log_scales[static_cast<std::size_t>(pos)].size())) break;
            digit = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return acc.total();
}

double partition_log_sum(const MapSchedule& family, Complex t, double s, int n, std::uint64_t budget) {
    return partition_log_sum_range(family, t, s, 1, n, budget);
}

PressureEvaluator::PressureEvaluator(const MapSchedule& family, Complex t, int depth) : t_(t) {
    if (depth < 1) fail(Errc::invalid_argument, "pressure depth must be >= 1");
    family.require_admissible(t);
    log_scales_.resize(static_cast<std::size_t>(depth));
    for (int j = 1; j <= depth; ++j) {
        const int nsym = family.alphabet().size_at(j);
        auto& row = log_scales_[static_cast<std::size_t>(j - 1)];
        row.reserve(static_cast<std::size_t>(nsym));
        for (int i = 0; i < nsym; ++i) row.push_back(std::log(family.map_at(j, i, t).derivative_norm()));
    }
}

double PressureEvaluator::log_partition(int n, double s) const {
    if (n < 1 || n > depth()) fail(Errc::invalid_argument, "partition depth out of range");
    if (s < 0.0) fail(Errc::invalid_argument, "pressure exponent must be >= 0");
    double total = 0.0;
    for (int j = 1; j <= n; ++j) {
        const auto& row = log_scales_[static_cast<std::size_t>(j - 1)];
        std::vector<double> terms;
        terms.reserve(row.size());
        for (double lc : row) terms.push_back(s * lc);
        total += log_sum_pairwise(terms);
    }
    return total;
}

double PressureEvaluator::level_average(int n, double s) const { return log_partition(n, s) / n; }

double PressureEvaluator::liminf_estimate(double s) const {
    double best = std::numeric_limits<double>::infinity();
    for (int n = window_start(); n <= depth(); ++n) best = std::min(best, level_average(n, s));
    return best;
}

double PressureEvaluator::window_spread(double s) const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (int n = window_start(); n <= depth(); ++n) {
        const double a = level_average(n, s);
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    }
    return hi - lo;
}

double pressure(const MapSchedule& family, Complex t, double s, int depth) {
    return PressureEvaluator(family, t, depth).liminf_estimate(s);
}

BowenResult bowen_dimension(const MapSchedule& family, Complex t, double tolerance, int depth) {
    if (tolerance <= 0.0) fail(Errc::invalid_argument, "bisection tolerance must be positive");
    PressureEvaluator eval(family, t, depth);
    BowenResult out;
    out.depth = depth;

    const double at_zero = eval.liminf_estimate(0.0);
    if (at_zero <= 0.0) {
        // sup of the empty set: s(t) = 0
        out.s = 0.0;
        out.bracket_lo = 0.0;
        out.bracket_hi = 0.0;
        out.residual = std::abs(at_zero);
        out.window_spread = eval.window_spread(0.0);
        return out;
    }

    double lo = 0.0;
    double hi = 1.0;
    while (eval.liminf_estimate(hi) > 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > kBowenCeiling) {
            out.infinite = true;
            out.s = kBowenCeiling;
            out.bracket_lo = lo;
            out.bracket_hi = kBowenCeiling;
            out.residual = eval.liminf_estimate(kBowenCeiling);
            out.window_spread = eval.window_spread(kBowenCeiling);
            return out;
        }
    }
    while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (eval.liminf_estimate(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    out.s = 0.5 * (lo + hi);
    out.bracket_lo = lo;
    out.bracket_hi = hi;
    out.residual = std::abs(eval.liminf_estimate(out.s));
    out.window_spread = eval.window_spread(out.s);
    return out;
}

ContinuityScan bowen_continuity_scan(const MapSchedule& family, const std::vector<Complex>& path,
                                     double tolerance, int depth) {
    ContinuityScan scan;
    scan.path = path;
    scan.bowen.reserve(path.size());
    for (Complex t : path) {
        const BowenResult r = bowen_dimension(family, t, tolerance, depth);
        scan.bowen.push_back(r.infinite ? std::numeric_limits<double>::infinity() : r.s);
    }
    for (std::size_t k = 1; k < path.size(); ++k) {
        const double dt = std::abs(path[k] - path[k - 1]);
        const double ds = std::abs(scan.bowen[k] - scan.bowen[k - 1]);
        const double ratio = dt > 0.0 ? ds / dt : 0.0;
        scan.step_ratio.push_back(ratio);
        scan.max_step_ratio = std::max(scan.max_step_ratio, ratio);
        scan.max_step = std::max(scan.max_step, ds);
    }
    return scan;
}

} // namespace nifslab
