#include "dimension.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "rng.hpp"

namespace nifslab {

double PointCloud::diameter() const {
    const Box b = bounding_box();
    const double dx = b.re_hi - b.re_lo;
    const double dy = b.im_hi - b.im_lo;
    return std::sqrt(dx * dx + dy * dy);
}

Box PointCloud::bounding_box() const {
    Box b;
    if (points.empty()) return b;
    b.re_lo = b.re_hi = points[0].real();
    b.im_lo = b.im_hi = points[0].imag();
    for (Complex p : points) {
        b.re_lo = std::min(b.re_lo, p.real());
        b.re_hi = std::max(b.re_hi, p.real());
        b.im_lo = std::min(b.im_lo, p.imag());
        b.im_hi = std::max(b.im_hi, p.imag());
    }
    return b;
}

PointCloud sample_limit_set(const MapSchedule& family, Complex t, long count, double tolerance,
                            const SamplerSpec& sampler, std::uint64_t seed, int threads) {
    if (count < 1) fail(Errc::invalid_argument, "cloud sampling needs count >= 1");
    if (tolerance <= 0.0) fail(Errc::invalid_argument, "cloud sampling needs a positive tolerance");
    family.require_admissible(t);

    PointCloud cloud;
    cloud.dim = family.space().dim;
    cloud.family = family.name();
    cloud.t = t;
    cloud.seed = seed;
    cloud.tolerance = tolerance;
    const Ball& X = family.space().domain;
    cloud.grid_anchor = Complex(X.center.real() - X.radius, X.center.imag() - (cloud.dim == 2 ? X.radius : 0.0));

    std::optional<GibbsMeasure> measure;
    if (sampler.use_gibbs) {
        const double s = sampler.gibbs_s >= 0.0 ? sampler.gibbs_s : default_gibbs_exponent(family, t);
        measure.emplace(family, t, s, sampler.gibbs_level);
        std::ostringstream os;
        os << "gibbs(n=" << sampler.gibbs_level << ",s=" << s << ")";
        cloud.sampler = os.str();
    } else {
        cloud.sampler = "uniform";
    }

    // Pre-extend the map cache to the worst-case truncation depth so the
    // parallel section reads it immutably.
    ScheduleEvaluator eval(family, t);
    const double gamma_t = family.contraction_factor(t);
    const double diam = family.space().diameter();
    int worst_depth = 1;
    if (diam > tolerance && gamma_t > 0.0) {
        worst_depth = static_cast<int>(std::ceil(std::log(tolerance / diam) / std::log(gamma_t))) + 2;
        if (worst_depth > kAddressDepthCeiling)
            fail(Errc::depth_ceiling, "tolerance below the geometric reach of the depth ceiling");
    }
    eval.ensure_depth(worst_depth + 1);

    cloud.points.resize(static_cast<std::size_t>(count));
    double shared_bound = 0.0;
    std::vector<double> bounds(static_cast<std::size_t>(count), 0.0);
    parallel_for(static_cast<std::size_t>(count), threads, [&](std::size_t i) {
        const std::uint64_t point_seed = hash_combine(seed, static_cast<std::uint64_t>(i));
        SymbolStream stream = measure ? measure->sample_stream(point_seed)
                                      : SymbolStream::random(1, point_seed, family.alphabet());
        const AddressPoint p = address_prepared(eval, stream, tolerance);
        cloud.points[i] = p.point;
        bounds[i] = p.error_bound;
    });
    for (double b : bounds) shared_bound = std::max(shared_bound, b);
    cloud.error_bound = shared_bound;
    return cloud;
}

std::vector<double> default_scale_ladder(const PointCloud& cloud, int count) {
    const double diam = std::max(cloud.diameter(), 16.0 * cloud.error_bound);
    const double floor = 10.0 * cloud.error_bound;
    std::vector<double> scales;
    double eps = diam / 4.0;
    for (int k = 0; k < count; ++k) {
        if (eps < floor) break;
        scales.push_back(eps);
        eps *= 0.5;
    }
    while (static_cast<int>(scales.size()) < 4 && !scales.empty()) scales.push_back(scales.back() * 0.5);
    return scales;
}

namespace {

std::uint64_t count_boxes(const PointCloud& cloud, double eps, double jitter) {
    const double ax = cloud.grid_anchor.real() - jitter;
    const double ay = cloud.grid_anchor.imag() - jitter;
    std::unordered_set<std::uint64_t> cells;
    cells.reserve(cloud.points.size() / 4 + 8);
    for (Complex p : cloud.points) {
        const auto ix = static_cast<std::int64_t>(std::floor((p.real() - ax) / eps));
        const auto iy = cloud.dim == 2 ? static_cast<std::int64_t>(std::floor((p.imag() - ay) / eps)) : 0;
        cells.insert((static_cast<std::uint64_t>(static_cast<std::uint32_t>(ix)) << 32) |
                     static_cast<std::uint64_t>(static_cast<std::uint32_t>(iy)));
    }
    return cells.size();
}

std::uint64_t median_box_count(const PointCloud& cloud, double eps) {
    std::uint64_t counts[kBoxJitterOffsets];
    for (int k = 0; k < kBoxJitterOffsets; ++k) {
        const double jitter = eps * static_cast<double>(k) / static_cast<double>(kBoxJitterOffsets);
        counts[k] = count_boxes(cloud, eps, jitter);
    }
    std::sort(counts, counts + kBoxJitterOffsets);
    return counts[kBoxJitterOffsets / 2];
}

void check_ladder(const PointCloud& cloud, const std::vector<double>& scales, std::size_t min_scales) {
    if (scales.size() < min_scales)
        fail(Errc::invalid_argument, "scale ladder needs at least " + std::to_string(min_scales) + " scales");
    for (std::size_t k = 0; k < scales.size(); ++k) {
        if (scales[k] <= 0.0) fail(Errc::invalid_argument, "scales must be positive");
        if (k > 0 && scales[k] >= scales[k - 1])
            fail(Errc::invalid_argument, "scale ladder must be strictly decreasing");
        if (scales[k] < 10.0 * cloud.error_bound)
            fail(Errc::invalid_argument, "scale " + std::to_string(scales[k]) +
                                             " is inside the truncation noise floor (10x error bound)");
    }
}

} // namespace

DimensionEstimate box_counting(const PointCloud& cloud, const std::vector<double>& scales) {
    if (cloud.points.empty()) fail(Errc::invalid_argument, "box counting needs a non-empty cloud");
    check_ladder(cloud, scales, 4);
    DimensionEstimate est;
    est.rows.reserve(scales.size());
    for (double eps : scales) est.rows.push_back({eps, median_box_count(cloud, eps)});

    // least squares slope of log N against log(1/eps)
    const auto n = static_cast<double>(est.rows.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const BoxCountRow& row : est.rows) {
        const double x = std::log(1.0 / row.eps);
        const double y = std::log(static_cast<double>(row.boxes));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    est.estimate = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
    const double intercept = (sy - est.estimate * sx) / n;
    double ss = 0.0;
    for (const BoxCountRow& row : est.rows) {
        const double x = std::log(1.0 / row.eps);
        const double y = std::log(static_cast<double>(row.boxes));
        const double r = y - (est.estimate * x + intercept);
        ss += r * r;
    }
    est.residual = std::sqrt(ss / n);
    return est;
}

EnergyResult s_energy(const PointCloud& cloud, double s) {
    if (s < 0.0) fail(Errc::invalid_argument, "s-energy exponent must be >= 0");
    const std::size_t m = cloud.points.size();
    if (m < 2) fail(Errc::invalid_argument, "s-energy needs at least two points");
    EnergyResult out;
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const double dist = std::abs(cloud.points[i] - cloud.points[j]);
            if (dist <= cloud.error_bound) {
                ++out.excluded_pairs;
                continue;
            }
            sum += std::pow(dist, -s);
        }
    }
    const auto total_pairs = static_cast<std::uint64_t>(m) * (m - 1) / 2;
    if (out.excluded_pairs >= total_pairs) fail(Errc::domain, "all point pairs fall below the error bound");
    out.value = 2.0 * sum / (static_cast<double>(m) * static_cast<double>(m - 1));
    out.overflow = !std::isfinite(out.value);
    return out;
}

AreaTable area_positivity(const PointCloud& cloud, const std::vector<double>& scales, double floor) {
    if (cloud.points.empty()) fail(Errc::invalid_argument, "area table needs a non-empty cloud");
    check_ladder(cloud, scales, 2);
    AreaTable table;
    for (double eps : scales) {
        AreaRow row;
        row.eps = eps;
        row.boxes = median_box_count(cloud, eps);
        row.covered = static_cast<double>(row.boxes) * std::pow(eps, cloud.dim);
        table.rows.push_back(row);
    }
    const AreaRow& fine = table.rows.back();
    const AreaRow& next = table.rows[table.rows.size() - 2];
    table.fine_ratio = next.covered > 0.0 ? fine.covered / next.covered : 0.0;
    const bool agree = table.fine_ratio > 0.5 && table.fine_ratio < 2.0;
    const bool above_floor = fine.covered > floor && next.covered > floor;
    table.verdict = (agree && above_floor) ? "positive-area-consistent" : "inconclusive";
    return table;
}

SweepResult dimension_sweep(const MapSchedule& family, const std::vector<Complex>& grid, long points,
                            double tolerance, double match_tol, std::uint64_t seed, int threads,
                            const SamplerSpec& sampler) {
    SweepResult result;
    result.match_tolerance = match_tol;
    int conforming = 0;
    int considered = 0;
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        SweepRecord rec;
        rec.t = grid[gi];
        try {
            if (!family.region().contains(rec.t))
                fail(Errc::domain, "parameter outside the family region");
            const BowenResult bowen = bowen_dimension(family, rec.t);
            rec.bowen = bowen.s;
            rec.bowen_infinite = bowen.infinite;
            const double m = static_cast<double>(family.space().dim);
            rec.target = bowen.infinite ? m : std::min(m, bowen.s);
            const PointCloud cloud = sample_limit_set(family, rec.t, points, tolerance, sampler,
                                                      hash_combine(seed, gi), threads);
            const std::vector<double> ladder = default_scale_ladder(cloud);
            if (!bowen.infinite && bowen.s <= m) {
                const DimensionEstimate est = box_counting(cloud, ladder);
                rec.box_estimate = est.estimate;
                rec.box_residual = est.residual;
                rec.verdict = std::abs(est.estimate - rec.target) <= match_tol ? "dim-match" : "dim-mismatch";
            } else {
                // s(t) > m: the theorem speaks about positive Lebesgue
                // measure, so the record carries the area verdict instead.
                const AreaTable area = area_positivity(cloud, ladder);
                rec.area_fine = area.rows.back().covered;
                rec.area_ratio = area.fine_ratio;
                rec.verdict = area.verdict == "positive-area-consistent" ? "area-positive" : "area-inconclusive";
            }
            rec.ok = true;
            ++considered;
            if (rec.verdict == "dim-match" || rec.verdict == "area-positive") ++conforming;
        } catch (const Error& e) {
            rec.ok = false;
            rec.error = e.what();
            rec.verdict = "error";
            ++result.failures;
        }
        result.records.push_back(std::move(rec));
    }
    result.conforming_fraction = considered > 0 ? static_cast<double>(conforming) / considered : 0.0;
    return result;
}

} // namespace nifslab
