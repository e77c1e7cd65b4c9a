#include "sketchtest/testers.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace sketchtest {

namespace {

void validate_common(double eps, double delta) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::invalid_argument("config: need 0 < eps < 1");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("config: need 0 < delta < 1");
    }
}

} // namespace

double UnknownDesignConfig::resolved_width_threshold() const {
    if (width_threshold > 0.0) return width_threshold;
    return 4.0 * std::sqrt(3.0 * static_cast<double>(k) *
                           std::log(static_cast<double>(m) / static_cast<double>(k)));
}

double UnknownDesignConfig::resolved_width_error_target() const {
    if (width_error_target > 0.0) return width_error_target;
    return std::sqrt(3.0 * static_cast<double>(k) *
                     std::log(static_cast<double>(m) / static_cast<double>(k)));
}

double DimConfig::resolved_width_threshold() const {
    if (width_threshold > 0.0) return width_threshold;
    return 2.0 * std::sqrt(static_cast<double>(k));
}

std::int64_t known_sketch_rows(const KnownDesignConfig& cfg, Index m) {
    const double log_term = std::log(static_cast<double>(m) / cfg.delta);
    double rows;
    if (cfg.tolerant) {
        rows = 2.0 * cfg.sketch_constant * static_cast<double>(cfg.k) / (cfg.eps * cfg.eps) *
               log_term;
    } else {
        rows = cfg.sketch_constant * static_cast<double>(cfg.k) * log_term;
    }
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(rows)));
}

std::uint64_t known_query_budget(const KnownDesignConfig& cfg, Index m) {
    return static_cast<std::uint64_t>(known_sketch_rows(cfg, m));
}

std::uint64_t unknown_query_budget(const UnknownDesignConfig& cfg, Index p) {
    const double per_vector_delta = cfg.delta / (2.0 * static_cast<double>(p));
    const std::uint64_t screen =
        static_cast<std::uint64_t>(p) *
        static_cast<std::uint64_t>(norm_trial_count(cfg.eps, per_vector_delta));
    const std::uint64_t width = static_cast<std::uint64_t>(p) *
                                static_cast<std::uint64_t>(width_trial_count(cfg.delta / 2.0));
    return screen + width;
}

std::uint64_t dim_query_budget(const DimConfig& cfg, Index p) {
    return static_cast<std::uint64_t>(p) *
           static_cast<std::uint64_t>(width_trial_count(cfg.delta));
}

Verdict test_known(const Matrix& a, const Vector& y, const KnownDesignConfig& cfg, Seed seed) {
    validate_common(cfg.eps, cfg.delta);
    if (cfg.k < 1) {
        throw std::invalid_argument("test_known: need k >= 1");
    }
    if (y.size() != a.rows()) {
        throw std::invalid_argument("test_known: input dimension mismatch");
    }
    for (Index j = 0; j < a.cols(); ++j) {
        if (std::abs(a.col(j).norm() - 1.0) > 1e-9) {
            throw std::invalid_argument("test_known: dictionary column " + std::to_string(j) +
                                        " is not unit norm");
        }
    }

    const Index d = a.rows();
    const Index m = a.cols();
    const std::int64_t n = known_sketch_rows(cfg, m);
    QueryLedger ledger;
    const SketchOperator phi = make_sketch(d, n, derive_seed(seed, 0));
    const Vector y_sketch = apply_sketch(phi, y, ledger);

    const SymmetricHull hull{phi.matrix * a, std::sqrt(static_cast<double>(cfg.k))};
    const double decision_radius = cfg.tolerant ? 2.0 * cfg.eps : cfg.resolved_membership_tol();

    HullDistanceOptions opts;
    opts.accept_below = decision_radius;
    opts.reject_above = decision_radius;
    const double tol = std::max(1e-300, decision_radius * decision_radius / 100.0);
    const HullDistanceResult dist = hull_distance(hull, y_sketch, cfg.max_hull_iters, tol, opts);

    Verdict v;
    v.accept = dist.distance <= decision_radius;
    v.estimates["distance"] = dist.distance;
    v.estimates["distance_lower_bound"] = dist.lower_bound();
    v.estimates["gap"] = dist.gap;
    v.estimates["sketch_rows"] = static_cast<double>(n);
    v.estimates["witness_sparsity"] = static_cast<double>(dist.witness.sparsity());
    v.threshold = decision_radius;
    v.queries_used = ledger.queries_used;
    v.seed = seed;
    return v;
}

Verdict test_unknown(const Matrix& ys, const UnknownDesignConfig& cfg, Seed seed) {
    validate_common(cfg.eps, cfg.delta);
    if (cfg.k < 1 || cfg.m < 1) {
        throw std::invalid_argument("test_unknown: need k >= 1 and m >= 1");
    }
    if (static_cast<double>(cfg.m) / static_cast<double>(cfg.k) <= 2.0) {
        throw std::invalid_argument("test_unknown: need m/k > 2");
    }
    if (ys.cols() < 1) {
        throw std::invalid_argument("test_unknown: empty input");
    }

    const Index d = ys.rows();
    const Index p = ys.cols();
    QueryLedger ledger;

    // Step 1: norm screen. The measurement block is one oblivious Gaussian
    // matrix shared by all columns; the per-column failure budget
    // delta/(2p) follows from the union bound.
    const double per_vector_delta = cfg.delta / (2.0 * static_cast<double>(p));
    const std::int64_t trials = norm_trial_count(cfg.eps, per_vector_delta);
    const Matrix g = gaussian_matrix(trials, d, 1.0, derive_seed(seed, 0));
    const Matrix measurements = g * ys;
    ledger.charge(static_cast<std::uint64_t>(trials) * static_cast<std::uint64_t>(p));

    double worst_norm_deviation = 0.0;
    bool screen_ok = true;
    for (Index i = 0; i < p; ++i) {
        const double mean_sq = measurements.col(i).squaredNorm() / static_cast<double>(trials);
        const double dev = std::abs(std::sqrt(mean_sq) - 1.0);
        worst_norm_deviation = std::max(worst_norm_deviation, dev);
        if (dev > 1.25 * cfg.eps) screen_ok = false;
    }

    // Step 2: width estimate. Runs regardless of the screen outcome; the
    // measurement matrix is oblivious, so the full budget is always spent.
    const WidthEstimate width = estimate_width(ys, cfg.resolved_width_error_target(),
                                               cfg.delta / 2.0, derive_seed(seed, 1), ledger);

    const double threshold = cfg.resolved_width_threshold();
    Verdict v;
    v.accept = screen_ok && width.value <= threshold;
    v.estimates["omega_hat"] = width.value;
    v.estimates["worst_norm_deviation"] = worst_norm_deviation;
    v.estimates["norm_screen_ok"] = screen_ok ? 1.0 : 0.0;
    v.estimates["width_trials"] = static_cast<double>(width.trials);
    v.estimates["norm_trials_per_vector"] = static_cast<double>(trials);
    v.estimates["log_base"] = std::exp(1.0); // thresholds use natural log
    v.threshold = threshold;
    v.queries_used = ledger.queries_used;
    v.seed = seed;
    return v;
}

Verdict test_dimension(const Matrix& ys, const DimConfig& cfg, Seed seed) {
    validate_common(cfg.eps, cfg.delta);
    if (cfg.k < 1) {
        throw std::invalid_argument("test_dimension: need k >= 1");
    }
    if (ys.cols() < 1) {
        throw std::invalid_argument("test_dimension: empty input");
    }
    QueryLedger ledger;
    const WidthEstimate width = estimate_width(ys, std::sqrt(static_cast<double>(cfg.k)),
                                               cfg.delta, derive_seed(seed, 0), ledger);
    const double threshold = cfg.resolved_width_threshold();
    Verdict v;
    v.accept = width.value <= threshold;
    v.estimates["omega_hat"] = width.value;
    v.estimates["width_trials"] = static_cast<double>(width.trials);
    v.threshold = threshold;
    v.queries_used = ledger.queries_used;
    v.seed = seed;
    return v;
}

std::string verdict_to_json(const Verdict& v, const std::map<std::string, double>& config) {
    nlohmann::ordered_json j;
    j["accept"] = v.accept;
    j["estimates"] = v.estimates;
    j["threshold"] = v.threshold;
    j["queries_used"] = v.queries_used;
    j["seed"] = v.seed.value;
    j["config"] = config;
    return j.dump();
}

} // namespace sketchtest
