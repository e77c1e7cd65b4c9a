#include "sketchtest/sketch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace sketchtest {

SketchOperator make_sketch(Index d, Index n, Seed seed) {
    if (d < 1 || n < 1) {
        throw std::invalid_argument("make_sketch: dimensions must be >= 1");
    }
    return SketchOperator{gaussian_matrix(n, d, 1.0 / std::sqrt(static_cast<double>(n)), seed),
                          n, d, seed};
}

Vector apply_sketch(const SketchOperator& op, const Vector& y, QueryLedger& ledger) {
    if (y.size() != op.d) {
        throw std::invalid_argument("apply_sketch: vector dimension mismatch");
    }
    ledger.charge(static_cast<std::uint64_t>(op.n));
    return op.matrix * y;
}

Matrix apply_sketch(const SketchOperator& op, const Matrix& ys, QueryLedger& ledger) {
    if (ys.rows() != op.d) {
        throw std::invalid_argument("apply_sketch: point-set dimension mismatch");
    }
    ledger.charge(static_cast<std::uint64_t>(op.n) * static_cast<std::uint64_t>(ys.cols()));
    return op.matrix * ys;
}

std::int64_t norm_trial_count(double eps, double delta) {
    return static_cast<std::int64_t>(std::ceil(16.0 / (eps * eps) * std::log(2.0 / delta)));
}

std::int64_t width_trial_count(double delta) {
    return std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::ceil(9.0 * std::log(2.0 / delta))));
}

bool estimate_norm_in_range(const Vector& y, double eps, double delta, Seed seed,
                            QueryLedger& ledger) {
    if (!(eps > 0.0 && eps < 0.5)) {
        throw std::invalid_argument("estimate_norm_in_range: need 0 < eps < 1/2");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("estimate_norm_in_range: need 0 < delta < 1");
    }
    const std::int64_t trials = norm_trial_count(eps, delta);
    SplitMix64 rng(seed);
    const Index d = y.size();
    double sum_sq = 0.0;
    Vector g(d);
    for (std::int64_t t = 0; t < trials; ++t) {
        for (Index i = 0; i < d; ++i) {
            g(i) = rng.next_gaussian();
        }
        const double s = g.dot(y);
        sum_sq += s * s;
    }
    ledger.charge(static_cast<std::uint64_t>(trials));
    const double mean_sq = sum_sq / static_cast<double>(trials);
    // E<g,y>^2 = ||y||^2, so sqrt of the mean estimates the norm. The 1.25*eps
    // acceptance radius sits between the must-accept band (1 +- eps/2) and the
    // must-reject band (outside 1 +- 2*eps) once the multiplicative estimation
    // error (1 +- eps/2 w.p. 1-delta) is folded in.
    return std::abs(std::sqrt(mean_sq) - 1.0) <= 1.25 * eps;
}

WidthEstimate estimate_width(const Matrix& s, double u, double delta, Seed seed,
                             QueryLedger& ledger, const WidthOptions& opts) {
    if (s.cols() < 1) {
        throw std::invalid_argument("estimate_width: empty point set");
    }
    if (!(u > 0.0)) {
        throw std::invalid_argument("estimate_width: error target must be > 0");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("estimate_width: need 0 < delta < 1");
    }
    const std::int64_t trials =
        opts.trials_override > 0 ? opts.trials_override : width_trial_count(delta);
    const Index d = s.rows();
    const Index p = s.cols();
    std::vector<double> sups(static_cast<std::size_t>(trials));
    SplitMix64 rng(seed);
    Vector g(d);
    for (std::int64_t t = 0; t < trials; ++t) {
        for (Index i = 0; i < d; ++i) {
            g(i) = rng.next_gaussian();
        }
        sups[static_cast<std::size_t>(t)] = (s.transpose() * g).maxCoeff();
    }
    ledger.charge(static_cast<std::uint64_t>(trials) * static_cast<std::uint64_t>(p));

    double value = 0.0;
    if (opts.aggregation == WidthAggregation::Median) {
        std::nth_element(sups.begin(), sups.begin() + trials / 2, sups.end());
        value = sups[static_cast<std::size_t>(trials / 2)];
        if (trials % 2 == 0) {
            const double hi = value;
            std::nth_element(sups.begin(), sups.begin() + trials / 2 - 1, sups.end());
            value = 0.5 * (sups[static_cast<std::size_t>(trials / 2 - 1)] + hi);
        }
    } else {
        for (double v : sups) value += v;
        value /= static_cast<double>(trials);
    }
    return WidthEstimate{value, u, trials, 1.0 - delta};
}

} // namespace sketchtest
