#pragma once

#include <cstdint>

#include "sketchtest/matrix.hpp"

namespace sketchtest {

/// Counts linear queries, i.e. inner products taken against input vectors.
/// This is the only channel through which testers read their inputs.
struct QueryLedger {
    std::uint64_t queries_used = 0;

    void charge(std::uint64_t n) { queries_used += n; }
};

/// n x d scaled Gaussian projection, entries i.i.d. N(0, 1/n).
struct SketchOperator {
    Matrix matrix;
    Index n = 0;
    Index d = 0;
    Seed seed;
};

SketchOperator make_sketch(Index d, Index n, Seed seed);

/// Returns op.matrix * y and charges n queries.
Vector apply_sketch(const SketchOperator& op, const Vector& y, QueryLedger& ledger);

/// Column-wise sketch of a point set; charges n * cols queries.
Matrix apply_sketch(const SketchOperator& op, const Matrix& ys, QueryLedger& ledger);

/// Number of measurements used by estimate_norm_in_range.
std::int64_t norm_trial_count(double eps, double delta);

/// Number of width trials for confidence 1 - delta.
std::int64_t width_trial_count(double delta);

/// Decides whether ||y|| is in [1-eps, 1+eps] from the mean of squared
/// Gaussian measurements. Guaranteed correct with probability >= 1-delta
/// outside the indeterminate band: accepts when ||y|| is within
/// [1-eps/2, 1+eps/2], rejects when ||y|| is outside [1-2eps, 1+2eps].
/// Charges norm_trial_count(eps, delta) queries.
bool estimate_norm_in_range(const Vector& y, double eps, double delta, Seed seed,
                            QueryLedger& ledger);

struct WidthEstimate {
    double value = 0.0;
    double additive_error_target = 0.0;
    std::int64_t trials = 0;
    double confidence = 0.0;
};

enum class WidthAggregation {
    Mean,   // sample mean of per-trial suprema (default; unbiased for omega)
    Median, // median of per-trial suprema; only u > 4 accuracy is guaranteed
};

struct WidthOptions {
    std::int64_t trials_override = 0; // > 0 replaces the delta-derived count
    WidthAggregation aggregation = WidthAggregation::Mean;
};

/// Estimates the gaussian width of the columns of s: per trial draws a fresh
/// g ~ N(0,1)^d and records sup over columns of <g, v>. Charges trials * p
/// queries. The additive error target u only documents the caller's intent;
/// the trial count is driven by delta (or the override) and the achieved
/// error is a concentration statement, see WidthAggregation.
WidthEstimate estimate_width(const Matrix& s, double u, double delta, Seed seed,
                             QueryLedger& ledger, const WidthOptions& opts = {});

} // namespace sketchtest
