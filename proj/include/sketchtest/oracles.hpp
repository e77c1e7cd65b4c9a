#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sketchtest/matrix.hpp"

namespace sketchtest {

/// Result of exhaustive sparse regression: the globally best support of size
/// <= K together with its least-squares coefficients and residual.
struct SparseFit {
    std::vector<Index> support;
    Vector coefficients; // aligned with support
    double residual = 0.0;
};

/// Enumerates every support of size 1..K (ties resolved toward the
/// lexicographically smallest support), solving each least-squares problem
/// with a rank-revealing factorization so collinear columns cannot crash the
/// oracle. Throws if the enumeration exceeds the support budget.
SparseFit best_sparse_fit(const Matrix& a, const Vector& y, std::int64_t k_max,
                          std::int64_t budget = 1000000);

struct McWidth {
    double estimate = 0.0;
    double standard_error = 0.0;
    std::int64_t trials = 0;
};

/// Monte-Carlo gaussian width of the columns of s: sample mean and standard
/// error of sup_v <g, v> over fresh standard Gaussians.
McWidth mc_width(const Matrix& s, std::int64_t trials, Seed seed);

struct ApproxRankResult {
    Matrix y_approx;
    Index inner_dim = 0;        // d' of the factored construction
    double entrywise_error = 0.0;
    Index rank_bound = 0;       // rank(y_approx) <= this by construction
    bool vacuous = false;       // d' >= ambient dimension
    bool success = false;       // entrywise_error <= eps within the retries
    std::int64_t retries_used = 0;
};

/// Low-rank approximation Y' = G^T (G Y) with G ~ (1/sqrt(d')) N(0,1)^{d' x d}
/// and d' = ceil((16 c_jl / eps^2) * max(ln d, width^2)). Retries with fresh
/// Gaussians while the measured entrywise error exceeds eps; the best attempt
/// is returned either way.
ApproxRankResult approx_rank_construct(const Matrix& y, double eps, Seed seed,
                                       double c_jl = 1.0, std::int64_t max_retries = 3,
                                       std::int64_t width_trials = 2000,
                                       double validity_c = 1.0);

/// Empirical sphere-cover probe: projects discretized ell-sparse vectors
/// through a fresh (1/sqrt(n)) Gaussian map, normalizes the images, and
/// returns the max over uniform sphere probes of the distance to the nearest
/// image. Sampled probes make this a lower bound on the covering radius.
double cover_check(Index n, Index m, std::int64_t ell, Index probe_count, Index sample_count,
                   Seed seed);

struct LinfRotationReport {
    double success_fraction = 0.0;
    double omega_hat = 0.0;   // Monte-Carlo width used in the bound
    double bound = 0.0;       // c_const * omega_hat / sqrt(d)
    bool degenerate = false;  // d == 1, where the check is vacuous
    std::int64_t trials = 0;
};

/// Fraction of random rotations R with max over columns of ||R y||_inf below
/// c_const * omega(S) / sqrt(d).
LinfRotationReport linf_rotation_check(const Matrix& s, double c_const, std::int64_t trials,
                                       Seed seed, std::int64_t width_trials = 20000);

/// Checks that a verified isometry preserves gaussian width: true iff the
/// Monte-Carlo width of map*X lies within (1 +- eps) of the width of X after
/// widening both estimates by three standard errors. Throws (naming the worst
/// pair) if the map is not eps-isometric on X in the squared-distance sense.
bool isometric_width_check(const Matrix& x, const Matrix& map, double eps, Seed seed,
                           std::int64_t width_trials = 20000);

/// Oracle report JSON: {operation, inputs_digest, value, standard_error?,
/// trials, seed}.
std::string oracle_report_json(const std::string& operation, std::uint64_t inputs_digest,
                               double value, double standard_error, std::int64_t trials,
                               Seed seed, bool has_standard_error = true);

/// FNV-1a digest of a matrix's raw entries, for oracle report provenance.
std::uint64_t matrix_digest(const Matrix& m);

} // namespace sketchtest
