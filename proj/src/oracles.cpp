#include "sketchtest/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <nlohmann/json.hpp>
#include <numeric>
#include <stdexcept>

#include "sketchtest/generators.hpp"

namespace sketchtest {

namespace {

bool next_combination(std::vector<Index>& comb, Index m) {
    const auto k = static_cast<Index>(comb.size());
    Index i = k - 1;
    while (i >= 0 && comb[static_cast<std::size_t>(i)] == m - k + i) --i;
    if (i < 0) return false;
    ++comb[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < k; ++j) {
        comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
    }
    return true;
}

std::int64_t binomial_capped(Index m, std::int64_t k, std::int64_t limit) {
    double v = 1.0;
    for (std::int64_t i = 0; i < k; ++i) {
        v *= static_cast<double>(m - i) / static_cast<double>(i + 1);
        if (v > static_cast<double>(limit)) return limit + 1;
    }
    return static_cast<std::int64_t>(std::llround(v));
}

} // namespace

SparseFit best_sparse_fit(const Matrix& a, const Vector& y, std::int64_t k_max,
                          std::int64_t budget) {
    if (y.size() != a.rows()) {
        throw std::invalid_argument("best_sparse_fit: dimension mismatch");
    }
    const Index m = a.cols();
    const std::int64_t k_eff = std::min<std::int64_t>(k_max, m);
    if (k_eff < 1) {
        throw std::invalid_argument("best_sparse_fit: need K >= 1");
    }

    std::int64_t total = 0;
    for (std::int64_t k = 1; k <= k_eff; ++k) {
        total += binomial_capped(m, k, budget);
        if (total > budget) {
            throw std::invalid_argument("best_sparse_fit: " + std::to_string(total) +
                                        "+ supports exceed the budget of " +
                                        std::to_string(budget));
        }
    }

    SparseFit best;
    best.residual = y.norm(); // empty-fit baseline, always improvable
    bool found = false;
    for (std::int64_t k = 1; k <= k_eff; ++k) {
        std::vector<Index> comb(static_cast<std::size_t>(k));
        std::iota(comb.begin(), comb.end(), Index{0});
        Matrix sub(a.rows(), k);
        do {
            for (std::int64_t j = 0; j < k; ++j) {
                sub.col(j) = a.col(comb[static_cast<std::size_t>(j)]);
            }
            // Minimum-norm least squares; tolerant of rank-deficient supports.
            Eigen::CompleteOrthogonalDecomposition<Matrix> cod(sub);
            cod.setThreshold(1e-10);
            const Vector coef = cod.solve(y);
            const double residual = (sub * coef - y).norm();
            if (!found || residual < best.residual) {
                best.support = comb;
                best.coefficients = coef;
                best.residual = residual;
                found = true;
            }
        } while (next_combination(comb, m));
    }
    return best;
}

McWidth mc_width(const Matrix& s, std::int64_t trials, Seed seed) {
    if (s.cols() < 1) {
        throw std::invalid_argument("mc_width: empty point set");
    }
    if (trials < 2) {
        throw std::invalid_argument("mc_width: need at least 2 trials");
    }
    SplitMix64 rng(seed);
    const Index d = s.rows();
    Vector g(d);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::int64_t t = 0; t < trials; ++t) {
        for (Index i = 0; i < d; ++i) g(i) = rng.next_gaussian();
        const double sup = (s.transpose() * g).maxCoeff();
        sum += sup;
        sum_sq += sup * sup;
    }
    const double n = static_cast<double>(trials);
    const double mean = sum / n;
    const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
    return McWidth{mean, std::sqrt(var / n), trials};
}

ApproxRankResult approx_rank_construct(const Matrix& y, double eps, Seed seed, double c_jl,
                                       std::int64_t max_retries, std::int64_t width_trials,
                                       double validity_c) {
    const Index d = y.rows();
    if (!(eps >= validity_c / std::sqrt(static_cast<double>(d)))) {
        throw std::invalid_argument("approx_rank_construct: eps below the validity regime " +
                                    std::to_string(validity_c / std::sqrt(static_cast<double>(d))));
    }
    const McWidth width = mc_width(y, width_trials, derive_seed(seed, 0));
    const double driver = std::max(std::log(static_cast<double>(d)),
                                   width.estimate * width.estimate);
    const auto inner_dim = static_cast<Index>(std::ceil(16.0 * c_jl / (eps * eps) * driver));

    ApproxRankResult best;
    best.inner_dim = inner_dim;
    best.vacuous = inner_dim >= d;
    best.rank_bound = std::min(inner_dim, d);
    best.entrywise_error = std::numeric_limits<double>::infinity();
    for (std::int64_t attempt = 0; attempt < std::max<std::int64_t>(1, max_retries); ++attempt) {
        const Matrix g = gaussian_matrix(inner_dim, d,
                                         1.0 / std::sqrt(static_cast<double>(inner_dim)),
                                         derive_seed(seed, static_cast<std::uint64_t>(attempt) + 1));
        Matrix approx = g.transpose() * (g * y);
        const double err = (y - approx).cwiseAbs().maxCoeff();
        if (err < best.entrywise_error) {
            best.entrywise_error = err;
            best.y_approx = std::move(approx);
            best.retries_used = attempt + 1;
        }
        if (best.entrywise_error <= eps) {
            best.success = true;
            break;
        }
    }
    return best;
}

double cover_check(Index n, Index m, std::int64_t ell, Index probe_count, Index sample_count,
                   Seed seed) {
    if (ell > m) {
        throw std::invalid_argument("cover_check: need ell <= m");
    }
    if (probe_count < 1 || sample_count < 1) {
        throw std::invalid_argument("cover_check: need probes and samples");
    }
    const Matrix phi =
        gaussian_matrix(n, m, 1.0 / std::sqrt(static_cast<double>(n)), derive_seed(seed, 0));
    const Matrix samples = gen_discretized_sparse(m, ell, sample_count, derive_seed(seed, 1));
    Matrix images = phi * samples;
    for (Index c = 0; c < images.cols(); ++c) {
        const double norm = images.col(c).norm();
        if (norm > 0.0) images.col(c) /= norm;
    }

    SplitMix64 rng(derive_seed(seed, 2));
    double worst = 0.0;
    Vector probe(n);
    for (Index t = 0; t < probe_count; ++t) {
        double norm = 0.0;
        while (norm == 0.0) {
            for (Index i = 0; i < n; ++i) probe(i) = rng.next_gaussian();
            norm = probe.norm();
        }
        probe /= norm;
        // Unit vectors on both sides: dist^2 = 2 - 2 <probe, image>.
        const double best_dot = (images.transpose() * probe).maxCoeff();
        worst = std::max(worst, std::sqrt(std::max(0.0, 2.0 - 2.0 * best_dot)));
    }
    return worst;
}

LinfRotationReport linf_rotation_check(const Matrix& s, double c_const, std::int64_t trials,
                                       Seed seed, std::int64_t width_trials) {
    if (s.cols() < 1) {
        throw std::invalid_argument("linf_rotation_check: empty point set");
    }
    if (trials < 1) {
        throw std::invalid_argument("linf_rotation_check: need trials >= 1");
    }
    const Index d = s.rows();
    LinfRotationReport report;
    report.trials = trials;
    if (d == 1) {
        // ||R y||_inf == ||y|| for every rotation in one dimension.
        report.degenerate = true;
        report.success_fraction = 1.0;
        return report;
    }
    const McWidth width = mc_width(s, width_trials, derive_seed(seed, 0));
    report.omega_hat = width.estimate;
    report.bound = c_const * width.estimate / std::sqrt(static_cast<double>(d));

    std::int64_t successes = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
        const Matrix rot = random_rotation(d, derive_seed(seed, static_cast<std::uint64_t>(t) + 1));
        const double max_linf = (rot * s).cwiseAbs().maxCoeff();
        if (max_linf <= report.bound) ++successes;
    }
    report.success_fraction = static_cast<double>(successes) / static_cast<double>(trials);
    return report;
}

bool isometric_width_check(const Matrix& x, const Matrix& map, double eps, Seed seed,
                           std::int64_t width_trials) {
    if (map.cols() != x.rows()) {
        throw std::invalid_argument("isometric_width_check: map dimension mismatch");
    }
    if (x.cols() < 2) {
        throw std::invalid_argument("isometric_width_check: need at least two points");
    }
    const Matrix mapped = map * x;
    // Exhaustive pairwise certificate in the squared-distance sense.
    double worst = 0.0;
    Index worst_i = 0, worst_j = 1;
    for (Index i = 0; i < x.cols(); ++i) {
        for (Index j = i + 1; j < x.cols(); ++j) {
            const double orig = (x.col(i) - x.col(j)).squaredNorm();
            if (orig == 0.0) continue;
            const double dist = std::abs((mapped.col(i) - mapped.col(j)).squaredNorm() / orig - 1.0);
            if (dist > worst) {
                worst = dist;
                worst_i = i;
                worst_j = j;
            }
        }
    }
    if (worst > eps) {
        throw std::invalid_argument("isometric_width_check: map is not eps-isometric; pair (" +
                                    std::to_string(worst_i) + ", " + std::to_string(worst_j) +
                                    ") distorted by " + std::to_string(worst));
    }

    const McWidth wx = mc_width(x, width_trials, derive_seed(seed, 0));
    const McWidth ws = mc_width(mapped, width_trials, derive_seed(seed, 1));
    const double lo = (1.0 - eps) * (wx.estimate - 3.0 * wx.standard_error) -
                      3.0 * ws.standard_error;
    const double hi = (1.0 + eps) * (wx.estimate + 3.0 * wx.standard_error) +
                      3.0 * ws.standard_error;
    return ws.estimate >= lo && ws.estimate <= hi;
}

std::uint64_t matrix_digest(const Matrix& m) {
    std::uint64_t h = 1469598103934665603ULL; // FNV-1a offset basis
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            const double v = m(i, j);
            std::uint64_t bits = 0;
            std::memcpy(&bits, &v, sizeof(bits));
            for (int b = 0; b < 8; ++b) {
                h ^= (bits >> (8 * b)) & 0xffu;
                h *= 1099511628211ULL;
            }
        }
    }
    return h;
}

std::string oracle_report_json(const std::string& operation, std::uint64_t inputs_digest,
                               double value, double standard_error, std::int64_t trials,
                               Seed seed, bool has_standard_error) {
    nlohmann::ordered_json j;
    j["operation"] = operation;
    j["inputs_digest"] = inputs_digest;
    j["value"] = value;
    if (has_standard_error) {
        j["standard_error"] = standard_error;
    }
    j["trials"] = trials;
    j["seed"] = seed.value;
    return j.dump();
}

} // namespace sketchtest
