#pragma once

#include <cstdint>
#include <vector>

#include "sketchtest/matrix.hpp"

namespace sketchtest {

/// Scaled symmetric convex hull radius * conv(+-a_1, ..., +-a_m). The 2m
/// signed vertices are never materialized; they are addressed by
/// (column index, sign).
struct SymmetricHull {
    Matrix dictionary;
    double radius = 1.0;

    Index ambient_dim() const { return dictionary.rows(); }
    Index num_columns() const { return dictionary.cols(); }
    Vector vertex(Index index, int sign) const {
        return (sign >= 0 ? radius : -radius) * dictionary.col(index);
    }
};

struct SignedVertex {
    Index index = 0;
    int sign = +1;
};

/// Convex combination of signed vertices: the sparse certificate type.
struct SparseCombination {
    struct Term {
        Index index = 0;
        int sign = +1;
        double weight = 0.0;
    };
    std::vector<Term> terms;

    Vector reconstruct(const SymmetricHull& hull) const;
    double weight_sum() const;
    std::size_t sparsity() const { return terms.size(); }
};

struct HullDistanceResult {
    double distance = 0.0;       // ||z - target|| at termination; upper bound
    double gap = 0.0;            // conditional-gradient duality gap at exit
    SparseCombination witness;   // convex combination reconstructing z
    std::int64_t iterations = 0;
    bool converged = false;      // gap <= tol at exit

    /// Certified lower bound on the true distance: gap bounds the objective
    /// suboptimality, so dist^2 >= distance^2 - 2 * gap.
    double lower_bound() const;
};

enum class StepRule {
    LineSearch, // exact minimizing step (closed form for the quadratic)
    Harmonic,   // classic 2/(j+2) schedule
};

struct HullDistanceOptions {
    StepRule step_rule = StepRule::LineSearch;
    // Early certificates for threshold queries; <= 0 disables.
    double accept_below = 0.0; // stop once distance (upper bound) <= this
    double reject_above = 0.0; // stop once lower_bound() > this
};

/// Linear minimization oracle over the signed vertex set: returns the
/// (index, sign) maximizing <direction, vertex>. Ties break toward the
/// smallest index, then the positive sign, so replays are deterministic.
SignedVertex linear_minimization_vertex(const SymmetricHull& hull, const Vector& direction);

/// Euclidean distance from target to the hull by conditional gradient on
/// f(z) = 0.5*||z - target||^2. The returned distance is an upper bound on
/// the true distance and the duality gap brackets it from below, see
/// HullDistanceResult::lower_bound().
HullDistanceResult hull_distance(const SymmetricHull& hull, const Vector& target,
                                 std::int64_t max_iters, double tol,
                                 const HullDistanceOptions& opts = {});

/// tau-membership: true iff the hull distance is <= tau. Uses the duality-gap
/// certificates to stop early on clear-cut instances.
bool membership(const SymmetricHull& hull, const Vector& target, double tau,
                std::int64_t max_iters);

/// Sparsifies an in-hull point into a uniform average of t signed vertices
/// (weights are multiples of 1/t before consolidation). The reconstruction
/// error is at most 2*R/sqrt(t) where R bounds the vertex norms. Throws if z
/// is farther than tolerance from the hull, reporting the measured distance.
SparseCombination caratheodory_sparsify(const SymmetricHull& hull, const Vector& z,
                                        std::int64_t t, double tolerance = 1e-6);

} // namespace sketchtest
