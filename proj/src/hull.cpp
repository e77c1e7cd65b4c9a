#include "sketchtest/hull.hpp"

#include <cmath>
#include <stdexcept>

namespace sketchtest {

Vector SparseCombination::reconstruct(const SymmetricHull& hull) const {
    Vector out = Vector::Zero(hull.ambient_dim());
    for (const Term& t : terms) {
        out += t.weight * hull.vertex(t.index, t.sign);
    }
    return out;
}

double SparseCombination::weight_sum() const {
    double s = 0.0;
    for (const Term& t : terms) s += t.weight;
    return s;
}

double HullDistanceResult::lower_bound() const {
    return std::sqrt(std::max(0.0, distance * distance - 2.0 * gap));
}

SignedVertex linear_minimization_vertex(const SymmetricHull& hull, const Vector& direction) {
    if (direction.size() != hull.ambient_dim()) {
        throw std::invalid_argument("linear_minimization_vertex: dimension mismatch");
    }
    const Vector scores = hull.dictionary.transpose() * direction;
    SignedVertex best{0, +1};
    double best_val = hull.radius * scores(0);
    for (Index i = 0; i < scores.size(); ++i) {
        for (int sign : {+1, -1}) {
            const double val = sign * hull.radius * scores(i);
            if (val > best_val) {
                best_val = val;
                best = SignedVertex{i, sign};
            }
        }
    }
    return best;
}

namespace {

// Weight bookkeeping for the running convex combination; uses a lazy global
// scale so each iteration touches O(1) entries.
class WeightTracker {
public:
    explicit WeightTracker(Index columns) : w_(static_cast<std::size_t>(2 * columns), 0.0) {}

    void assign_all_to(Index index, int sign) {
        std::fill(w_.begin(), w_.end(), 0.0);
        scale_ = 1.0;
        w_[slot(index, sign)] = 1.0;
    }

    void step(double gamma, Index index, int sign) {
        if (gamma >= 1.0) {
            assign_all_to(index, sign);
            return;
        }
        scale_ *= (1.0 - gamma);
        w_[slot(index, sign)] += gamma / scale_;
        if (scale_ < 1e-280) {
            for (double& v : w_) v *= scale_;
            scale_ = 1.0;
        }
    }

    SparseCombination combination() const {
        SparseCombination c;
        for (std::size_t s = 0; s < w_.size(); ++s) {
            const double weight = w_[s] * scale_;
            if (weight > 0.0) {
                c.terms.push_back({static_cast<Index>(s / 2), s % 2 == 0 ? +1 : -1, weight});
            }
        }
        return c;
    }

private:
    static std::size_t slot(Index index, int sign) {
        return static_cast<std::size_t>(2 * index) + (sign >= 0 ? 0 : 1);
    }

    std::vector<double> w_;
    double scale_ = 1.0;
};

} // namespace

HullDistanceResult hull_distance(const SymmetricHull& hull, const Vector& target,
                                 std::int64_t max_iters, double tol,
                                 const HullDistanceOptions& opts) {
    if (!target.allFinite()) {
        throw std::invalid_argument("hull_distance: target has non-finite entries");
    }
    if (target.size() != hull.ambient_dim()) {
        throw std::invalid_argument("hull_distance: dimension mismatch");
    }
    if (max_iters < 1) {
        throw std::invalid_argument("hull_distance: max_iters must be >= 1");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("hull_distance: tol must be > 0");
    }

    WeightTracker weights(hull.num_columns());
    const SignedVertex start = linear_minimization_vertex(hull, target);
    weights.assign_all_to(start.index, start.sign);
    Vector z = hull.vertex(start.index, start.sign);

    double distance = (z - target).norm();
    double gap = 0.0;
    std::int64_t iterations = 0;

    for (std::int64_t j = 0; j < max_iters; ++j) {
        const Vector direction = target - z; // negative gradient
        const SignedVertex sv = linear_minimization_vertex(hull, direction);
        const Vector v = hull.vertex(sv.index, sv.sign);
        gap = direction.dot(v - z);
        distance = direction.norm();
        iterations = j;

        if (opts.accept_below > 0.0 && distance <= opts.accept_below) break;
        if (opts.reject_above > 0.0 &&
            std::sqrt(std::max(0.0, distance * distance - 2.0 * gap)) > opts.reject_above) {
            break;
        }
        if (gap <= tol) break;

        const Vector dvz = v - z;
        const double dvz_sq = dvz.squaredNorm();
        if (dvz_sq <= 0.0) break;
        double gamma;
        if (opts.step_rule == StepRule::LineSearch) {
            gamma = std::min(1.0, std::max(0.0, gap / dvz_sq));
            if (gamma <= 0.0) break;
        } else {
            gamma = 2.0 / static_cast<double>(j + 2);
        }
        z += gamma * dvz;
        weights.step(gamma, sv.index, sv.sign);
    }

    HullDistanceResult result;
    result.distance = (z - target).norm();
    {
        // Refresh the gap at the exit point so the reported bracket is valid.
        const Vector direction = target - z;
        const SignedVertex sv = linear_minimization_vertex(hull, direction);
        result.gap = std::max(0.0, direction.dot(hull.vertex(sv.index, sv.sign) - z));
    }
    result.witness = weights.combination();
    result.iterations = iterations + 1;
    result.converged = result.gap <= tol;
    return result;
}

bool membership(const SymmetricHull& hull, const Vector& target, double tau,
                std::int64_t max_iters) {
    if (!(tau > 0.0)) {
        throw std::invalid_argument("membership: tau must be > 0");
    }
    HullDistanceOptions opts;
    opts.accept_below = tau;
    opts.reject_above = tau;
    const double tol = std::max(1e-300, tau * tau / 100.0);
    return hull_distance(hull, target, max_iters, tol, opts).distance <= tau;
}

SparseCombination caratheodory_sparsify(const SymmetricHull& hull, const Vector& z,
                                        std::int64_t t, double tolerance) {
    if (t < 1) {
        throw std::invalid_argument("caratheodory_sparsify: need t >= 1");
    }
    if (z.size() != hull.ambient_dim()) {
        throw std::invalid_argument("caratheodory_sparsify: dimension mismatch");
    }
    {
        HullDistanceOptions opts;
        opts.accept_below = tolerance;
        const auto check = hull_distance(hull, z, 2000 + 4 * t, 1e-12, opts);
        if (check.distance > tolerance && check.lower_bound() > tolerance) {
            throw std::invalid_argument(
                "caratheodory_sparsify: point is outside the hull, measured distance " +
                std::to_string(check.distance));
        }
    }

    // Uniform-averaging conditional gradient: x_j = ((j-1) x_{j-1} + v_j) / j,
    // so after t steps x is the average of t signed vertices and the error is
    // at most 2R/sqrt(t). Stops early if z is reproduced exactly.
    std::vector<std::int64_t> counts(static_cast<std::size_t>(2 * hull.num_columns()), 0);
    Vector x = Vector::Zero(hull.ambient_dim());
    std::int64_t steps = 0;
    for (std::int64_t j = 1; j <= t; ++j) {
        const Vector direction = z - x;
        if (direction.norm() == 0.0) break;
        const SignedVertex sv = linear_minimization_vertex(hull, direction);
        const double inv_j = 1.0 / static_cast<double>(j);
        x = (1.0 - inv_j) * x + inv_j * hull.vertex(sv.index, sv.sign);
        counts[static_cast<std::size_t>(2 * sv.index) + (sv.sign >= 0 ? 0 : 1)] += 1;
        steps = j;
    }

    SparseCombination c;
    const double denom = static_cast<double>(std::max<std::int64_t>(steps, 1));
    for (std::size_t s = 0; s < counts.size(); ++s) {
        if (counts[s] > 0) {
            c.terms.push_back({static_cast<Index>(s / 2), s % 2 == 0 ? +1 : -1,
                               static_cast<double>(counts[s]) / denom});
        }
    }
    if (c.terms.empty()) {
        // z == 0 and the loop never ran a step: represent 0 as the average of
        // one vertex and its negation.
        c.terms.push_back({0, +1, 0.5});
        c.terms.push_back({0, -1, 0.5});
    }
    return c;
}

} // namespace sketchtest
