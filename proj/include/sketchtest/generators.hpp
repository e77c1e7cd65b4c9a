#pragma once

#include <cstdint>
#include <string>

#include "sketchtest/matrix.hpp"

namespace sketchtest {

enum class DictionaryKind {
    Identity,          // columns e_1..e_m, requires m <= d
    Orthogonal,        // first m columns of a Haar rotation, requires m <= d
    GaussianNormalized,
    UnionOfOrthobases, // concatenated Haar rotations, requires d | m
};

std::string dictionary_kind_name(DictionaryKind kind);
DictionaryKind dictionary_kind_from_name(const std::string& name);

/// Unit-column dictionary of the requested kind.
Matrix gen_dictionary(Index d, Index m, DictionaryKind kind, Seed seed);

/// Uniformly random size-k support with Gaussian values, normalized.
Vector gen_sparse_vector(Index m, std::int64_t k, Seed seed);

/// Planted instance Y = A * X with unit k-sparse columns of X.
struct PlantedInstance {
    Matrix y;
    Matrix a;
    Matrix x;
    DictionaryKind kind = DictionaryKind::GaussianNormalized;
    Seed seed;
};

PlantedInstance gen_planted(Index d, Index m, std::int64_t k, Index p, DictionaryKind kind,
                            Seed seed);

/// Perturbs every column by an independent random direction of norm exactly
/// eta (adversarial fixed-magnitude noise, stressing the guarantee boundary).
Matrix add_noise(const PlantedInstance& instance, double eta, Seed seed);

/// Unit vector certified to have residual > eps against every K-sparse
/// coefficient vector. Uses the orthogonal-complement construction when the
/// dictionary does not span R^d, otherwise rejection-samples and certifies
/// with the exhaustive oracle. Throws rather than return an uncertified
/// instance.
Vector gen_far_known(const Matrix& a, double eps, std::int64_t k_far, Seed seed,
                     std::int64_t max_attempts = 100, std::int64_t oracle_budget = 1000000);

/// i.i.d. uniform draws from the discretized ell-sparse set: columns in
/// {0, +-1/sqrt(ell)}^m with exactly ell nonzeros.
Matrix gen_discretized_sparse(Index m, std::int64_t ell, Index count, Seed seed);

/// Restricted-isometry certificate. eps_rip follows the squared convention:
/// the largest deviation |lambda - 1| of a Gram eigenvalue over supports, so
/// (1-eps)||x||^2 <= ||Ax||^2 <= (1+eps)||x||^2 on k-sparse x. A sampled
/// certificate is only a lower bound on the true constant.
struct RipCertificate {
    double eps_rip = 0.0;
    bool exhaustive = false; // false means eps_rip is a lower bound
    std::int64_t supports_checked = 0;
};

enum class RipMode { Exhaustive, Sampled };

RipCertificate certify_rip(const Matrix& a, std::int64_t k, RipMode mode, std::int64_t budget,
                           Seed seed = Seed{0});

/// mu = max_{i != j} |<a_i, a_j>| by exhaustive scan.
double certify_incoherence(const Matrix& a);

/// Instance bundle on disk: A.csv / X.csv / Y.csv plus manifest.json with
/// kind, dims, seed, noise eta and certifications.
void write_instance_bundle(const std::string& dir, const PlantedInstance& instance,
                           double noise_eta, const Matrix& y_observed);
PlantedInstance read_instance_bundle(const std::string& dir);

} // namespace sketchtest
