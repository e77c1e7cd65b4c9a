#include "sketchtest/generators.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "sketchtest/oracles.hpp"

namespace sketchtest {

namespace {

// First k entries of a seeded Fisher-Yates shuffle of [0, m).
std::vector<Index> random_support(Index m, std::int64_t k, SplitMix64& rng) {
    std::vector<Index> perm(static_cast<std::size_t>(m));
    std::iota(perm.begin(), perm.end(), Index{0});
    for (std::int64_t i = 0; i < k; ++i) {
        const auto j = i + static_cast<std::int64_t>(rng.next_u64() %
                                                     static_cast<std::uint64_t>(m - i));
        std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
    std::vector<Index> support(perm.begin(), perm.begin() + k);
    std::sort(support.begin(), support.end());
    return support;
}

double gram_deviation(const Matrix& a_support) {
    const Matrix gram = a_support.transpose() * a_support;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
    const auto& ev = eig.eigenvalues();
    return std::max(1.0 - ev.minCoeff(), ev.maxCoeff() - 1.0);
}

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

// C(m, k) capped at limit+1 to avoid overflow.
std::int64_t binomial_capped(Index m, std::int64_t k, std::int64_t limit) {
    double v = 1.0;
    for (std::int64_t i = 0; i < k; ++i) {
        v *= static_cast<double>(m - i) / static_cast<double>(i + 1);
        if (v > static_cast<double>(limit)) return limit + 1;
    }
    return static_cast<std::int64_t>(std::llround(v));
}

} // namespace

std::string dictionary_kind_name(DictionaryKind kind) {
    switch (kind) {
        case DictionaryKind::Identity: return "identity";
        case DictionaryKind::Orthogonal: return "orthogonal";
        case DictionaryKind::GaussianNormalized: return "gaussian-normalized";
        case DictionaryKind::UnionOfOrthobases: return "union-of-orthobases";
    }
    throw std::invalid_argument("unknown dictionary kind");
}

DictionaryKind dictionary_kind_from_name(const std::string& name) {
    if (name == "identity") return DictionaryKind::Identity;
    if (name == "orthogonal") return DictionaryKind::Orthogonal;
    if (name == "gaussian-normalized") return DictionaryKind::GaussianNormalized;
    if (name == "union-of-orthobases") return DictionaryKind::UnionOfOrthobases;
    throw std::invalid_argument("unknown dictionary kind: " + name);
}

Matrix gen_dictionary(Index d, Index m, DictionaryKind kind, Seed seed) {
    if (d < 1 || m < 1) {
        throw std::invalid_argument("gen_dictionary: dimensions must be >= 1");
    }
    switch (kind) {
        case DictionaryKind::Identity: {
            if (m > d) {
                throw std::invalid_argument("gen_dictionary: identity kind needs m <= d");
            }
            return Matrix::Identity(d, m);
        }
        case DictionaryKind::Orthogonal: {
            if (m > d) {
                throw std::invalid_argument("gen_dictionary: orthogonal kind needs m <= d");
            }
            return random_rotation(d, seed).leftCols(m);
        }
        case DictionaryKind::GaussianNormalized: {
            return normalize_columns(gaussian_matrix(d, m, 1.0, seed));
        }
        case DictionaryKind::UnionOfOrthobases: {
            if (m % d != 0) {
                throw std::invalid_argument(
                    "gen_dictionary: union-of-orthobases needs m to be a multiple of d");
            }
            Matrix a(d, m);
            const Index blocks = m / d;
            for (Index b = 0; b < blocks; ++b) {
                a.middleCols(b * d, d) =
                    random_rotation(d, derive_seed(seed, static_cast<std::uint64_t>(b)));
            }
            return a;
        }
    }
    throw std::invalid_argument("gen_dictionary: unknown kind");
}

Vector gen_sparse_vector(Index m, std::int64_t k, Seed seed) {
    if (k < 1 || k > m) {
        throw std::invalid_argument("gen_sparse_vector: need 1 <= k <= m");
    }
    SplitMix64 rng(seed);
    Vector v = Vector::Zero(m);
    double norm = 0.0;
    while (norm == 0.0) {
        const auto support = random_support(m, k, rng);
        for (Index i : support) {
            v(i) = rng.next_gaussian();
        }
        norm = v.norm();
    }
    return v / norm;
}

PlantedInstance gen_planted(Index d, Index m, std::int64_t k, Index p, DictionaryKind kind,
                            Seed seed) {
    if (p < 1) {
        throw std::invalid_argument("gen_planted: need p >= 1");
    }
    PlantedInstance instance;
    instance.kind = kind;
    instance.seed = seed;
    instance.a = gen_dictionary(d, m, kind, derive_seed(seed, 0));
    instance.x = Matrix::Zero(m, p);
    for (Index i = 0; i < p; ++i) {
        instance.x.col(i) =
            gen_sparse_vector(m, k, derive_seed(seed, static_cast<std::uint64_t>(i) + 1));
    }
    instance.y = instance.a * instance.x;
    return instance;
}

Matrix add_noise(const PlantedInstance& instance, double eta, Seed seed) {
    if (eta < 0.0) {
        throw std::invalid_argument("add_noise: eta must be >= 0");
    }
    Matrix out = instance.y;
    if (eta == 0.0) return out;
    for (Index j = 0; j < out.cols(); ++j) {
        SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(j)));
        Vector g(out.rows());
        double norm = 0.0;
        while (norm == 0.0) {
            for (Index i = 0; i < g.size(); ++i) g(i) = rng.next_gaussian();
            norm = g.norm();
        }
        out.col(j) += (eta / norm) * g;
    }
    return out;
}

Vector gen_far_known(const Matrix& a, double eps, std::int64_t k_far, Seed seed,
                     std::int64_t max_attempts, std::int64_t oracle_budget) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("gen_far_known: eps must be > 0");
    }
    const Index d = a.rows();
    Eigen::ColPivHouseholderQR<Matrix> qr(a);
    const Index rank = qr.rank();

    if (rank < d) {
        // Every hull point lies in span(A); any unit vector in the orthogonal
        // complement has residual >= 1 against every coefficient vector.
        const Matrix q = qr.householderQ();
        const Matrix complement = q.rightCols(d - rank);
        SplitMix64 rng(seed);
        Vector coef(d - rank);
        for (Index i = 0; i < coef.size(); ++i) coef(i) = rng.next_gaussian();
        Vector y = complement * coef;
        y.normalize();
        const double leak = (a.transpose() * y).cwiseAbs().maxCoeff();
        if (leak > 1e-8) {
            throw std::runtime_error("gen_far_known: complement construction lost orthogonality");
        }
        return y;
    }

    // Spanning dictionary: rejection-sample unit vectors and certify each
    // candidate with the exhaustive oracle; never return uncertified.
    const std::int64_t k_eff = std::min<std::int64_t>(k_far, a.cols());
    for (std::int64_t attempt = 0; attempt < max_attempts; ++attempt) {
        SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
        Vector y(d);
        for (Index i = 0; i < d; ++i) y(i) = rng.next_gaussian();
        y.normalize();
        const SparseFit fit = best_sparse_fit(a, y, k_eff, oracle_budget);
        if (fit.residual > eps) {
            return y;
        }
    }
    throw std::runtime_error("gen_far_known: no certified instance within " +
                             std::to_string(max_attempts) + " attempts");
}

Matrix gen_discretized_sparse(Index m, std::int64_t ell, Index count, Seed seed) {
    if (ell < 1 || ell > m) {
        throw std::invalid_argument("gen_discretized_sparse: need 1 <= ell <= m");
    }
    if (count < 1) {
        throw std::invalid_argument("gen_discretized_sparse: need count >= 1");
    }
    const double mag = 1.0 / std::sqrt(static_cast<double>(ell));
    Matrix out = Matrix::Zero(m, count);
    for (Index c = 0; c < count; ++c) {
        SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
        const auto support = random_support(m, ell, rng);
        for (Index i : support) {
            out(i, c) = (rng.next_u64() & 1u) ? mag : -mag;
        }
    }
    return out;
}

RipCertificate certify_rip(const Matrix& a, std::int64_t k, RipMode mode, std::int64_t budget,
                           Seed seed) {
    if (k < 1 || k > a.cols()) {
        throw std::invalid_argument("certify_rip: need 1 <= k <= m");
    }
    const Index m = a.cols();
    RipCertificate cert;

    if (mode == RipMode::Exhaustive) {
        const std::int64_t total = binomial_capped(m, k, budget);
        if (total > budget) {
            throw std::invalid_argument("certify_rip: C(m,k) exceeds the budget of " +
                                        std::to_string(budget) + " supports; use sampled mode");
        }
        std::vector<Index> comb(static_cast<std::size_t>(k));
        std::iota(comb.begin(), comb.end(), Index{0});
        Matrix sub(a.rows(), k);
        do {
            for (std::int64_t j = 0; j < k; ++j) {
                sub.col(j) = a.col(comb[static_cast<std::size_t>(j)]);
            }
            cert.eps_rip = std::max(cert.eps_rip, gram_deviation(sub));
            ++cert.supports_checked;
        } while (next_combination(comb, m));
        cert.exhaustive = true;
        return cert;
    }

    SplitMix64 rng(seed);
    Matrix sub(a.rows(), k);
    for (std::int64_t t = 0; t < budget; ++t) {
        const auto support = random_support(m, k, rng);
        for (std::int64_t j = 0; j < k; ++j) {
            sub.col(j) = a.col(support[static_cast<std::size_t>(j)]);
        }
        cert.eps_rip = std::max(cert.eps_rip, gram_deviation(sub));
        ++cert.supports_checked;
    }
    cert.exhaustive = false;
    return cert;
}

double certify_incoherence(const Matrix& a) {
    if (a.cols() < 2) return 0.0;
    const Matrix gram = a.transpose() * a;
    double mu = 0.0;
    for (Index i = 0; i < gram.rows(); ++i) {
        for (Index j = i + 1; j < gram.cols(); ++j) {
            mu = std::max(mu, std::abs(gram(i, j)));
        }
    }
    return mu;
}

void write_instance_bundle(const std::string& dir, const PlantedInstance& instance,
                           double noise_eta, const Matrix& y_observed) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    write_matrix_csv(dir + "/A.csv", instance.a);
    write_matrix_csv(dir + "/X.csv", instance.x);
    write_matrix_csv(dir + "/Y.csv", y_observed);

    std::int64_t k = 0;
    for (Index j = 0; j < instance.x.cols(); ++j) {
        std::int64_t nnz = 0;
        for (Index i = 0; i < instance.x.rows(); ++i) {
            if (instance.x(i, j) != 0.0) ++nnz;
        }
        k = std::max(k, nnz);
    }

    double worst_col_norm_dev = 0.0;
    for (Index j = 0; j < instance.a.cols(); ++j) {
        worst_col_norm_dev =
            std::max(worst_col_norm_dev, std::abs(instance.a.col(j).norm() - 1.0));
    }
    const double planted_residual = (instance.a * instance.x - instance.y).cwiseAbs().maxCoeff();

    nlohmann::ordered_json manifest;
    manifest["format_version"] = 1;
    manifest["kind"] = dictionary_kind_name(instance.kind);
    manifest["d"] = instance.a.rows();
    manifest["m"] = instance.a.cols();
    manifest["k"] = k;
    manifest["p"] = instance.y.cols();
    manifest["seed"] = instance.seed.value;
    manifest["noise_eta"] = noise_eta;
    manifest["certifications"] = {
        {"worst_column_norm_deviation", worst_col_norm_dev},
        {"planted_residual_entrywise", planted_residual},
        {"incoherence_mu", certify_incoherence(instance.a)},
    };
    std::ofstream f(dir + "/manifest.json");
    if (!f) {
        throw std::runtime_error("cannot write manifest in " + dir);
    }
    f << manifest.dump(2) << '\n';
}

PlantedInstance read_instance_bundle(const std::string& dir) {
    std::ifstream f(dir + "/manifest.json");
    if (!f) {
        throw std::runtime_error("cannot read manifest in " + dir);
    }
    nlohmann::json manifest;
    f >> manifest;

    PlantedInstance instance;
    instance.a = read_matrix_csv(dir + "/A.csv");
    instance.x = read_matrix_csv(dir + "/X.csv");
    instance.y = read_matrix_csv(dir + "/Y.csv");
    instance.kind = dictionary_kind_from_name(manifest.at("kind").get<std::string>());
    instance.seed = Seed{manifest.at("seed").get<std::uint64_t>()};
    return instance;
}

} // namespace sketchtest
