#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "sepred/code_model.hpp"
#include "sepred/covering.hpp"

namespace sepred {

/// Number of y-dimensional subspaces of GF(q)^x.
mpz_class gaussian_binomial(std::uint64_t x, std::uint64_t y, std::uint64_t q);

/// f_q(a,b) = sum_i (-1)^i C(a,i) prod_{j<b} (q^(a-i) - q^j): the number of
/// a x b rank-b matrices over GF(q) without a zero row.
mpz_class f_q(std::uint64_t a, std::uint64_t b, std::uint64_t q);

struct RankDistribution {
    std::uint64_t t = 0;
    std::uint64_t v = 0;
    std::uint64_t q = 0;
    std::vector<mpq_class> probabilities;  ///< indexed by rank 0..min(t,v)
};

/// Rank of t independent uniform vectors of a v-dimensional space over GF(q).
RankDistribution rank_distribution(std::uint64_t t, std::uint64_t v, std::uint64_t q);
/// Same, with every vector uniform over the nonzero ones (v >= 1 unless t = 0).
RankDistribution rank_distribution_nonzero(std::uint64_t t, std::uint64_t v, std::uint64_t q);

/// Bound ranges: 1 <= l <= min(d, n-k) - 1.
void require_bound_l(const CodeParams& p, std::uint32_t l);

/// ceil(C(n,l)(n-k-l) / C(n-ddual,l)).
mpz_class lower_volume(const CodeParams& p, std::uint32_t l);
/// Schonheim-type bound with lambda = n-k-l over n - ddual point blocks.
mpz_class lower_schonheim(const CodeParams& p, std::uint32_t l);

/// Objective g(t) of the sampled-rows bounds; the bound is its minimum over t >= 1.
mpz_class objective_basic(const CodeParams& p, std::uint32_t l, std::uint64_t t);
mpz_class objective_nonzero(const CodeParams& p, std::uint32_t l, std::uint64_t t);
/// Includes the n-k standard-form rows.
mpz_class objective_hybrid(const CodeParams& p, std::uint32_t l, std::uint64_t t);

struct ScanResult {
    mpz_class value;
    std::uint64_t t = 0;  ///< first minimizer
};

/// Exact minimum of the objective over all t >= 1 (the scan stops once the
/// floor term vanishes, after which g(t) >= t only grows).
ScanResult upper_prob_basic(const CodeParams& p, std::uint32_t l);
ScanResult upper_prob_nonzero(const CodeParams& p, std::uint32_t l);
ScanResult upper_prob_hybrid(const CodeParams& p, std::uint32_t l);

/// Whether t rows satisfy the known probabilistic criterion (needs t >= n-k).
bool known_criterion(const CodeParams& p, std::uint32_t l, std::uint64_t t);
/// Smallest t in [n-k, q^(n-k)] meeting the criterion, if any.
std::optional<std::uint64_t> upper_prob_known(const CodeParams& p, std::uint32_t l);

/// sum_{i=1}^{l+1} C(n-k,i)(q-1)^(i-1).
mpz_class upper_generic(const CodeParams& p, std::uint32_t l);

/// (n-k) C(n,l) / C(d-1,l), for l <= d-2.
mpq_class geometry_comparison_floor(const CodeParams& p, std::uint32_t l);

enum class CoveringSource { exact, table, greedy };

struct CoveringSizeUsed {
    std::uint32_t mu = 0;
    std::uint64_t size = 0;
    CoveringSource source = CoveringSource::exact;
};

struct CoveringOptions {
    const CoveringTable* table = nullptr;
    /// Fill sizes missing from the table with greedy_covering (also used when smaller).
    bool greedy = false;
    GreedyOptions greedy_options{};
};

struct CoveringBound {
    std::optional<mpz_class> value;  ///< empty when no mu had a covering size
    std::uint32_t mu = 0;            ///< minimizing mu (0 for the C(n,l) branch)
    std::vector<CoveringSizeUsed> sizes;
    std::vector<std::uint32_t> skipped;  ///< mu without a known covering size
};

/// C_1(n,mu,l) upper bound: C(n,l) when mu = l, ceil(n/mu) when l = 1,
/// otherwise the table and/or greedy.
std::optional<CoveringSizeUsed> covering_size(std::uint32_t n, std::uint32_t mu, std::uint32_t l,
                                              const CoveringOptions& options);

/// min over mu in [l, min(d,n-k)-1] of (n-k-mu) C_1(n,mu,l) + C(n,l)(mu-l).
CoveringBound upper_covering_known(const CodeParams& p, std::uint32_t l, const CoveringOptions& options);
/// min of (n-k) C_1(n,mu,l) over the same range and (n-k-l) C(n,l).
CoveringBound upper_covering_refined(const CodeParams& p, std::uint32_t l, const CoveringOptions& options);

struct BoundValue {
    std::optional<mpz_class> value;
    bool exceeds_trivial = false;      ///< value >= q^(n-k), or no value within the trivial range
    std::optional<std::uint64_t> arg;  ///< minimizing t or mu
    std::string note;
};

struct BoundReport {
    CodeParams params;
    std::uint32_t l = 0;
    mpz_class trivial;  ///< q^(n-k)
    BoundValue lower_schonheim, lower_volume;
    BoundValue upper_prob_basic, upper_prob_nonzero, upper_prob_hybrid, upper_prob_known;
    BoundValue upper_generic, upper_covering_refined, upper_covering_known;
};

BoundReport report(const CodeParams& p, std::uint32_t l, const CoveringOptions& options);
std::vector<BoundReport> report(const CodeParams& p, const std::vector<std::uint32_t>& ls, const CoveringOptions& options,
                                unsigned threads = 0);

std::string to_string(CoveringSource s);

}  // namespace sepred
