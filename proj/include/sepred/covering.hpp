#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <gmpxx.h>

#include "sepred/combinatorics.hpp"

namespace sepred {

/// l-(n, mu, lambda) covering: mu-subsets of {0..n-1} such that every
/// l-subset lies in at least lambda blocks.
struct Covering {
    std::uint32_t n = 0;
    std::uint32_t mu = 0;
    std::uint32_t l = 0;
    std::uint32_t lambda = 1;
    std::vector<Subset> blocks;
};

/// Covering with mixed block sizes.
struct GeneralizedCovering {
    std::uint32_t n = 0;
    std::uint32_t l = 0;
    std::uint32_t lambda = 1;
    std::vector<Subset> blocks;

    std::uint32_t max_block_size() const;
};

struct CoverageResult {
    bool covered = true;
    std::optional<Subset> uncovered;  ///< first l-subset in colex order with too few blocks
};

/// Exhaustive check over all l-subsets (requires C(n,l) <= 1e8, lambda <= 200).
/// Blocks must be sorted, in range and duplicate free.
CoverageResult verify_covering(const Covering& c, unsigned threads = 0);
CoverageResult verify_covering(const GeneralizedCovering& c, unsigned threads = 0);

/// Nested-ceiling bound ceil(n/mu ceil((n-1)/(mu-1) ... ceil(lambda(n-l+1)/(mu-l+1)))).
mpz_class schonheim_lower(std::uint64_t n, std::uint64_t mu, std::uint64_t l, std::uint64_t lambda);

struct GreedyOptions {
    /// Tie-break by a seeded permutation instead of lexicographic order.
    bool randomized = false;
    std::uint64_t seed = 0;
    /// Exhaustive candidate universe when C(n,mu) is at most this.
    std::uint64_t exhaustive_limit = 2'000'000;
    /// Random candidates per round in sampled mode.
    std::uint64_t samples_per_round = 100'000;
};

/// Greedy covering: each round adds the block covering the most uncovered
/// l-subsets. The result is verified before it is returned.
Covering greedy_covering(std::uint32_t n, std::uint32_t mu, std::uint32_t l, std::uint32_t lambda = 1,
                         const GreedyOptions& options = {});

/// Pads every block to size mu with the smallest points it lacks.
Covering pad_to_covering(const GeneralizedCovering& g, std::uint32_t mu);

/// Best known covering sizes keyed by (n, mu, l), for lambda = 1.
using CoveringTable = std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, std::uint64_t>;

/// Lines "n mu l size"; '#' starts a comment. Entries below the Schonheim
/// bound are rejected with a ParseError.
CoveringTable parse_covering_table(std::istream& in);
CoveringTable load_covering_table(const std::string& path);

void write_covering(std::ostream& out, const Covering& c);
Covering read_covering(std::istream& in);
void write_generalized_covering(std::ostream& out, const GeneralizedCovering& g);
GeneralizedCovering read_generalized_covering(std::istream& in);

}  // namespace sepred
