#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "sepred/code_model.hpp"
#include "sepred/covering.hpp"

namespace sepred {

struct ConstructionResult {
    GFMatrix matrix;
    std::string method;
    bool verified = false;
    std::optional<mpz_class> stated_bound;
    std::vector<std::string> provenance;  ///< one entry per row
    std::vector<std::string> notes;

    std::size_t rows() const { return matrix.rows(); }
    /// '#' comment lines for the GFMAT writer.
    std::vector<std::string> comment_block() const;
};

struct StandardForm {
    GFMatrix matrix;                             ///< (n-k) x n, identity on identity_columns
    std::vector<std::uint32_t> identity_columns; ///< row i has its 1 in identity_columns[i]
};

StandardForm standard_form_pcm(const LinearCode& code);

struct IsMs {
    GFMatrix i_b;  ///< |B| rows, identity on the columns of B
    GFMatrix m_b;  ///< n-k-|B| rows of full rank, zero on the columns of B
};

/// Row-reduces the pcm pivoting on B first. Throws InvalidArgument when the
/// pcm columns indexed by B are dependent.
IsMs extract_is_ms(const LinearCode& code, std::span<const std::uint32_t> block);

struct CoveringConstructionOptions {
    bool deduplicate = true;
    /// Stack only M_B; valid when every block has exactly l points.
    bool ms_only = false;
    unsigned threads = 0;
};

ConstructionResult construct_covering_based(const LinearCode& code, std::uint32_t l, const std::vector<Subset>& blocks,
                                            const CoveringConstructionOptions& options = {});
ConstructionResult construct_covering_based(const LinearCode& code, std::uint32_t l, const Covering& covering,
                                            const CoveringConstructionOptions& options = {});
ConstructionResult construct_covering_based(const LinearCode& code, std::uint32_t l,
                                            const GeneralizedCovering& covering,
                                            const CoveringConstructionOptions& options = {});

enum class SamplingMode { uniform, nonzero };

/// t dual codewords sampled with CounterRng(seed), then repaired subset by
/// subset (colex order) from the shortened-dual basis.
ConstructionResult construct_randomized(const LinearCode& code, std::uint32_t l, std::uint64_t t, std::uint64_t seed,
                                        SamplingMode mode = SamplingMode::uniform, unsigned threads = 0);

/// All combinations of at most l+1 pcm rows with first coefficient 1.
/// Throws CertificateFailure (with the witness) if the result is not l-separating.
ConstructionResult construct_generic(const LinearCode& code, std::uint32_t l, unsigned threads = 0);

/// Standard-form pcm plus nonzero samples, repaired on the l-subsets not
/// contained in the identity columns.
ConstructionResult construct_hybrid(const LinearCode& code, std::uint32_t l, std::uint64_t t, std::uint64_t seed,
                                    unsigned threads = 0);

}  // namespace sepred
