#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sepred/code_model.hpp"
#include "sepred/combinatorics.hpp"

namespace sepred {

struct SeparationVerdict {
    bool separating = true;
    std::optional<Subset> witness;  ///< first failing S (colex order) when not separating
    std::size_t achieved_rank = 0;  ///< rank of H(witness), or of the last checked set
    std::size_t required_rank = 0;  ///< n - k - |S|
    std::string note;
};

/// Rank of H(S) for many S over one fixed H. Row supports are precomputed so
/// each query only touches rows vanishing on S.
class SeparationChecker {
public:
    explicit SeparationChecker(const GFMatrix& h);

    /// rank(H(S)), computed with early exit once `cap` is reached.
    std::size_t rank_hs(std::span<const std::uint32_t> coordinates, std::size_t cap) const;

    /// Number of rows of H vanishing on S.
    std::size_t vanishing_rows(std::span<const std::uint32_t> coordinates) const;

    const GFMatrix& matrix() const { return h_; }

private:
    void mask_of(std::span<const std::uint32_t> coordinates, std::vector<std::uint64_t>& mask) const;
    bool vanishes(std::size_t row, const std::vector<std::uint64_t>& mask) const;

    const GFMatrix& h_;
    std::size_t words_;
    std::vector<std::uint64_t> supports_;
};

/// Throws InvalidArgument unless the rows of h are dual codewords spanning the dual code.
void require_parity_check(const LinearCode& code, const GFMatrix& h);

/// Decides whether H(S) is a parity-check matrix of the code punctured on S.
/// Requires |S| <= d - 1.
SeparationVerdict is_s_separating(const LinearCode& code, const GFMatrix& h, std::span<const std::uint32_t> coordinates);

/// Decides l-separation by checking every size-l S (colex order). Valid for
/// 1 <= l <= min(d, n-k) - 1, and for l = n - k on MDS codes, where size n-k
/// sets separate for every parity-check matrix and only sizes < l are checked.
SeparationVerdict is_l_separating(const LinearCode& code, const GFMatrix& h, std::uint32_t l, unsigned threads = 0);

/// Checks every S with |S| <= l (sizes ascending, colex within a size).
/// Slower reference for the size-exactly-l shortcut.
SeparationVerdict is_l_separating_all_sizes(const LinearCode& code, const GFMatrix& h, std::uint32_t l);

/// Throws InvalidArgument unless l is in the range is_l_separating accepts.
void require_valid_l(const CodeParams& params, std::uint32_t l);

struct ExactSearchLimits {
    std::uint64_t max_projective = 64;
    std::uint64_t max_subsets_per_level = 100'000'000;
};

struct ExactResult {
    std::uint32_t redundancy = 0;
    GFMatrix matrix;                 ///< a smallest l-separating parity-check matrix found
    std::uint64_t candidates_checked = 0;
};

/// Projective representatives of the nonzero dual codewords (first nonzero
/// entry 1) in canonical enumeration order.
GFMatrix projective_dual_words(const LinearCode& code, std::uint64_t limit = kDefaultEnumerationLimit);

/// Exhaustive minimum number of rows of an l-separating parity-check matrix.
/// Searches m = n-k, n-k+1, ..., max_rows over m-subsets of projective dual
/// words in colex order; the first hit in that order is returned.
ExactResult exact_separating_redundancy(const LinearCode& code, std::uint32_t l, std::uint32_t max_rows,
                                        const ExactSearchLimits& limits = {}, unsigned threads = 0);

}  // namespace sepred
