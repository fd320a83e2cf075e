#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sepred/gf_matrix.hpp"

namespace sepred {

inline constexpr std::uint64_t kDefaultEnumerationLimit = std::uint64_t{1} << 24;

/// (n, k, d, d-dual, q) of a linear code.
struct CodeParams {
    std::uint32_t n = 0;
    std::uint32_t k = 0;
    std::uint32_t d = 0;
    std::uint32_t ddual = 0;
    std::uint32_t q = 0;

    std::uint32_t redundancy() const { return n - k; }
    bool is_mds() const { return d == n - k + 1; }
    /// Largest l handled by the general theory: min(d, n-k) - 1.
    std::uint32_t max_l() const { return std::min(d, n - k) - 1; }

    /// Throws InvalidArgument unless 1 <= k < n, 1 <= d <= n-k+1, 1 <= ddual <= k+1
    /// and q is a prime power.
    void validate() const;

    bool operator==(const CodeParams&) const = default;
};

std::string to_string(const CodeParams& p);

/// A code given by a full-rank (n-k) x n parity-check matrix.
class LinearCode {
public:
    /// Builds from any parity-check matrix (rows may be dependent); a basis of
    /// the row space becomes the stored pcm. d and d-dual are computed by
    /// enumeration when feasible, otherwise must be supplied.
    static LinearCode from_parity_check(const GFMatrix& h, std::string name = {},
                                        std::optional<std::uint32_t> d = std::nullopt,
                                        std::optional<std::uint32_t> ddual = std::nullopt,
                                        std::uint64_t limit = kDefaultEnumerationLimit);

    /// Trusts the supplied parameters; only the shape and rank are checked.
    LinearCode(CodeParams params, GFMatrix pcm, std::string name);

    const CodeParams& params() const { return params_; }
    const GFMatrix& pcm() const { return pcm_; }
    const std::string& name() const { return name_; }
    const FieldPtr& field() const { return pcm_.field(); }

    /// Generator matrix (basis of the null space of the pcm).
    GFMatrix generator() const;

    bool in_dual(std::span<const Elem> v) const;

private:
    CodeParams params_;
    GFMatrix pcm_;
    std::string name_;
};

/// All q^rows linear combinations of the rows of `basis`, in canonical order:
/// word i uses coefficient vector whose base-q digits (little-endian) are i.
GFMatrix enumerate_row_space(const GFMatrix& basis, std::uint64_t limit = kDefaultEnumerationLimit);

/// All q^(n-k) codewords of the dual code, zero word first.
GFMatrix dual_codewords(const LinearCode& code, std::uint64_t limit = kDefaultEnumerationLimit);

/// Minimum nonzero weight of the row space of `basis` by enumeration.
std::uint32_t min_weight_of_span(const GFMatrix& basis, std::uint64_t limit = kDefaultEnumerationLimit);

std::uint32_t min_distance(const LinearCode& code, std::uint64_t limit = kDefaultEnumerationLimit);
std::uint32_t dual_distance(const LinearCode& code, std::uint64_t limit = kDefaultEnumerationLimit);

/// A catalog entry: parameters always, a concrete code when one is built.
struct Preset {
    CodeParams params;
    std::optional<LinearCode> code;
    std::string name;
    /// Extra matrix kept verbatim (the six-row [8,4,4] example).
    std::optional<GFMatrix> reference_matrix;
};

/// Catalog: exthamming8, exthamming8-6row, hamming7, hamming15, golay24,
/// repetition<n>, mds-<n>-<k>-<q>, bch41, qr12.
Preset preset(const std::string& name);
std::vector<std::string> preset_names();

/// The six-row parity-check matrix of the [8,4,4] extended Hamming code used
/// as the running separation example (rows kept verbatim, rank 4).
GFMatrix extended_hamming_six_row();

/// Doubly-extended Reed-Solomon style parity-check matrix: columns (1, x, ..., x^{r-1})
/// for distinct field elements x, plus (0, ..., 0, 1) when n = q + 1.
LinearCode vandermonde_mds(std::uint32_t n, std::uint32_t k, std::uint32_t q);

}  // namespace sepred
