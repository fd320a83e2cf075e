#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sepred/finite_field.hpp"

namespace sepred {

/// Dense row-major matrix over GF(q). Binary matrices are stored bit-packed
/// (64 columns per word); the public interface is identical for every q.
class GFMatrix {
public:
    GFMatrix(FieldPtr field, std::size_t rows, std::size_t cols);

    static GFMatrix from_rows(FieldPtr field, const std::vector<std::vector<Elem>>& rows);
    static GFMatrix identity(FieldPtr field, std::size_t n);

    const FieldPtr& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Elem at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, Elem v);

    std::vector<Elem> row(std::size_t r) const;
    void append_row(std::span<const Elem> values);
    void append_rows(const GFMatrix& other);
    bool row_is_zero(std::size_t r) const;
    /// Nonzero positions of a row as a little-endian bitmask of ceil(cols/64) words.
    std::vector<std::uint64_t> support_mask(std::size_t r) const;

    GFMatrix select_rows(std::span<const std::size_t> indices) const;
    GFMatrix select_columns(std::span<const std::uint32_t> indices) const;

    bool packed() const { return packed_; }
    std::size_t words_per_row() const { return words_; }
    /// Packed row words; only valid when packed().
    const std::uint64_t* row_words(std::size_t r) const { return bits_.data() + r * words_; }

    bool operator==(const GFMatrix& o) const;

    std::string to_string() const;

private:
    FieldPtr field_;
    std::size_t rows_;
    std::size_t cols_;
    bool packed_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
    std::vector<Elem> data_;
};

/// Incremental row-echelon basis: insert() reports whether a vector increased
/// the rank. Used for every rank test with early exit.
class RowBasis {
public:
    RowBasis(FieldPtr field, std::size_t cols);

    bool insert(std::span<const Elem> v);
    /// Binary fast path; words must span ceil(cols/64) words.
    bool insert_packed(const std::uint64_t* words);
    bool insert_row(const GFMatrix& m, std::size_t r);
    bool contains(std::span<const Elem> v) const;

    std::size_t rank() const { return pivots_.size(); }
    std::size_t cols() const { return cols_; }

private:
    void reduce(std::vector<Elem>& v) const;
    void reduce_packed(std::vector<std::uint64_t>& w) const;

    FieldPtr field_;
    std::size_t cols_;
    bool packed_;
    std::size_t words_;
    std::vector<std::size_t> pivots_;
    std::vector<std::vector<Elem>> rows_;
    std::vector<std::vector<std::uint64_t>> packed_rows_;
};

std::size_t rank(const GFMatrix& m);

struct RrefResult {
    GFMatrix matrix;                  ///< reduced row-echelon form, zero rows last
    std::vector<std::size_t> pivots;  ///< pivot column of each nonzero row
};

RrefResult rref(const GFMatrix& m);

/// Basis (as rows) of {x : m x^T = 0}; has cols - rank(m) rows.
GFMatrix null_space(const GFMatrix& m);

bool row_space_contains(const GFMatrix& m, std::span<const Elem> v);

struct HsResult {
    GFMatrix matrix;                      ///< surviving rows with the S columns deleted
    std::vector<std::size_t> source_rows; ///< indices of the surviving rows in the input
};

/// H(S): the rows of m vanishing on every coordinate of S, with the S columns removed.
HsResult extract_hs(const GFMatrix& m, std::span<const std::uint32_t> coordinates);

/// True iff every choice of `strength` columns shows each vector of
/// GF(q)^strength exactly rows/q^strength times.
bool verify_orthogonal_array(const GFMatrix& m, std::size_t strength);

GFMatrix vstack(const GFMatrix& top, const GFMatrix& bottom);

/// Writes the GFMAT text format. Comment lines (prefixed "# ") precede the header.
void write_gfmat(std::ostream& out, const GFMatrix& m, const std::vector<std::string>& comments = {});
GFMatrix read_gfmat(std::istream& in);
GFMatrix read_gfmat_file(const std::string& path);
void write_gfmat_file(const std::string& path, const GFMatrix& m, const std::vector<std::string>& comments = {});

}  // namespace sepred
