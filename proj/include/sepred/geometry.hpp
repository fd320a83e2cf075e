#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "sepred/code_model.hpp"
#include "sepred/construct.hpp"
#include "sepred/covering.hpp"

namespace sepred {

/// AG(2, 2^h). Point (x, y) has index x*q + y; lines are listed class by
/// class: class m < q holds y = m x + b for b = 0..q-1, class q holds x = c.
struct AffinePlane {
    std::uint32_t h = 0;
    std::uint32_t q = 0;
    FieldPtr field;
    std::vector<Subset> lines;
    std::vector<std::uint32_t> line_class;

    std::uint32_t points() const { return q * q; }
    std::uint32_t point(Elem x, Elem y) const { return x * q + y; }
    std::uint32_t classes() const { return q + 1; }
    /// Lines of one parallel class in canonical order.
    std::vector<std::uint32_t> class_lines(std::uint32_t cls) const;
};

/// 1 <= h <= 4.
AffinePlane build_plane(std::uint32_t h);

/// Two points lie on exactly one line, every line has q points, and each
/// parallel class partitions the points.
bool check_plane_axioms(const AffinePlane& plane);

/// Line-by-point incidence matrix over GF(2), q(q+1) x q^2.
GFMatrix incidence_matrix(const AffinePlane& plane);

/// The code with the incidence matrix as parity-check matrix. Throws
/// CertificateFailure unless the rank is 3^h. d and d-dual are enumerated for
/// h <= 2; for larger h they are set to 2^h + 2 and 2^h.
LinearCode incidence_code(const AffinePlane& plane);

/// 2^(5h) + 2^(4h) + 2^(3h), the closed form stated for the number of irreducible conics.
std::uint64_t conic_count_closed_form(std::uint32_t h);
/// 2^(5h) + 3*2^(4h-1) + 9*2^(3h-1) - 3*2^h, the stated block total.
std::uint64_t block_total_closed_form(std::uint32_t h);

/// Distinct point sets of irreducible conics ax^2+bxy+cy^2+dx+ey+f = 0,
/// sorted. Zero sets that are empty, a point, a line or two lines are dropped.
std::vector<Subset> enumerate_conics(const AffinePlane& plane, unsigned threads = 0);

struct GeneralizedCoveringAG {
    std::vector<Subset> l0;  ///< irreducible conics
    std::vector<Subset> l1;  ///< unions of two nonparallel lines
    std::vector<Subset> l2;  ///< (l0 | l1) minus a transversal, six transversals per parallel pair

    GeneralizedCovering covering(std::uint32_t n) const;
    std::size_t size() const { return l0.size() + l1.size() + l2.size(); }
};

/// h >= 3. The six transversals are the first six lines of the first class
/// other than the pair's own class.
GeneralizedCoveringAG build_generalized_covering(const AffinePlane& plane, unsigned threads = 0);

struct CountCheck {
    std::string name;
    std::uint64_t computed = 0;
    std::uint64_t expected = 0;
    bool ok() const { return computed == expected; }
};

struct GeometryCertificate {
    std::uint32_t h = 0;
    std::size_t incidence_rank = 0;
    CodeParams params;
    std::vector<CountCheck> counts;
    std::map<std::size_t, std::uint64_t> conic_sizes;  ///< size -> count
    bool coverage_ok = false;
    std::optional<Subset> uncovered;
    bool columns_independent = false;
    std::optional<std::size_t> dependent_block;
    std::uint64_t stacked_rows = 0;
    mpz_class stated_bound;      ///< 3^h times the block total closed form
    mpq_class comparison_floor;   ///< (n-k) C(n,5) / C(d-1,5)
    bool comparison_holds = false;
    std::uint64_t spot_checks = 0;
    std::uint64_t spot_failures = 0;
    std::vector<std::string> assumptions;

    bool counts_ok() const;
    bool passed() const;
    std::vector<std::string> lines() const;
};

struct FiveSeparatingResult {
    GeometryCertificate certificate;
    GeneralizedCoveringAG blocks;
    std::optional<GFMatrix> matrix;  ///< stacked I_B / M_B rows, block by block
};

struct GeometryOptions {
    std::uint64_t seed = 1;
    std::uint64_t spot_checks = 1000;  ///< random 5-subsets, plus as many inside random blocks
    bool keep_matrix = true;
    unsigned threads = 0;
};

/// Builds the covering, certifies every block, stacks the 5-separating matrix
/// and fills the certificate. Requires h = 3 (or h >= 3 within the plane guard).
FiveSeparatingResult build_5separating(const AffinePlane& plane, const GeometryOptions& options = {});

}  // namespace sepred
