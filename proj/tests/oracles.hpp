#pragma once

// Brute-force reference computations. They share no code with the library
// beyond field arithmetic and the plain rank routine.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include <gmpxx.h>

#include "sepred/finite_field.hpp"
#include "sepred/gf_matrix.hpp"

namespace oracle {

using sepred::Elem;
using sepred::FieldPtr;
using Vec = std::vector<Elem>;

inline Vec vector_of(std::uint64_t index, std::uint32_t len, std::uint32_t q) {
    Vec v(len);
    for (auto& x : v) {
        x = static_cast<Elem>(index % q);
        index /= q;
    }
    return v;
}

inline std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

// Rank by textbook Gaussian elimination on a copy.
inline std::size_t rank_of(const sepred::Field& f, std::vector<Vec> rows) {
    std::size_t r = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        const Elem inv = f.inv(rows[r][c]);
        for (auto& x : rows[r]) x = f.mul(x, inv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const Elem factor = rows[i][c];
            for (std::size_t j = 0; j < cols; ++j) rows[i][j] = f.sub(rows[i][j], f.mul(factor, rows[r][j]));
        }
        ++r;
    }
    return r;
}

// Closure of a vector set under linear combinations, as sorted vector indices.
inline std::set<std::uint64_t> span_indices(const sepred::Field& f, const std::vector<Vec>& gens, std::uint32_t len) {
    const std::uint32_t q = f.order();
    auto index_of = [&](const Vec& v) {
        std::uint64_t idx = 0;
        for (std::size_t i = v.size(); i-- > 0;) idx = idx * q + v[i];
        return idx;
    };
    std::set<std::uint64_t> span{0};
    for (const auto& g : gens) {
        std::set<std::uint64_t> next = span;
        for (auto s : span) {
            const Vec base = vector_of(s, len, q);
            for (Elem c = 1; c < q; ++c) {
                Vec w = base;
                for (std::uint32_t i = 0; i < len; ++i) w[i] = f.add(w[i], f.mul(c, g[i]));
                next.insert(index_of(w));
            }
        }
        span = std::move(next);
    }
    return span;
}

// Number of y-dimensional subspaces of GF(q)^x, by collecting distinct spans.
inline std::uint64_t subspace_count(const FieldPtr& field, std::uint32_t x, std::uint32_t y) {
    const std::uint32_t q = field->order();
    std::set<std::set<std::uint64_t>> level{{0}};
    for (std::uint32_t dim = 0; dim < y; ++dim) {
        std::set<std::set<std::uint64_t>> next;
        for (const auto& space : level)
            for (std::uint64_t v = 1; v < ipow(q, x); ++v) {
                if (space.count(v)) continue;
                std::vector<Vec> gens;
                for (auto s : space) gens.push_back(vector_of(s, x, q));
                gens.push_back(vector_of(v, x, q));
                next.insert(span_indices(*field, gens, x));
            }
        level = std::move(next);
    }
    return level.size();
}

// a x b matrices of rank b with no zero row, counted by enumeration.
inline std::uint64_t full_rank_no_zero_rows(const FieldPtr& field, std::uint32_t a, std::uint32_t b) {
    const std::uint32_t q = field->order();
    const std::uint64_t per_row = ipow(q, b);
    std::uint64_t count = 0;
    if (a == 0) return b == 0 ? 1 : 0;
    if (b == 0) return 0;  // every row of a zero-width matrix is zero
    std::vector<std::uint64_t> digits(a, 1);
    while (true) {
        std::vector<Vec> rows;
        for (auto d : digits) rows.push_back(vector_of(d, b, q));
        if (rank_of(*field, rows) == b) ++count;
        std::size_t i = 0;
        while (i < a && ++digits[i] == per_row) digits[i++] = 1;
        if (i == a) break;
    }
    return count;
}

// Rank histogram of all t-tuples of vectors of GF(q)^v (nonzero vectors only
// when nonzero is set), as exact probabilities.
inline std::vector<mpq_class> rank_histogram(const FieldPtr& field, std::uint32_t t, std::uint32_t v, bool nonzero) {
    const std::uint32_t q = field->order();
    const std::uint64_t first = nonzero ? 1 : 0;
    const std::uint64_t per_row = ipow(q, v);
    std::vector<std::uint64_t> counts(std::min(t, v) + 1, 0);
    std::uint64_t total = 0;
    std::vector<std::uint64_t> digits(t, first);
    while (true) {
        std::vector<Vec> rows;
        for (auto d : digits) rows.push_back(vector_of(d, v, q));
        ++counts[t == 0 ? 0 : rank_of(*field, rows)];
        ++total;
        std::size_t i = 0;
        while (i < t && ++digits[i] == per_row) digits[i++] = first;
        if (i == t) break;
    }
    std::vector<mpq_class> out;
    for (auto c : counts) {
        mpq_class p(c, total);
        p.canonicalize();
        out.push_back(p);
    }
    return out;
}

// Rank of H(S) straight from the definition.
inline std::size_t rank_hs(const sepred::GFMatrix& h, std::uint64_t set_mask) {
    std::vector<Vec> rows;
    for (std::size_t r = 0; r < h.rows(); ++r) {
        const auto row = h.row(r);
        bool vanishes = true;
        Vec kept;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (set_mask >> c & 1) {
                if (row[c] != 0) vanishes = false;
            } else {
                kept.push_back(row[c]);
            }
        }
        if (vanishes) rows.push_back(kept);
    }
    return rank_of(*h.field(), rows);
}

// First failing set of the given size in colex order (colex order of
// k-subsets is the numeric order of their bitmasks).
inline std::optional<std::uint64_t> first_failing(const sepred::GFMatrix& h, std::uint32_t redundancy,
                                                  std::uint32_t size) {
    const std::uint32_t n = static_cast<std::uint32_t>(h.cols());
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        if (static_cast<std::uint32_t>(std::popcount(m)) != size) continue;
        if (rank_hs(h, m) != redundancy - size) return m;
    }
    return std::nullopt;
}

inline std::vector<std::uint32_t> mask_to_set(std::uint64_t m) {
    std::vector<std::uint32_t> s;
    for (std::uint32_t i = 0; m; ++i, m >>= 1)
        if (m & 1) s.push_back(i);
    return s;
}

// l-separating by checking every size 0..l from the definition.
inline bool separating_all_sizes(const sepred::GFMatrix& h, std::uint32_t redundancy, std::uint32_t l) {
    for (std::uint32_t s = 0; s <= l; ++s)
        if (first_failing(h, redundancy, s)) return false;
    return true;
}

// Orthogonal-array strength check by direct tuple counting.
inline bool orthogonal_array(const sepred::GFMatrix& m, std::uint32_t strength) {
    const std::uint32_t q = m.field()->order();
    const std::uint32_t n = static_cast<std::uint32_t>(m.cols());
    const std::uint64_t tuples = ipow(q, strength);
    if (m.rows() % tuples) return false;
    for (std::uint64_t cols = 0; cols < (std::uint64_t{1} << n); ++cols) {
        if (static_cast<std::uint32_t>(std::popcount(cols)) != strength) continue;
        const auto idx = mask_to_set(cols);
        std::map<std::vector<Elem>, std::uint64_t> seen;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            std::vector<Elem> key;
            for (auto c : idx) key.push_back(m.at(r, c));
            ++seen[key];
        }
        if (seen.size() != tuples) return false;
        for (const auto& [k, c] : seen)
            if (c != m.rows() / tuples) return false;
    }
    return true;
}

// Schonheim-type and volume bounds written out from their definitions with
// plain big-integer ceilings.
inline mpz_class ceil_div(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline mpz_class binom(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline mpz_class schonheim_nested(std::uint64_t n, std::uint64_t mu, std::uint64_t l, std::uint64_t lambda) {
    mpz_class value = lambda;
    for (std::uint64_t j = 1; j <= l; ++j) value = ceil_div(value * mpz_class(n - l + j), mpz_class(mu - l + j));
    return value;
}

}  // namespace oracle
