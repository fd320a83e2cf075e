#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace sepred {

using Subset = std::vector<std::uint32_t>;

/// Exact binomial coefficient; throws LimitExceeded on 64-bit overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Binomial saturated at UINT64_MAX instead of throwing (for guard checks).
std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k);

mpz_class binomial_big(unsigned long n, unsigned long k);

mpz_class power_big(unsigned long base, unsigned long exponent);

/// Colexicographic rank of a sorted subset: sum over i of C(s_i, i+1).
std::uint64_t colex_rank(std::span<const std::uint32_t> subset);

/// Inverse of colex_rank for subsets of the given size.
Subset colex_unrank(std::uint64_t rank, std::size_t size);

/// Advances a sorted subset of {0..n-1} to its colex successor.
/// Returns false (leaving the subset untouched) when it is the last one.
bool next_colex(Subset& subset, std::uint32_t n);

/// Advances a sorted subset of {0..n-1} to its lexicographic successor.
bool next_lex(Subset& subset, std::uint32_t n);

/// The first subset of the given size in either order: {0, 1, ..., size-1}.
Subset first_subset(std::size_t size);

/// Calls fn(const Subset&) for every size-k subset of {0..n-1} in colex order.
template <typename Fn>
void for_each_subset_colex(std::uint32_t n, std::size_t k, Fn&& fn) {
    if (k > n) return;
    Subset s = first_subset(k);
    do {
        fn(static_cast<const Subset&>(s));
    } while (next_colex(s, n));
}

/// Calls fn on every size-k subset of the given sorted point list, in colex
/// order of positions within the list.
template <typename Fn>
void for_each_sub_subset(std::span<const std::uint32_t> points, std::size_t k, Fn&& fn) {
    const auto m = static_cast<std::uint32_t>(points.size());
    if (k > m) return;
    Subset pos = first_subset(k);
    Subset mapped(k);
    do {
        for (std::size_t i = 0; i < k; ++i) mapped[i] = points[pos[i]];
        fn(static_cast<const Subset&>(mapped));
    } while (next_colex(pos, m));
}

/// Colex comparison of two sorted subsets of equal size.
bool colex_less(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

}  // namespace sepred
