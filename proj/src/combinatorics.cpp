#include "sepred/combinatorics.hpp"

#include <limits>

#include "sepred/errors.hpp"

namespace sepred {

namespace {

bool binomial_checked(std::uint64_t n, std::uint64_t k, std::uint64_t& out) {
    if (k > n) {
        out = 0;
        return true;
    }
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > std::numeric_limits<std::uint64_t>::max()) return false;
    }
    out = static_cast<std::uint64_t>(r);
    return true;
}

}  // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    std::uint64_t out = 0;
    if (!binomial_checked(n, k, out))
        throw LimitExceeded("binomial(" + std::to_string(n) + "," + std::to_string(k) +
                            ") overflows 64 bits");
    return out;
}

std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) {
    std::uint64_t out = 0;
    if (!binomial_checked(n, k, out)) return std::numeric_limits<std::uint64_t>::max();
    return out;
}

mpz_class binomial_big(unsigned long n, unsigned long k) {
    mpz_class r;
    if (k > n) return r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

mpz_class power_big(unsigned long base, unsigned long exponent) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exponent);
    return r;
}

std::uint64_t colex_rank(std::span<const std::uint32_t> subset) {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < subset.size(); ++i) r += binomial(subset[i], i + 1);
    return r;
}

Subset colex_unrank(std::uint64_t rank, std::size_t size) {
    Subset s(size);
    for (std::size_t i = size; i-- > 0;) {
        // largest c with C(c, i+1) <= rank
        std::uint64_t c = i;
        while (binomial_saturating(c + 1, i + 1) <= rank) ++c;
        s[i] = static_cast<std::uint32_t>(c);
        rank -= binomial(c, i + 1);
    }
    return s;
}

bool next_colex(Subset& s, std::uint32_t n) {
    const std::size_t k = s.size();
    if (k == 0) return false;
    for (std::size_t i = 0; i < k; ++i) {
        const std::uint32_t limit = (i + 1 < k) ? s[i + 1] : n;
        if (s[i] + 1 < limit) {
            ++s[i];
            for (std::size_t j = 0; j < i; ++j) s[j] = static_cast<std::uint32_t>(j);
            return true;
        }
    }
    return false;
}

bool next_lex(Subset& s, std::uint32_t n) {
    const std::size_t k = s.size();
    for (std::size_t i = k; i-- > 0;) {
        if (s[i] < n - k + i) {
            ++s[i];
            for (std::size_t j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
            return true;
        }
    }
    return false;
}

Subset first_subset(std::size_t size) {
    Subset s(size);
    for (std::size_t i = 0; i < size; ++i) s[i] = static_cast<std::uint32_t>(i);
    return s;
}

bool colex_less(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

}  // namespace sepred
