#include "sepred/separation.hpp"

#include <algorithm>
#include <atomic>
#include <limits>

#include "sepred/errors.hpp"
#include "sepred/parallel.hpp"

namespace sepred {

SeparationChecker::SeparationChecker(const GFMatrix& h)
    : h_(h), words_((h.cols() + 63) / 64), supports_(h.rows() * words_, 0) {
    for (std::size_t r = 0; r < h.rows(); ++r) {
        const auto mask = h.support_mask(r);
        std::copy(mask.begin(), mask.end(), supports_.begin() + static_cast<std::ptrdiff_t>(r * words_));
    }
}

void SeparationChecker::mask_of(std::span<const std::uint32_t> coordinates, std::vector<std::uint64_t>& mask) const {
    mask.assign(words_, 0);
    for (auto c : coordinates) {
        if (c >= h_.cols()) throw InvalidArgument("coordinate " + std::to_string(c) + " out of range");
        mask[c / 64] |= std::uint64_t{1} << (c % 64);
    }
}

bool SeparationChecker::vanishes(std::size_t row, const std::vector<std::uint64_t>& mask) const {
    const std::uint64_t* s = supports_.data() + row * words_;
    for (std::size_t w = 0; w < words_; ++w)
        if (s[w] & mask[w]) return false;
    return true;
}

std::size_t SeparationChecker::rank_hs(std::span<const std::uint32_t> coordinates, std::size_t cap) const {
    std::vector<std::uint64_t> mask;
    mask_of(coordinates, mask);
    if (cap == 0) return 0;
    RowBasis basis(h_.field(), h_.cols());
    for (std::size_t r = 0; r < h_.rows(); ++r) {
        if (!vanishes(r, mask)) continue;
        if (basis.insert_row(h_, r) && basis.rank() >= cap) break;
    }
    return basis.rank();
}

std::size_t SeparationChecker::vanishing_rows(std::span<const std::uint32_t> coordinates) const {
    std::vector<std::uint64_t> mask;
    mask_of(coordinates, mask);
    std::size_t count = 0;
    for (std::size_t r = 0; r < h_.rows(); ++r)
        if (vanishes(r, mask)) ++count;
    return count;
}

void require_parity_check(const LinearCode& code, const GFMatrix& h) {
    if (h.cols() != code.params().n) throw InvalidArgument("matrix has wrong number of columns for the code");
    if (h.field()->order() != code.params().q) throw InvalidArgument("matrix field does not match the code");
    RowBasis dual(code.field(), code.params().n);
    for (std::size_t r = 0; r < code.pcm().rows(); ++r) dual.insert_row(code.pcm(), r);
    for (std::size_t r = 0; r < h.rows(); ++r)
        if (!dual.contains(h.row(r)))
            throw InvalidArgument("row " + std::to_string(r) + " is not a dual codeword");
    if (rank(h) != code.params().redundancy()) throw InvalidArgument("rows do not span the dual code");
}

void require_valid_l(const CodeParams& params, std::uint32_t l) {
    if (l == 0) throw InvalidArgument("l must be at least 1");
    if (l <= params.max_l()) return;
    if (params.is_mds() && l == params.redundancy()) return;
    throw InvalidArgument("l = " + std::to_string(l) + " outside [1, " + std::to_string(params.max_l()) + "]");
}

namespace {

Subset checked_subset(std::span<const std::uint32_t> coordinates, std::uint32_t n) {
    Subset s(coordinates.begin(), coordinates.end());
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw InvalidArgument("coordinate set has duplicates");
    if (!s.empty() && s.back() >= n) throw InvalidArgument("coordinate out of range");
    return s;
}

// Checks every size-`size` subset; the failing subset of smallest colex rank
// is the witness regardless of the worker count.
SeparationVerdict check_size(const SeparationChecker& checker, std::uint32_t n, std::uint32_t redundancy,
                             std::uint32_t size, unsigned threads) {
    const std::size_t required = redundancy - size;
    const std::uint64_t total = binomial(n, size);
    constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
    std::atomic<std::uint64_t> first_failure{kNone};

    parallel_chunks(total, threads, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
        Subset s = colex_unrank(begin, size);
        for (std::uint64_t r = begin; r < end; ++r) {
            if (r >= first_failure.load(std::memory_order_relaxed)) return;
            if (checker.rank_hs(s, required) < required) {
                std::uint64_t cur = first_failure.load();
                while (r < cur && !first_failure.compare_exchange_weak(cur, r)) {
                }
                return;
            }
            if (r + 1 < end) next_colex(s, n);
        }
    });

    SeparationVerdict v;
    v.required_rank = required;
    if (first_failure.load() == kNone) {
        v.separating = true;
        v.achieved_rank = required;
        return v;
    }
    v.separating = false;
    v.witness = colex_unrank(first_failure.load(), size);
    v.achieved_rank = checker.rank_hs(*v.witness, required);
    return v;
}

}  // namespace

SeparationVerdict is_s_separating(const LinearCode& code, const GFMatrix& h, std::span<const std::uint32_t> coordinates) {
    const auto& p = code.params();
    require_parity_check(code, h);
    const Subset s = checked_subset(coordinates, p.n);
    if (s.size() >= p.d)
        throw InvalidArgument("|S| = " + std::to_string(s.size()) + " must be at most d - 1 = " + std::to_string(p.d - 1));
    SeparationChecker checker(h);
    SeparationVerdict v;
    v.required_rank = p.redundancy() - s.size();
    v.achieved_rank = checker.rank_hs(s, v.required_rank);
    v.separating = v.achieved_rank == v.required_rank;
    if (!v.separating) v.witness = s;
    return v;
}

SeparationVerdict is_l_separating(const LinearCode& code, const GFMatrix& h, std::uint32_t l, unsigned threads) {
    const auto& p = code.params();
    require_valid_l(p, l);
    require_parity_check(code, h);
    const unsigned workers = threads ? threads : resolve_threads();
    SeparationChecker checker(h);
    if (l > p.max_l()) {
        // MDS with l = n - k: size n-k sets separate for every parity-check
        // matrix, so l-separation reduces to (l-1)-separation.
        SeparationVerdict v = check_size(checker, p.n, p.redundancy(), l - 1, workers);
        v.note = "MDS code, l = n-k: sets of size n-k separate for any parity-check matrix; checked size " +
                 std::to_string(l - 1);
        return v;
    }
    return check_size(checker, p.n, p.redundancy(), l, workers);
}

SeparationVerdict is_l_separating_all_sizes(const LinearCode& code, const GFMatrix& h, std::uint32_t l) {
    const auto& p = code.params();
    require_valid_l(p, l);
    require_parity_check(code, h);
    SeparationChecker checker(h);
    SeparationVerdict last;
    for (std::uint32_t size = 0; size <= l; ++size) {
        last = check_size(checker, p.n, p.redundancy(), size, 1);
        if (!last.separating) return last;
    }
    return last;
}

GFMatrix projective_dual_words(const LinearCode& code, std::uint64_t limit) {
    const GFMatrix all = dual_codewords(code, limit);
    GFMatrix out(code.field(), 0, all.cols());
    for (std::size_t r = 0; r < all.rows(); ++r) {
        const auto v = all.row(r);
        const auto it = std::find_if(v.begin(), v.end(), [](Elem e) { return e != 0; });
        if (it != v.end() && *it == 1) out.append_row(v);
    }
    return out;
}

ExactResult exact_separating_redundancy(const LinearCode& code, std::uint32_t l, std::uint32_t max_rows,
                                        const ExactSearchLimits& limits, unsigned threads) {
    const auto& p = code.params();
    require_valid_l(p, l);
    const std::uint32_t redundancy = p.redundancy();
    // Same reduction as is_l_separating for the MDS l = n-k case.
    const std::uint32_t size = l > p.max_l() ? l - 1 : l;
    const std::uint64_t projective = [&] {
        std::uint64_t count = 0, power = 1;
        for (std::uint32_t i = 0; i < redundancy; ++i) {
            if (power > limits.max_projective * p.q) return limits.max_projective + 1;
            count += power;
            power *= p.q;
        }
        return count;
    }();
    if (projective > limits.max_projective)
        throw LimitExceeded("projective dual words exceed the search limit of " + std::to_string(limits.max_projective));
    if (p.n > 64) throw LimitExceeded("exact search supports n <= 64");

    const GFMatrix words = projective_dual_words(code);
    const auto count = static_cast<std::uint32_t>(words.rows());
    std::vector<std::uint64_t> supports(count);
    for (std::uint32_t r = 0; r < count; ++r) supports[r] = words.support_mask(r)[0];

    std::vector<std::uint64_t> set_masks;
    for_each_subset_colex(p.n, size, [&](const Subset& s) {
        std::uint64_t m = 0;
        for (auto c : s) m |= std::uint64_t{1} << c;
        set_masks.push_back(m);
    });
    const std::size_t required = redundancy - size;

    auto accepts = [&](const Subset& rows) {
        for (std::uint64_t mask : set_masks) {
            std::size_t vanishing = 0;
            for (auto r : rows)
                if (!(supports[r] & mask)) ++vanishing;
            if (vanishing < required) return false;
        }
        for (std::uint64_t mask : set_masks) {
            RowBasis basis(words.field(), words.cols());
            for (auto r : rows) {
                if (supports[r] & mask) continue;
                if (basis.insert_row(words, r) && basis.rank() >= required) break;
            }
            if (basis.rank() < required) return false;
        }
        return true;
    };

    const unsigned workers = threads ? threads : resolve_threads();
    std::atomic<std::uint64_t> checked{0};
    for (std::uint32_t m = redundancy; m <= max_rows && m <= count; ++m) {
        const std::uint64_t total = binomial_saturating(count, m);
        if (total > limits.max_subsets_per_level)
            throw LimitExceeded("C(" + std::to_string(count) + "," + std::to_string(m) +
                                ") candidate row sets exceed the per-level limit");
        constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
        std::atomic<std::uint64_t> hit{kNone};
        parallel_chunks(total, workers, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
            Subset s = colex_unrank(begin, m);
            std::uint64_t local = 0;
            for (std::uint64_t r = begin; r < end; ++r) {
                if (r >= hit.load(std::memory_order_relaxed)) break;
                ++local;
                if (accepts(s)) {
                    std::uint64_t cur = hit.load();
                    while (r < cur && !hit.compare_exchange_weak(cur, r)) {
                    }
                    break;
                }
                if (r + 1 < end) next_colex(s, count);
            }
            checked += local;
        });
        if (hit.load() != kNone) {
            const Subset rows = colex_unrank(hit.load(), m);
            std::vector<std::size_t> idx(rows.begin(), rows.end());
            return ExactResult{m, words.select_rows(idx), checked.load()};
        }
    }
    throw LimitExceeded("no l-separating parity-check matrix with at most " + std::to_string(max_rows) + " rows");
}

}  // namespace sepred
