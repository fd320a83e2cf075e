#include "sepred/construct.hpp"

#include <algorithm>
#include <set>

#include "sepred/bounds.hpp"
#include "sepred/errors.hpp"
#include "sepred/rng.hpp"
#include "sepred/separation.hpp"

namespace sepred {

std::vector<std::string> ConstructionResult::comment_block() const {
    std::vector<std::string> out;
    out.push_back("method: " + method);
    out.push_back(std::string("verified: ") + (verified ? "yes" : "no"));
    if (stated_bound) out.push_back("stated bound: " + stated_bound->get_str());
    for (const auto& n : notes) out.push_back(n);
    for (std::size_t r = 0; r < provenance.size(); ++r)
        out.push_back("row " + std::to_string(r) + ": " + provenance[r]);
    return out;
}

namespace {

std::string set_string(std::span<const std::uint32_t> s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + "}";
}

Subset sorted_block(std::span<const std::uint32_t> block, std::uint32_t n) {
    Subset b(block.begin(), block.end());
    std::sort(b.begin(), b.end());
    if (std::adjacent_find(b.begin(), b.end()) != b.end()) throw InvalidArgument("block has repeated coordinates");
    if (!b.empty() && b.back() >= n) throw InvalidArgument("block coordinate out of range");
    return b;
}

// Verifies l-separation and the lower-bound sanity check, then marks the result.
void certify(const LinearCode& code, std::uint32_t l, ConstructionResult& r, unsigned threads) {
    const auto v = is_l_separating(code, r.matrix, l, threads);
    if (!v.separating)
        throw CertificateFailure(r.method + " output is not " + std::to_string(l) + "-separating; witness " +
                                 set_string(*v.witness) + ", rank " + std::to_string(v.achieved_rank) + " < " +
                                 std::to_string(v.required_rank));
    const auto& p = code.params();
    if (l <= p.max_l() && l <= p.n - p.ddual) {
        const mpz_class lower = lower_schonheim(p, l);
        if (mpz_class(std::to_string(r.rows())) < lower)
            throw CertificateFailure(r.method + " produced fewer rows than the lower bound " + lower.get_str());
    }
    r.verified = true;
}

// Dual-codeword row accumulator with row supports for rank queries on A(S).
class RowAccumulator {
public:
    explicit RowAccumulator(const LinearCode& code)
        : matrix_(code.field(), 0, code.params().n), words_((code.params().n + 63) / 64) {}

    void add(std::span<const Elem> row, std::string origin) {
        matrix_.append_row(row);
        const auto mask = matrix_.support_mask(matrix_.rows() - 1);
        supports_.insert(supports_.end(), mask.begin(), mask.end());
        provenance_.push_back(std::move(origin));
    }

    RowBasis basis_on(const std::vector<std::uint64_t>& smask) const {
        RowBasis basis(matrix_.field(), matrix_.cols());
        for (std::size_t r = 0; r < matrix_.rows(); ++r) {
            bool vanishes = true;
            for (std::size_t w = 0; w < words_ && vanishes; ++w) vanishes = !(supports_[r * words_ + w] & smask[w]);
            if (vanishes) basis.insert_row(matrix_, r);
        }
        return basis;
    }

    std::vector<std::uint64_t> mask_of(const Subset& s) const {
        std::vector<std::uint64_t> m(words_, 0);
        for (auto c : s) m[c / 64] |= std::uint64_t{1} << (c % 64);
        return m;
    }

    GFMatrix& matrix() { return matrix_; }
    std::vector<std::string>& provenance() { return provenance_; }

private:
    GFMatrix matrix_;
    std::size_t words_;
    std::vector<std::uint64_t> supports_;
    std::vector<std::string> provenance_;
};

std::vector<Elem> combine(const GFMatrix& pcm, std::span<const Elem> coeffs) {
    const Field& f = *pcm.field();
    std::vector<Elem> row(pcm.cols(), 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (!coeffs[i]) continue;
        for (std::size_t c = 0; c < pcm.cols(); ++c)
            if (const Elem e = pcm.at(i, c)) row[c] = f.add(row[c], f.mul(coeffs[i], e));
    }
    return row;
}

void sample_rows(const LinearCode& code, std::uint64_t t, std::uint64_t seed, SamplingMode mode, RowAccumulator& acc) {
    CounterRng rng(seed);
    const std::size_t D = code.params().redundancy();
    const std::uint32_t q = code.params().q;
    std::vector<Elem> coeffs(D);
    for (std::uint64_t i = 0; i < t; ++i) {
        bool zero;
        do {
            zero = true;
            for (auto& c : coeffs) {
                c = static_cast<Elem>(rng.below(q));
                zero = zero && c == 0;
            }
        } while (zero && mode == SamplingMode::nonzero);
        acc.add(combine(code.pcm(), coeffs), "sample " + std::to_string(i));
    }
}

// Appends shortened-dual basis rows (canonical rref order) to every deficient
// l-subset, visiting subsets in colex order.
void repair(const LinearCode& code, std::uint32_t l, RowAccumulator& acc, const std::vector<bool>* skip_inside) {
    const auto& p = code.params();
    const std::size_t required = p.redundancy() - l;
    for_each_subset_colex(p.n, l, [&](const Subset& s) {
        if (skip_inside && std::all_of(s.begin(), s.end(), [&](std::uint32_t c) { return (*skip_inside)[c]; })) return;
        RowBasis basis = acc.basis_on(acc.mask_of(s));
        if (basis.rank() >= required) return;
        const GFMatrix shortened = rref(extract_is_ms(code, s).m_b).matrix;
        for (std::size_t r = 0; r < shortened.rows() && basis.rank() < required; ++r) {
            const auto row = shortened.row(r);
            if (basis.insert(row)) acc.add(row, "repair " + set_string(s));
        }
        if (basis.rank() < required) throw CertificateFailure("repair could not reach full rank");
    });
}

}  // namespace

StandardForm standard_form_pcm(const LinearCode& code) {
    auto reduced = rref(code.pcm());
    StandardForm out{std::move(reduced.matrix), {}};
    for (auto c : reduced.pivots) out.identity_columns.push_back(static_cast<std::uint32_t>(c));
    return out;
}

IsMs extract_is_ms(const LinearCode& code, std::span<const std::uint32_t> block) {
    const auto& p = code.params();
    const Subset b = sorted_block(block, p.n);
    if (b.size() > p.redundancy()) throw InvalidArgument("block larger than n-k has dependent columns");
    std::vector<std::uint32_t> order(b.begin(), b.end());
    for (std::uint32_t c = 0; c < p.n; ++c)
        if (!std::binary_search(b.begin(), b.end(), c)) order.push_back(c);
    const auto reduced = rref(code.pcm().select_columns(order));
    for (std::size_t i = 0; i < b.size(); ++i)
        if (i >= reduced.pivots.size() || reduced.pivots[i] != i)
            throw InvalidArgument("parity-check columns " + set_string(b) + " are linearly dependent");
    std::vector<std::uint32_t> inverse(p.n);
    for (std::uint32_t j = 0; j < p.n; ++j) inverse[order[j]] = j;
    const GFMatrix restored = reduced.matrix.select_columns(inverse);
    std::vector<std::size_t> top, bottom;
    for (std::size_t r = 0; r < p.redundancy(); ++r) (r < b.size() ? top : bottom).push_back(r);
    return {restored.select_rows(top), restored.select_rows(bottom)};
}

ConstructionResult construct_covering_based(const LinearCode& code, std::uint32_t l, const std::vector<Subset>& blocks,
                                            const CoveringConstructionOptions& options) {
    const auto& p = code.params();
    require_bound_l(p, l);
    GeneralizedCovering g{p.n, l, 1, {}};
    for (const auto& b : blocks) g.blocks.push_back(sorted_block(b, p.n));
    const auto coverage = verify_covering(g, options.threads);
    if (!coverage.covered) throw InvalidArgument("blocks do not cover " + set_string(*coverage.uncovered));

    ConstructionResult r{GFMatrix(code.field(), 0, p.n), options.ms_only ? "covering (M_B only)" : "covering", false,
                         std::nullopt, {}, {}};
    std::set<std::vector<Elem>> seen;
    std::size_t stacked = 0;
    auto push = [&](const GFMatrix& m, std::size_t i, const std::string& origin) {
        for (std::size_t row = 0; row < m.rows(); ++row) {
            ++stacked;
            const auto v = m.row(row);
            if (options.deduplicate && !seen.insert(v).second) continue;
            r.matrix.append_row(v);
            r.provenance.push_back("block " + std::to_string(i) + " " + origin);
        }
    };
    for (std::size_t i = 0; i < g.blocks.size(); ++i) {
        const auto& b = g.blocks[i];
        if (options.ms_only && b.size() != l) throw InvalidArgument("M_B-only stacking needs blocks of size l");
        const IsMs parts = extract_is_ms(code, b);
        if (!options.ms_only) push(parts.i_b, i, "I");
        push(parts.m_b, i, "M");
    }
    const std::uint64_t per_block = options.ms_only ? p.redundancy() - l : p.redundancy();
    r.stated_bound = mpz_class(std::to_string(per_block * g.blocks.size()));
    r.notes.push_back("blocks: " + std::to_string(g.blocks.size()) + ", stacked rows: " + std::to_string(stacked) +
                      (options.deduplicate ? ", exact duplicates removed" : ""));
    certify(code, l, r, options.threads);
    return r;
}

ConstructionResult construct_covering_based(const LinearCode& code, std::uint32_t l, const Covering& covering,
                                            const CoveringConstructionOptions& options) {
    if (covering.n != code.params().n || covering.l != l) throw InvalidArgument("covering does not match n and l");
    return construct_covering_based(code, l, covering.blocks, options);
}

ConstructionResult construct_covering_based(const LinearCode& code, std::uint32_t l,
                                            const GeneralizedCovering& covering,
                                            const CoveringConstructionOptions& options) {
    if (covering.n != code.params().n || covering.l != l) throw InvalidArgument("covering does not match n and l");
    return construct_covering_based(code, l, covering.blocks, options);
}

ConstructionResult construct_randomized(const LinearCode& code, std::uint32_t l, std::uint64_t t, std::uint64_t seed,
                                        SamplingMode mode, unsigned threads) {
    const auto& p = code.params();
    require_bound_l(p, l);
    RowAccumulator acc(code);
    sample_rows(code, t, seed, mode, acc);
    repair(code, l, acc, nullptr);
    const bool uniform = mode == SamplingMode::uniform;
    ConstructionResult r{std::move(acc.matrix()), uniform ? "randomized" : "randomized (nonzero)", false,
                         uniform ? upper_prob_basic(p, l).value : upper_prob_nonzero(p, l).value,
                         std::move(acc.provenance()), {}};
    r.notes.push_back("seed: " + std::to_string(seed) + ", sampled rows: " + std::to_string(t) +
                      ", repair rows: " + std::to_string(r.rows() - t));
    certify(code, l, r, threads);
    return r;
}

ConstructionResult construct_generic(const LinearCode& code, std::uint32_t l, unsigned threads) {
    const auto& p = code.params();
    require_bound_l(p, l);
    const std::uint32_t D = p.redundancy();
    const std::uint32_t q = p.q;
    ConstructionResult r{GFMatrix(code.field(), 0, p.n), "generic", false, upper_generic(p, l), {}, {}};
    std::vector<Elem> coeffs(D);
    for (std::uint32_t size = 1; size <= std::min(l + 1, D); ++size) {
        Subset rows = first_subset(size);
        do {
            // first chosen row gets coefficient 1, the others run over nonzero values
            std::vector<Elem> digits(size, 1);
            for (;;) {
                std::fill(coeffs.begin(), coeffs.end(), 0);
                for (std::size_t i = 0; i < size; ++i) coeffs[rows[i]] = digits[i];
                r.matrix.append_row(combine(code.pcm(), coeffs));
                r.provenance.push_back("rows " + set_string(rows));
                std::size_t j = 1;
                for (; j < size; ++j) {
                    if (++digits[j] < q) break;
                    digits[j] = 1;
                }
                if (j == size) break;
            }
        } while (next_lex(rows, D));
    }
    certify(code, l, r, threads);
    return r;
}

ConstructionResult construct_hybrid(const LinearCode& code, std::uint32_t l, std::uint64_t t, std::uint64_t seed,
                                    unsigned threads) {
    const auto& p = code.params();
    require_bound_l(p, l);
    const StandardForm sf = standard_form_pcm(code);
    RowAccumulator acc(code);
    for (std::size_t i = 0; i < sf.matrix.rows(); ++i)
        acc.add(sf.matrix.row(i), "standard form, identity column " + std::to_string(sf.identity_columns[i]));
    sample_rows(code, t, seed, SamplingMode::nonzero, acc);
    std::vector<bool> inside(p.n, false);
    for (auto c : sf.identity_columns) inside[c] = true;
    repair(code, l, acc, &inside);
    ConstructionResult r{std::move(acc.matrix()), "hybrid", false, upper_prob_hybrid(p, l).value,
                         std::move(acc.provenance()), {}};
    r.notes.push_back("seed: " + std::to_string(seed) + ", sampled rows: " + std::to_string(t) +
                      ", identity columns: " + set_string(sf.identity_columns));
    certify(code, l, r, threads);
    return r;
}

}  // namespace sepred
