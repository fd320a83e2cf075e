#include "sepred/covering.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "sepred/errors.hpp"
#include "sepred/parallel.hpp"
#include "sepred/rng.hpp"

namespace sepred {

namespace {

constexpr std::uint64_t kMaxSubsets = 100'000'000;

// Pascal triangle up to n for fast colex ranks.
class BinomialTable {
public:
    BinomialTable(std::uint32_t n, std::uint32_t k) : k_(k + 1), data_((n + 1) * (k + 1), 0) {
        for (std::uint32_t a = 0; a <= n; ++a)
            for (std::uint32_t b = 0; b <= k && b <= a; ++b) data_[a * k_ + b] = binomial_saturating(a, b);
    }
    std::uint64_t operator()(std::uint32_t a, std::uint32_t b) const { return data_[a * k_ + b]; }

    std::uint64_t rank(const Subset& s) const {
        std::uint64_t r = 0;
        for (std::size_t i = 0; i < s.size(); ++i) r += (*this)(s[i], static_cast<std::uint32_t>(i + 1));
        return r;
    }

private:
    std::uint32_t k_;
    std::vector<std::uint64_t> data_;
};

void check_block(const Subset& b, std::uint32_t n) {
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i] >= n) throw InvalidArgument("block point " + std::to_string(b[i]) + " out of range");
        if (i > 0 && b[i - 1] >= b[i]) throw InvalidArgument("block points must be strictly increasing");
    }
}

CoverageResult verify_blocks(std::uint32_t n, std::uint32_t l, std::uint32_t lambda, const std::vector<Subset>& blocks,
                             unsigned threads) {
    if (l == 0 || l > n) throw InvalidArgument("covering strength must be in [1, n]");
    if (lambda == 0 || lambda > 200) throw InvalidArgument("covering multiplicity must be in [1, 200]");
    const std::uint64_t total = binomial_saturating(n, l);
    if (total > kMaxSubsets) throw LimitExceeded("C(n,l) exceeds the verification limit");
    for (const auto& b : blocks) check_block(b, n);

    const BinomialTable table(n, l);
    std::vector<std::atomic<std::uint8_t>> counts(total);
    for (auto& c : counts) c.store(0, std::memory_order_relaxed);
    parallel_chunks(blocks.size(), threads ? threads : resolve_threads(),
                    [&](std::uint64_t begin, std::uint64_t end, unsigned) {
                        for (std::uint64_t i = begin; i < end; ++i) {
                            for_each_sub_subset(blocks[i], l, [&](const Subset& s) {
                                auto& c = counts[table.rank(s)];
                                if (c.load(std::memory_order_relaxed) < lambda)
                                    c.fetch_add(1, std::memory_order_relaxed);
                            });
                        }
                    });
    for (std::uint64_t r = 0; r < total; ++r)
        if (counts[r].load(std::memory_order_relaxed) < lambda) return {false, colex_unrank(r, l)};
    return {true, std::nullopt};
}

}  // namespace

std::uint32_t GeneralizedCovering::max_block_size() const {
    std::size_t m = 0;
    for (const auto& b : blocks) m = std::max(m, b.size());
    return static_cast<std::uint32_t>(m);
}

CoverageResult verify_covering(const Covering& c, unsigned threads) {
    if (c.mu < c.l || c.mu > c.n) throw InvalidArgument("covering needs n >= mu >= l");
    for (const auto& b : c.blocks)
        if (b.size() != c.mu) throw InvalidArgument("block of size " + std::to_string(b.size()) + " in a mu = " +
                                                    std::to_string(c.mu) + " covering");
    return verify_blocks(c.n, c.l, c.lambda, c.blocks, threads);
}

CoverageResult verify_covering(const GeneralizedCovering& c, unsigned threads) {
    return verify_blocks(c.n, c.l, c.lambda, c.blocks, threads);
}

mpz_class schonheim_lower(std::uint64_t n, std::uint64_t mu, std::uint64_t l, std::uint64_t lambda) {
    if (!(n >= mu && mu >= l && l >= 1)) throw InvalidArgument("Schonheim bound needs n >= mu >= l >= 1");
    if (lambda == 0) throw InvalidArgument("Schonheim bound needs lambda >= 1");
    mpz_class value = lambda;
    for (std::uint64_t j = 1; j <= l; ++j) {
        const std::uint64_t x = n - l + j;
        const std::uint64_t y = mu - l + j;
        mpz_class num = value * x;
        mpz_cdiv_q_ui(value.get_mpz_t(), num.get_mpz_t(), y);
    }
    return value;
}

namespace {

struct GreedyState {
    std::uint32_t n, mu, l;
    BinomialTable table;
    std::vector<std::uint32_t> counts;  // per l-subset, indexed by colex rank

    GreedyState(std::uint32_t n_, std::uint32_t mu_, std::uint32_t l_)
        : n(n_), mu(mu_), l(l_), table(n_, mu_), counts(binomial(n_, l_), 0) {}

    std::uint64_t gain(const Subset& block, std::uint32_t pass) const {
        std::uint64_t g = 0;
        for_each_sub_subset(block, l, [&](const Subset& s) {
            if (counts[table.rank(s)] < pass) ++g;
        });
        return g;
    }
};

// Lexicographic index of a mu-subset: colex rank of the reflected set, reversed.
std::uint64_t lex_index(const Subset& s, std::uint32_t n, const BinomialTable& table, std::uint64_t total) {
    Subset reflected(s.rbegin(), s.rend());
    for (auto& x : reflected) x = n - 1 - x;
    return total - 1 - table.rank(reflected);
}

Subset lex_subset(std::uint64_t index, std::uint32_t n, std::size_t size, std::uint64_t total) {
    Subset reflected = colex_unrank(total - 1 - index, size);
    Subset s(reflected.rbegin(), reflected.rend());
    for (auto& x : s) x = n - 1 - x;
    return s;
}

void greedy_exhaustive(GreedyState& st, std::uint32_t lambda, const GreedyOptions& opt, std::vector<Subset>& blocks) {
    const std::uint64_t total = binomial(st.n, st.mu);
    std::vector<std::uint64_t> keys;
    if (opt.randomized) {
        keys.resize(total);
        for (std::uint64_t c = 0; c < total; ++c) keys[c] = CounterRng::mix(opt.seed + (c + 1) * 0x9e3779b97f4a7c15ULL);
    }
    std::vector<std::uint32_t> gains(total);
    for (std::uint32_t pass = 1; pass <= lambda; ++pass) {
        for (std::uint64_t c = 0; c < total; ++c)
            gains[c] = static_cast<std::uint32_t>(st.gain(lex_subset(c, st.n, st.mu, total), pass));
        for (;;) {
            std::uint64_t best = 0;
            for (std::uint64_t c = 1; c < total; ++c) {
                if (gains[c] > gains[best] || (gains[c] == gains[best] && opt.randomized && keys[c] < keys[best]))
                    best = c;
            }
            if (gains[best] == 0) break;
            const Subset block = lex_subset(best, st.n, st.mu, total);
            blocks.push_back(block);
            for_each_sub_subset(block, st.l, [&](const Subset& t) {
                auto& count = st.counts[st.table.rank(t)];
                ++count;
                if (count != pass) return;
                // t just became satisfied: every candidate containing it loses one.
                Subset rest;
                for (std::uint32_t x = 0, i = 0; x < st.n; ++x) {
                    if (i < t.size() && t[i] == x) {
                        ++i;
                        continue;
                    }
                    rest.push_back(x);
                }
                for_each_sub_subset(rest, st.mu - st.l, [&](const Subset& extra) {
                    Subset c;
                    c.reserve(st.mu);
                    std::merge(t.begin(), t.end(), extra.begin(), extra.end(), std::back_inserter(c));
                    --gains[lex_index(c, st.n, st.table, total)];
                });
            });
        }
    }
}

Subset random_subset(CounterRng& rng, std::uint32_t n, std::uint32_t size) {
    // Floyd's algorithm.
    Subset s;
    for (std::uint32_t j = n - size; j < n; ++j) {
        const auto t = static_cast<std::uint32_t>(rng.below(j + 1));
        if (std::find(s.begin(), s.end(), t) == s.end())
            s.push_back(t);
        else
            s.push_back(j);
    }
    std::sort(s.begin(), s.end());
    return s;
}

void greedy_sampled(GreedyState& st, std::uint32_t lambda, const GreedyOptions& opt, std::vector<Subset>& blocks) {
    CounterRng rng(opt.seed);
    const std::uint64_t total_l = st.counts.size();
    for (std::uint32_t pass = 1; pass <= lambda; ++pass) {
        std::uint64_t cursor = 0;
        for (;;) {
            while (cursor < total_l && st.counts[cursor] >= pass) ++cursor;
            if (cursor == total_l) break;
            // Best-extension candidate grown from the first unsatisfied l-subset.
            Subset ext = colex_unrank(cursor, st.l);
            while (ext.size() < st.mu) {
                std::uint64_t best_gain = 0;
                std::uint32_t best_point = st.n;
                for (std::uint32_t x = 0; x < st.n; ++x) {
                    if (std::binary_search(ext.begin(), ext.end(), x)) continue;
                    Subset trial = ext;
                    trial.insert(std::upper_bound(trial.begin(), trial.end(), x), x);
                    const std::uint64_t g = st.gain(trial, pass);
                    if (best_point == st.n || g > best_gain) {
                        best_gain = g;
                        best_point = x;
                    }
                }
                ext.insert(std::upper_bound(ext.begin(), ext.end(), best_point), best_point);
            }
            Subset best = ext;
            std::uint64_t best_gain = st.gain(ext, pass);
            for (std::uint64_t i = 0; i < opt.samples_per_round; ++i) {
                Subset cand = random_subset(rng, st.n, st.mu);
                const std::uint64_t g = st.gain(cand, pass);
                if (g > best_gain) {
                    best_gain = g;
                    best = std::move(cand);
                }
            }
            blocks.push_back(best);
            for_each_sub_subset(best, st.l, [&](const Subset& t) { ++st.counts[st.table.rank(t)]; });
        }
    }
}

}  // namespace

Covering greedy_covering(std::uint32_t n, std::uint32_t mu, std::uint32_t l, std::uint32_t lambda,
                         const GreedyOptions& options) {
    if (!(n >= mu && mu >= l && l >= 1)) throw InvalidArgument("greedy covering needs n >= mu >= l >= 1");
    if (lambda == 0 || lambda > 200) throw InvalidArgument("greedy covering needs lambda in [1, 200]");
    if (binomial_saturating(n, l) > kMaxSubsets) throw LimitExceeded("C(n,l) exceeds the covering limit");
    Covering c{n, mu, l, lambda, {}};
    GreedyState st(n, mu, l);
    if (binomial_saturating(n, mu) <= options.exhaustive_limit)
        greedy_exhaustive(st, lambda, options, c.blocks);
    else
        greedy_sampled(st, lambda, options, c.blocks);
    const auto check = verify_covering(c);
    if (!check.covered) throw CertificateFailure("greedy covering failed verification");
    return c;
}

Covering pad_to_covering(const GeneralizedCovering& g, std::uint32_t mu) {
    if (mu > g.n) throw InvalidArgument("padding size exceeds the point count");
    Covering c{g.n, mu, g.l, g.lambda, {}};
    c.blocks.reserve(g.blocks.size());
    for (const auto& b : g.blocks) {
        if (b.size() > mu) throw InvalidArgument("block larger than the padding size");
        Subset padded = b;
        for (std::uint32_t x = 0; padded.size() < mu; ++x)
            if (!std::binary_search(b.begin(), b.end(), x)) padded.push_back(x);
        std::sort(padded.begin(), padded.end());
        c.blocks.push_back(std::move(padded));
    }
    return c;
}

// ---------------------------------------------------------------------------

namespace {

// Strips a '#' comment and splits on whitespace.
std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream ss(line.substr(0, line.find('#')));
    std::vector<std::string> out;
    for (std::string tok; ss >> tok;) out.push_back(tok);
    return out;
}

std::uint64_t parse_uint(const std::string& tok, std::size_t line) {
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
        throw ParseError("expected a nonnegative integer, got '" + tok + "'", line);
    try {
        return std::stoull(tok);
    } catch (const std::out_of_range&) {
        throw ParseError("integer out of range: " + tok, line);
    }
}

}  // namespace

CoveringTable parse_covering_table(std::istream& in) {
    CoveringTable table;
    std::string line;
    for (std::size_t number = 1; std::getline(in, line); ++number) {
        const auto tok = tokens_of(line);
        if (tok.empty()) continue;
        if (tok.size() != 4) throw ParseError("expected 'n mu l size'", number);
        const auto n = parse_uint(tok[0], number);
        const auto mu = parse_uint(tok[1], number);
        const auto l = parse_uint(tok[2], number);
        const auto size = parse_uint(tok[3], number);
        if (!(n >= mu && mu >= l && l >= 1) || n > 1'000'000)
            throw ParseError("covering parameters need n >= mu >= l >= 1", number);
        const mpz_class floor = schonheim_lower(n, mu, l, 1);
        if (mpz_class(std::to_string(size)) < floor)
            throw ParseError("size " + std::to_string(size) + " for C(" + tok[0] + "," + tok[1] + "," + tok[2] +
                                 ") is below the Schonheim bound " + floor.get_str(),
                             number);
        table[{static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(mu), static_cast<std::uint32_t>(l)}] = size;
    }
    return table;
}

CoveringTable load_covering_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open covering table '" + path + "'");
    return parse_covering_table(in);
}

void write_covering(std::ostream& out, const Covering& c) {
    out << "COVER " << c.n << ' ' << c.mu << ' ' << c.l << ' ' << c.lambda << '\n';
    for (const auto& b : c.blocks) {
        for (std::size_t i = 0; i < b.size(); ++i) out << (i ? " " : "") << b[i];
        out << '\n';
    }
}

void write_generalized_covering(std::ostream& out, const GeneralizedCovering& g) {
    out << "GCOVER " << g.n << ' ' << g.l << ' ' << g.lambda << '\n';
    for (const auto& b : g.blocks) {
        for (std::size_t i = 0; i < b.size(); ++i) out << (i ? " " : "") << b[i];
        out << '\n';
    }
}

namespace {

std::vector<std::vector<std::string>> read_records(std::istream& in, const std::string& magic, std::size_t fields,
                                                   std::vector<std::uint64_t>& header, std::size_t& header_line) {
    std::string line;
    std::vector<std::vector<std::string>> records;
    bool have_header = false;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto tok = tokens_of(line);
        if (tok.empty()) continue;
        if (!have_header) {
            if (tok[0] != magic || tok.size() != fields + 1) throw ParseError("expected '" + magic + "' header", number);
            for (std::size_t i = 1; i < tok.size(); ++i) header.push_back(parse_uint(tok[i], number));
            have_header = true;
            header_line = number;
            continue;
        }
        auto rec = tok;
        rec.push_back(std::to_string(number));
        records.push_back(std::move(rec));
    }
    if (!have_header) throw ParseError("missing '" + magic + "' header", number);
    return records;
}

Subset parse_block(const std::vector<std::string>& rec, std::uint64_t n) {
    const std::size_t line = std::stoull(rec.back());
    Subset b;
    for (std::size_t i = 0; i + 1 < rec.size(); ++i) {
        const auto x = parse_uint(rec[i], line);
        if (x >= n) throw ParseError("point " + rec[i] + " out of range", line);
        b.push_back(static_cast<std::uint32_t>(x));
    }
    std::sort(b.begin(), b.end());
    if (std::adjacent_find(b.begin(), b.end()) != b.end()) throw ParseError("repeated point in block", line);
    return b;
}

}  // namespace

Covering read_covering(std::istream& in) {
    std::vector<std::uint64_t> h;
    std::size_t header_line = 0;
    const auto records = read_records(in, "COVER", 4, h, header_line);
    if (!(h[0] >= h[1] && h[1] >= h[2] && h[2] >= 1 && h[3] >= 1))
        throw ParseError("COVER header needs n >= mu >= l >= 1 and lambda >= 1", header_line);
    Covering c{static_cast<std::uint32_t>(h[0]), static_cast<std::uint32_t>(h[1]), static_cast<std::uint32_t>(h[2]),
               static_cast<std::uint32_t>(h[3]), {}};
    for (const auto& rec : records) {
        Subset b = parse_block(rec, c.n);
        if (b.size() != c.mu) throw ParseError("block size differs from mu", std::stoull(rec.back()));
        c.blocks.push_back(std::move(b));
    }
    return c;
}

GeneralizedCovering read_generalized_covering(std::istream& in) {
    std::vector<std::uint64_t> h;
    std::size_t header_line = 0;
    const auto records = read_records(in, "GCOVER", 3, h, header_line);
    if (!(h[0] >= h[1] && h[1] >= 1 && h[2] >= 1))
        throw ParseError("GCOVER header needs n >= l >= 1 and lambda >= 1", header_line);
    GeneralizedCovering g{static_cast<std::uint32_t>(h[0]), static_cast<std::uint32_t>(h[1]),
                          static_cast<std::uint32_t>(h[2]), {}};
    for (const auto& rec : records) g.blocks.push_back(parse_block(rec, g.n));
    return g;
}

}  // namespace sepred
