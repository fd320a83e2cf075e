#include "sepred/bounds.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "sepred/errors.hpp"
#include "sepred/parallel.hpp"

namespace sepred {

namespace {

mpz_class qpow(std::uint64_t q, std::uint64_t e) { return power_big(static_cast<unsigned long>(q), static_cast<unsigned long>(e)); }

mpz_class ceil_div(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

mpz_class big(std::uint64_t x) { return mpz_class(std::to_string(x)); }

std::uint64_t choose2(std::uint64_t x) { return x < 2 ? 0 : x * (x - 1) / 2; }

}  // namespace

mpz_class gaussian_binomial(std::uint64_t x, std::uint64_t y, std::uint64_t q) {
    if (y > x) throw InvalidArgument("Gaussian binomial needs x >= y");
    if (q < 2) throw InvalidArgument("Gaussian binomial needs q >= 2");
    mpz_class num = 1, den = 1;
    for (std::uint64_t i = 0; i < y; ++i) {
        num *= qpow(q, x - i) - 1;
        den *= qpow(q, i + 1) - 1;
    }
    return num / den;
}

mpz_class f_q(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    mpz_class total = 0;
    for (std::uint64_t i = 0; i <= a; ++i) {
        mpz_class term = binomial_big(static_cast<unsigned long>(a), static_cast<unsigned long>(i));
        const mpz_class base = qpow(q, a - i);
        for (std::uint64_t j = 0; j < b; ++j) term *= base - qpow(q, j);
        if (i % 2) total -= term;
        else total += term;
    }
    return total;
}

RankDistribution rank_distribution(std::uint64_t t, std::uint64_t v, std::uint64_t q) {
    RankDistribution d{t, v, q, {}};
    const mpz_class den = qpow(q, v * t);
    const mpz_class qt = qpow(q, t);
    for (std::uint64_t r = 0; r <= std::min(t, v); ++r) {
        mpz_class num = gaussian_binomial(v, r, q);
        for (std::uint64_t i = 0; i < r; ++i) num *= qt - qpow(q, i);
        mpq_class p(num, den);
        p.canonicalize();
        d.probabilities.push_back(p);
    }
    return d;
}

RankDistribution rank_distribution_nonzero(std::uint64_t t, std::uint64_t v, std::uint64_t q) {
    if (v == 0 && t > 0) throw InvalidArgument("no nonzero vectors in a 0-dimensional space");
    RankDistribution d{t, v, q, {}};
    mpz_class den = 1;
    for (std::uint64_t i = 0; i < t; ++i) den *= qpow(q, v) - 1;
    for (std::uint64_t r = 0; r <= std::min(t, v); ++r) {
        mpq_class p(gaussian_binomial(v, r, q) * f_q(t, r, q), den);
        p.canonicalize();
        d.probabilities.push_back(p);
    }
    return d;
}

void require_bound_l(const CodeParams& p, std::uint32_t l) {
    p.validate();
    if (l == 0) throw InvalidArgument("l must be at least 1");
    if (l > p.max_l())
        throw InvalidArgument("l = " + std::to_string(l) + " outside [1, " + std::to_string(p.max_l()) + "]");
}

mpz_class lower_volume(const CodeParams& p, std::uint32_t l) {
    require_bound_l(p, l);
    if (l > p.n - p.ddual) throw InvalidArgument("volume bound needs l <= n - ddual");
    return ceil_div(binomial_big(p.n, l) * (p.redundancy() - l), binomial_big(p.n - p.ddual, l));
}

mpz_class lower_schonheim(const CodeParams& p, std::uint32_t l) {
    require_bound_l(p, l);
    if (l > p.n - p.ddual) throw InvalidArgument("Schonheim-type bound needs l <= n - ddual");
    return schonheim_lower(p.n, p.n - p.ddual, l, p.redundancy() - l);
}

namespace {

// g(t) = offset + t + floor(coeff * sum_m weight_m base_m^t / denom^t).
struct ExpSum {
    std::vector<mpz_class> weights;
    std::vector<mpz_class> bases;
    mpz_class denom;
    mpz_class coeff;
    std::uint64_t offset = 0;

    mpz_class floor_term(std::uint64_t t) const {
        mpz_class num = 0;
        for (std::size_t m = 0; m < bases.size(); ++m) {
            mpz_class b;
            mpz_pow_ui(b.get_mpz_t(), bases[m].get_mpz_t(), t);
            num += weights[m] * b;
        }
        mpz_class d;
        mpz_pow_ui(d.get_mpz_t(), denom.get_mpz_t(), t);
        return floor_div(coeff * num, d);
    }

    mpz_class at(std::uint64_t t) const { return floor_term(t) + big(offset + t); }

    ScanResult minimize() const {
        // Powers are advanced incrementally; the scan ends when the floor term is 0.
        std::vector<mpz_class> powers(bases.size());
        for (auto& x : powers) x = 1;
        mpz_class dpow = 1;
        ScanResult best;
        bool have = false;
        for (std::uint64_t t = 1;; ++t) {
            mpz_class num = 0;
            for (std::size_t m = 0; m < bases.size(); ++m) {
                powers[m] *= bases[m];
                num += weights[m] * powers[m];
            }
            dpow *= denom;
            const mpz_class floor_part = floor_div(coeff * num, dpow);
            const mpz_class g = floor_part + big(offset + t);
            if (!have || g < best.value) {
                best.value = g;
                best.t = t;
                have = true;
            }
            if (floor_part == 0) return best;
            if (t > 100'000'000) throw LimitExceeded("t-scan did not terminate");
        }
    }
};

struct Shape {
    std::uint64_t q, D, lambda;
    mpz_class choose;  // C(n,l)
};

Shape shape_of(const CodeParams& p, std::uint32_t l) {
    require_bound_l(p, l);
    return {p.q, p.redundancy(), p.redundancy() - l, binomial_big(p.n, l)};
}

// Uniform rows: sum_r (lambda-r) P_{t,r} = sum_m w_m (q^D - q^(D-l) + q^m)^t / q^(Dt),
// with prod_{j<r}(X - q^j) = sum_m a_{r,m} X^m.
ExpSum basic_sum(const CodeParams& p, std::uint32_t l) {
    const Shape s = shape_of(p, l);
    ExpSum e;
    e.weights.assign(s.lambda + 1, 0);
    std::vector<mpz_class> poly{1};
    for (std::uint64_t r = 0; r <= s.lambda; ++r) {
        const mpz_class c = gaussian_binomial(s.lambda, r, s.q) * big(s.lambda - r);
        for (std::size_t m = 0; m < poly.size(); ++m) e.weights[m] += c * poly[m];
        std::vector<mpz_class> next(poly.size() + 1, 0);
        const mpz_class root = qpow(s.q, r);
        for (std::size_t m = 0; m < poly.size(); ++m) {
            next[m + 1] += poly[m];
            next[m] -= root * poly[m];
        }
        poly = std::move(next);
    }
    const mpz_class shift = qpow(s.q, s.D) - qpow(s.q, s.D - l);
    for (std::uint64_t m = 0; m <= s.lambda; ++m) e.bases.push_back(shift + qpow(s.q, m));
    e.denom = qpow(s.q, s.D);
    e.coeff = s.choose;
    return e;
}

// Nonzero rows: f_q(i,r) = sum_s (-1)^(r-s) q^C(r-s,2) [r s]_q (q^s-1)^i turns
// sum_r (lambda-r) Q_{t,r} into sum_s w_s (q^D - q^lambda + q^s - 1)^t / (q^D-1)^t.
ExpSum nonzero_sum(const CodeParams& p, std::uint32_t l) {
    const Shape s = shape_of(p, l);
    ExpSum e;
    e.weights.assign(s.lambda + 1, 0);
    for (std::uint64_t r = 0; r <= s.lambda; ++r) {
        const mpz_class c = gaussian_binomial(s.lambda, r, s.q) * big(s.lambda - r);
        for (std::uint64_t j = 0; j <= r; ++j) {
            mpz_class term = c * gaussian_binomial(r, j, s.q) * qpow(s.q, choose2(r - j));
            if ((r - j) % 2) e.weights[j] -= term;
            else e.weights[j] += term;
        }
    }
    const mpz_class shift = qpow(s.q, s.D) - qpow(s.q, s.lambda) - 1;
    for (std::uint64_t j = 0; j <= s.lambda; ++j) e.bases.push_back(shift + qpow(s.q, j));
    e.denom = qpow(s.q, s.D) - 1;
    e.coeff = s.choose;
    return e;
}

ExpSum hybrid_sum(const CodeParams& p, std::uint32_t l) {
    ExpSum e = nonzero_sum(p, l);
    e.coeff = binomial_big(p.n, l) - binomial_big(p.redundancy(), l);
    e.offset = p.redundancy();
    return e;
}

}  // namespace

mpz_class objective_basic(const CodeParams& p, std::uint32_t l, std::uint64_t t) { return basic_sum(p, l).at(t); }
mpz_class objective_nonzero(const CodeParams& p, std::uint32_t l, std::uint64_t t) { return nonzero_sum(p, l).at(t); }
mpz_class objective_hybrid(const CodeParams& p, std::uint32_t l, std::uint64_t t) { return hybrid_sum(p, l).at(t); }

ScanResult upper_prob_basic(const CodeParams& p, std::uint32_t l) { return basic_sum(p, l).minimize(); }
ScanResult upper_prob_nonzero(const CodeParams& p, std::uint32_t l) { return nonzero_sum(p, l).minimize(); }
ScanResult upper_prob_hybrid(const CodeParams& p, std::uint32_t l) { return hybrid_sum(p, l).minimize(); }

namespace {

// Left side of the known criterion as N(t) / Den(t) with
// N = sum_{s,m} b_s (-1)^m e_m Q^(lambda-m) (1 + (q^s-1) q^m)^t, Q = q^t,
// b_s = (-1)^(l-s) q^C(l-s,2) [l s]_q and e_m elementary symmetric in q^0..q^(lambda-1).
class KnownCriterion {
public:
    KnownCriterion(const CodeParams& p, std::uint32_t l) : s_(shape_of(p, l)), l_(l) {
        for (std::uint64_t j = 0; j <= l; ++j) {
            mpz_class b = gaussian_binomial(l, j, s_.q) * qpow(s_.q, choose2(l - j));
            if ((l - j) % 2) b = -b;
            b_.push_back(b);
        }
        std::vector<mpz_class> e{1};
        for (std::uint64_t j = 0; j < s_.lambda; ++j) {
            const mpz_class x = qpow(s_.q, j);
            std::vector<mpz_class> next(e.size() + 1, 0);
            for (std::size_t m = 0; m < e.size(); ++m) {
                next[m] += e[m];
                next[m + 1] += e[m] * x;
            }
            e = std::move(next);
        }
        e_ = std::move(e);
    }

    bool holds(std::uint64_t t) const {
        if (t < s_.D) return false;
        const mpz_class Q = qpow(s_.q, t);
        mpz_class num = 0;
        for (std::uint64_t j = 0; j <= l_; ++j) {
            if (b_[j] == 0) continue;
            for (std::uint64_t m = 0; m <= s_.lambda; ++m) {
                mpz_class base = (qpow(s_.q, j) - 1) * qpow(s_.q, m) + 1;
                mpz_class pw;
                mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), t);
                mpz_class term = b_[j] * e_[m] * qpow(s_.q, t * (s_.lambda - m)) * pw;
                if (m % 2) num -= term;
                else num += term;
            }
        }
        mpz_class den = 1;
        for (std::uint64_t h = 0; h < s_.D; ++h) den *= Q - qpow(s_.q, h);
        return s_.choose * num > (s_.choose - 1) * den;
    }

private:
    Shape s_;
    std::uint64_t l_;
    std::vector<mpz_class> b_;
    std::vector<mpz_class> e_;
};

}  // namespace

bool known_criterion(const CodeParams& p, std::uint32_t l, std::uint64_t t) { return KnownCriterion(p, l).holds(t); }

std::optional<std::uint64_t> upper_prob_known(const CodeParams& p, std::uint32_t l) {
    const KnownCriterion crit(p, l);
    const mpz_class trivial = qpow(p.q, p.redundancy());
    if (!trivial.fits_ulong_p()) throw LimitExceeded("q^(n-k) too large for the criterion scan");
    const std::uint64_t limit = trivial.get_ui();
    for (std::uint64_t t = p.redundancy(); t <= limit; ++t)
        if (crit.holds(t)) return t;
    return std::nullopt;
}

mpz_class upper_generic(const CodeParams& p, std::uint32_t l) {
    require_bound_l(p, l);
    mpz_class total = 0;
    for (std::uint64_t i = 1; i <= l + 1; ++i) total += binomial_big(p.redundancy(), i) * qpow(p.q - 1, i - 1);
    return total;
}

mpq_class geometry_comparison_floor(const CodeParams& p, std::uint32_t l) {
    if (l == 0 || l + 2 > p.d) throw InvalidArgument("comparison floor needs 1 <= l <= d - 2");
    mpq_class v(binomial_big(p.n, l) * p.redundancy(), binomial_big(p.d - 1, l));
    v.canonicalize();
    return v;
}

std::string to_string(CoveringSource s) {
    switch (s) {
        case CoveringSource::exact: return "exact";
        case CoveringSource::table: return "table";
        case CoveringSource::greedy: return "greedy";
    }
    return "?";
}

namespace {

std::optional<std::uint64_t> cached_greedy(std::uint32_t n, std::uint32_t mu, std::uint32_t l, const GreedyOptions& o) {
    static std::mutex lock;
    static std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t, bool, std::uint64_t>,
                    std::optional<std::uint64_t>>
        cache;
    const auto key = std::make_tuple(n, mu, l, o.randomized, o.seed);
    {
        std::lock_guard g(lock);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    std::optional<std::uint64_t> size;
    try {
        size = greedy_covering(n, mu, l, 1, o).blocks.size();
    } catch (const LimitExceeded&) {
    }
    std::lock_guard g(lock);
    cache[key] = size;
    return size;
}

}  // namespace

std::optional<CoveringSizeUsed> covering_size(std::uint32_t n, std::uint32_t mu, std::uint32_t l,
                                              const CoveringOptions& options) {
    if (mu == l) return CoveringSizeUsed{mu, binomial(n, l), CoveringSource::exact};
    if (l == 1) return CoveringSizeUsed{mu, (n + mu - 1) / mu, CoveringSource::exact};
    std::optional<CoveringSizeUsed> best;
    if (options.table)
        if (auto it = options.table->find({n, mu, l}); it != options.table->end())
            best = CoveringSizeUsed{mu, it->second, CoveringSource::table};
    if (options.greedy)
        if (auto g = cached_greedy(n, mu, l, options.greedy_options); g && (!best || *g < best->size))
            best = CoveringSizeUsed{mu, *g, CoveringSource::greedy};
    return best;
}

namespace {

template <typename Value>
CoveringBound covering_min(const CodeParams& p, std::uint32_t l, const CoveringOptions& options, Value value) {
    require_bound_l(p, l);
    CoveringBound b;
    const std::uint32_t top = std::min(p.d, p.redundancy()) - 1;
    for (std::uint32_t mu = l; mu <= top; ++mu) {
        const auto size = covering_size(p.n, mu, l, options);
        if (!size) {
            b.skipped.push_back(mu);
            continue;
        }
        b.sizes.push_back(*size);
        const mpz_class v = value(mu, big(size->size));
        if (!b.value || v < *b.value) {
            b.value = v;
            b.mu = mu;
        }
    }
    return b;
}

}  // namespace

CoveringBound upper_covering_known(const CodeParams& p, std::uint32_t l, const CoveringOptions& options) {
    const mpz_class choose = binomial_big(p.n, l);
    return covering_min(p, l, options, [&](std::uint32_t mu, const mpz_class& c) -> mpz_class {
        return c * (p.redundancy() - mu) + choose * (mu - l);
    });
}

CoveringBound upper_covering_refined(const CodeParams& p, std::uint32_t l, const CoveringOptions& options) {
    CoveringBound b = covering_min(p, l, options,
                                   [&](std::uint32_t, const mpz_class& c) -> mpz_class { return c * p.redundancy(); });
    const mpz_class all = binomial_big(p.n, l) * (p.redundancy() - l);
    if (!b.value || all < *b.value) {
        b.value = all;
        b.mu = 0;
    }
    return b;
}

namespace {

BoundValue make_value(const mpz_class& v, const mpz_class& trivial) {
    BoundValue b;
    b.value = v;
    b.exceeds_trivial = v >= trivial;
    return b;
}

BoundValue from_covering(const CoveringBound& c, const mpz_class& trivial) {
    BoundValue b;
    if (c.value) b = make_value(*c.value, trivial);
    if (c.value && c.mu) b.arg = c.mu;
    std::string note;
    for (const auto& s : c.sizes)
        note += (note.empty() ? "" : ", ") + std::string("C1(mu=") + std::to_string(s.mu) + ")=" +
                std::to_string(s.size) + " " + to_string(s.source);
    for (auto mu : c.skipped) note += (note.empty() ? "" : ", ") + std::string("mu=") + std::to_string(mu) + " skipped";
    if (c.value && c.mu == 0) note += (note.empty() ? "" : "; ") + std::string("all l-subsets branch");
    b.note = note;
    return b;
}

}  // namespace

BoundReport report(const CodeParams& p, std::uint32_t l, const CoveringOptions& options) {
    require_bound_l(p, l);
    BoundReport r;
    r.params = p;
    r.l = l;
    r.trivial = qpow(p.q, p.redundancy());
    r.lower_schonheim = make_value(lower_schonheim(p, l), r.trivial);
    r.lower_volume = make_value(lower_volume(p, l), r.trivial);
    auto scan = [&](const ScanResult& s) {
        BoundValue b = make_value(s.value, r.trivial);
        b.arg = s.t;
        return b;
    };
    r.upper_prob_basic = scan(upper_prob_basic(p, l));
    r.upper_prob_nonzero = scan(upper_prob_nonzero(p, l));
    r.upper_prob_hybrid = scan(upper_prob_hybrid(p, l));
    if (const auto t = upper_prob_known(p, l)) {
        r.upper_prob_known = make_value(big(*t), r.trivial);
        r.upper_prob_known.arg = *t;
    } else {
        r.upper_prob_known.exceeds_trivial = true;
        r.upper_prob_known.note = "no t <= q^(n-k) satisfies the criterion";
    }
    r.upper_generic = make_value(upper_generic(p, l), r.trivial);
    r.upper_covering_refined = from_covering(upper_covering_refined(p, l, options), r.trivial);
    r.upper_covering_known = from_covering(upper_covering_known(p, l, options), r.trivial);
    return r;
}

std::vector<BoundReport> report(const CodeParams& p, const std::vector<std::uint32_t>& ls,
                                const CoveringOptions& options, unsigned threads) {
    for (auto l : ls) require_bound_l(p, l);
    std::vector<std::optional<BoundReport>> slots(ls.size());
    parallel_chunks(ls.size(), threads ? threads : resolve_threads(),
                    [&](std::uint64_t begin, std::uint64_t end, unsigned) {
                        for (std::uint64_t i = begin; i < end; ++i) slots[i] = report(p, ls[i], options);
                    });
    std::vector<BoundReport> out;
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace sepred
