#include "sepred/code_model.hpp"

#include <algorithm>
#include <functional>
#include <regex>
#include <set>

#include "sepred/errors.hpp"

namespace sepred {

void CodeParams::validate() const {
    if (!(k >= 1 && k < n)) throw InvalidArgument("code parameters need 1 <= k < n");
    if (!(d >= 1 && d <= n - k + 1)) throw InvalidArgument("code parameters violate 1 <= d <= n-k+1");
    if (!(ddual >= 1 && ddual <= k + 1)) throw InvalidArgument("code parameters violate 1 <= d-dual <= k+1");
    Field::of_order(q);
}

std::string to_string(const CodeParams& p) {
    return "[" + std::to_string(p.n) + "," + std::to_string(p.k) + "," + std::to_string(p.d) + "]_" +
           std::to_string(p.q) + " (d-dual " + std::to_string(p.ddual) + ")";
}

namespace {

std::uint64_t checked_count(std::uint64_t q, std::size_t exponent, std::uint64_t limit) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        if (count > limit / q) throw LimitExceeded("enumeration of " + std::to_string(q) + "^" +
                                                   std::to_string(exponent) + " words exceeds limit");
        count *= q;
    }
    if (count > limit) throw LimitExceeded("enumeration exceeds limit");
    return count;
}

// Visits every combination of the rows of `basis` in canonical order.
void for_each_combination(const GFMatrix& basis, std::uint64_t limit,
                          const std::function<void(const std::vector<Elem>&)>& visit) {
    const Field& f = *basis.field();
    const std::uint32_t q = f.order();
    const std::size_t k = basis.rows();
    const std::size_t n = basis.cols();
    const std::uint64_t count = checked_count(q, k, limit);
    std::vector<std::vector<Elem>> rows(k);
    for (std::size_t j = 0; j < k; ++j) rows[j] = basis.row(j);
    // delta[a] = elem(a+1 mod q) - elem(a)
    std::vector<Elem> delta(q);
    for (Elem a = 0; a < q; ++a) delta[a] = f.sub((a + 1) % q, a);
    std::vector<Elem> digits(k, 0);
    std::vector<Elem> v(n, 0);
    for (std::uint64_t i = 0; i < count; ++i) {
        visit(v);
        for (std::size_t j = 0; j < k; ++j) {
            const Elem dlt = delta[digits[j]];
            for (std::size_t c = 0; c < n; ++c)
                if (rows[j][c]) v[c] = f.add(v[c], f.mul(dlt, rows[j][c]));
            digits[j] = (digits[j] + 1) % q;
            if (digits[j] != 0) break;
        }
    }
}

}  // namespace

GFMatrix enumerate_row_space(const GFMatrix& basis, std::uint64_t limit) {
    GFMatrix out(basis.field(), 0, basis.cols());
    for_each_combination(basis, limit, [&](const std::vector<Elem>& v) { out.append_row(v); });
    return out;
}

std::uint32_t min_weight_of_span(const GFMatrix& basis, std::uint64_t limit) {
    std::uint32_t best = static_cast<std::uint32_t>(basis.cols()) + 1;
    for_each_combination(basis, limit, [&](const std::vector<Elem>& v) {
        const auto w = static_cast<std::uint32_t>(std::count_if(v.begin(), v.end(), [](Elem e) { return e != 0; }));
        if (w > 0) best = std::min(best, w);
    });
    return best;
}

LinearCode::LinearCode(CodeParams params, GFMatrix pcm, std::string name)
    : params_(params), pcm_(std::move(pcm)), name_(std::move(name)) {
    params_.validate();
    if (pcm_.cols() != params_.n || pcm_.rows() != params_.n - params_.k)
        throw InvalidArgument("parity-check matrix shape does not match code parameters");
    if (pcm_.field()->order() != params_.q) throw InvalidArgument("parity-check matrix field does not match q");
    if (rank(pcm_) != params_.n - params_.k) throw InvalidArgument("parity-check matrix is not full rank");
}

LinearCode LinearCode::from_parity_check(const GFMatrix& h, std::string name, std::optional<std::uint32_t> d,
                                         std::optional<std::uint32_t> ddual, std::uint64_t limit) {
    auto reduced = rref(h);
    const std::size_t r = reduced.pivots.size();
    std::vector<std::size_t> idx(r);
    for (std::size_t i = 0; i < r; ++i) idx[i] = i;
    GFMatrix pcm = reduced.matrix.select_rows(idx);
    const auto n = static_cast<std::uint32_t>(h.cols());
    if (r == 0 || r >= n) throw InvalidArgument("parity-check matrix must have rank in [1, n-1]");
    CodeParams p;
    p.n = n;
    p.k = n - static_cast<std::uint32_t>(r);
    p.q = h.field()->order();
    p.d = d ? *d : min_weight_of_span(null_space(pcm), limit);
    p.ddual = ddual ? *ddual : min_weight_of_span(pcm, limit);
    return LinearCode(p, std::move(pcm), std::move(name));
}

GFMatrix LinearCode::generator() const { return null_space(pcm_); }

bool LinearCode::in_dual(std::span<const Elem> v) const { return row_space_contains(pcm_, v); }

GFMatrix dual_codewords(const LinearCode& code, std::uint64_t limit) {
    return enumerate_row_space(code.pcm(), limit);
}

std::uint32_t min_distance(const LinearCode& code, std::uint64_t limit) {
    return min_weight_of_span(code.generator(), limit);
}

std::uint32_t dual_distance(const LinearCode& code, std::uint64_t limit) {
    return min_weight_of_span(code.pcm(), limit);
}

// ---------------------------------------------------------------------------

GFMatrix extended_hamming_six_row() {
    return GFMatrix::from_rows(Field::make(2, 1), {
                                                      {0, 0, 0, 0, 1, 1, 1, 1},
                                                      {0, 0, 1, 1, 0, 0, 1, 1},
                                                      {0, 1, 0, 1, 0, 1, 0, 1},
                                                      {1, 1, 1, 1, 0, 0, 0, 0},
                                                      {1, 1, 0, 0, 1, 1, 0, 0},
                                                      {1, 0, 1, 0, 1, 0, 1, 0},
                                                  });
}

namespace {

GFMatrix hamming_pcm(std::uint32_t r) {
    const std::uint32_t n = (1u << r) - 1;
    GFMatrix h(Field::make(2, 1), r, n);
    for (std::uint32_t c = 0; c < n; ++c)
        for (std::uint32_t i = 0; i < r; ++i)
            if (((c + 1) >> i) & 1u) h.set(i, c, 1);
    return h;
}

// [I_12 | A] with A = [[0, 1...1], [1, N]], N the circulant with ones at
// offsets {0} and the quadratic residues mod 11. The code is self-dual, so the
// generator doubles as a parity-check matrix.
GFMatrix golay_pcm() {
    std::set<std::uint32_t> residues{0};
    for (std::uint32_t i = 1; i < 11; ++i) residues.insert(i * i % 11);
    GFMatrix g(Field::make(2, 1), 12, 24);
    for (std::uint32_t r = 0; r < 12; ++r) g.set(r, r, 1);
    for (std::uint32_t j = 1; j < 12; ++j) g.set(0, 12 + j, 1);
    for (std::uint32_t i = 0; i < 11; ++i) {
        g.set(i + 1, 12, 1);
        for (std::uint32_t j = 0; j < 11; ++j)
            if (residues.count((j + 11 - i) % 11)) g.set(i + 1, 13 + j, 1);
    }
    return g;
}

}  // namespace

LinearCode vandermonde_mds(std::uint32_t n, std::uint32_t k, std::uint32_t q) {
    auto field = Field::of_order(q);
    if (k < 1 || k >= n) throw InvalidArgument("MDS code needs 1 <= k < n");
    if (n > q + 1) throw InvalidArgument("Vandermonde MDS code needs n <= q + 1");
    const std::uint32_t r = n - k;
    GFMatrix h(field, r, n);
    const std::uint32_t finite = std::min(n, q);
    for (std::uint32_t c = 0; c < finite; ++c) {
        Elem x = 1;
        for (std::uint32_t i = 0; i < r; ++i) {
            h.set(i, c, x);
            x = field->mul(x, c);
        }
    }
    if (n == q + 1) h.set(r - 1, n - 1, 1);
    CodeParams p{n, k, n - k + 1, k + 1, q};
    return LinearCode(p, std::move(h),
                      "mds-" + std::to_string(n) + "-" + std::to_string(k) + "-" + std::to_string(q));
}

std::vector<std::string> preset_names() {
    return {"exthamming8", "exthamming8-6row", "hamming7", "hamming15", "golay24",
            "repetition<n>", "mds-<n>-<k>-<q>", "bch41", "qr12"};
}

Preset preset(const std::string& name) {
    if (name == "exthamming8" || name == "exthamming8-6row") {
        const GFMatrix six = extended_hamming_six_row();
        LinearCode code = LinearCode::from_parity_check(six, name);
        Preset out{code.params(), code, name, std::nullopt};
        if (name == "exthamming8-6row") out.reference_matrix = six;
        return out;
    }
    if (name == "hamming7") {
        LinearCode code = LinearCode::from_parity_check(hamming_pcm(3), name);
        return {code.params(), code, name, std::nullopt};
    }
    if (name == "hamming15") {
        LinearCode code = LinearCode::from_parity_check(hamming_pcm(4), name);
        return {code.params(), code, name, std::nullopt};
    }
    if (name == "golay24") {
        LinearCode code = LinearCode::from_parity_check(golay_pcm(), name);
        return {code.params(), code, name, std::nullopt};
    }
    if (name == "bch41") return {CodeParams{41, 33, 5, 23, 3}, std::nullopt, name, std::nullopt};
    if (name == "qr12") return {CodeParams{12, 6, 6, 6, 4}, std::nullopt, name, std::nullopt};

    static const std::regex repetition(R"(repetition(\d+))");
    static const std::regex mds(R"(mds-(\d+)-(\d+)-(\d+))");
    std::smatch match;
    if (std::regex_match(name, match, repetition)) {
        const auto n = static_cast<std::uint32_t>(std::stoul(match[1]));
        if (n < 2 || n > 64) throw InvalidArgument("repetition length must be in [2, 64]");
        // parity checks x_0 + x_i = 0
        GFMatrix h(Field::make(2, 1), n - 1, n);
        for (std::uint32_t i = 1; i < n; ++i) {
            h.set(i - 1, 0, 1);
            h.set(i - 1, i, 1);
        }
        LinearCode code(CodeParams{n, 1, n, 2, 2}, std::move(h), name);
        return {code.params(), code, name, std::nullopt};
    }
    if (std::regex_match(name, match, mds)) {
        LinearCode code = vandermonde_mds(static_cast<std::uint32_t>(std::stoul(match[1])),
                                          static_cast<std::uint32_t>(std::stoul(match[2])),
                                          static_cast<std::uint32_t>(std::stoul(match[3])));
        return {code.params(), code, name, std::nullopt};
    }
    throw InvalidArgument("unknown preset '" + name + "'");
}

}  // namespace sepred
