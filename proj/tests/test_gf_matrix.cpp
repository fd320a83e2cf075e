#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "sepred/code_model.hpp"
#include "sepred/errors.hpp"
#include "sepred/gf_matrix.hpp"
#include "sepred/rng.hpp"

using namespace sepred;

namespace {

GFMatrix random_matrix(const FieldPtr& f, std::size_t rows, std::size_t cols, CounterRng& rng) {
    GFMatrix m(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, static_cast<Elem>(rng.below(f->order())));
    return m;
}

std::vector<oracle::Vec> rows_of(const GFMatrix& m) {
    std::vector<oracle::Vec> out;
    for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(m.row(r));
    return out;
}

}  // namespace

TEST_CASE("rank of basic matrices") {
    const auto gf2 = Field::make(2, 1);
    CHECK(rank(GFMatrix(gf2, 3, 5)) == 0);
    CHECK(rank(extended_hamming_six_row()) == 4);
    for (auto q : {2u, 3u, 4u, 5u}) CHECK(rank(GFMatrix::identity(Field::of_order(q), q)) == q);
}

TEST_CASE("rank matches the textbook elimination and rref pivots") {
    CounterRng rng(7);
    for (auto q : {2u, 3u, 4u}) {
        const auto f = Field::of_order(q);
        for (int i = 0; i < 60; ++i) {
            const auto m = random_matrix(f, 1 + rng.below(7), 1 + rng.below(9), rng);
            const auto r = rank(m);
            CHECK(r == oracle::rank_of(*f, rows_of(m)));
            CHECK(rref(m).pivots.size() == r);
        }
    }
}

TEST_CASE("rank is invariant under row permutation and scaling") {
    CounterRng rng(11);
    for (auto q : {2u, 3u, 4u}) {
        const auto f = Field::of_order(q);
        for (int i = 0; i < 40; ++i) {
            const auto m = random_matrix(f, 6, 8, rng);
            std::vector<std::size_t> order{5, 3, 1, 0, 2, 4};
            GFMatrix p = m.select_rows(order);
            for (std::size_t r = 0; r < p.rows(); ++r) {
                const Elem s = static_cast<Elem>(1 + rng.below(q - 1));
                for (std::size_t c = 0; c < p.cols(); ++c) p.set(r, c, f->mul(s, p.at(r, c)));
            }
            CHECK(rank(p) == rank(m));
        }
    }
}

TEST_CASE("H(S) of the six-row example") {
    const auto h = extended_hamming_six_row();
    const auto gf2 = h.field();
    const std::vector<std::uint32_t> s67{6, 7};
    const auto hs = extract_hs(h, s67);
    CHECK(hs.matrix == GFMatrix::from_rows(gf2, {{1, 1, 1, 1, 0, 0}, {1, 1, 0, 0, 1, 1}}));
    CHECK(hs.source_rows == std::vector<std::size_t>{3, 4});
    const std::vector<std::uint32_t> s56{5, 6};
    CHECK(extract_hs(h, s56).matrix == GFMatrix::from_rows(gf2, {{1, 1, 1, 1, 0, 0}}));
    CHECK(extract_hs(h, std::vector<std::uint32_t>{}).matrix == h);
    CHECK_THROWS_AS(extract_hs(h, std::vector<std::uint32_t>{8}), InvalidArgument);
}

TEST_CASE("H(S) keeps exactly the rows vanishing on S") {
    CounterRng rng(3);
    const auto f = Field::of_order(3);
    for (int i = 0; i < 50; ++i) {
        GFMatrix m = random_matrix(f, 8, 7, rng);
        for (std::size_t r = 0; r < 8; ++r)
            for (std::size_t c = 0; c < 7; ++c)
                if (rng.below(2)) m.set(r, c, 0);
        const std::uint64_t mask = rng.below(128);
        const auto s = oracle::mask_to_set(mask);
        const auto hs = extract_hs(m, s);
        CHECK(hs.matrix.cols() == 7 - s.size());
        std::size_t expected = 0;
        for (std::size_t r = 0; r < 8; ++r) {
            bool zero = true;
            for (auto c : s) zero &= m.at(r, c) == 0;
            expected += zero;
        }
        CHECK(hs.matrix.rows() == expected);
        CHECK(rank(hs.matrix) == oracle::rank_hs(m, mask));
    }
}

TEST_CASE("null space, rref and containment") {
    const auto h = extended_hamming_six_row();
    const auto ns = null_space(h);
    REQUIRE(ns.rows() == 4);
    for (std::size_t i = 0; i < ns.rows(); ++i)
        for (std::size_t r = 0; r < h.rows(); ++r) {
            Elem dot = 0;
            for (std::size_t c = 0; c < h.cols(); ++c) dot ^= ns.at(i, c) & h.at(r, c);
            CHECK(dot == 0);
        }
    const auto id = GFMatrix::identity(Field::of_order(3), 4);
    CHECK(rref(id).matrix == id);
    auto sum = h.row(0);
    const auto r1 = h.row(1);
    for (std::size_t c = 0; c < sum.size(); ++c) sum[c] ^= r1[c];
    CHECK(row_space_contains(h, sum));
    CHECK_FALSE(row_space_contains(h, std::vector<Elem>{1, 0, 0, 0, 0, 0, 0, 0}));
}

TEST_CASE("orthogonal arrays from dual codewords") {
    const auto h8 = preset("exthamming8");
    const auto dual8 = dual_codewords(*h8.code);
    CHECK(dual8.rows() == 16);
    CHECK(verify_orthogonal_array(dual8, 3));
    CHECK(oracle::orthogonal_array(dual8, 3));
    const auto h7 = preset("hamming7");
    const auto dual7 = dual_codewords(*h7.code);
    CHECK(verify_orthogonal_array(dual7, 2));
    CHECK(oracle::orthogonal_array(dual7, 2));
    CHECK_FALSE(verify_orthogonal_array(dual7, 3));
    CHECK_FALSE(oracle::orthogonal_array(dual7, 3));

    const auto gf2 = Field::make(2, 1);
    const auto full = GFMatrix::from_rows(gf2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    CHECK(verify_orthogonal_array(full, 2));
    const auto six = extended_hamming_six_row();
    CHECK(verify_orthogonal_array(six, 1) == oracle::orthogonal_array(six, 1));
    CHECK(verify_orthogonal_array(six, 1));
    CHECK(verify_orthogonal_array(six, 2) == oracle::orthogonal_array(six, 2));
    CHECK_FALSE(verify_orthogonal_array(six, 2));
}

TEST_CASE("GFMAT round trip") {
    CounterRng rng(5);
    for (auto q : {2u, 4u, 9u}) {
        const auto f = Field::of_order(q);
        const auto m = random_matrix(f, 5, 70, rng);
        std::stringstream io;
        write_gfmat(io, m, {"comment line"});
        const auto back = read_gfmat(io);
        CHECK(back == m);
        CHECK(back.field()->order() == q);
    }
    std::istringstream bad("GFMAT 2 1 2 2\n0 1\n");
    CHECK_THROWS_AS(read_gfmat(bad), ParseError);
    std::istringstream range("GFMAT 2 1 1 2\n0 2\n");
    CHECK_THROWS_AS(read_gfmat(range), ParseError);
}

TEST_CASE("packed and unpacked paths agree") {
    CounterRng rng(9);
    const auto gf2 = Field::make(2, 1);
    for (int i = 0; i < 30; ++i) {
        const auto m = random_matrix(gf2, 12, 130, rng);
        CHECK(m.packed());
        CHECK(rank(m) == oracle::rank_of(*gf2, rows_of(m)));
        RowBasis b(gf2, 130);
        for (std::size_t r = 0; r < m.rows(); ++r) b.insert_row(m, r);
        CHECK(b.rank() == rank(m));
        for (std::size_t r = 0; r < m.rows(); ++r) CHECK(b.contains(m.row(r)));
    }
}
