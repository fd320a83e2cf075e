#include <doctest.h>

#include "sepred/errors.hpp"
#include "sepred/finite_field.hpp"
#include "sepred/rng.hpp"

using namespace sepred;

namespace {

// A polynomial of degree 2 or 3 is irreducible iff it has no root.
bool has_root(const std::vector<std::uint32_t>& poly, std::uint32_t p) {
    for (std::uint32_t x = 0; x < p; ++x) {
        std::uint64_t value = 0;
        for (std::size_t i = poly.size(); i-- > 0;) value = (value * x + poly[i]) % p;
        if (value == 0) return true;
    }
    return false;
}

std::vector<std::uint32_t> orders_up_to_64() {
    std::vector<std::uint32_t> out;
    for (std::uint32_t q = 2; q <= 64; ++q) {
        std::uint32_t p = 2;
        while (q % p) ++p;
        std::uint32_t r = q;
        while (r % p == 0) r /= p;
        if (r == 1) out.push_back(q);
    }
    return out;
}

}  // namespace

TEST_CASE("moduli of small fields") {
    CHECK(Field::make(2, 1)->modulus() == std::vector<std::uint32_t>{0, 1});
    const auto gf4 = Field::make(2, 2);
    CHECK(gf4->modulus() == std::vector<std::uint32_t>{1, 1, 1});
    CHECK_FALSE(has_root(gf4->modulus(), 2));
    const auto gf9 = Field::make(3, 2);
    CHECK(gf9->modulus() == std::vector<std::uint32_t>{2, 2, 1});
    CHECK_FALSE(has_root(gf9->modulus(), 3));
    CHECK(is_irreducible_mod_p(gf9->modulus(), 3));
    CHECK_FALSE(is_irreducible_mod_p({1, 0, 1}, 2));
}

TEST_CASE("small products and sums") {
    CHECK(Field::make(2, 2)->mul(2, 2) == 3);
    CHECK(Field::make(3, 1)->add(2, 2) == 1);
    for (auto q : {2u, 3u, 4u, 8u, 9u, 16u, 25u}) {
        const auto f = Field::of_order(q);
        for (Elem x = 0; x < q; ++x) CHECK(f->mul(x, 1) == x);
    }
}

TEST_CASE("field axioms for every order up to 64") {
    for (auto q : orders_up_to_64()) {
        CAPTURE(q);
        const auto f = Field::of_order(q);
        REQUIRE(f->order() == q);
        bool ok = true;
        for (Elem a = 0; a < q; ++a) {
            ok &= f->add(a, f->neg(a)) == 0;
            if (a) ok &= f->mul(a, f->inv(a)) == 1;
            for (Elem b = 0; b < q; ++b) {
                ok &= f->add(a, b) == f->add(b, a);
                ok &= f->mul(a, b) == f->mul(b, a);
                ok &= f->sub(f->add(a, b), b) == a;
            }
        }
        auto triple = [&](Elem a, Elem b, Elem c) {
            ok &= f->add(f->add(a, b), c) == f->add(a, f->add(b, c));
            ok &= f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c));
            ok &= f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c));
        };
        if (q <= 16) {
            for (Elem a = 0; a < q; ++a)
                for (Elem b = 0; b < q; ++b)
                    for (Elem c = 0; c < q; ++c) triple(a, b, c);
        } else {
            CounterRng rng(q);
            for (int i = 0; i < 20000; ++i)
                triple(static_cast<Elem>(rng.below(q)), static_cast<Elem>(rng.below(q)), static_cast<Elem>(rng.below(q)));
        }
        CHECK(ok);
        bool primitive = false;
        for (Elem a = 1; a < q && !primitive; ++a) primitive = f->element_order(a) == q - 1;
        CHECK(primitive);
    }
}

TEST_CASE("field elements refuse mixed fields") {
    const FieldElement a(Field::make(2, 2), 2), b(Field::make(3, 1), 1);
    CHECK_THROWS_AS(a + b, InvalidArgument);
    CHECK((a * a).value() == 3);
    CHECK_THROWS_AS(FieldElement(Field::make(2, 2), 0).inverse(), InvalidArgument);
}

TEST_CASE("non prime powers are rejected") {
    CHECK_THROWS_AS(Field::of_order(6), InvalidArgument);
    CHECK_THROWS_AS(Field::make(4, 1), InvalidArgument);
}
