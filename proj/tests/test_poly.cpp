#include "doctest.h"

#include "mtu/poly.hpp"

using namespace mtu;

namespace {
Poly V(long i, long e = 1) { return Poly::generator(Gen::V, i, e); }
Poly T(long i, long e = 1) { return Poly::generator(Gen::T, i, e); }
Poly B(long i, long e = 1) { return Poly::generator(Gen::B, i, e); }
Poly M(long i, long e = 1) { return Poly::generator(Gen::M, i, e); }
Monomial mono(Gen g, long i, long e = 1) { return Monomial::generator(g, i, e); }
} // namespace

TEST_CASE("monomial exponent bookkeeping") {
    Monomial m = mono(Gen::V, 2) * mono(Gen::B, 1, 3) * mono(Gen::T, 1);
    CHECK(m.exp(Gen::V, 2) == 1);
    CHECK(m.exp(Gen::V, 1) == 0);
    CHECK(m.exp(Gen::V, 99) == 0);
    CHECK(m.exp(Gen::B, 1) == 3);
    CHECK(m.has(Gen::T));
    CHECK_FALSE(m.has(Gen::M));
    CHECK(m.family_degree(Gen::B) == 3);
    CHECK(m.top_index(Gen::V) == 2);
    CHECK(m.top_index(Gen::M) == 0);

    /* clearing the top exponent trims the family */
    Monomial n = m;
    n.set_exp(Gen::V, 2, 0);
    CHECK(n.top_index(Gen::V) == 0);
    CHECK_FALSE(n.has(Gen::V));

    CHECK(Monomial().is_one());
    CHECK_FALSE(m.is_one());
}

TEST_CASE("monomial product, power, division") {
    Monomial a = mono(Gen::V, 1) * mono(Gen::B, 2, 2);
    Monomial b = mono(Gen::V, 1) * mono(Gen::T, 1);
    Monomial ab = a * b;
    CHECK(ab.exp(Gen::V, 1) == 2);
    CHECK(ab.exp(Gen::B, 2) == 2);
    CHECK(ab.exp(Gen::T, 1) == 1);

    CHECK(a.pow(0).is_one());
    CHECK(a.pow(3).exp(Gen::B, 2) == 6);

    CHECK(ab / b == a);
    CHECK((ab / a) == b);
    CHECK_THROWS_AS(a / b, ComputationError);                 /* t1 missing */
    CHECK_THROWS_AS(mono(Gen::V, 1) / mono(Gen::V, 1, 2), ComputationError);
}

TEST_CASE("monomial internal degrees") {
    CHECK(mono(Gen::V, 1).degree(2) == 2);
    CHECK(mono(Gen::V, 2).degree(2) == 6);
    CHECK(mono(Gen::V, 3).degree(2) == 14);
    CHECK(mono(Gen::T, 2).degree(2) == 6);
    CHECK(mono(Gen::M, 1).degree(2) == 2);
    CHECK(mono(Gen::B, 3).degree(2) == 6);
    CHECK(mono(Gen::B, 3).degree(3) == 6);  /* B-degree does not involve p */
    CHECK(mono(Gen::V, 1).degree(3) == 4);
    CHECK(mono(Gen::T, 2).degree(3) == 16);

    Monomial m = mono(Gen::V, 1, 2) * mono(Gen::B, 1, 5) * mono(Gen::T, 1);
    CHECK(m.degree(2) == 4 + 10 + 2);
    CHECK(m.family_part_degree(Gen::V, 2) == 4);
    CHECK(m.family_part_degree(Gen::B, 2) == 10);
    CHECK(m.family_part(Gen::B) == mono(Gen::B, 1, 5));
    CHECK(m.without_family(Gen::B) == mono(Gen::V, 1, 2) * mono(Gen::T, 1));
}

TEST_CASE("monomial printing") {
    CHECK(Monomial().to_string() == "1");
    Monomial m = mono(Gen::V, 1) * mono(Gen::B, 1, 6) * mono(Gen::B, 2);
    CHECK(m.to_string() == "v1 B2 B1^6");
    CHECK(mono(Gen::T, 1, 2).to_string() == "t1^2");
    Monomial n = mono(Gen::T, 2) * mono(Gen::T, 1, 3) * mono(Gen::M, 1);
    CHECK(n.to_string() == "t2 t1^3 m1");
}

TEST_CASE("poly arithmetic") {
    Poly zero;
    CHECK(zero.is_zero());
    CHECK((V(1) - V(1)).is_zero());

    Poly p = V(1) + T(1);
    Poly sq = p.pow(2);
    CHECK(sq.coeff(mono(Gen::V, 1, 2)) == 1);
    CHECK(sq.coeff(mono(Gen::V, 1) * mono(Gen::T, 1)) == 2);
    CHECK(sq.coeff(mono(Gen::T, 1, 2)) == 1);
    CHECK(sq.term_count() == 3);
    CHECK(p.pow(0) == Poly(Rat(1)));

    Poly q = (V(1) + Poly(Rat(1))) * (V(1) - Poly(Rat(1)));
    CHECK(q == V(1, 2) - Poly(Rat(1)));

    CHECK((p * Rat(0)).is_zero());
    CHECK((p * Rat(1, 2)).coeff(mono(Gen::V, 1)) == Rat(1, 2));
    CHECK((-p).coeff(mono(Gen::T, 1)) == -1);
    CHECK(p.constant_term() == 0);
    CHECK((p + Poly(Rat(5))).constant_term() == 5);
}

TEST_CASE("poly substitution") {
    /* B1 -> t1, B2 -> -v1 t1, multiplicatively on monomials */
    Poly p = B(2) * B(1) + B(1, 2) * Rat(3) + V(1);
    Poly img = p.substituted(Gen::B, [](long i) {
        if (i == 1) return Poly::generator(Gen::T, 1);
        if (i == 2) return -(Poly::generator(Gen::V, 1) * Poly::generator(Gen::T, 1));
        return Poly();
    });
    Poly want = -(V(1) * T(1, 2)) + T(1, 2) * Rat(3) + V(1);
    CHECK(img == want);

    /* substitution leaves other families and coefficients alone */
    Poly r = (M(1) * B(1)) * Rat(1, 2);
    Poly rimg = r.substituted(Gen::B, [](long) { return Poly(Rat(2)); });
    CHECK(rimg == M(1) * Rat(1));

    /* zero image annihilates terms containing the family */
    Poly z = (B(1) + V(1)).substituted(Gen::B, [](long) { return Poly(); });
    CHECK(z == V(1));
}

TEST_CASE("poly degree helpers") {
    Poly p = V(2) + V(1, 3) * Rat(-2);
    long d = 0;
    CHECK(p.is_homogeneous(2, &d));
    CHECK(d == 6);
    CHECK_FALSE(p.is_homogeneous(3));
    CHECK(p.truncated_above(2, 6) == p);
    CHECK(p.truncated_above(2, 4).is_zero());
    CHECK((V(1) + V(2)).truncated_above(2, 2) == V(1));

    CHECK(p.is_integral());
    CHECK_FALSE((p * Rat(1, 3)).is_integral());
    CHECK(p.has_family(Gen::V));
    CHECK_FALSE(p.has_family(Gen::T));
}

TEST_CASE("poly printing") {
    CHECK(Poly().to_string() == "0");
    CHECK(Poly(Rat(1)).to_string() == "1");
    CHECK((V(1) * Rat(-1)).to_string() == "-v1");
    Poly p = T(1, 2) - V(1) * T(1) * Rat(2);
    CHECK(p.to_string() == "t1^2 - 2 v1 t1");
    CHECK((Poly(Rat(1)) - V(1)).to_string() == "1 - v1");
    CHECK((V(1) * Rat(1, 2)).to_string() == "1/2 v1");
}
