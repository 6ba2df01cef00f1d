#include "doctest.h"

#include "mtu/exact.hpp"

using namespace mtu;

namespace {

/* Independent Bernoulli oracle (Worpitzky-style double sum):
 * B_n = sum_{k=0}^{n} 1/(k+1) * sum_{j=0}^{k} (-1)^j C(k,j) j^n, with 0^0 = 1.
 * Yields the B_1 = -1/2 convention. */
Rat bernoulli_oracle(unsigned long n) {
    Rat total = 0;
    for (unsigned long k = 0; k <= n; ++k) {
        Int inner = 0;
        for (unsigned long j = 0; j <= k; ++j) {
            Int term = binomial(Int(k), Int(j)) * ((n == 0 && j == 0) ? Int(1) : int_pow(Int(j), n));
            inner += (j % 2 == 0) ? term : -term;
        }
        total += Rat(inner) / Rat(Int(k) + 1);
    }
    return total;
}

} // namespace

TEST_CASE("integer helpers") {
    CHECK(int_pow(Int(2), 10) == 1024);
    CHECK(int_pow(Int(-3), 3) == -27);
    CHECK(int_pow(Int(7), 0) == 1);
    CHECK(factorial(0) == 1);
    CHECK(factorial(6) == 720);
    CHECK(factorial(20) == Int("2432902008176640000"));
    CHECK(binomial(Int(10), Int(3)) == 120);
    CHECK(binomial(Int(5), Int(7)) == 0);
    CHECK(binomial(Int(5), Int(-1)) == 0);
    CHECK(binomial(Int(-1), Int(3)) == -1);
    CHECK(binomial(Int(-2), Int(2)) == 3);
}

TEST_CASE("rational helpers") {
    Rat q(3, 4);
    CHECK(num(q) == 3);
    CHECK(den(q) == 4);
    CHECK(!is_integer(q));
    CHECK(is_integer(Rat(8, 2)));
    CHECK(to_integer(Rat(8, 2)) == 4);
    CHECK_THROWS_AS(to_integer(q), NonIntegerValueError);

    CHECK(p_valuation(Int(48), Int(2)) == 4);
    CHECK(p_valuation(Int(-48), Int(2)) == 4);
    CHECK(p_valuation(Int(48), Int(3)) == 1);
    CHECK(p_valuation(Rat(3, 8), Int(2)) == -3);
    CHECK(p_valuation(Rat(9, 5), Int(3)) == 2);
    CHECK_THROWS_AS(p_valuation(Int(0), Int(2)), ComputationError);

    CHECK(is_p_integral(Rat(1, 3), Int(2)));
    CHECK(!is_p_integral(Rat(1, 6), Int(2)));
    CHECK(is_p_integral(Rat(0), Int(5)));

    CHECK(p_part(Int(48), Int(2)) == 16);
    CHECK(p_part(Int(48), Int(5)) == 1);
}

TEST_CASE("bernoulli numbers match the independent double-sum oracle") {
    CHECK(bernoulli(0) == 1);
    CHECK(bernoulli(1) == Rat(-1, 2));
    CHECK(bernoulli(2) == Rat(1, 6));
    CHECK(bernoulli(4) == Rat(-1, 30));
    CHECK(bernoulli(12) == Rat(-691, 2730));
    for (unsigned long n = 0; n <= 24; ++n) CHECK(bernoulli(n) == bernoulli_oracle(n));
    for (unsigned long n = 3; n <= 23; n += 2) CHECK(bernoulli(n) == 0);
}

TEST_CASE("error taxonomy roots at ComputationError") {
    CHECK_THROWS_AS(to_integer(Rat(1, 2)), ComputationError);
    CHECK_THROWS_AS(throw IntegralityError("x"), ComputationError);
    CHECK_THROWS_AS(throw CompositionError("x"), ComputationError);
    CHECK_THROWS_AS(throw ModeUnavailableError("x"), ComputationError);
    CHECK_THROWS_AS(throw WindowViolationError("x"), ComputationError);
    CHECK_THROWS_AS(throw ParseError("x"), ComputationError);
}
