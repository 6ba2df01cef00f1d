#include "doctest.h"

#include "mtu/exact.hpp"
#include "mtu/partition.hpp"

#include <algorithm>
#include <vector>

using namespace mtu;

namespace {

/* Independent count oracle: number of distinct rearrangements of the
 * exponent vector (p padded with zeros to length k), enumerated via
 * std::next_permutation. */
Int rearrangement_count(const Partition& p, long k) {
    if (long(p.size()) > k) return 0;
    std::vector<long> v(size_t(k), 0);
    std::copy(p.begin(), p.end(), v.begin());
    std::sort(v.begin(), v.end());
    Int n = 0;
    do {
        ++n;
    } while (std::next_permutation(v.begin(), v.end()));
    return n;
}

} // namespace

TEST_CASE("partition enumeration: canonical order and counts") {
    auto p4 = partitions(4);
    REQUIRE(p4.size() == 5);
    CHECK(p4[0] == Partition{4});
    CHECK(p4[1] == Partition{3, 1});
    CHECK(p4[2] == Partition{2, 2});
    CHECK(p4[3] == Partition{2, 1, 1});
    CHECK(p4[4] == Partition{1, 1, 1, 1});

    CHECK(partitions(0) == std::vector<Partition>{{}});
    CHECK(partitions(1) == std::vector<Partition>{{1}});

    auto p3min2 = partitions(3, 2);
    REQUIRE(p3min2.size() == 2);
    CHECK(p3min2[0] == Partition{2, 1});
    CHECK(p3min2[1] == Partition{1, 1, 1});

    auto p5cap2 = partitions(5, 0, 2);
    REQUIRE(p5cap2.size() == 3);
    CHECK(p5cap2[0] == Partition{2, 2, 1});

    /* conjugation: max part <= d  <->  at most d parts */
    for (long n = 0; n <= 12; ++n)
        for (long d = 1; d <= 6; ++d)
            CHECK(partitions(n, 0, d).size() == partitions(n, 0, std::nullopt, d).size());
}

TEST_CASE("partition counts satisfy the pentagonal-number recurrence") {
    std::vector<Int> p(41);
    for (long n = 0; n <= 40; ++n) p[size_t(n)] = Int(partitions(n).size());
    CHECK(p[10] == 42);
    CHECK(p[20] == 627);
    CHECK(p[40] == 37338);
    for (long n = 1; n <= 40; ++n) {
        Int rhs = 0;
        for (long k = 1;; ++k) {
            long g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
            if (g1 > n) break;
            Int sign = (k % 2 == 1) ? 1 : -1;
            rhs += sign * p[size_t(n - g1)];
            if (g2 <= n) rhs += sign * p[size_t(n - g2)];
        }
        CHECK(p[size_t(n)] == rhs);
    }
}

TEST_CASE("refinements") {
    CHECK(refinements({}) == std::vector<Partition>{{}});
    CHECK(refinements({2}) == std::vector<Partition>{{2}, {1, 1}});
    CHECK(refinements({2, 1}) == std::vector<Partition>{{2, 1}, {1, 1, 1}});
    CHECK(refinements({3}) == std::vector<Partition>{{3}, {2, 1}, {1, 1, 1}});
    auto r22 = refinements({2, 2});
    REQUIRE(r22.size() == 3);
    CHECK(r22[0] == Partition{2, 2});
    CHECK(r22[1] == Partition{2, 1, 1});
    CHECK(r22[2] == Partition{1, 1, 1, 1});
    /* every refinement preserves weight, and the list is reflexive */
    auto r = refinements({3, 2});
    CHECK(std::find(r.begin(), r.end(), Partition{3, 2}) != r.end());
    for (const auto& q : r) CHECK(weight(q) == 5);
}

TEST_CASE("monomial symmetric functions at all-ones") {
    CHECK(monomial_symmetric_at_ones({}, 0) == 1);
    CHECK(monomial_symmetric_at_ones({}, 5) == 1);
    CHECK(monomial_symmetric_at_ones({1, 1}, 1) == 0);
    CHECK(monomial_symmetric_at_ones({1, 1}, 2) == 1);
    CHECK(monomial_symmetric_at_ones({2}, 3) == 3);
    CHECK(monomial_symmetric_at_ones({2, 1}, 3) == 6);
    for (long n = 0; n <= 6; ++n)
        for (const auto& p : partitions(n))
            for (long k = 0; k <= 8; ++k)
                CHECK(monomial_symmetric_at_ones(p, k) == rearrangement_count(p, k));
}

TEST_CASE("partition formatting") {
    CHECK(partition_to_string({}) == "()");
    CHECK(partition_to_string({2, 1}) == "(2,1)");
    CHECK(weight({3, 2, 2}) == 7);
}
