#pragma once

/* Integer partitions in canonical order (reverse-lexicographic, largest
 * first part first), refinement enumeration, and evaluation counts for
 * monomial symmetric functions. */

#include "mtu/exact.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mtu {

/* Weakly decreasing positive parts; the empty partition is {}. */
using Partition = std::vector<long>;

inline long weight(const Partition& p) {
    long w = 0;
    for (long x : p) w += x;
    return w;
}

/* "(2,1)", "()" */
std::string partition_to_string(const Partition& p);

/* All partitions of n in canonical order: (n), (n-1,1), ..., (1^n).
 * Optional constraints: at least min_length parts, each part <= max_part,
 * at most max_length parts. partitions(0) = { {} }. */
std::vector<Partition> partitions(long n, long min_length = 0,
                                  std::optional<long> max_part = std::nullopt,
                                  std::optional<long> max_length = std::nullopt);

/* All partitions obtainable by splitting each part of p into sub-partitions
 * and re-sorting; reflexive (p itself is included), deduplicated, in
 * canonical order. */
std::vector<Partition> refinements(const Partition& p);

/* Value of the monomial symmetric function m_p(x_1, ..., x_k) at
 * x_1 = ... = x_k = 1: the number of distinct monomials, i.e.
 * k! / ((k - len)! * prod_i mult_i!) for k >= len, else 0. */
Int monomial_symmetric_at_ones(const Partition& p, long k);

} // namespace mtu
