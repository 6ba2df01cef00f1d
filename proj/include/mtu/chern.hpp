#pragma once

/* Characteristic-number layer: s_omega numbers of integer combinations of
 * products of complex projective spaces, Euler characteristics, the rational
 * obstruction test for r-section existence, the a_d divisibility numbers,
 * refinement-lcm multiplier bounds, and the section-count report rules. */

#include "mtu/exact.hpp"
#include "mtu/partition.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace mtu {

/* Formal integer combination of products of projective spaces.  Each key is
 * the multiset of factor dimensions (a partition, e.g. (2,1) = CP^2 x CP^1);
 * every summand has the same total dimension dim.  The zero class has empty
 * terms and dim = 0. */
struct CobordismClass {
    std::map<Partition, Int> terms;
    long dim = 0;
};

/* Grammar: sum of optionally signed terms "c*[CPn1x...xCPnk]"; the
 * coefficient (with its '*') may be omitted when it is 1; "0" is the zero
 * class.  Throws ParseError on malformed input or summands of unequal
 * dimension. */
CobordismClass parse_cobordism_class(const std::string& text);

/* Canonical text form, e.g. "3*[CP1xCP1]-4*[CP2]"; parses back to the same
 * class.  The zero class prints as "0". */
std::string format_cobordism_class(const CobordismClass& c);

/* s_omega(c).  Zero when |omega| != dim; otherwise extended linearly from
 * s_omega(M x N) = sum over multiset splittings omega = omega' u omega'' of
 * s_{omega'}(M) * s_{omega''}(N), with
 * s_omega(CP^n) = monomial_symmetric_at_ones(omega, n+1) when |omega| = n. */
Int s_number(const CobordismClass& c, const Partition& omega);

/* Top Chern number s_{(1,...,1)}(c); chi(CP^n) = n + 1, multiplicative. */
Int euler_char(const CobordismClass& c);

struct RationalObstruction {
    bool vanishes = true;
    std::vector<Partition> witnesses; /* failing partitions, canonical order */
};

/* Vanishes iff s_omega(c) = 0 for every partition omega of dim with length
 * >= dim - r + 1.  Requires 0 <= r <= dim. */
RationalObstruction rational_obstruction(const CobordismClass& c, long r);

/* The divisibility number a_d = (d+1)!/|B_{2d}|, divided once more by p when
 * d = p^i - 1 for p in {2,3}; special_prime records that p (0 otherwise).
 * The value is not an integer for every d (first failures d = 6, 8). */
struct AValue {
    Rat value;
    long special_prime = 0;
};
AValue a_number(long d);

/* Product of a_part over the parts; throws NonIntegerValueError naming the
 * offending part when some a_part is not an integer. */
Int a_partition(const Partition& j);

/* All partitions J <= I in the refinement order (each part of I split
 * further), I itself included. */
inline std::vector<Partition> partition_refinements(const Partition& i) {
    return refinements(i);
}

struct LcmBound {
    Int c = 1;
    std::vector<std::pair<Partition, Int>> table; /* refinement -> a_J */
};

/* lcm of a_J over all refinements J of i.  Requires |i| >= 1 and
 * 1 <= r <= |i| (r only gates applicability; the bound is r-independent). */
LcmBound lcm_bound(const Partition& i, long r);

struct SectionReport {
    long d = 0;
    long rational_max_r = 0; /* largest r with vanishing rational obstruction */
    long guaranteed_r = 0;   /* largest such r certified torsion-free */
    Int multiplier = 1;      /* c with r sections on c*[M] when only the lcm bound applies */
    std::map<long, std::vector<Partition>> witnesses; /* r -> failing partitions */
};

/* Runs the rational test for every r, then the integral guarantees:
 * r <= 3 for d >= 6, r = 4 for odd d > 6, r = d - 1 always; when no
 * guarantee reaches rational_max_r the multiplier is the refinement-lcm
 * bound over the summands, with odd-primary parts p stripped whenever
 * rational_max_r < p^2 - p.  Requires dim >= 1. */
SectionReport section_report(const CobordismClass& c);

} // namespace mtu
