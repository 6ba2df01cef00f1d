#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mtu/comodule.hpp"
#include "mtu/matrix.hpp"

namespace mtu {

/* The reduced cobar complex C^s = Gbar^(x)s (x) M of a comodule family,
 * its integer d1 matrices, the E2 groups (p-local homology), chart
 * assembly, and the derived reports. Sign convention: on rank 0 the
 * differential is psi(m) - 1 (x) m; on rank s >= 1 it is
 *   sum_{i=1..s} (-1)^i [reduced Delta in slot i]
 *   + (-1)^(s+1)  [reduced psi appended on the right],
 * words with a unit slot being dropped (that is the reduction). */

struct ChartAnnotation {
    std::string name;
    long s = 0, t = 0;
    bool operator==(const ChartAnnotation&) const = default;
};

struct E2Chart {
    ComoduleSpec spec;
    long s_max = 0, t_max = 0;
    /* nonzero groups only, keyed {t, s} so natural iteration is the
     * serialization order (t ascending, then s ascending) */
    std::map<std::pair<long, long>, AbelianGroup> entries;
    std::vector<ChartAnnotation> annotations;
    /* bidegrees omitted because the mode could not provide them or the
     * complex failed to compose there; keyed {t, s} like entries */
    std::vector<std::pair<long, long>> unavailable;

    /* group at (s,t); zero group when absent */
    AbelianGroup at(long s, long t) const;
};

/* all words t^a1 | ... | t^as (x) m of total internal degree t with every
 * slot a nonunit t-monomial and m a window basis element; canonical order */
std::vector<Word> e1_basis(const Comodule& cm, long s, long t);

/* matrix of d1 : C^s(t) -> C^(s+1)(t); rows indexed by e1_basis(s+1, t),
 * columns by e1_basis(s, t). Throws IntegralityError if an entry is not an
 * integer after right-normalization. */
IntMatrix d1_matrix(const Comodule& cm, long s, long t, CoactionMode mode);

/* homology at (s,t), localized at the family prime; propagates
 * CompositionError when the two differentials do not compose to zero */
AbelianGroup e2_group(const Comodule& cm, long s, long t, CoactionMode mode);

/* full sweep over 0 <= s <= s_max, even 0 <= t <= t_max. Bidegrees whose
 * computation raises CompositionError or ModeUnavailableError are omitted
 * from the chart (the remaining entries are still exact). Parallel across
 * degrees; thread count from MTUCALC_THREADS (default 1); the result is
 * independent of the thread count. */
E2Chart e2_chart(const Comodule& cm, long s_max, long t_max, CoactionMode mode);

/* chart of the sub family (B-degree <= d) from its quotient family's
 * chart: s = 0 is the primitive lattice rank, s = 1 the cokernel of the
 * zero-line map from the full family, s >= 2 the quotient entries shifted
 * up by one */
E2Chart mtu_chart_from_bar(const E2Chart& bar, CoactionMode mode);

/* torsion-vanishing scan of the quotient family at window d - r */
struct TorsionCheckEntry {
    long s = 0, t = 0;
    AbelianGroup group;
    bool zero = false;       /* the computed group vanishes */
    bool guaranteed = false; /* inside the proven s = 2 range t < 2(p^2-p+d+1) */
};

struct TorsionCheckReport {
    long p = 0, d = 0, r = 0;
    std::vector<TorsionCheckEntry> entries;
    bool all_zero = true;
};

TorsionCheckReport torsion_vanishing_check(long p, long d, long r, long s_min, long s_max,
                                           long t_min, long t_max,
                                           CoactionMode mode = CoactionMode::Derived);

/* all r >= 2 whose chart entry at (r, t + r - 1) is nonzero: the possible
 * targets of a differential off a zero-line class at (0, t). An empty list
 * certifies the torsion obstruction vanishes at the E2 level. */
struct DifferentialCandidate {
    long r = 0;          /* page of the possible differential */
    long s = 0, t = 0;   /* target bidegree (s = r, t = source_t + r - 1) */
    AbelianGroup group;
    bool operator==(const DifferentialCandidate&) const = default;
};

std::vector<DifferentialCandidate> differential_candidates(const E2Chart& chart, long source_t);

/* serializers used by the CLI: stable JSON (schema documented in the
 * README) and an aligned text grid with columns t - s and rows s */
std::string chart_to_json(const E2Chart& chart);
std::string chart_to_text(const E2Chart& chart);

} // namespace mtu
