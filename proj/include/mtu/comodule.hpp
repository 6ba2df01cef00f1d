#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mtu/bp.hpp"

namespace mtu {

/* The comodule families over the structure tables:
 *   Sphere : the coefficient ring itself (no B's)
 *   MuFull : the full polynomial comodule on B_1, B_2, ...
 *   Mtu    : B-degree <= d inside MuFull                    (sub)
 *   MtuBar : MuFull modulo B-degree <= d                    (quotient)
 *   MtuSub : (B-degree <= d) modulo (B-degree <= d-r)       (sub-quotient)
 * Basis elements are v^beta B^gamma monomials. The coaction is the
 * multiplicative extension of psi(B_i) together with eta_R on the v's,
 * right-normalized FIRST and truncated to the window on the tail AFTER:
 * quotient families delete below-window tails, sub families must never see
 * an above-window tail (that would mean the coaction raised B-degree, which
 * the B-linear tables rule out; it is reported as a window violation). */
enum class Family { Sphere, MuFull, Mtu, MtuBar, MtuSub };

/* "sphere", "mu", "mtu", "mtubar", "mtusub" (the CLI spelling) */
std::string family_name(Family f);
Family family_from_string(const std::string& s); /* throws ParseError */

struct ComoduleSpec {
    Family family = Family::Sphere;
    long d = 0;            /* window parameter (Mtu, MtuBar, MtuSub) */
    long r = 0;            /* section count, MtuSub only, 1 <= r <= d */
    long p = 2;
    long degree_bound = 0; /* internal degree cap for bases and coactions */
};

class Comodule {
public:
    /* builds its own structure tables, sized to the family window */
    explicit Comodule(const ComoduleSpec& spec);
    /* shares prebuilt tables; they must cover the spec's bounds */
    Comodule(const ComoduleSpec& spec, std::shared_ptr<const BpTables> tables);

    const ComoduleSpec& spec() const { return spec_; }
    const BpTables& tables() const { return *tab_; }
    std::shared_ptr<const BpTables> tables_ptr() const { return tab_; }

    /* B-degree window test for a v/B monomial */
    bool in_window(const Monomial& m) const;

    /* all basis monomials v^beta B^gamma of internal degree t in the
     * window, canonical order (v-part degree ascending, then B-exponents
     * compared highest index down, larger first) */
    std::vector<Monomial> basis(long t) const;

    /* psi(x) in right-normal form, truncated to the window on the tail.
     * Throws WindowViolationError if x is outside the window or a tail
     * escapes above it (sub families only; signals non-closure). */
    Tensor coaction(const Monomial& x, CoactionMode mode) const;

    /* smallest B-table degree bound that covers every window monomial of
     * internal degree <= spec.degree_bound */
    static long b_degree_needed(const ComoduleSpec& spec);

private:
    ComoduleSpec spec_;
    std::shared_ptr<const BpTables> tab_;
};

} // namespace mtu
