#include "mtu/comodule.hpp"

#include <algorithm>
#include <string>

#include "mtu/exact.hpp"

namespace mtu {

namespace {

long pow_long(long b, long e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

void check_spec(const ComoduleSpec& s) {
    if (s.degree_bound < 0) throw ComputationError("Comodule: negative degree bound");
    switch (s.family) {
    case Family::Sphere:
    case Family::MuFull:
        break;
    case Family::Mtu:
    case Family::MtuBar:
        if (s.d < 1) throw ComputationError("Comodule: need d >= 1");
        break;
    case Family::MtuSub:
        if (s.d < 1 || s.r < 1 || s.r > s.d)
            throw ComputationError("Comodule: need 1 <= r <= d");
        break;
    }
}

/* B-degree window [lo, hi] of the family; hi < 0 means unbounded above */
void window_of(const ComoduleSpec& s, long& lo, long& hi) {
    switch (s.family) {
    case Family::Sphere: lo = 0; hi = 0; break;
    case Family::MuFull: lo = 0; hi = -1; break;
    case Family::Mtu:    lo = 0; hi = s.d; break;
    case Family::MtuBar: lo = s.d + 1; hi = -1; break;
    case Family::MtuSub: lo = s.d - s.r + 1; hi = s.d; break;
    }
}

/* v-monomials of exact degree rem on indices <= vi, appended onto cur */
void enum_v(long p, long rem, long vi, const Monomial& cur, std::vector<Monomial>& out) {
    if (rem == 0) {
        out.push_back(cur);
        return;
    }
    if (vi == 0) return;
    long dv = 2 * (pow_long(p, vi) - 1);
    for (long e = 0; e * dv <= rem; ++e)
        enum_v(p, rem - e * dv, vi - 1,
               e ? cur * Monomial::generator(Gen::V, vi, e) : cur, out);
}

/* v^beta B^gamma of exact degree rem with B-degree in [blo, bhi] */
void enum_window(long p, long rem, long bi, long bdeg, long blo, long bhi,
                 const Monomial& cur, std::vector<Monomial>& out) {
    if (bi == 0) {
        if (bdeg < blo) return;
        long vi = 0;
        while (2 * (pow_long(p, vi + 1) - 1) <= rem) ++vi;
        enum_v(p, rem, vi, cur, out);
        return;
    }
    long db = 2 * bi;
    for (long e = 0; e * db <= rem; ++e) {
        if (bhi >= 0 && bdeg + e > bhi) break;
        enum_window(p, rem - e * db, bi - 1, bdeg + e, blo, bhi,
                    e ? cur * Monomial::generator(Gen::B, bi, e) : cur, out);
    }
}

} // namespace

std::string family_name(Family f) {
    switch (f) {
    case Family::Sphere: return "sphere";
    case Family::MuFull: return "mu";
    case Family::Mtu:    return "mtu";
    case Family::MtuBar: return "mtubar";
    case Family::MtuSub: return "mtusub";
    }
    return "?";
}

Family family_from_string(const std::string& s) {
    if (s == "sphere") return Family::Sphere;
    if (s == "mu") return Family::MuFull;
    if (s == "mtu") return Family::Mtu;
    if (s == "mtubar") return Family::MtuBar;
    if (s == "mtusub") return Family::MtuSub;
    throw ParseError("unknown family '" + s + "' (want sphere|mu|mtu|mtubar|mtusub)");
}

long Comodule::b_degree_needed(const ComoduleSpec& spec) {
    long t = spec.degree_bound;
    switch (spec.family) {
    case Family::Sphere: return 0;
    case Family::MuFull:
    case Family::Mtu:    return t;
    /* the cheapest window companion of a lone B_k is B_1^(window floor - 1) */
    case Family::MtuBar: return std::clamp(t - 2 * spec.d, 0L, t);
    case Family::MtuSub: return std::clamp(t - 2 * (spec.d - spec.r), 0L, t);
    }
    return t;
}

Comodule::Comodule(const ComoduleSpec& spec)
    : spec_(spec) {
    check_spec(spec_);
    tab_ = std::make_shared<const BpTables>(spec_.p, spec_.degree_bound,
                                            b_degree_needed(spec_));
}

Comodule::Comodule(const ComoduleSpec& spec, std::shared_ptr<const BpTables> tables)
    : spec_(spec), tab_(std::move(tables)) {
    check_spec(spec_);
    if (!tab_) throw ComputationError("Comodule: null tables");
    if (tab_->p() != spec_.p) throw ComputationError("Comodule: tables built at a different prime");
    if (tab_->degree_bound() < spec_.degree_bound ||
        tab_->b_degree_bound() < b_degree_needed(spec_))
        throw ComputationError("Comodule: shared tables too small for the degree bound");
}

bool Comodule::in_window(const Monomial& m) const {
    long lo, hi;
    window_of(spec_, lo, hi);
    long b = m.family_degree(Gen::B);
    return b >= lo && (hi < 0 || b <= hi);
}

std::vector<Monomial> Comodule::basis(long t) const {
    if (t > spec_.degree_bound)
        throw ComputationError("basis: degree " + std::to_string(t) + " exceeds the bound");
    std::vector<Monomial> out;
    if (t < 0 || t % 2 != 0) return out;
    long lo, hi;
    window_of(spec_, lo, hi);
    enum_window(spec_.p, t, t / 2, 0, lo, hi, Monomial(), out);
    std::sort(out.begin(), out.end(),
              [this](const Monomial& a, const Monomial& b) {
                  return tail_canonical_less(a, b, spec_.p);
              });
    return out;
}

Tensor Comodule::coaction(const Monomial& x, CoactionMode mode) const {
    if (x.has(Gen::T) || x.has(Gen::M))
        throw ComputationError("coaction: expected a v/B monomial");
    if (!in_window(x))
        throw WindowViolationError("coaction: element outside the family window");
    long lo, hi;
    window_of(spec_, lo, hi);
    Tensor out;
    for (const auto& [w, c] : tab_->coact_monomial(x, mode)) {
        long b = w.tail.family_degree(Gen::B);
        if (hi >= 0 && b > hi)
            throw WindowViolationError("coaction raised the B-degree out of the window");
        if (b >= lo) add_term(out, w, c); /* quotient kills below-window tails */
    }
    return out;
}

} // namespace mtu
