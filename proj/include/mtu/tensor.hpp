#pragma once

/* Tensor words over the Hopf algebroid: a Word is s "slot" factors (left
 * tensor factors, t-monomials once normalized) followed by a "tail" factor
 * (the rightmost factor: a comodule element, or the right factor of a
 * coproduct). A Tensor is an exact rational linear combination of Words.
 * Rank-k tensors are Words with k-1 slots. */

#include "mtu/poly.hpp"

#include <map>
#include <string>
#include <vector>

namespace mtu {

struct Word {
    std::vector<Monomial> slots;
    Monomial tail;

    auto operator<=>(const Word&) const = default;
    bool operator==(const Word&) const = default;

    long degree(long p) const;
    std::string to_string() const; /* "t1 (x) B2 B1^6"; tail-only words print bare */
};

using Tensor = std::map<Word, Rat>;

void add_term(Tensor& t, const Word& w, const Rat& c);
Tensor& operator+=(Tensor& a, const Tensor& b);
Tensor& operator-=(Tensor& a, const Tensor& b);
Tensor operator*(const Tensor& a, const Rat& c);

/* Slotwise product (words must have equal slot counts). */
Word word_mul(const Word& a, const Word& b);
Tensor tensor_mul(const Tensor& a, const Tensor& b);

bool tensor_is_integral(const Tensor& t);

std::string tensor_to_string(const Tensor& t);

/* Coaction presentation order: words sorted canonically descending, so the
 * identity-slot (primitive) part prints last: "2 t1 (x) B1^7 + 1 (x) B2 B1^6". */
std::string coaction_to_string(const Tensor& t, long p);

/* Canonical presentation order used for all printed/frozen bases:
 *  - slots: internal degree ascending; ties broken scanning t-exponents
 *    from the highest index down, larger exponent first;
 *  - tails: v-part internal degree ascending, then B-exponents scanned
 *    highest index down larger-first, then v-, t-, m-exponents likewise;
 *  - words: fewer slots first, then slotwise, then by tail. */
bool slot_canonical_less(const Monomial& a, const Monomial& b, long p);
bool tail_canonical_less(const Monomial& a, const Monomial& b, long p);
bool word_canonical_less(const Word& a, const Word& b, long p);

} // namespace mtu
