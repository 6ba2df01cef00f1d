#include "mtu/tensor.hpp"

#include <algorithm>
#include <sstream>

namespace mtu {

long Word::degree(long p) const {
    long d = tail.degree(p);
    for (const auto& s : slots) d += s.degree(p);
    return d;
}

std::string Word::to_string() const {
    std::ostringstream os;
    for (const auto& s : slots) os << s.to_string() << " (x) ";
    os << tail.to_string();
    return os.str();
}

void add_term(Tensor& t, const Word& w, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = t.emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) t.erase(it);
    }
}

Tensor& operator+=(Tensor& a, const Tensor& b) {
    for (const auto& [w, c] : b) add_term(a, w, c);
    return a;
}

Tensor& operator-=(Tensor& a, const Tensor& b) {
    for (const auto& [w, c] : b) add_term(a, w, -c);
    return a;
}

Tensor operator*(const Tensor& a, const Rat& c) {
    Tensor out;
    if (c == 0) return out;
    for (const auto& [w, k] : a) out[w] = k * c;
    return out;
}

Word word_mul(const Word& a, const Word& b) {
    if (a.slots.size() != b.slots.size())
        throw ComputationError("word_mul: slot count mismatch");
    Word out;
    out.slots.reserve(a.slots.size());
    for (size_t i = 0; i < a.slots.size(); ++i) out.slots.push_back(a.slots[i] * b.slots[i]);
    out.tail = a.tail * b.tail;
    return out;
}

Tensor tensor_mul(const Tensor& a, const Tensor& b) {
    Tensor out;
    for (const auto& [wa, ca] : a)
        for (const auto& [wb, cb] : b) add_term(out, word_mul(wa, wb), ca * cb);
    return out;
}

bool tensor_is_integral(const Tensor& t) {
    for (const auto& [w, c] : t)
        if (!is_integer(c)) return false;
    return true;
}

namespace {

std::string print_terms(const std::vector<std::pair<Word, Rat>>& terms) {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms) {
        Rat a = c;
        if (first) {
            if (a < 0) { os << "-"; a = -a; }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        if (a != 1) os << a.str() << " ";
        os << w.to_string();
        first = false;
    }
    return os.str();
}

} // namespace

std::string tensor_to_string(const Tensor& t) {
    return print_terms({t.begin(), t.end()});
}

std::string coaction_to_string(const Tensor& t, long p) {
    std::vector<std::pair<Word, Rat>> terms(t.begin(), t.end());
    std::sort(terms.begin(), terms.end(), [p](const auto& a, const auto& b) {
        return word_canonical_less(b.first, a.first, p);
    });
    return print_terms(terms);
}

namespace {

/* Scan one family's exponents from the highest index down; the monomial
 * with the larger exponent at the first differing index sorts earlier.
 * Returns -1 (a first), +1 (b first), 0 (equal on this family). */
int scan_family(const Monomial& a, const Monomial& b, Gen g) {
    long top = std::max(a.top_index(g), b.top_index(g));
    for (long i = top; i >= 1; --i) {
        long ea = a.exp(g, i), eb = b.exp(g, i);
        if (ea != eb) return ea > eb ? -1 : 1;
    }
    return 0;
}

} // namespace

bool slot_canonical_less(const Monomial& a, const Monomial& b, long p) {
    long da = a.degree(p), db = b.degree(p);
    if (da != db) return da < db;
    if (int s = scan_family(a, b, Gen::T)) return s < 0;
    if (int s = scan_family(a, b, Gen::V)) return s < 0;
    if (int s = scan_family(a, b, Gen::B)) return s < 0;
    if (int s = scan_family(a, b, Gen::M)) return s < 0;
    return false;
}

bool tail_canonical_less(const Monomial& a, const Monomial& b, long p) {
    long va = a.family_part_degree(Gen::V, p), vb = b.family_part_degree(Gen::V, p);
    if (va != vb) return va < vb;
    if (int s = scan_family(a, b, Gen::B)) return s < 0;
    if (int s = scan_family(a, b, Gen::V)) return s < 0;
    if (int s = scan_family(a, b, Gen::T)) return s < 0;
    if (int s = scan_family(a, b, Gen::M)) return s < 0;
    return false;
}

bool word_canonical_less(const Word& a, const Word& b, long p) {
    if (a.slots.size() != b.slots.size()) return a.slots.size() < b.slots.size();
    for (size_t i = 0; i < a.slots.size(); ++i)
        if (a.slots[i] != b.slots[i]) return slot_canonical_less(a.slots[i], b.slots[i], p);
    if (a.tail != b.tail) return tail_canonical_less(a.tail, b.tail, p);
    return false;
}

} // namespace mtu
