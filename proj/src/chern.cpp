#include "mtu/chern.hpp"

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <functional>
#include <iterator>
#include <sstream>

namespace mtu {

namespace {

/* s_omega of a single product of projective spaces: distribute the multiset
 * omega over the factors and multiply the per-factor monomial-symmetric
 * counts.  Distinct parts landing on one factor in different slots are
 * counted by monomial_symmetric_at_ones, so the distribution here is over
 * factors only, with no multiplicity weights. */
Int s_product(const Partition& factors, const Partition& omega) {
    const size_t k = factors.size();
    std::vector<std::pair<long, long>> vals; /* (part value, multiplicity) */
    for (long part : omega) {
        if (!vals.empty() && vals.back().first == part) ++vals.back().second;
        else vals.emplace_back(part, 1);
    }
    std::vector<long> used(k, 0);
    std::vector<Partition> assigned(k);
    Int total = 0;
    std::function<void(size_t)> rec = [&](size_t vi) {
        if (vi == vals.size()) {
            Int prod = 1;
            for (size_t j = 0; j < k; ++j) {
                if (used[j] != factors[j]) return;
                prod *= monomial_symmetric_at_ones(assigned[j], factors[j] + 1);
            }
            total += prod;
            return;
        }
        const long value = vals[vi].first;
        const long mult = vals[vi].second;
        /* compositions of mult over the factors, capped by spare degree */
        std::function<void(size_t, long)> place = [&](size_t j, long rem) {
            if (j == k) {
                if (rem == 0) rec(vi + 1);
                return;
            }
            const long cap = (factors[j] - used[j]) / value;
            const long top = std::min(rem, cap);
            for (long c = 0; c <= top; ++c) {
                used[j] += c * value;
                assigned[j].insert(assigned[j].end(), static_cast<size_t>(c), value);
                place(j + 1, rem - c);
                assigned[j].resize(assigned[j].size() - static_cast<size_t>(c));
                used[j] -= c * value;
            }
        };
        place(0, mult);
    };
    rec(0);
    return total;
}

[[noreturn]] void parse_fail(const std::string& text, size_t pos, const std::string& why) {
    std::ostringstream os;
    os << "cobordism class '" << text << "': " << why << " at offset " << pos;
    throw ParseError(os.str());
}

bool small_prime(long n) {
    if (n < 2) return false;
    for (long q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

} // namespace

CobordismClass parse_cobordism_class(const std::string& text) {
    CobordismClass out;
    size_t pos = 0;
    const auto skip = [&] {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    };
    const auto read_int = [&]() -> Int {
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) parse_fail(text, pos, "expected an integer");
        return Int(text.substr(start, pos - start));
    };
    skip();
    if (pos < text.size() && text[pos] == '0') {
        size_t q = pos + 1;
        while (q < text.size() && (text[q] == ' ' || text[q] == '\t')) ++q;
        if (q == text.size()) return out; /* the zero class */
    }
    bool first = true;
    bool have_dim = false;
    while (true) {
        skip();
        if (pos == text.size()) {
            if (first) parse_fail(text, pos, "empty expression");
            break;
        }
        Int sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            if (text[pos] == '-') sign = -1;
            ++pos;
            skip();
        } else if (!first) {
            parse_fail(text, pos, "expected '+' or '-' between summands");
        }
        Int coef = 1;
        if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            coef = read_int();
            skip();
            if (pos >= text.size() || text[pos] != '*')
                parse_fail(text, pos, "expected '*' after the coefficient");
            ++pos;
            skip();
        }
        if (pos >= text.size() || text[pos] != '[') parse_fail(text, pos, "expected '['");
        ++pos;
        Partition factors;
        while (true) {
            skip();
            if (text.compare(pos, 2, "CP") != 0) parse_fail(text, pos, "expected 'CP'");
            pos += 2;
            Int n = read_int();
            if (n < 1) parse_fail(text, pos, "projective-space dimension must be >= 1");
            factors.push_back(static_cast<long>(n));
            skip();
            if (pos < text.size() && text[pos] == 'x') {
                ++pos;
                continue;
            }
            break;
        }
        if (pos >= text.size() || text[pos] != ']') parse_fail(text, pos, "expected ']' or 'x'");
        ++pos;
        std::sort(factors.begin(), factors.end(), std::greater<long>());
        const long d = weight(factors);
        if (!have_dim) {
            out.dim = d;
            have_dim = true;
        } else if (d != out.dim) {
            parse_fail(text, pos, "summands of unequal total dimension");
        }
        out.terms[factors] += sign * coef;
        first = false;
    }
    for (auto it = out.terms.begin(); it != out.terms.end();)
        it = (it->second == 0) ? out.terms.erase(it) : std::next(it);
    if (out.terms.empty()) out.dim = 0;
    return out;
}

std::string format_cobordism_class(const CobordismClass& c) {
    if (c.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [factors, coef] : c.terms) {
        Int mag = coef < 0 ? Int(-coef) : coef;
        if (coef < 0) os << '-';
        else if (!first) os << '+';
        if (mag != 1) os << mag << '*';
        os << '[';
        for (size_t j = 0; j < factors.size(); ++j) {
            if (j) os << 'x';
            os << "CP" << factors[j];
        }
        os << ']';
        first = false;
    }
    return os.str();
}

Int s_number(const CobordismClass& c, const Partition& omega) {
    if (weight(omega) != c.dim) return 0;
    Int total = 0;
    for (const auto& [factors, coef] : c.terms) total += coef * s_product(factors, omega);
    return total;
}

Int euler_char(const CobordismClass& c) {
    return s_number(c, Partition(static_cast<size_t>(c.dim), 1));
}

RationalObstruction rational_obstruction(const CobordismClass& c, long r) {
    if (r < 0 || r > c.dim) throw ComputationError("rational obstruction needs 0 <= r <= d");
    RationalObstruction out;
    for (const auto& omega : partitions(c.dim, c.dim - r + 1))
        if (s_number(c, omega) != 0) out.witnesses.push_back(omega);
    out.vanishes = out.witnesses.empty();
    return out;
}

AValue a_number(long d) {
    if (d < 1) throw ComputationError("a_d is defined for d >= 1");
    Rat b = bernoulli(2 * static_cast<unsigned long>(d));
    if (b < 0) b = -b;
    AValue out;
    out.value = Rat(factorial(static_cast<unsigned long>(d) + 1)) / b;
    for (long p : {2L, 3L}) {
        long m = d + 1;
        while (m % p == 0) m /= p;
        if (m == 1) {
            out.special_prime = p;
            out.value /= p;
            break;
        }
    }
    return out;
}

Int a_partition(const Partition& j) {
    Int prod = 1;
    for (long part : j) {
        const AValue a = a_number(part);
        if (!is_integer(a.value)) {
            std::ostringstream os;
            os << "a_" << part << " = " << a.value
               << " is not an integer under the |B_{2d}| convention";
            throw NonIntegerValueError(os.str());
        }
        prod *= num(a.value);
    }
    return prod;
}

LcmBound lcm_bound(const Partition& i, long r) {
    const long d = weight(i);
    if (i.empty() || d < 1) throw ComputationError("lcm bound needs a nonempty partition");
    if (r < 1 || r > d) throw ComputationError("lcm bound needs 1 <= r <= d");
    LcmBound out;
    for (const auto& j : refinements(i)) {
        const Int aj = a_partition(j);
        out.table.emplace_back(j, aj);
        out.c = boost::multiprecision::lcm(out.c, aj);
    }
    return out;
}

SectionReport section_report(const CobordismClass& c) {
    if (c.dim < 1) throw ComputationError("section report needs a class of dimension >= 1");
    SectionReport rep;
    rep.d = c.dim;
    for (long r = 0; r <= c.dim; ++r) {
        const auto ro = rational_obstruction(c, r);
        if (ro.vanishes) rep.rational_max_r = r;
        else rep.witnesses[r] = ro.witnesses;
    }
    const auto covered = [&](long r) {
        if (r <= 0) return true;
        if (r <= 3 && rep.d >= 6) return true;
        if (r <= 4 && rep.d > 6 && rep.d % 2 == 1) return true;
        return r == rep.d - 1;
    };
    rep.guaranteed_r = 0;
    for (long r = 0; r <= rep.rational_max_r; ++r)
        if (covered(r)) rep.guaranteed_r = r;
    if (rep.guaranteed_r == rep.rational_max_r) return rep;
    /* no torsion-vanishing theorem reaches rational_max_r: fall back to the
     * refinement-lcm bound.  Every summand refines some maximal summand and
     * lcm_bound is monotone under refinement, so the lcm over all summands
     * equals the lcm over the maximal ones. */
    Int m = 1;
    for (const auto& [factors, coef] : c.terms)
        m = boost::multiprecision::lcm(m, lcm_bound(factors, rep.rational_max_r).c);
    /* odd-primary obstructions vanish while rational_max_r < p^2 - p, so
     * only primes with p^2 - p <= rational_max_r survive (and p = 2 always). */
    Int folded = p_part(m, 2);
    for (long p = 3; p * (p - 1) <= rep.rational_max_r; ++p)
        if (small_prime(p)) folded *= p_part(m, p);
    rep.multiplier = folded;
    return rep;
}

} // namespace mtu
