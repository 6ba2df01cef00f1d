#include "mtu/exact.hpp"

#include <mutex>
#include <vector>

namespace mtu {

Int to_integer(const Rat& q) {
    if (!is_integer(q))
        throw NonIntegerValueError("expected an integer, got " + q.str());
    return num(q);
}

long p_valuation(const Int& n, const Int& p) {
    if (p < 2) throw ComputationError("p_valuation: modulus must be >= 2");
    if (n == 0) throw ComputationError("p_valuation: v_p(0) is undefined");
    Int m = abs(n);
    long v = 0;
    while (m % p == 0) { m /= p; ++v; }
    return v;
}

long p_valuation(const Rat& q, const Int& p) {
    if (q == 0) throw ComputationError("p_valuation: v_p(0) is undefined");
    return p_valuation(num(q), p) - p_valuation(den(q), p);
}

bool is_p_integral(const Rat& q, const Int& p) {
    if (q == 0) return true;
    return p_valuation(den(q), p) == 0;
}

Int p_part(const Int& n, const Int& p) {
    if (n == 0) throw ComputationError("p_part: undefined for 0");
    Int m = abs(n), out = 1;
    while (m % p == 0) { m /= p; out *= p; }
    return out;
}

Int int_pow(const Int& base, unsigned long exp) {
    Int out = 1, b = base;
    while (exp) {
        if (exp & 1) out *= b;
        b *= b;
        exp >>= 1;
    }
    return out;
}

Int factorial(unsigned long n) {
    Int out = 1;
    for (unsigned long i = 2; i <= n; ++i) out *= i;
    return out;
}

Int binomial(const Int& n, const Int& k) {
    if (k < 0) return 0;
    if (n >= 0 && k > n) return 0;
    /* C(n, k) for possibly negative n via the falling-factorial formula. */
    Int out = 1;
    for (Int i = 0; i < k; ++i) {
        out *= (n - i);
        out /= (i + 1); /* exact: product of j consecutive integers is divisible by j! */
    }
    return out;
}

Rat bernoulli(unsigned long n) {
    static std::mutex mu;
    static std::vector<Rat> cache{Rat(1)}; /* B_0 = 1 */
    std::lock_guard<std::mutex> lock(mu);
    while (cache.size() <= n) {
        unsigned long m = cache.size();
        /* B_m = -1/(m+1) * sum_{k=0}^{m-1} C(m+1, k) B_k */
        Rat acc = 0;
        for (unsigned long k = 0; k < m; ++k)
            acc += Rat(binomial(Int(m) + 1, Int(k))) * cache[k];
        cache.push_back(-acc / Rat(Int(m) + 1));
    }
    return cache[n];
}

} // namespace mtu
