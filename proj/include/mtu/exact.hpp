#pragma once

/* Exact scalar arithmetic: arbitrary-precision integers and rationals,
 * shared error taxonomy, and small number-theoretic helpers used across
 * the library. No floating point anywhere. */

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace mtu {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/* ---- error taxonomy ---------------------------------------------------- */

/* Base class for every failure the engine can diagnose. */
struct ComputationError : std::runtime_error {
    explicit ComputationError(const std::string& what) : std::runtime_error(what) {}
};

/* A quantity that must be an integer (matrix entry, structure constant)
 * came out with a nontrivial denominator. */
struct IntegralityError : ComputationError {
    explicit IntegralityError(const std::string& what) : ComputationError(what) {}
};

/* Two maps that must compose to zero failed to do so. */
struct CompositionError : ComputationError {
    explicit CompositionError(const std::string& what) : ComputationError(what) {}
};

/* A coaction mode was requested outside its domain of validity. */
struct ModeUnavailableError : ComputationError {
    explicit ModeUnavailableError(const std::string& what) : ComputationError(what) {}
};

/* An element fell outside the degree window of a truncated family where
 * the operation is undefined (as opposed to quotient families, where
 * out-of-window terms are silently deleted). */
struct WindowViolationError : ComputationError {
    explicit WindowViolationError(const std::string& what) : ComputationError(what) {}
};

/* A value that the caller required to be an integer (divisibility bound,
 * characteristic-number multiplier) is not one. */
struct NonIntegerValueError : ComputationError {
    explicit NonIntegerValueError(const std::string& what) : ComputationError(what) {}
};

/* Malformed textual input (CLI arguments, class expressions). */
struct ParseError : ComputationError {
    explicit ParseError(const std::string& what) : ComputationError(what) {}
};

/* ---- rational helpers --------------------------------------------------- */

inline Int num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rat& q) { return den(q) == 1; }

/* Throws NonIntegerValueError when q has a denominator. */
Int to_integer(const Rat& q);

/* p-adic valuation. v_p(0) throws (it is +infinity). */
long p_valuation(const Int& n, const Int& p);
long p_valuation(const Rat& q, const Int& p);

/* True when v_p(q) >= 0, i.e. p does not divide the denominator. 0 counts. */
bool is_p_integral(const Rat& q, const Int& p);

/* Keep only the p-part of a positive integer: p^{v_p(n)}. */
Int p_part(const Int& n, const Int& p);

/* ---- combinatorial helpers ---------------------------------------------- */

Int int_pow(const Int& base, unsigned long exp);
Int factorial(unsigned long n);
Int binomial(const Int& n, const Int& k);

/* Bernoulli number B_n with B_1 = -1/2; memoized, thread-safe. */
Rat bernoulli(unsigned long n);

} // namespace mtu
