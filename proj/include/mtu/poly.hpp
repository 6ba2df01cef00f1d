#pragma once

/* Sparse exact polynomials in four graded generator families:
 *   V: v_1, v_2, ...   internal degree 2(p^i - 1)
 *   T: t_1, t_2, ...   internal degree 2(p^i - 1)
 *   B: B_1, B_2, ...   internal degree 2i
 *   M: m_1, m_2, ...   internal degree 2(p^i - 1)  (rational bookkeeping)
 * Coefficients are exact rationals. */

#include "mtu/exact.hpp"

#include <compare>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace mtu {

enum class Gen : int { V = 0, T = 1, B = 2, M = 3 };

class Monomial {
public:
    Monomial() = default;

    static Monomial generator(Gen g, long index, long exp = 1);

    long exp(Gen g, long index) const; /* 1-based index */
    void set_exp(Gen g, long index, long e);
    const std::vector<long>& exps(Gen g) const;

    Monomial operator*(const Monomial& o) const;
    Monomial pow(long k) const;

    /* Divide out o; throws ComputationError when not divisible. */
    Monomial operator/(const Monomial& o) const;

    bool is_one() const;
    bool has(Gen g) const;          /* any positive exponent in the family */
    long family_degree(Gen g) const; /* sum of exponents in the family */
    long top_index(Gen g) const;     /* largest index with nonzero exponent, 0 if none */
    long degree(long p) const;       /* internal (topological) degree */
    long family_part_degree(Gen g, long p) const;

    /* Keep only the exponents of one family / drop one family. */
    Monomial family_part(Gen g) const;
    Monomial without_family(Gen g) const;

    auto operator<=>(const Monomial&) const = default;
    bool operator==(const Monomial&) const = default;

    std::string to_string() const; /* "v1 B2 B1^6", "1" */

private:
    std::vector<long> e_[4];
    std::vector<long>& mut(Gen g) { return e_[int(g)]; }
    const std::vector<long>& ref(Gen g) const { return e_[int(g)]; }
    void trim(Gen g);
};

class Poly {
public:
    using Terms = std::map<Monomial, Rat>;

    Poly() = default;
    explicit Poly(const Rat& c);
    explicit Poly(const Monomial& m, const Rat& c = Rat(1));

    static Poly generator(Gen g, long index, long exp = 1);

    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const Terms& terms() const { return terms_; }
    Rat coeff(const Monomial& m) const;
    Rat constant_term() const { return coeff(Monomial()); }

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rat& c) const;
    Poly pow(long k) const;
    bool operator==(const Poly& o) const = default;

    /* Replace every generator of family g by image(index); other families
     * and coefficients pass through. */
    Poly substituted(Gen g, const std::function<Poly(long)>& image) const;

    /* Drop terms of internal degree > max_degree. */
    Poly truncated_above(long p, long max_degree) const;

    bool is_homogeneous(long p, long* degree_out = nullptr) const;
    bool is_integral() const;        /* all coefficients in Z */
    bool has_family(Gen g) const;

    void add_term(const Monomial& m, const Rat& c);

    std::string to_string() const;

private:
    Terms terms_;
};

} // namespace mtu
