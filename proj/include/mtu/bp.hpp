#pragma once

/* Structure tables for the p-typical Hopf algebroid (A, Gamma):
 *   A = Z_(p)[v_1, v_2, ...],  Gamma = A[t_1, t_2, ...]
 * built from the Hazewinkel relation p m_n = sum_{i=0}^{n-1} m_i v_{n-i}^{p^i},
 * plus the coaction data for the B-generator family (the homology of the
 * complex-cobordism Thom spectrum): the MU coproduct of B_n, the p-typical
 * series images g(B_n), and psi(B_n) in right-normal form.
 *
 * Everything is computed once in the constructor for a fixed prime and degree
 * bound and is immutable afterwards; concurrent reads are safe. The B-family
 * tables may be capped separately (b_degree_bound) since structure checks in
 * high degree do not need them. */

#include "mtu/tensor.hpp"

#include <map>
#include <vector>

namespace mtu {

/* How psi(B_n) is obtained: Derived = (g (x) id) applied to the MU coproduct,
 * right-normalized, then completed to a coassociative table (see below);
 * Tabulated = the hard-coded low-index table (p = 2, n <= 3 only). */
enum class CoactionMode { Derived, Tabulated };

class BpTables {
public:
    BpTables(long p, long degree_bound, long b_degree_bound = -1);

    long p() const { return p_; }
    long degree_bound() const { return bound_; }
    long b_degree_bound() const { return b_bound_; }
    long max_v_index() const { return maxv_; } /* = max t index */
    long max_b_index() const { return maxb_; }

    /* m_n as a rational polynomial in v's (n >= 0, m_0 = 1), and v_n as a
     * rational polynomial in m's (n >= 1). */
    const Poly& m_in_v(long n) const;
    const Poly& v_in_m(long n) const;
    Poly to_v_form(const Poly& x) const; /* substitute every m_k */
    Poly to_m_form(const Poly& x) const; /* substitute every v_k */

    /* Right unit: eta_r_v(n) = eta_R(v_n) in Z_(p)[v,t];
     * eta_tail(n) = eta_R(v_n) - v_n (every monomial carries a t). */
    const Poly& eta_r_v(long n) const;
    const Poly& eta_tail(long n) const;
    Poly eta_r(const Poly& v_poly) const; /* ring map on polynomials in v's */

    /* Coproduct of t_n (n >= 0), and of an arbitrary pure-t monomial within
     * the degree bound, in right-normal form (left factors pure t). */
    const Tensor& delta_t(long n) const;
    const Tensor& delta_monomial(const Monomial& pure_t_monomial) const;

    /* Formal group law data (v-form coefficients).
     * exp_coeff(k): coefficient of x^k in the exponential series.
     * fgl_coeff(i,j): coefficient of x^i y^j in F(x,y). */
    Poly exp_coeff(long k) const;
    Poly fgl_coeff(long i, long j) const;

    /* g(B_k): coefficient of x^{k+1} in the formal sum of t_j x^{p^j}. */
    const Poly& g_b(long k) const;

    /* MU coproduct of B_n: words with one B-monomial slot and a B_j tail. */
    const Tensor& mu_coproduct_b(long n) const;

    /* psi(B_n), right-normalized. Tabulated mode throws ModeUnavailableError
     * unless p = 2 and n <= 3.
     *
     * The raw series value (g (x) id) mu_coproduct_b(n) is counital but fails
     * comodule coassociativity from n = 3 on: the two composition orders of
     * the underlying one-variable series differ by a commutator. Derived mode
     * therefore ships the coassociative completion: the dual-series coaction
     * built from the compositional inverse of sum_k g(B_k) x^{k+1} (exactly
     * coassociative and p-integral), transported along an integral B-linear
     * triangular change of the B-generators solved at build time so that
     * psi(B_1) keeps its raw closed form and psi(B_2), psi(B_3) keep the raw
     * values' tails of positive B-degree (= the tabulated ones); a gauge row
     * zeroing the t1^2 (x) 1 coefficient of psi(B_2) fixes the remaining
     * B-free freedom, giving psi(B_2) = 1 (x) B_2 + 2 t1 (x) B_1 + t1 (x) v1.
     * Above index 3 nothing pins the presentation and the change is the
     * identity; for p > 2 nothing at all is pinned and the dual-series table
     * is used as is. B-linearity keeps every tail of B-degree <= 1, so each
     * degree window is closed under the coaction. The tabulated table is
     * kept verbatim, inconsistency included. */
    const Tensor& psi_b(long n, CoactionMode mode) const;

    /* psi of a v^a B^g monomial (products of psi_b, v's pushed through the
     * left unit), right-normalized. */
    Tensor coact_monomial(const Monomial& m, CoactionMode mode) const;

    /* (Delta (x) id) psi(B_n) - (id (x) psi) psi(B_n) in rank-3 normal form;
     * empty iff the mode's table is coassociative at B_n. */
    Tensor coassoc_defect_b(long n, CoactionMode mode) const;

    /* Right-normalization: rewrite each word until every slot is a pure
     * t-monomial, moving v's into the next factor via
     *   v_n t^a (x) y  =  t^a (x) v_n y  -  (eta_tail(n) t^a) (x) y. */
    Tensor normalize(const Tensor& t) const;
    void normalize_into(Tensor& out, Word w, Rat c) const;

private:
    long p_, bound_, b_bound_, maxv_, maxb_;
    std::vector<Poly> m_in_v_, v_in_m_, eta_r_v_, eta_tail_;
    std::vector<Tensor> delta_t_;
    std::map<Monomial, Tensor> delta_mono_;
    std::vector<Poly> exp_coeff_; /* index = power of x */
    std::vector<Poly> g_b_;
    std::vector<Tensor> mu_b_, psi_derived_, psi_table_;

    Poly eta_r_m(long n) const;
    Poly log_applied(const Poly& s, long n_max) const;
    Poly exp_applied(const Poly& s, long n_max) const;
    Poly fgl_sum(const Poly& a, const Poly& b, long n_max) const;
    void build_m_v_tables();
    void build_eta_r();
    void build_delta();
    void build_fgl();
    void build_b_tables();
    void complete_derived_b();
};

/* Counit contractions for one-slot tensors in right-normal form:
 * counit_left  = (eps (x) id): keeps identity-slot words' tails;
 * counit_right = (id (x) eps): keeps t-free tails, as slot * tail. */
Poly counit_left(const Tensor& t);
Poly counit_right(const Tensor& t);

} // namespace mtu
