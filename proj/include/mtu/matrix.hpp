#pragma once

/* Exact integer linear algebra: dense matrices over Z, Bareiss determinants,
 * Smith normal form with unimodular transforms, and the derived abelian-group
 * invariants (cokernels, homology of two-step complexes), optionally
 * localized at a prime. */

#include "mtu/exact.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mtu {

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(long rows, long cols) : rows_(rows), cols_(cols), a_(size_t(rows) * size_t(cols)) {}
    IntMatrix(std::initializer_list<std::initializer_list<Int>> rows);

    static IntMatrix identity(long n);

    long rows() const { return rows_; }
    long cols() const { return cols_; }

    Int& at(long i, long j) { return a_[size_t(i) * size_t(cols_) + size_t(j)]; }
    const Int& at(long i, long j) const { return a_[size_t(i) * size_t(cols_) + size_t(j)]; }

    bool operator==(const IntMatrix& o) const = default;

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix transposed() const;
    bool is_zero() const;

    std::string to_string() const;

private:
    long rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

/* Determinant of a square matrix (fraction-free Bareiss elimination). */
Int det(const IntMatrix& m);

/* u * a * v = d with u, v unimodular, d diagonal with d_1 | d_2 | ... >= 0.
 * v_inv is the inverse of v; rank counts the nonzero diagonal entries. */
struct SmithForm {
    IntMatrix d;
    IntMatrix u;
    IntMatrix v;
    IntMatrix v_inv;
    long rank = 0;
};

SmithForm smith_normal_form(const IntMatrix& a);

/* Finitely generated abelian group Z^free_rank + sum Z/f_i, where the f_i
 * form a divisibility chain and each f_i > 1. */
struct AbelianGroup {
    long free_rank = 0;
    std::vector<Int> invariant_factors;

    bool operator==(const AbelianGroup& o) const = default;
    bool is_zero() const { return free_rank == 0 && invariant_factors.empty(); }

    /* Tensor with Z_(p): keep the free part, replace each factor by its
     * p-part, drop the ones that become trivial. */
    AbelianGroup p_localized(const Int& p) const;

    /* "0", "Z", "Z^2 + Z/2 + Z/4", ... */
    std::string to_string() const;
};

/* Z^rows / (column span of m), optionally localized at p. */
AbelianGroup cokernel(const IntMatrix& m, const std::optional<Int>& p = std::nullopt);

/* Homology ker(outgoing)/im(incoming) in the middle of
 *     Z^a --incoming--> Z^n --outgoing--> Z^b
 * where incoming is n x a and outgoing is b x n. Throws CompositionError
 * when outgoing * incoming != 0. */
AbelianGroup homology_at(const IntMatrix& incoming, const IntMatrix& outgoing,
                         const std::optional<Int>& p = std::nullopt);

/* Basis of the full kernel lattice {x : a x = 0} as matrix columns
 * (n x (n - rank a)); the lattice is saturated, so any integer vector
 * killed by a is an integer combination of the columns. */
IntMatrix kernel_basis(const IntMatrix& a);

} // namespace mtu
