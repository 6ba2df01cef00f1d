#include "mtu/matrix.hpp"

#include <sstream>
#include <utility>

namespace mtu {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
    rows_ = long(rows.size());
    cols_ = rows_ ? long(rows.begin()->size()) : 0;
    a_.reserve(size_t(rows_) * size_t(cols_));
    for (const auto& r : rows) {
        if (long(r.size()) != cols_) throw ComputationError("IntMatrix: ragged initializer");
        for (const auto& x : r) a_.push_back(x);
    }
}

IntMatrix IntMatrix::identity(long n) {
    IntMatrix m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw ComputationError("IntMatrix: shape mismatch in product");
    IntMatrix out(rows_, o.cols_);
    for (long i = 0; i < rows_; ++i)
        for (long k = 0; k < cols_; ++k) {
            const Int& x = at(i, k);
            if (x == 0) continue;
            for (long j = 0; j < o.cols_; ++j) out.at(i, j) += x * o.at(k, j);
        }
    return out;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix out(cols_, rows_);
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

bool IntMatrix::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (long i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (long j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j);
    }
    os << "]";
    return os.str();
}

Int det(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw ComputationError("det: matrix not square");
    long n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    int sign = 1;
    Int prev = 1;
    for (long k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            long piv = -1;
            for (long i = k + 1; i < n; ++i)
                if (a.at(i, k) != 0) { piv = i; break; }
            if (piv < 0) return 0;
            for (long j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
            sign = -sign;
        }
        for (long i = k + 1; i < n; ++i)
            for (long j = k + 1; j < n; ++j)
                a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

namespace {

/* Transform bookkeeping for smith_normal_form. Row ops act as d <- E d,
 * u <- E u; column ops as d <- d F, v <- v F, v_inv <- F^{-1} v_inv. */
struct SnfWork {
    IntMatrix d, u, v, v_inv;

    void swap_rows(long i, long j) {
        if (i == j) return;
        for (long c = 0; c < d.cols(); ++c) std::swap(d.at(i, c), d.at(j, c));
        for (long c = 0; c < u.cols(); ++c) std::swap(u.at(i, c), u.at(j, c));
    }
    void swap_cols(long i, long j) {
        if (i == j) return;
        for (long r = 0; r < d.rows(); ++r) std::swap(d.at(r, i), d.at(r, j));
        for (long r = 0; r < v.rows(); ++r) std::swap(v.at(r, i), v.at(r, j));
        for (long c = 0; c < v_inv.cols(); ++c) std::swap(v_inv.at(i, c), v_inv.at(j, c));
    }
    /* row_i += q * row_j */
    void add_row(long i, long j, const Int& q) {
        if (q == 0) return;
        for (long c = 0; c < d.cols(); ++c) d.at(i, c) += q * d.at(j, c);
        for (long c = 0; c < u.cols(); ++c) u.at(i, c) += q * u.at(j, c);
    }
    /* col_i += q * col_j; inverse op on v_inv: row_j -= q * row_i */
    void add_col(long i, long j, const Int& q) {
        if (q == 0) return;
        for (long r = 0; r < d.rows(); ++r) d.at(r, i) += q * d.at(r, j);
        for (long r = 0; r < v.rows(); ++r) v.at(r, i) += q * v.at(r, j);
        for (long c = 0; c < v_inv.cols(); ++c) v_inv.at(j, c) -= q * v_inv.at(i, c);
    }
    void negate_row(long i) {
        for (long c = 0; c < d.cols(); ++c) d.at(i, c) = -d.at(i, c);
        for (long c = 0; c < u.cols(); ++c) u.at(i, c) = -u.at(i, c);
    }
};

} // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
    const long r = a.rows(), c = a.cols();
    SnfWork w{a, IntMatrix::identity(r), IntMatrix::identity(c), IntMatrix::identity(c)};

    long t = 0;
    const long bound = std::min(r, c);
    while (t < bound) {
        /* Pick the nonzero entry of smallest magnitude in the trailing block. */
        long pi = -1, pj = -1;
        for (long i = t; i < r; ++i)
            for (long j = t; j < c; ++j) {
                const Int& x = w.d.at(i, j);
                if (x == 0) continue;
                if (pi < 0 || abs(x) < abs(w.d.at(pi, pj))) { pi = i; pj = j; }
            }
        if (pi < 0) break; /* trailing block is zero */
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        bool col_clear = true, row_clear = true;
        for (long i = t + 1; i < r; ++i) {
            if (w.d.at(i, t) == 0) continue;
            Int q = w.d.at(i, t) / w.d.at(t, t);
            w.add_row(i, t, -q);
            if (w.d.at(i, t) != 0) col_clear = false;
        }
        for (long j = t + 1; j < c; ++j) {
            if (w.d.at(t, j) == 0) continue;
            Int q = w.d.at(t, j) / w.d.at(t, t);
            w.add_col(j, t, -q);
            if (w.d.at(t, j) != 0) row_clear = false;
        }
        if (!col_clear || !row_clear) continue;

        /* Pivot must divide the whole trailing block so that the diagonal
         * comes out as a divisibility chain; fold a bad row in and redo. */
        bool divides = true;
        for (long i = t + 1; i < r && divides; ++i)
            for (long j = t + 1; j < c; ++j)
                if (w.d.at(i, j) % w.d.at(t, t) != 0) {
                    w.add_row(t, i, 1);
                    divides = false;
                    break;
                }
        if (!divides) continue;

        if (w.d.at(t, t) < 0) w.negate_row(t);
        ++t;
    }

    SmithForm out{std::move(w.d), std::move(w.u), std::move(w.v), std::move(w.v_inv), t};
    return out;
}

AbelianGroup AbelianGroup::p_localized(const Int& p) const {
    AbelianGroup out;
    out.free_rank = free_rank;
    for (const auto& f : invariant_factors) {
        Int q = p_part(f, p);
        if (q > 1) out.invariant_factors.push_back(q);
    }
    return out;
}

std::string AbelianGroup::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
        os << "Z";
        if (free_rank > 1) os << "^" << free_rank;
        first = false;
    }
    for (const auto& f : invariant_factors) {
        if (!first) os << " + ";
        os << "Z/" << f;
        first = false;
    }
    return os.str();
}

AbelianGroup cokernel(const IntMatrix& m, const std::optional<Int>& p) {
    SmithForm s = smith_normal_form(m);
    AbelianGroup g;
    g.free_rank = m.rows() - s.rank;
    for (long i = 0; i < s.rank; ++i) {
        const Int& f = s.d.at(i, i);
        if (f > 1) g.invariant_factors.push_back(f);
    }
    return p ? g.p_localized(*p) : g;
}

AbelianGroup homology_at(const IntMatrix& incoming, const IntMatrix& outgoing,
                         const std::optional<Int>& p) {
    const long n = outgoing.cols();
    if (incoming.rows() != n)
        throw ComputationError("homology_at: shape mismatch between incoming and outgoing");

    SmithForm s = smith_normal_form(outgoing);
    /* Columns rank..n-1 of s.v span ker(outgoing); express the incoming
     * image in those coordinates via w = v^{-1} * incoming. */
    IntMatrix w = s.v_inv * incoming;
    for (long i = 0; i < s.rank; ++i)
        for (long j = 0; j < w.cols(); ++j)
            if (w.at(i, j) != 0)
                throw CompositionError("homology_at: maps do not compose to zero");

    IntMatrix block(n - s.rank, w.cols());
    for (long i = s.rank; i < n; ++i)
        for (long j = 0; j < w.cols(); ++j) block.at(i - s.rank, j) = w.at(i, j);
    return cokernel(block, p);
}

IntMatrix kernel_basis(const IntMatrix& a) {
    SmithForm s = smith_normal_form(a);
    const long n = a.cols();
    IntMatrix k(n, n - s.rank);
    for (long i = 0; i < n; ++i)
        for (long j = s.rank; j < n; ++j) k.at(i, j - s.rank) = s.v.at(i, j);
    return k;
}

} // namespace mtu
