#include "mtu/poly.hpp"

#include <sstream>

namespace mtu {

namespace {
long pow_long(long base, long exp) {
    long out = 1;
    for (long i = 0; i < exp; ++i) out *= base;
    return out;
}
/* internal degree of one generator */
long gen_degree(Gen g, long index, long p) {
    switch (g) {
        case Gen::B: return 2 * index;
        default: return 2 * (pow_long(p, index) - 1);
    }
}
} // namespace

void Monomial::trim(Gen g) {
    auto& v = mut(g);
    while (!v.empty() && v.back() == 0) v.pop_back();
}

Monomial Monomial::generator(Gen g, long index, long exp) {
    Monomial m;
    m.set_exp(g, index, exp);
    return m;
}

long Monomial::exp(Gen g, long index) const {
    const auto& v = ref(g);
    if (index < 1 || index > long(v.size())) return 0;
    return v[size_t(index - 1)];
}

void Monomial::set_exp(Gen g, long index, long e) {
    if (index < 1) throw ComputationError("Monomial: generator index must be >= 1");
    auto& v = mut(g);
    if (long(v.size()) < index) v.resize(size_t(index), 0);
    v[size_t(index - 1)] = e;
    trim(g);
}

const std::vector<long>& Monomial::exps(Gen g) const { return ref(g); }

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial out = *this;
    for (int gi = 0; gi < 4; ++gi) {
        auto& a = out.e_[gi];
        const auto& b = o.e_[gi];
        if (a.size() < b.size()) a.resize(b.size(), 0);
        for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    }
    return out;
}

Monomial Monomial::pow(long k) const {
    if (k < 0) throw ComputationError("Monomial: negative power");
    Monomial out = *this;
    for (int gi = 0; gi < 4; ++gi)
        for (auto& e : out.e_[gi]) e *= k;
    if (k == 0) return Monomial();
    return out;
}

Monomial Monomial::operator/(const Monomial& o) const {
    Monomial out = *this;
    for (int gi = 0; gi < 4; ++gi) {
        auto& a = out.e_[gi];
        const auto& b = o.e_[gi];
        if (b.size() > a.size()) throw ComputationError("Monomial: not divisible");
        for (size_t i = 0; i < b.size(); ++i) {
            a[i] -= b[i];
            if (a[i] < 0) throw ComputationError("Monomial: not divisible");
        }
        out.trim(Gen(gi));
    }
    return out;
}

bool Monomial::is_one() const {
    for (int gi = 0; gi < 4; ++gi)
        if (!e_[gi].empty()) return false;
    return true;
}

bool Monomial::has(Gen g) const { return !ref(g).empty(); }

long Monomial::family_degree(Gen g) const {
    long s = 0;
    for (long e : ref(g)) s += e;
    return s;
}

long Monomial::top_index(Gen g) const { return long(ref(g).size()); }

long Monomial::degree(long p) const {
    long d = 0;
    for (int gi = 0; gi < 4; ++gi)
        for (size_t i = 0; i < e_[gi].size(); ++i)
            if (e_[gi][i]) d += e_[gi][i] * gen_degree(Gen(gi), long(i + 1), p);
    return d;
}

long Monomial::family_part_degree(Gen g, long p) const {
    long d = 0;
    const auto& v = ref(g);
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i]) d += v[i] * gen_degree(g, long(i + 1), p);
    return d;
}

Monomial Monomial::family_part(Gen g) const {
    Monomial out;
    out.e_[int(g)] = ref(g);
    return out;
}

Monomial Monomial::without_family(Gen g) const {
    Monomial out = *this;
    out.e_[int(g)].clear();
    return out;
}

std::string Monomial::to_string() const {
    static const char* names[4] = {"v", "t", "B", "m"};
    std::ostringstream os;
    bool any = false;
    for (int gi = 0; gi < 4; ++gi) {
        const auto& v = e_[gi];
        /* highest index first within each family */
        for (long i = long(v.size()) - 1; i >= 0; --i) {
            if (v[size_t(i)] == 0) continue;
            if (any) os << " ";
            os << names[gi] << (i + 1);
            if (v[size_t(i)] != 1) os << "^" << v[size_t(i)];
            any = true;
        }
    }
    return any ? os.str() : "1";
}

/* ---- Poly --------------------------------------------------------------- */

Poly::Poly(const Rat& c) {
    if (c != 0) terms_[Monomial()] = c;
}

Poly::Poly(const Monomial& m, const Rat& c) {
    if (c != 0) terms_[m] = c;
}

Poly Poly::generator(Gen g, long index, long exp) {
    return Poly(Monomial::generator(g, index, exp));
}

Rat Poly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
}

void Poly::add_term(const Monomial& m, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly Poly::operator+(const Poly& o) const {
    Poly out = *this;
    out += o;
    return out;
}

Poly Poly::operator-(const Poly& o) const {
    Poly out = *this;
    out -= o;
    return out;
}

Poly Poly::operator-() const {
    Poly out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

Poly Poly::operator*(const Poly& o) const {
    Poly out;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) out.add_term(ma * mb, ca * cb);
    return out;
}

Poly Poly::operator*(const Rat& c) const {
    Poly out;
    if (c == 0) return out;
    for (const auto& [m, k] : terms_) out.terms_[m] = k * c;
    return out;
}

Poly Poly::pow(long k) const {
    if (k < 0) throw ComputationError("Poly: negative power");
    Poly out{Rat(1)};
    Poly base = *this;
    while (k) {
        if (k & 1) out = out * base;
        base = base * base;
        k >>= 1;
    }
    return out;
}

Poly Poly::substituted(Gen g, const std::function<Poly(long)>& image) const {
    Poly out;
    for (const auto& [m, c] : terms_) {
        Poly term(m.without_family(g), c);
        const auto& es = m.exps(g);
        for (size_t i = 0; i < es.size(); ++i)
            if (es[i] > 0) term = term * image(long(i + 1)).pow(es[i]);
        out += term;
    }
    return out;
}

Poly Poly::truncated_above(long p, long max_degree) const {
    Poly out;
    for (const auto& [m, c] : terms_)
        if (m.degree(p) <= max_degree) out.terms_[m] = c;
    return out;
}

bool Poly::is_homogeneous(long p, long* degree_out) const {
    long d = -1;
    for (const auto& [m, c] : terms_) {
        long md = m.degree(p);
        if (d < 0)
            d = md;
        else if (md != d)
            return false;
    }
    if (degree_out && d >= 0) *degree_out = d;
    return true;
}

bool Poly::is_integral() const {
    for (const auto& [m, c] : terms_)
        if (!is_integer(c)) return false;
    return true;
}

bool Poly::has_family(Gen g) const {
    for (const auto& [m, c] : terms_)
        if (m.has(g)) return true;
    return false;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rat a = c;
        if (first) {
            if (a < 0) { os << "-"; a = -a; }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        if (a != 1 || m.is_one()) {
            os << a.str();
            if (!m.is_one()) os << " ";
        }
        if (!m.is_one()) os << m.to_string();
        first = false;
    }
    return os.str();
}

} // namespace mtu
