#include "mtu/cobar.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace mtu {

namespace {

long pow_long(long b, long e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

/* nonunit pure-t monomials of exact degree deg, indices <= idx */
void enum_t(long p, long deg, long idx, const Monomial& cur, std::vector<Monomial>& out) {
    if (deg == 0) {
        out.push_back(cur);
        return;
    }
    if (idx == 0) return;
    long dt = 2 * (pow_long(p, idx) - 1);
    for (long e = 0; e * dt <= deg; ++e)
        enum_t(p, deg - e * dt, idx - 1,
               e ? cur * Monomial::generator(Gen::T, idx, e) : cur, out);
}

long env_thread_count() {
    long n = 1;
    if (const char* env = std::getenv("MTUCALC_THREADS")) {
        n = std::atol(env);
        if (n < 1) n = 1;
        if (n > 64) n = 64;
    }
    return n;
}

/* run work(i) for i < count on n threads; first exception wins */
void parallel_for(size_t count, const std::function<void(size_t)>& work) {
    long n = env_thread_count();
    if (n == 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i) work(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto runner = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= count) break;
            try {
                work(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) err = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (long k = 0; k < n; ++k) pool.emplace_back(runner);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

/* solve k x = y over Z where the columns of k are a basis of a saturated
 * lattice containing every column of y */
IntMatrix solve_in_lattice(const IntMatrix& k, const IntMatrix& y) {
    SmithForm s = smith_normal_form(k);
    IntMatrix uy = s.u * y;
    IntMatrix z(k.cols(), y.cols());
    for (long i = 0; i < k.rows(); ++i)
        for (long j = 0; j < y.cols(); ++j) {
            if (i < s.rank) {
                const Int& d = s.d.at(i, i);
                Int q = uy.at(i, j) / d;
                if (q * d != uy.at(i, j))
                    throw ComputationError("zero-line comparison: image leaves the primitive lattice");
                z.at(i, j) = q;
            } else if (uy.at(i, j) != 0) {
                throw ComputationError("zero-line comparison: image leaves the primitive lattice");
            }
        }
    return s.v * z;
}

} // namespace

AbelianGroup E2Chart::at(long s, long t) const {
    auto it = entries.find({t, s});
    return it == entries.end() ? AbelianGroup{} : it->second;
}

std::vector<Word> e1_basis(const Comodule& cm, long s, long t) {
    if (s < 0) throw ComputationError("e1_basis: negative rank");
    if (t > cm.spec().degree_bound)
        throw ComputationError("e1_basis: degree exceeds the bound");
    std::vector<Word> out;
    if (t < 0) return out;

    const long p = cm.spec().p;
    const long slot_min = 2 * (p - 1);
    const long maxi = cm.tables().max_v_index();

    std::map<long, std::vector<Monomial>> slot_cache;
    auto slots_of = [&](long g) -> const std::vector<Monomial>& {
        auto it = slot_cache.find(g);
        if (it == slot_cache.end()) {
            std::vector<Monomial> v;
            enum_t(p, g, maxi, Monomial(), v);
            it = slot_cache.emplace(g, std::move(v)).first;
        }
        return it->second;
    };

    std::vector<Monomial> cur(static_cast<size_t>(s));
    std::function<void(long, long)> rec = [&](long k, long rem) {
        if (k == s) {
            for (const auto& m : cm.basis(rem)) out.push_back(Word{cur, m});
            return;
        }
        long tail_min = slot_min * (s - k - 1);
        for (long g = slot_min; rem - g >= tail_min; g += 2)
            for (const auto& sm : slots_of(g)) {
                cur[size_t(k)] = sm;
                rec(k + 1, rem - g);
            }
    };
    rec(0, t);

    std::sort(out.begin(), out.end(),
              [p](const Word& a, const Word& b) { return word_canonical_less(a, b, p); });
    return out;
}

IntMatrix d1_matrix(const Comodule& cm, long s, long t, CoactionMode mode) {
    const std::vector<Word> src = e1_basis(cm, s, t);
    const std::vector<Word> dst = e1_basis(cm, s + 1, t);
    const BpTables& bp = cm.tables();

    std::map<Word, long> row;
    for (long i = 0; i < long(dst.size()); ++i) row.emplace(dst[size_t(i)], i);

    IntMatrix m(long(dst.size()), long(src.size()));
    for (long j = 0; j < long(src.size()); ++j) {
        const Word& w = src[size_t(j)];
        const long srank = long(w.slots.size());
        Tensor image;

        /* (-1)^i insertion of the coproduct into slot i (1-based) */
        for (long k = 0; k < srank; ++k) {
            Rat sign(k % 2 == 0 ? -1 : 1);
            for (const auto& [dw, dc] : bp.delta_monomial(w.slots[size_t(k)])) {
                Word nw;
                nw.slots.reserve(size_t(srank) + 1);
                for (long a = 0; a < k; ++a) nw.slots.push_back(w.slots[size_t(a)]);
                nw.slots.push_back(dw.slots[0]);
                nw.slots.push_back(dw.tail);
                for (long a = k + 1; a < srank; ++a) nw.slots.push_back(w.slots[size_t(a)]);
                nw.tail = w.tail;
                bp.normalize_into(image, std::move(nw), sign * dc);
            }
        }

        /* appended reduced coaction; on rank 0 the convention is +psi-bar */
        Rat append_sign(srank == 0 ? 1 : (srank % 2 ? 1 : -1));
        for (const auto& [pw, pc] : cm.coaction(w.tail, mode)) {
            if (pw.slots[0].is_one()) continue;
            Word nw;
            nw.slots = w.slots;
            nw.slots.push_back(pw.slots[0]);
            nw.tail = pw.tail;
            add_term(image, std::move(nw), append_sign * pc);
        }

        for (const auto& [iw, ic] : image) {
            if (ic == 0) continue;
            bool reduced_away = false;
            for (const auto& sl : iw.slots)
                if (sl.is_one()) {
                    reduced_away = true;
                    break;
                }
            if (reduced_away) continue;
            if (den(ic) != 1)
                throw IntegralityError("d1 entry is not an integer after normalization");
            auto it = row.find(iw);
            if (it == row.end())
                throw ComputationError("d1: image word missing from the target basis");
            m.at(it->second, j) += num(ic);
        }
    }
    return m;
}

AbelianGroup e2_group(const Comodule& cm, long s, long t, CoactionMode mode) {
    if (s < 0) throw ComputationError("e2_group: negative rank");
    IntMatrix outgoing = d1_matrix(cm, s, t, mode);
    IntMatrix incoming = s == 0 ? IntMatrix(outgoing.cols(), 0)
                                : d1_matrix(cm, s - 1, t, mode);
    return homology_at(incoming, outgoing, Int(cm.spec().p));
}

E2Chart e2_chart(const Comodule& cm, long s_max, long t_max, CoactionMode mode) {
    if (s_max < 0 || t_max < 0) throw ComputationError("e2_chart: negative window");
    if (t_max > cm.spec().degree_bound)
        throw ComputationError("e2_chart: window beyond the degree bound");

    E2Chart chart;
    chart.spec = cm.spec();
    chart.s_max = s_max;
    chart.t_max = t_max;

    std::vector<long> ts;
    for (long t = 0; t <= t_max; t += 2) ts.push_back(t);

    struct Cell {
        long s, t;
        AbelianGroup g;
        bool unavailable;
    };
    std::vector<std::vector<Cell>> results(ts.size());

    parallel_for(ts.size(), [&](size_t idx) {
        long t = ts[idx];
        std::vector<std::optional<IntMatrix>> mats(size_t(s_max) + 1);
        for (long s = 0; s <= s_max; ++s) {
            try {
                mats[size_t(s)] = d1_matrix(cm, s, t, mode);
            } catch (const ModeUnavailableError&) {
                mats[size_t(s)] = std::nullopt;
            }
        }
        for (long s = 0; s <= s_max; ++s) {
            if (!mats[size_t(s)] || (s > 0 && !mats[size_t(s - 1)])) {
                results[idx].push_back({s, t, AbelianGroup{}, true});
                continue;
            }
            IntMatrix incoming = s == 0 ? IntMatrix(mats[0]->cols(), 0)
                                        : *mats[size_t(s - 1)];
            try {
                AbelianGroup g = homology_at(incoming, *mats[size_t(s)], Int(cm.spec().p));
                if (!g.is_zero()) results[idx].push_back({s, t, std::move(g), false});
            } catch (const CompositionError&) {
                results[idx].push_back({s, t, AbelianGroup{}, true});
            }
        }
    });

    for (const auto& cells : results)
        for (const auto& c : cells) {
            if (c.unavailable)
                chart.unavailable.emplace_back(c.t, c.s);
            else
                chart.entries[{c.t, c.s}] = c.g;
        }
    std::sort(chart.unavailable.begin(), chart.unavailable.end());

    if (chart.spec.family == Family::Sphere && chart.spec.p == 2) {
        if (!chart.at(1, 2).is_zero()) chart.annotations.push_back({"h1", 1, 2});
        if (!chart.at(1, 4).is_zero()) chart.annotations.push_back({"h2", 1, 4});
    }
    return chart;
}

E2Chart mtu_chart_from_bar(const E2Chart& bar, CoactionMode mode) {
    if (bar.spec.family != Family::MtuBar)
        throw ComputationError("mtu_chart_from_bar: expected a quotient-family chart");

    ComoduleSpec sub_spec = bar.spec;
    sub_spec.family = Family::Mtu;
    ComoduleSpec mu_spec = bar.spec;
    mu_spec.family = Family::MuFull;
    mu_spec.d = 0;
    mu_spec.r = 0;

    auto tables = std::make_shared<const BpTables>(bar.spec.p, bar.spec.degree_bound,
                                                   bar.spec.degree_bound);
    Comodule sub(sub_spec, tables);
    Comodule mu(mu_spec, tables);
    Comodule quot(bar.spec, tables);

    E2Chart chart;
    chart.spec = sub_spec;
    chart.s_max = bar.s_max + 1;
    chart.t_max = bar.t_max;

    /* s >= 2: the shift isomorphism */
    for (const auto& [key, g] : bar.entries)
        if (key.second >= 1) chart.entries[{key.first, key.second + 1}] = g;
    for (const auto& [ut, us] : bar.unavailable)
        if (us >= 1) chart.unavailable.emplace_back(ut, us + 1);

    /* s = 0 (primitives of the sub family) and s = 1 (cokernel of the
     * zero-line map from the full family) */
    std::vector<long> ts;
    for (long t = 0; t <= bar.t_max; t += 2) ts.push_back(t);
    struct Line {
        std::optional<AbelianGroup> s0, s1;
        bool unavailable = false;
    };
    std::vector<Line> lines(ts.size());

    parallel_for(ts.size(), [&](size_t idx) {
        long t = ts[idx];
        try {
            IntMatrix d_sub = d1_matrix(sub, 0, t, mode);
            IntMatrix d_mu = d1_matrix(mu, 0, t, mode);
            IntMatrix d_bar = d1_matrix(quot, 0, t, mode);
            IntMatrix k_mu = kernel_basis(d_mu);
            IntMatrix k_bar = kernel_basis(d_bar);

            long prim = d_sub.cols() - smith_normal_form(d_sub).rank;
            if (prim > 0) lines[idx].s0 = AbelianGroup{prim, {}};

            const auto mu_basis = mu.basis(t);
            const auto bar_basis = quot.basis(t);
            IntMatrix proj(long(bar_basis.size()), long(mu_basis.size()));
            std::map<Monomial, long> bar_index;
            for (long i = 0; i < long(bar_basis.size()); ++i)
                bar_index.emplace(bar_basis[size_t(i)], i);
            for (long j = 0; j < long(mu_basis.size()); ++j) {
                auto it = bar_index.find(mu_basis[size_t(j)]);
                if (it != bar_index.end()) proj.at(it->second, j) = 1;
            }
            IntMatrix x = solve_in_lattice(k_bar, proj * k_mu);
            AbelianGroup g1 = cokernel(x, Int(bar.spec.p));
            if (!g1.is_zero()) lines[idx].s1 = std::move(g1);
        } catch (const ModeUnavailableError&) {
            lines[idx].unavailable = true;
        }
    });

    for (size_t i = 0; i < ts.size(); ++i) {
        if (lines[i].unavailable) {
            chart.unavailable.emplace_back(ts[i], 0);
            chart.unavailable.emplace_back(ts[i], 1);
            continue;
        }
        if (lines[i].s0) chart.entries[{ts[i], 0}] = *lines[i].s0;
        if (lines[i].s1) chart.entries[{ts[i], 1}] = *lines[i].s1;
    }
    std::sort(chart.unavailable.begin(), chart.unavailable.end());
    return chart;
}

TorsionCheckReport torsion_vanishing_check(long p, long d, long r, long s_min, long s_max,
                                           long t_min, long t_max, CoactionMode mode) {
    if (r < 0 || d - r < 1)
        throw ComputationError("torsion_vanishing_check: need d - r >= 1");
    TorsionCheckReport rep;
    rep.p = p;
    rep.d = d;
    rep.r = r;
    if (s_max < s_min || t_max < t_min) return rep;

    ComoduleSpec spec;
    spec.family = Family::MtuBar;
    spec.d = d - r;
    spec.p = p;
    spec.degree_bound = t_max;
    Comodule cm(spec);

    long s_lo = std::max(s_min, 2L);
    std::vector<std::pair<long, long>> cells;
    for (long t = t_min + (((t_min % 2) + 2) % 2); t <= t_max; t += 2)
        for (long s = s_lo; s <= s_max; ++s) cells.emplace_back(t, s);

    std::vector<TorsionCheckEntry> entries(cells.size());
    parallel_for(cells.size(), [&](size_t i) {
        auto [t, s] = cells[i];
        TorsionCheckEntry e;
        e.s = s;
        e.t = t;
        e.group = e2_group(cm, s, t, mode);
        e.zero = e.group.is_zero();
        /* the vanishing theorem is stated for odd primes; at p = 2 the scan
         * still runs but nothing is predicted */
        e.guaranteed = (p > 2 && s == 2 && t < 2 * (p * p - p + d + 1));
        entries[i] = std::move(e);
    });
    for (auto& e : entries) {
        rep.all_zero = rep.all_zero && e.zero;
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

std::vector<DifferentialCandidate> differential_candidates(const E2Chart& chart, long source_t) {
    std::vector<DifferentialCandidate> out;
    for (long r = 2; r <= chart.s_max; ++r) {
        long t = source_t + r - 1;
        if (t > chart.t_max) break;
        AbelianGroup g = chart.at(r, t);
        if (!g.is_zero()) out.push_back({r, r, t, std::move(g)});
    }
    return out;
}

std::string chart_to_json(const E2Chart& chart) {
    nlohmann::ordered_json j;
    j["family"] = family_name(chart.spec.family);
    j["d"] = chart.spec.d;
    j["r"] = chart.spec.r;
    j["p"] = chart.spec.p;
    j["s_max"] = chart.s_max;
    j["t_max"] = chart.t_max;
    j["entries"] = nlohmann::ordered_json::array();
    for (const auto& [key, g] : chart.entries) {
        nlohmann::ordered_json e;
        e["s"] = key.second;
        e["t"] = key.first;
        e["free_rank"] = g.free_rank;
        e["torsion"] = nlohmann::ordered_json::array();
        for (const auto& f : g.invariant_factors)
            e["torsion"].push_back(f.convert_to<long long>());
        j["entries"].push_back(std::move(e));
    }
    j["annotations"] = nlohmann::ordered_json::array();
    for (const auto& a : chart.annotations)
        j["annotations"].push_back({{"name", a.name}, {"s", a.s}, {"t", a.t}});
    return j.dump(2);
}

std::string chart_to_text(const E2Chart& chart) {
    std::ostringstream os;
    os << "family=" << family_name(chart.spec.family);
    if (chart.spec.family == Family::Mtu || chart.spec.family == Family::MtuBar ||
        chart.spec.family == Family::MtuSub)
        os << " d=" << chart.spec.d;
    if (chart.spec.family == Family::MtuSub) os << " r=" << chart.spec.r;
    os << " p=" << chart.spec.p << " s_max=" << chart.s_max << " t_max=" << chart.t_max
       << "\n";

    if (chart.entries.empty()) {
        os << "(no nonzero entries)\n";
        return os.str();
    }

    long nmin = LONG_MAX, nmax = LONG_MIN;
    for (const auto& [key, g] : chart.entries) {
        long n = key.first - key.second;
        nmin = std::min(nmin, n);
        nmax = std::max(nmax, n);
    }

    auto cell = [&](long s, long n) -> std::string {
        AbelianGroup g = chart.at(s, n + s);
        if (g.is_zero()) return ".";
        std::string str = g.to_string();
        std::erase(str, ' ');
        return str;
    };

    std::vector<long> widths;
    for (long n = nmin; n <= nmax; ++n) {
        long w = long(std::to_string(n).size());
        for (long s = 0; s <= chart.s_max; ++s)
            w = std::max(w, long(cell(s, n).size()));
        widths.push_back(w);
    }

    os << "s\\t-s";
    for (long n = nmin; n <= nmax; ++n)
        os << "  " << std::setw(int(widths[size_t(n - nmin)])) << n;
    os << "\n";
    for (long s = chart.s_max; s >= 0; --s) {
        os << std::setw(5) << s;
        for (long n = nmin; n <= nmax; ++n)
            os << "  " << std::setw(int(widths[size_t(n - nmin)])) << cell(s, n);
        os << "\n";
    }
    for (const auto& a : chart.annotations)
        os << "annotation: " << a.name << " at (s=" << a.s << ", t=" << a.t << ")\n";
    return os.str();
}

} // namespace mtu
