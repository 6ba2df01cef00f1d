#include "mtu/partition.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace mtu {

std::string partition_to_string(const Partition& p) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
    os << ")";
    return os.str();
}

namespace {

void enumerate(long n, long max_part, long min_length, long max_length, Partition& acc,
               std::vector<Partition>& out) {
    if (n == 0) {
        if (long(acc.size()) >= min_length) out.push_back(acc);
        return;
    }
    if (long(acc.size()) >= max_length) return;
    /* Largest admissible first part first gives canonical order. */
    for (long part = std::min(n, max_part); part >= 1; --part) {
        acc.push_back(part);
        enumerate(n - part, part, min_length, max_length, acc, out);
        acc.pop_back();
    }
}

} // namespace

std::vector<Partition> partitions(long n, long min_length, std::optional<long> max_part,
                                  std::optional<long> max_length) {
    if (n < 0) throw ComputationError("partitions: negative weight");
    std::vector<Partition> out;
    Partition acc;
    long cap = max_part.value_or(n);
    long len = max_length.value_or(n);
    if (n == 0) {
        if (min_length <= 0) out.push_back({});
        return out;
    }
    if (cap >= 1) enumerate(n, cap, min_length, len, acc, out);
    return out;
}

std::vector<Partition> refinements(const Partition& p) {
    /* Cartesian product of the sub-partition choices for each part,
     * merged, sorted, deduplicated. */
    std::vector<Partition> acc{{}};
    for (long part : p) {
        std::vector<Partition> next;
        for (const auto& split : partitions(part))
            for (const auto& prefix : acc) {
                Partition merged = prefix;
                merged.insert(merged.end(), split.begin(), split.end());
                next.push_back(std::move(merged));
            }
        acc = std::move(next);
    }
    for (auto& q : acc) std::sort(q.begin(), q.end(), std::greater<long>());
    std::sort(acc.begin(), acc.end(), [](const Partition& a, const Partition& b) { return a > b; });
    acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
    return acc;
}

Int monomial_symmetric_at_ones(const Partition& p, long k) {
    long len = long(p.size());
    if (k < len) return 0;
    /* k * (k-1) * ... * (k-len+1) / prod multiplicities! */
    Int out = 1;
    for (long i = 0; i < len; ++i) out *= Int(k - i);
    std::map<long, long> mult;
    for (long x : p) ++mult[x];
    for (const auto& [part, m] : mult) out /= factorial(static_cast<unsigned long>(m));
    return out;
}

} // namespace mtu
