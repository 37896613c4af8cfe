#include "meanext/index_system.hpp"

#include <algorithm>
#include <set>

namespace meanext {

IndexSystem::IndexSystem(int arity, std::vector<IndexTuple> tuples)
    : arity_(arity), tuples_(std::move(tuples)) {
    if (arity_ < 1 || tuples_.empty()) {
        throw MalformedSystem("system needs at least one tuple and arity >= 1");
    }
    const int m = static_cast<int>(tuples_.size());
    for (auto& t : tuples_) {
        if (static_cast<int>(t.size()) != arity_) {
            throw MalformedSystem("tuple length " + std::to_string(t.size()) +
                                  " does not match arity " + std::to_string(arity_));
        }
        std::sort(t.begin(), t.end());
        if (t.front() < 1 || t.back() > m) {
            throw MalformedSystem("tuple index out of range 1.." + std::to_string(m));
        }
    }
}

std::vector<int> AdmissibilityVerdict::failed_properties() const {
    std::set<int> props;
    for (const auto& v : violations) props.insert(v.property);
    return {props.begin(), props.end()};
}

namespace {

bool contains(const IndexTuple& t, int k) {
    return std::find(t.begin(), t.end(), k) != t.end();
}

// Coordinatewise order on sorted tuples.
bool tuple_leq(const IndexTuple& a, const IndexTuple& b) {
    for (std::size_t h = 0; h < a.size(); ++h) {
        if (a[h] > b[h]) return false;
    }
    return true;
}

std::string tuple_str(const IndexTuple& t) {
    std::string s = "(";
    for (std::size_t h = 0; h < t.size(); ++h) {
        if (h) s += ",";
        s += std::to_string(t[h]);
    }
    return s + ")";
}

}  // namespace

AdmissibilityVerdict check_admissible(const IndexSystem& system) {
    AdmissibilityVerdict verdict;
    const auto& ts = system.tuples();
    const int m = system.sequences();
    // The membership count every index must hit: the tuple length for
    // extension systems, the tuple count for shrink systems.
    const int expected = std::min(m, system.arity());

    for (int i = 0; i + 1 < m; ++i) {
        if (!tuple_leq(ts[i], ts[i + 1])) {
            verdict.violations.push_back(
                {1, "t_" + std::to_string(i + 1) + "=" + tuple_str(ts[i]) + " > t_" +
                        std::to_string(i + 2) + "=" + tuple_str(ts[i + 1])});
        }
    }

    for (int k = 1; k <= m; ++k) {
        int count = 0;
        for (const auto& t : ts) count += contains(t, k) ? 1 : 0;
        if (count != expected) {
            verdict.violations.push_back(
                {2, "index " + std::to_string(k) + " lies in " + std::to_string(count) +
                        " tuples, expected " + std::to_string(expected)});
        }
    }

    for (int i = 1; i <= m; ++i) {
        int mn = ts[static_cast<std::size_t>(i - 1)].front();
        int mx = ts[static_cast<std::size_t>(i - 1)].back();
        bool strict = (2 <= i && i <= m - 1);
        bool ok = strict ? (mn < i && i < mx) : (mn <= i && i <= mx);
        if (!ok) {
            verdict.violations.push_back(
                {3, "t_" + std::to_string(i) + "=" + tuple_str(ts[static_cast<std::size_t>(i - 1)]) +
                        (strict ? " must straddle " : " must cover ") + std::to_string(i)});
        }
    }

    for (int i = 2; i <= m; ++i) {
        bool found = false;
        for (int j = 0; j < i - 1 && !found; ++j) found = contains(ts[static_cast<std::size_t>(j)], i);
        if (!found) {
            verdict.violations.push_back(
                {4, "index " + std::to_string(i) + " missing from every earlier tuple"});
        }
    }

    verdict.admissible = verdict.violations.empty();
    return verdict;
}

IndexSystem unique_two_system(int m) {
    if (m < 3) throw InvalidDimensions("unique_two_system requires m >= 3");
    std::vector<IndexTuple> ts;
    ts.push_back({1, 2});
    for (int k = 2; k <= m - 1; ++k) ts.push_back({k - 1, k + 1});
    ts.push_back({m - 1, m});
    return IndexSystem(2, std::move(ts));
}

IndexSystem construct_admissible(int n, int m) {
    if (n < 2 || m <= n) throw InvalidDimensions("construct_admissible requires 2 <= n < m");
    if (n == 2) return unique_two_system(m);

    // Lift the (n-1, m-1) system: rows 1..n-1 prepend 1 to the shifted base
    // tuple, rows n..m-1 prepend i-(n-1), and row m is the top tuple.
    IndexSystem base = construct_admissible(n - 1, m - 1);
    std::vector<IndexTuple> ts;
    ts.reserve(static_cast<std::size_t>(m));
    for (int i = 1; i <= m - 1; ++i) {
        const IndexTuple& t = base.tuples()[static_cast<std::size_t>(i - 1)];
        IndexTuple lifted;
        lifted.reserve(static_cast<std::size_t>(n));
        lifted.push_back(i <= n - 1 ? 1 : i - (n - 1));
        for (int j : t) lifted.push_back(j + 1);
        ts.push_back(std::move(lifted));
    }
    IndexTuple top;
    for (int j = m - n + 1; j <= m; ++j) top.push_back(j);
    ts.push_back(std::move(top));
    return IndexSystem(n, std::move(ts));
}

IndexSystem shrink_system(int m, int n) {
    if (n < 2 || m <= n) throw InvalidDimensions("shrink_system requires 2 <= n < m");
    std::vector<IndexTuple> ts;
    for (int i = 1; i <= n; ++i) {
        IndexTuple t;
        t.reserve(static_cast<std::size_t>(m));
        for (int j = 1; j <= n; ++j) {
            int reps = (j == i) ? m - n + 1 : 1;
            t.insert(t.end(), static_cast<std::size_t>(reps), j);
        }
        ts.push_back(std::move(t));
    }
    return IndexSystem(m, std::move(ts));
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

// All nondecreasing n-tuples over 1..m in lexicographic order.
std::vector<IndexTuple> all_sorted_tuples(int n, int m) {
    std::vector<IndexTuple> out;
    IndexTuple cur(static_cast<std::size_t>(n), 1);
    while (true) {
        out.push_back(cur);
        int pos = n - 1;
        while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == m) --pos;
        if (pos < 0) break;
        int v = ++cur[static_cast<std::size_t>(pos)];
        for (int h = pos + 1; h < n; ++h) cur[static_cast<std::size_t>(h)] = v;
    }
    return out;
}

struct Enumerator {
    int n, m;
    long limit;
    bool require2;
    std::vector<IndexTuple> candidates;
    std::vector<IndexTuple> chosen;
    std::vector<int> member_count;  // distinct-tuple membership per index
    std::vector<IndexSystem> found;

    bool property3_ok(const IndexTuple& t, int i) const {
        int mn = t.front(), mx = t.back();
        if (2 <= i && i <= m - 1) return mn < i && i < mx;
        return mn <= i && i <= mx;
    }

    // Distinct indices of t, for membership counting.
    static std::vector<int> distinct(const IndexTuple& t) {
        std::vector<int> d;
        for (int x : t) {
            if (d.empty() || d.back() != x) d.push_back(x);
        }
        return d;
    }

    bool counts_feasible(int placed) const {
        int remaining = m - placed;
        for (int k = 1; k <= m; ++k) {
            int c = member_count[static_cast<std::size_t>(k - 1)];
            if (c > n) return false;
            if (c + remaining < n) return false;
        }
        return true;
    }

    void search(int i) {
        if (static_cast<long>(found.size()) >= limit) return;
        if (i > m) {
            if (require2) {
                for (int k = 1; k <= m; ++k) {
                    if (member_count[static_cast<std::size_t>(k - 1)] != n) return;
                }
            }
            found.emplace_back(n, chosen);
            return;
        }
        // Property (4) cannot be repaired later: index i must already have
        // appeared among t_1..t_{i-1}.
        if (i >= 2) {
            bool seen = false;
            for (const auto& t : chosen) {
                if (std::find(t.begin(), t.end(), i) != t.end()) {
                    seen = true;
                    break;
                }
            }
            if (!seen) return;
        }
        for (const auto& t : candidates) {
            if (!chosen.empty() && !tuple_leq(chosen.back(), t)) continue;
            if (!property3_ok(t, i)) continue;
            auto d = distinct(t);
            if (require2) {
                bool overfull = false;
                for (int k : d) {
                    if (member_count[static_cast<std::size_t>(k - 1)] + 1 > n) {
                        overfull = true;
                        break;
                    }
                }
                if (overfull) continue;
            }
            for (int k : d) ++member_count[static_cast<std::size_t>(k - 1)];
            chosen.push_back(t);
            if (!require2 || counts_feasible(i)) search(i + 1);
            chosen.pop_back();
            for (int k : d) --member_count[static_cast<std::size_t>(k - 1)];
            if (static_cast<long>(found.size()) >= limit) return;
        }
    }
};

}  // namespace

std::vector<IndexSystem> enumerate_systems(int n, int m, long limit, bool require_property2) {
    if (n < 2 || m <= n) throw InvalidDimensions("enumerate requires 2 <= n < m");
    if (m > 6) throw SearchSpaceTooLarge("enumeration is bounded to m <= 6");
    if (limit <= 0) return {};
    Enumerator e{n, m, limit, require_property2, all_sorted_tuples(n, m), {}, {}, {}};
    e.member_count.assign(static_cast<std::size_t>(m), 0);
    e.search(1);
    return std::move(e.found);
}

}  // namespace meanext
