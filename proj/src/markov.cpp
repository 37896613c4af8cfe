#include "meanext/markov.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

namespace meanext {

SquareMatrix SquareMatrix::identity(int size) {
    SquareMatrix m(size);
    for (int i = 0; i < size; ++i) m(i, i) = 1.0;
    return m;
}

SquareMatrix SquareMatrix::multiply(const SquareMatrix& other) const {
    SquareMatrix out(size_);
    for (int i = 0; i < size_; ++i) {
        for (int k = 0; k < size_; ++k) {
            double a = (*this)(i, k);
            if (a == 0.0) continue;
            for (int j = 0; j < size_; ++j) out(i, j) += a * other(k, j);
        }
    }
    return out;
}

SquareMatrix transition_matrix(const IndexSystem& system) {
    const int m = system.sequences();
    if (m > 64) throw MalformedSystem("transition matrices are bounded to 64 states");
    SquareMatrix matrix(m);
    double arity = static_cast<double>(system.arity());
    for (int i = 0; i < m; ++i) {
        for (int l : system.tuples()[static_cast<std::size_t>(i)]) {
            matrix(i, l - 1) += 1.0 / arity;
        }
    }
    return matrix;
}

SquareMatrix matrix_power(const SquareMatrix& m, long k) {
    if (k < 1) throw InvalidDimensions("matrix_power requires k >= 1");
    SquareMatrix result = SquareMatrix::identity(m.size());
    SquareMatrix base = m;
    long e = k;
    while (e > 0) {
        if (e & 1) result = result.multiply(base);
        e >>= 1;
        if (e > 0) base = base.multiply(base);
    }
    return result;
}

namespace {

std::vector<std::vector<int>> adjacency(const SquareMatrix& m, bool transpose) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(m.size()));
    for (int i = 0; i < m.size(); ++i) {
        for (int j = 0; j < m.size(); ++j) {
            if (m(i, j) > 0.0) adj[static_cast<std::size_t>(transpose ? j : i)].push_back(transpose ? i : j);
        }
    }
    return adj;
}

std::vector<bool> reachable(const std::vector<std::vector<int>>& adj, int start) {
    std::vector<bool> seen(adj.size(), false);
    std::queue<int> q;
    q.push(start);
    seen[static_cast<std::size_t>(start)] = true;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : adj[static_cast<std::size_t>(u)]) {
            if (!seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = true;
                q.push(v);
            }
        }
    }
    return seen;
}

// Period of state 0's communication class: gcd of (d[u] + 1 - d[v]) over all
// edges u->v inside the class, d = BFS distances from state 0.
int period_of_first_class(const SquareMatrix& m) {
    auto fwd = adjacency(m, false);
    auto seen_fwd = reachable(fwd, 0);
    auto seen_bwd = reachable(adjacency(m, true), 0);
    std::vector<bool> in_class(static_cast<std::size_t>(m.size()));
    for (int i = 0; i < m.size(); ++i) {
        in_class[static_cast<std::size_t>(i)] = seen_fwd[static_cast<std::size_t>(i)] &&
                                                seen_bwd[static_cast<std::size_t>(i)];
    }

    std::vector<int> dist(static_cast<std::size_t>(m.size()), -1);
    std::queue<int> q;
    q.push(0);
    dist[0] = 0;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : fwd[static_cast<std::size_t>(u)]) {
            if (in_class[static_cast<std::size_t>(v)] && dist[static_cast<std::size_t>(v)] < 0) {
                dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                q.push(v);
            }
        }
    }

    int g = 0;
    for (int u = 0; u < m.size(); ++u) {
        if (!in_class[static_cast<std::size_t>(u)]) continue;
        for (int v : fwd[static_cast<std::size_t>(u)]) {
            if (!in_class[static_cast<std::size_t>(v)]) continue;
            int diff = dist[static_cast<std::size_t>(u)] + 1 - dist[static_cast<std::size_t>(v)];
            if (diff != 0) g = std::gcd(g, diff);
        }
    }
    return g == 0 ? 1 : g;
}

}  // namespace

ChainVerdict check_chain(const SquareMatrix& m) {
    ChainVerdict verdict;

    verdict.doubly_stochastic = true;
    for (int j = 0; j < m.size(); ++j) {
        double col = 0.0, row = 0.0;
        for (int i = 0; i < m.size(); ++i) {
            col += m(i, j);
            row += m(j, i);
        }
        if (std::abs(col - 1.0) > 1e-12 || std::abs(row - 1.0) > 1e-12) {
            verdict.doubly_stochastic = false;
            break;
        }
    }

    auto seen_fwd = reachable(adjacency(m, false), 0);
    auto seen_bwd = reachable(adjacency(m, true), 0);
    verdict.irreducible =
        std::all_of(seen_fwd.begin(), seen_fwd.end(), [](bool b) { return b; }) &&
        std::all_of(seen_bwd.begin(), seen_bwd.end(), [](bool b) { return b; });

    if (m(0, 0) > 0.0) {
        verdict.aperiodic = true;  // self-loop at state 1
    } else {
        int period = period_of_first_class(m);
        verdict.aperiodic = period == 1;
        if (period > 1) verdict.period_witness = period;
    }
    return verdict;
}

double uniform_limit_error(const SquareMatrix& m, long k) {
    SquareMatrix p = matrix_power(m, k);
    double target = 1.0 / m.size();
    double worst = 0.0;
    for (int i = 0; i < m.size(); ++i) {
        for (int j = 0; j < m.size(); ++j) {
            worst = std::max(worst, std::abs(p(i, j) - target));
        }
    }
    return worst;
}

}  // namespace meanext
