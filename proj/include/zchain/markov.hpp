#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "zchain/error.hpp"
#include "zchain/surface.hpp"
#include "zchain/zigzag.hpp"

namespace zchain {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string rational_str(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Transition digraph of a z-oriented triangulation with exact rational
/// probabilities. Doubling every type I edge into two opposite arcs and every
/// type II edge into two parallel arcs gives each vertex out-degree equal to
/// its degree; leaving through each arc uniformly yields p = 1/outdeg across
/// a type I edge and p = 2/outdeg along a type II direction.
struct TransitionChain {
    std::vector<std::string> states;
    std::vector<std::vector<std::pair<int, Rational>>> rows;  // sorted by target
    std::vector<int> doubled_outdeg;

    int size() const { return static_cast<int>(states.size()); }

    int state_id(const std::string& label) const {
        for (int i = 0; i < size(); ++i)
            if (states[static_cast<size_t>(i)] == label) return i;
        return -1;
    }

    Rational probability(int from, int to) const {
        for (const auto& [v, p] : rows[static_cast<size_t>(from)])
            if (v == to) return p;
        return Rational(0);
    }
};

inline TransitionChain build_chain(const Triangulation& t, const Classification& cls) {
    TransitionChain c;
    c.states = t.labels();
    c.doubled_outdeg.assign(static_cast<size_t>(t.vertex_count()), 0);
    for (int e = 0; e < t.edge_count(); ++e) {
        const auto& ec = cls.edges[static_cast<size_t>(e)];
        const auto& ed = t.edges()[static_cast<size_t>(e)];
        if (ec.type == EdgeType::I) {
            c.doubled_outdeg[static_cast<size_t>(ed[0])] += 1;
            c.doubled_outdeg[static_cast<size_t>(ed[1])] += 1;
        } else {
            c.doubled_outdeg[static_cast<size_t>(ec.tail)] += 2;
        }
    }
    c.rows.assign(static_cast<size_t>(t.vertex_count()), {});
    for (int e = 0; e < t.edge_count(); ++e) {
        const auto& ec = cls.edges[static_cast<size_t>(e)];
        const auto& ed = t.edges()[static_cast<size_t>(e)];
        if (ec.type == EdgeType::I) {
            c.rows[static_cast<size_t>(ed[0])].push_back(
                {ed[1], Rational(1, c.doubled_outdeg[static_cast<size_t>(ed[0])])});
            c.rows[static_cast<size_t>(ed[1])].push_back(
                {ed[0], Rational(1, c.doubled_outdeg[static_cast<size_t>(ed[1])])});
        } else {
            c.rows[static_cast<size_t>(ec.tail)].push_back(
                {ec.head, Rational(2, c.doubled_outdeg[static_cast<size_t>(ec.tail)])});
        }
    }
    for (auto& row : c.rows) {
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (size_t i = 1; i < row.size(); ++i)
            if (row[i].first == row[i - 1].first)
                fail("ClassificationContradiction", "parallel arcs in transition digraph");
    }
    return c;
}

inline bool is_irreducible(const TransitionChain& c) {
    int n = c.size();
    if (n == 0) return false;
    auto reach = [&](bool forward) {
        std::vector<std::vector<int>> adj(static_cast<size_t>(n));
        for (int u = 0; u < n; ++u)
            for (const auto& [v, p] : c.rows[static_cast<size_t>(u)])
                adj[static_cast<size_t>(forward ? u : v)].push_back(forward ? v : u);
        std::vector<char> seen(static_cast<size_t>(n), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : adj[static_cast<size_t>(u)])
                if (!seen[static_cast<size_t>(v)]) {
                    seen[static_cast<size_t>(v)] = 1;
                    ++count;
                    stack.push_back(v);
                }
        }
        return count == n;
    };
    return reach(true) && reach(false);
}

/// Common period of all states: gcd over arcs u->v of |level(u)+1-level(v)|
/// for breadth-first levels from state 0. Equals the gcd of closed-walk
/// lengths on a strongly connected digraph.
inline int period(const TransitionChain& c) {
    if (!is_irreducible(c)) fail("NotIrreducible", "period requires an irreducible chain");
    int n = c.size();
    std::vector<int> level(static_cast<size_t>(n), -1);
    std::vector<int> queue{0};
    level[0] = 0;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int u = queue[qi];
        for (const auto& [v, p] : c.rows[static_cast<size_t>(u)])
            if (level[static_cast<size_t>(v)] < 0) {
                level[static_cast<size_t>(v)] = level[static_cast<size_t>(u)] + 1;
                queue.push_back(v);
            }
    }
    long long g = 0;
    for (int u = 0; u < n; ++u)
        for (const auto& [v, p] : c.rows[static_cast<size_t>(u)])
            g = std::gcd(g, static_cast<long long>(level[static_cast<size_t>(u)] + 1 -
                                                   level[static_cast<size_t>(v)]));
    return g == 0 ? 1 : static_cast<int>(g);
}

inline bool is_ergodic(const TransitionChain& c) { return is_irreducible(c) && period(c) == 1; }

/// Unique probability vector with pi P = pi, solved exactly. The singular
/// system (P^T - I) pi = 0 has rank n-1 for an irreducible chain; the last
/// equation is replaced by the normalization sum(pi) = 1.
inline std::vector<Rational> stationary(const TransitionChain& c) {
    if (!is_irreducible(c)) fail("NotIrreducible", "stationary distribution requires an irreducible chain");
    int n = c.size();
    std::vector<std::vector<Rational>> a(static_cast<size_t>(n),
                                         std::vector<Rational>(static_cast<size_t>(n) + 1, Rational(0)));
    for (int u = 0; u < n; ++u)
        for (const auto& [v, p] : c.rows[static_cast<size_t>(u)])
            a[static_cast<size_t>(v)][static_cast<size_t>(u)] += p;
    for (int i = 0; i < n; ++i) a[static_cast<size_t>(i)][static_cast<size_t>(i)] -= 1;
    for (int j = 0; j <= n; ++j) a[static_cast<size_t>(n) - 1][static_cast<size_t>(j)] = 1;

    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (a[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) fail("NotIrreducible", "singular stationary system");
        std::swap(a[static_cast<size_t>(col)], a[static_cast<size_t>(pivot)]);
        Rational inv = a[static_cast<size_t>(col)][static_cast<size_t>(col)];
        for (int j = col; j <= n; ++j) a[static_cast<size_t>(col)][static_cast<size_t>(j)] /= inv;
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            Rational f = a[static_cast<size_t>(r)][static_cast<size_t>(col)];
            if (f == 0) continue;
            for (int j = col; j <= n; ++j)
                a[static_cast<size_t>(r)][static_cast<size_t>(j)] -=
                    f * a[static_cast<size_t>(col)][static_cast<size_t>(j)];
        }
    }
    std::vector<Rational> pi(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) pi[static_cast<size_t>(i)] = a[static_cast<size_t>(i)][static_cast<size_t>(n)];
    return pi;
}

/// Irreducibility, period, ergodicity and (when irreducible) the stationary
/// distribution, bundled for reports.
struct ChainAnalysis {
    bool irreducible = false;
    int period = 0;
    bool ergodic = false;
    std::optional<std::vector<Rational>> stationary;
};

inline ChainAnalysis analyze(const TransitionChain& c) {
    ChainAnalysis a;
    a.irreducible = is_irreducible(c);
    if (a.irreducible) {
        a.period = period(c);
        a.ergodic = a.period == 1;
        a.stationary = stationary(c);
    }
    return a;
}

/// Deterministic sample path X_0..X_steps. Each step draws r uniform in
/// [0, D) for the row's common denominator D and walks the cumulative
/// numerators, so the draw is exact and reproducible for a given seed.
inline std::vector<int> walk(const TransitionChain& c, int start, long long steps,
                             std::uint64_t seed) {
    if (start < 0 || start >= c.size())
        fail("UnknownState", "start state id " + std::to_string(start) + " out of range");
    if (steps < 1) fail("InvalidArgument", "steps must be >= 1");
    std::mt19937_64 gen(seed);
    std::vector<int> path;
    path.reserve(static_cast<size_t>(steps) + 1);
    path.push_back(start);
    int cur = start;
    for (long long s = 0; s < steps; ++s) {
        const auto& row = c.rows[static_cast<size_t>(cur)];
        if (row.empty()) fail("InvalidArgument", "absorbing state " + c.states[static_cast<size_t>(cur)]);
        BigInt d = 1;
        for (const auto& [v, p] : row) d = lcm(d, denominator(p));
        if (d > std::numeric_limits<std::uint64_t>::max())
            fail("InvalidArgument", "row denominator too large to sample");
        std::uint64_t du = d.convert_to<std::uint64_t>();
        std::uint64_t r = gen() % du;
        for (const auto& [v, p] : row) {
            BigInt num = numerator(p) * (d / denominator(p));
            std::uint64_t w = num.convert_to<std::uint64_t>();
            if (r < w) {
                cur = v;
                break;
            }
            r -= w;
        }
        path.push_back(cur);
    }
    return path;
}

/// Empirical distribution of X_t over t in (burn_in, steps]. burn_in < 0
/// selects the default of 10 * |states|.
inline std::vector<double> simulate(const TransitionChain& c, int start, long long steps,
                                    std::uint64_t seed, long long burn_in = -1) {
    if (burn_in < 0) burn_in = 10LL * c.size();
    if (steps < 1) fail("InvalidArgument", "steps must be >= 1");
    if (burn_in >= steps)
        fail("InvalidArgument", "burn-in " + std::to_string(burn_in) + " leaves no samples from " +
                                    std::to_string(steps) + " steps");
    std::vector<int> path = walk(c, start, steps, seed);
    std::vector<double> freq(static_cast<size_t>(c.size()), 0.0);
    for (long long s = burn_in + 1; s <= steps; ++s) freq[static_cast<size_t>(path[static_cast<size_t>(s)])] += 1.0;
    double total = static_cast<double>(steps - burn_in);
    for (auto& f : freq) f /= total;
    return freq;
}

}  // namespace zchain
