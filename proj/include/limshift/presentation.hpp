#pragma once

// Labeled-graph presentations of run-length-limited shifts: follower-set
// automaton construction, trimming and behavioral minimization, adjacency
// matrices, certified spectral entropy, and deterministic DOT export.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "limshift/classify.hpp"
#include "limshift/error.hpp"
#include "limshift/language.hpp"

namespace limshift {

// Whether a state sits in the transient head of its letter's run-length
// pattern or in the periodically repeating tail.
enum class StateTag { head, cycle };

struct GraphState {
    int letter = 0;        // letter whose current run this state tracks
    int run_position = 0;  // canonical run length represented by the state
    StateTag tag = StateTag::head;

    friend bool operator==(const GraphState& a, const GraphState& b) {
        return a.letter == b.letter && a.run_position == b.run_position && a.tag == b.tag;
    }
};

struct GraphEdge {
    std::size_t src = 0;
    std::size_t dst = 0;
    int label = 0;  // emitted letter

    friend bool operator==(const GraphEdge& a, const GraphEdge& b) {
        return a.src == b.src && a.dst == b.dst && a.label == b.label;
    }
};

struct GraphPresentation {
    std::vector<GraphState> states;  // sorted by (letter, run_position)
    std::vector<GraphEdge> edges;    // sorted by (src, label, dst)
};

using AdjacencyMatrix = std::vector<std::vector<long long>>;

// Right-resolving: no two out-edges of a state carry the same label.
inline bool is_right_resolving(const GraphPresentation& g) {
    std::vector<std::pair<std::size_t, int>> seen;
    seen.reserve(g.edges.size());
    for (const GraphEdge& e : g.edges) seen.emplace_back(e.src, e.label);
    std::sort(seen.begin(), seen.end());
    return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

// Builds the follower-set automaton of a shift whose run-length sets are all
// closed-form.  States are pairs (letter, run count), with run counts past
// the head of the membership pattern collapsed onto one period; the result is
// trimmed to the states that can occur on bi-infinite paths and then merged
// by behavioral (Moore) refinement, seeded with one block per letter so the
// (letter, run count) naming of states stays meaningful.
inline GraphPresentation build_follower_automaton(const ShiftSpec& spec) {
    Verdict sofic = is_sofic(spec);
    if (sofic == Verdict::no)
        throw NotSofic("build_follower_automaton: shift has no finite presentation");
    if (sofic == Verdict::unknown)
        throw UnknownMembership(
            "build_follower_automaton: explicit bounded sets leave soficity undetermined");

    const int p = spec.p();

    // Raw states for letter i are run counts 1..max_pos[i]; for an infinite
    // set, counts beyond the head wrap back to cycle_start[i].
    std::vector<int> max_pos(p + 1, 0), cycle_start(p + 1, 0), base(p + 1, 0);
    int n_raw = 0;
    for (int i = 1; i <= p; ++i) {
        const SetSpec& s = spec.set(i);
        if (is_infinite(s) == Verdict::yes) {
            int head = head_horizon(s);
            int span = period_span(s);
            max_pos[i] = head + span;
            cycle_start[i] = head + 1;
        } else {
            max_pos[i] = head_horizon(s);  // = max element
            cycle_start[i] = 0;            // no periodic tail
        }
        base[i] = n_raw;
        n_raw += max_pos[i];
    }
    auto raw_id = [&](int letter, int pos) { return base[letter] + pos - 1; };

    struct RawEdge {
        int src, dst, label;
    };
    std::vector<RawEdge> raw_edges;
    for (int i = 1; i <= p; ++i) {
        const SetSpec& s = spec.set(i);
        for (int n = 1; n <= max_pos[i]; ++n) {
            if (has_element_geq(s, n + 1) == Verdict::yes) {
                int next = (n < max_pos[i]) ? n + 1 : cycle_start[i];
                raw_edges.push_back({raw_id(i, n), raw_id(i, next), i});
            }
            if (contains(s, n) == Verdict::yes)
                for (int j : detail::successor_letters(spec, i))
                    raw_edges.push_back({raw_id(i, n), raw_id(j, 1), j});
        }
    }

    // Trim: repeatedly drop states lacking in- or out-edges; what survives is
    // exactly the part visited by bi-infinite paths.
    std::vector<bool> alive(static_cast<std::size_t>(n_raw), true);
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<int> indeg(static_cast<std::size_t>(n_raw), 0),
            outdeg(static_cast<std::size_t>(n_raw), 0);
        for (const RawEdge& e : raw_edges)
            if (alive[static_cast<std::size_t>(e.src)] && alive[static_cast<std::size_t>(e.dst)]) {
                ++outdeg[static_cast<std::size_t>(e.src)];
                ++indeg[static_cast<std::size_t>(e.dst)];
            }
        for (int v = 0; v < n_raw; ++v)
            if (alive[static_cast<std::size_t>(v)] &&
                (indeg[static_cast<std::size_t>(v)] == 0 ||
                 outdeg[static_cast<std::size_t>(v)] == 0)) {
                alive[static_cast<std::size_t>(v)] = false;
                changed = true;
            }
    }

    // Per-label successor table over surviving states (the automaton is
    // right-resolving by construction: the continuation label is the state's
    // own letter, closing labels differ from it and from each other).
    std::vector<std::vector<int>> succ(static_cast<std::size_t>(n_raw),
                                       std::vector<int>(static_cast<std::size_t>(p + 1), -1));
    for (const RawEdge& e : raw_edges)
        if (alive[static_cast<std::size_t>(e.src)] && alive[static_cast<std::size_t>(e.dst)])
            succ[static_cast<std::size_t>(e.src)][static_cast<std::size_t>(e.label)] = e.dst;

    // Moore refinement, initial partition by letter.
    std::vector<int> cls(static_cast<std::size_t>(n_raw), -1);
    for (int i = 1; i <= p; ++i)
        for (int n = 1; n <= max_pos[i]; ++n)
            if (alive[static_cast<std::size_t>(raw_id(i, n))])
                cls[static_cast<std::size_t>(raw_id(i, n))] = i - 1;
    for (bool changed = true; changed;) {
        changed = false;
        std::map<std::vector<int>, int> table;
        std::vector<int> next_cls(static_cast<std::size_t>(n_raw), -1);
        int fresh = 0;
        for (int v = 0; v < n_raw; ++v) {
            if (!alive[static_cast<std::size_t>(v)]) continue;
            std::vector<int> sig;
            sig.reserve(static_cast<std::size_t>(p + 2));
            sig.push_back(cls[static_cast<std::size_t>(v)]);
            for (int l = 1; l <= p; ++l) {
                int t = succ[static_cast<std::size_t>(v)][static_cast<std::size_t>(l)];
                sig.push_back(t < 0 ? -1 : cls[static_cast<std::size_t>(t)]);
            }
            auto [it, inserted] = table.emplace(std::move(sig), fresh);
            if (inserted) ++fresh;
            next_cls[static_cast<std::size_t>(v)] = it->second;
        }
        for (int v = 0; v < n_raw; ++v)
            if (alive[static_cast<std::size_t>(v)] &&
                next_cls[static_cast<std::size_t>(v)] != cls[static_cast<std::size_t>(v)])
                changed = true;
        cls = std::move(next_cls);
        if (!changed) break;
    }

    // Quotient.  Representative of a class: its least run count; the class
    // list is ordered by (letter, representative count).
    std::map<int, std::pair<int, int>> rep;  // class -> (letter, min position)
    for (int i = 1; i <= p; ++i)
        for (int n = 1; n <= max_pos[i]; ++n) {
            int v = raw_id(i, n);
            if (!alive[static_cast<std::size_t>(v)]) continue;
            int c = cls[static_cast<std::size_t>(v)];
            auto it = rep.find(c);
            if (it == rep.end())
                rep.emplace(c, std::make_pair(i, n));
            else if (n < it->second.second)
                it->second.second = n;
        }

    std::vector<std::pair<std::pair<int, int>, int>> order;  // ((letter,pos), class)
    order.reserve(rep.size());
    for (const auto& [c, lp] : rep) order.emplace_back(lp, c);
    std::sort(order.begin(), order.end());

    GraphPresentation g;
    std::map<int, std::size_t> final_index;
    for (const auto& [lp, c] : order) {
        StateTag tag = (cycle_start[lp.first] > 0 && lp.second >= cycle_start[lp.first])
                           ? StateTag::cycle
                           : StateTag::head;
        final_index[c] = g.states.size();
        g.states.push_back({lp.first, lp.second, tag});
    }
    for (const auto& [lp, c] : order) {
        int v = raw_id(lp.first, lp.second);
        for (int l = 1; l <= p; ++l) {
            int t = succ[static_cast<std::size_t>(v)][static_cast<std::size_t>(l)];
            if (t >= 0)
                g.edges.push_back(
                    {final_index[c], final_index[cls[static_cast<std::size_t>(t)]], l});
        }
    }
    std::sort(g.edges.begin(), g.edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
        return std::tie(a.src, a.label, a.dst) < std::tie(b.src, b.label, b.dst);
    });
    return g;
}

inline AdjacencyMatrix adjacency_matrix(const GraphPresentation& g) {
    AdjacencyMatrix a(g.states.size(), std::vector<long long>(g.states.size(), 0));
    for (const GraphEdge& e : g.edges) ++a[e.src][e.dst];
    return a;
}

namespace detail {

// Strongly connected components by Kosaraju's two-pass sweep (iterative).
inline std::vector<int> strongly_connected_components(const AdjacencyMatrix& a) {
    const std::size_t n = a.size();
    std::vector<std::vector<std::size_t>> fwd(n), rev(n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            if (a[u][v] > 0) {
                fwd[u].push_back(v);
                rev[v].push_back(u);
            }

    std::vector<std::size_t> finish;
    finish.reserve(n);
    std::vector<bool> seen(n, false);
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{s, 0}};
        seen[s] = true;
        while (!stack.empty()) {
            auto& [u, next] = stack.back();
            if (next < fwd[u].size()) {
                std::size_t v = fwd[u][next++];
                if (!seen[v]) {
                    seen[v] = true;
                    stack.emplace_back(v, 0);
                }
            } else {
                finish.push_back(u);
                stack.pop_back();
            }
        }
    }

    std::vector<int> comp(n, -1);
    int c = 0;
    for (auto it = finish.rbegin(); it != finish.rend(); ++it) {
        if (comp[*it] >= 0) continue;
        std::vector<std::size_t> stack{*it};
        comp[*it] = c;
        while (!stack.empty()) {
            std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t v : rev[u])
                if (comp[v] < 0) {
                    comp[v] = c;
                    stack.push_back(v);
                }
        }
        ++c;
    }
    return comp;
}

// Certified bounds on the spectral radius of an irreducible nonnegative
// matrix with at least one edge: power iteration on B = M + I (primitive, so
// the two-sided eigenvalue quotient bounds close in), returning enclosing
// bounds on rho(M) = rho(B) - 1.
inline std::pair<long double, long double> perron_bounds(
    const std::vector<std::vector<long long>>& m, long double tol) {
    const std::size_t n = m.size();
    std::vector<long double> v(n, 1.0L), w(n, 0.0L);
    long double lo = 0.0L, hi = 1e300L;
    for (int iter = 0; iter < 1000000; ++iter) {
        long double step_lo = 1e300L, step_hi = 0.0L, norm = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            long double acc = v[i];  // the implicit +I term
            for (std::size_t j = 0; j < n; ++j)
                if (m[i][j] > 0) acc += static_cast<long double>(m[i][j]) * v[j];
            w[i] = acc;
            long double ratio = acc / v[i];
            step_lo = std::min(step_lo, ratio);
            step_hi = std::max(step_hi, ratio);
            norm = std::max(norm, acc);
        }
        lo = std::max(lo, step_lo - 1.0L);  // bounds on rho(M) itself
        hi = std::min(hi, step_hi - 1.0L);
        if (lo > 0.0L && std::log(hi) - std::log(lo) <= 2.0L * tol)
            return {lo, hi};
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
    }
    throw ConvergenceFailure("perron_bounds: eigenvalue bounds failed to close in");
}

}  // namespace detail

// Natural log of the spectral radius of the adjacency matrix, certified to
// absolute error <= tol via per-component two-sided Perron bounds.
inline double spectral_entropy(const GraphPresentation& g, double tol) {
    if (g.states.empty()) throw EmptyGraph("spectral_entropy: graph has no states");
    AdjacencyMatrix a = adjacency_matrix(g);
    std::vector<int> comp = detail::strongly_connected_components(a);
    int n_comp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;

    long double best_lo = 0.0L, best_hi = 0.0L;
    bool has_cycle = false;
    for (int c = 0; c < n_comp; ++c) {
        std::vector<std::size_t> members;
        for (std::size_t v = 0; v < comp.size(); ++v)
            if (comp[v] == c) members.push_back(v);
        bool internal_edge = false;
        std::vector<std::vector<long long>> sub(members.size(),
                                                std::vector<long long>(members.size(), 0));
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = 0; j < members.size(); ++j) {
                sub[i][j] = a[members[i]][members[j]];
                if (sub[i][j] > 0) internal_edge = true;
            }
        if (!internal_edge) continue;  // acyclic singleton component
        has_cycle = true;
        auto [lo, hi] = detail::perron_bounds(sub, static_cast<long double>(tol));
        best_lo = std::max(best_lo, lo);
        best_hi = std::max(best_hi, hi);
    }
    if (!has_cycle)
        throw EmptyGraph("spectral_entropy: graph carries no bi-infinite paths");
    return static_cast<double>(std::log(std::sqrt(best_lo * best_hi)));
}

inline std::string dot_state_name(const GraphState& s) {
    return "L" + std::to_string(s.letter) + "R" + std::to_string(s.run_position);
}

// Deterministic Graphviz export: states in stored (sorted) order, then edges
// in stored (src, label, dst) order.
inline std::string export_dot(const GraphPresentation& g) {
    std::ostringstream out;
    out << "digraph follower {\n";
    for (const GraphState& s : g.states) out << "  " << dot_state_name(s) << ";\n";
    for (const GraphEdge& e : g.edges)
        out << "  " << dot_state_name(g.states[e.src]) << " -> " << dot_state_name(g.states[e.dst])
            << " [label=\"" << e.label << "\"];\n";
    out << "}\n";
    return out.str();
}

}  // namespace limshift
