#pragma once

// Finite-word language of a run-limited shift.
//
// A nonempty word lies in the language iff
//   - consecutive run letters are admissible for the variant,
//   - every interior run length is exactly in its letter's set, and
//   - the first and last runs are extendable: some element of the set is >=
//     the visible length (they are cut by the word boundary).
// Membership is three-valued; bounded-explicit sets can leave it unknown.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <unordered_set>
#include <vector>

#include "limshift/shift.hpp"

namespace limshift {

namespace detail {

inline std::vector<int> successor_letters(const ShiftSpec& s, int i) {
    if (s.variant() == Variant::ordered) return {s.next_letter(i)};
    std::vector<int> out;
    for (int j = 1; j <= s.p(); ++j)
        if (j != i) out.push_back(j);
    return out;
}

inline std::vector<int> predecessor_letters(const ShiftSpec& s, int i) {
    if (s.variant() == Variant::ordered) return {s.prev_letter(i)};
    std::vector<int> out;
    for (int j = 1; j <= s.p(); ++j)
        if (j != i) out.push_back(j);
    return out;
}

// Three-valued conjunction accumulator: no dominates unknown dominates yes.
inline void meet(Verdict& acc, Verdict v) {
    if (v == Verdict::no) acc = Verdict::no;
    else if (v == Verdict::unknown && acc == Verdict::yes) acc = Verdict::unknown;
}

inline bool yes_or_throw(Verdict v, const char* what) {
    if (v == Verdict::unknown) throw UnknownMembership(what);
    return v == Verdict::yes;
}

// Membership indicator of one set, decided up to `limit` (exclusive of
// anything past a declared bound -> UnknownMembership).
inline std::vector<char> indicator_up_to(const SetSpec& s, int limit, const char* what) {
    std::vector<char> ind(static_cast<std::size_t>(std::max(limit, 0)) + 1, 0);
    for (int v = 1; v <= limit; ++v) {
        Verdict c = contains(s, v);
        if (c == Verdict::unknown) throw UnknownMembership(what);
        ind[static_cast<std::size_t>(v)] = (c == Verdict::yes);
    }
    return ind;
}

}  // namespace detail

inline Verdict membership_verdict(const ShiftSpec& s, const RunWord& w) {
    if (w.empty()) return Verdict::yes;
    const auto& runs = w.runs();
    Verdict acc = Verdict::yes;
    for (std::size_t k = 0; k < runs.size(); ++k) {
        if (runs[k].letter > s.p()) return Verdict::no;
        if (k > 0 && !s.follows(runs[k - 1].letter, runs[k].letter)) return Verdict::no;
        bool boundary = (k == 0) || (k + 1 == runs.size());
        Verdict v = boundary ? has_element_geq(s.set(runs[k].letter), runs[k].length)
                             : contains(s.set(runs[k].letter), runs[k].length);
        if (v == Verdict::no) return Verdict::no;
        detail::meet(acc, v);
    }
    return acc;
}

inline bool is_in_language(const ShiftSpec& s, const RunWord& w) {
    Verdict v = membership_verdict(s, w);
    if (v == Verdict::unknown)
        throw UnknownMembership("is_in_language: verdict depends on membership beyond a declared bound");
    return v == Verdict::yes;
}

// |B_n|: words counted by run composition.  g[j][i] counts prefixes of length
// j ending with a complete run of letter i, where the word's first run only
// needs to be extendable and later complete runs are exact.
inline std::uint64_t count_words(const ShiftSpec& s, int n) {
    if (n < 1) throw SemanticError("count_words: n must be >= 1");
    const int p = s.p();
    // ext[i][l]: some element of S_i is >= l.  exact[i][l]: l in S_i.
    std::vector<std::vector<char>> ext(static_cast<std::size_t>(p) + 1),
        exact(static_cast<std::size_t>(p) + 1);
    for (int i = 1; i <= p; ++i) {
        ext[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(n) + 1, 0);
        exact[static_cast<std::size_t>(i)] =
            detail::indicator_up_to(s.set(i), n, "count_words: membership beyond declared bound");
        for (int l = 1; l <= n; ++l)
            ext[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] =
                detail::yes_or_throw(has_element_geq(s.set(i), l),
                                     "count_words: extendability beyond declared bound");
    }
    std::vector<std::vector<std::uint64_t>> g(
        static_cast<std::size_t>(n) + 1, std::vector<std::uint64_t>(static_cast<std::size_t>(p) + 1, 0));
    for (int j = 1; j <= n; ++j) {
        for (int i = 1; i <= p; ++i) {
            std::uint64_t ways = ext[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ? 1 : 0;
            for (int l = 1; l <= j - 1; ++l) {
                if (!exact[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)]) continue;
                for (int q : detail::predecessor_letters(s, i))
                    ways += g[static_cast<std::size_t>(j - l)][static_cast<std::size_t>(q)];
            }
            g[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = ways;
        }
    }
    std::uint64_t total = 0;
    for (int i = 1; i <= p; ++i)
        total += ext[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)] ? 1 : 0;
    for (int i = 1; i <= p; ++i) {
        for (int l = 1; l <= n - 1; ++l) {
            if (!ext[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)]) continue;
            for (int q : detail::predecessor_letters(s, i))
                total += g[static_cast<std::size_t>(n - l)][static_cast<std::size_t>(q)];
        }
    }
    return total;
}

// Lexicographic enumeration of B_n (by flattened letters).
inline std::vector<RunWord> enumerate_words(const ShiftSpec& s, int n, int cap = 24) {
    if (n < 1) throw SemanticError("enumerate_words: n must be >= 1");
    if (n > cap) throw CapExceeded("enumerate_words: n exceeds the enumeration cap");
    std::vector<RunWord> out;
    std::vector<int> letters;
    letters.reserve(static_cast<std::size_t>(n));

    // Open run state while extending letter by letter.
    struct Frame { int letter; int len; bool first; };
    auto ext = [&](int i, int l) {
        return detail::yes_or_throw(has_element_geq(s.set(i), l),
                                    "enumerate_words: extendability beyond declared bound");
    };
    auto exact = [&](int i, int l) {
        return detail::yes_or_throw(contains(s.set(i), l),
                                    "enumerate_words: membership beyond declared bound");
    };

    auto dfs = [&](auto&& self, Frame open) -> void {
        if (static_cast<int>(letters.size()) == n) {
            out.push_back(RunWord::from_letters(letters));  // open run already extendable
            return;
        }
        for (int a = 1; a <= s.p(); ++a) {
            if (a == open.letter) {
                if (!ext(a, open.len + 1)) continue;
                letters.push_back(a);
                self(self, Frame{a, open.len + 1, open.first});
                letters.pop_back();
            } else {
                if (!s.follows(open.letter, a)) continue;
                // Closing the open run: the word's first run stays extendable,
                // interior runs must be exact.
                if (!open.first && !exact(open.letter, open.len)) continue;
                letters.push_back(a);
                self(self, Frame{a, 1, false});
                letters.pop_back();
            }
        }
    };
    for (int a = 1; a <= s.p(); ++a) {
        if (!ext(a, 1)) continue;  // sets are nonempty, always true
        letters.push_back(a);
        dfs(dfs, Frame{a, 1, true});
        letters.pop_back();
    }
    return out;
}

// All core blocks 1^{m_1} ... p^{m_p} with total length <= L,
// sorted by (length, exponent tuple).
inline std::vector<CoreBlock> core_blocks_up_to(const ShiftSpec& s, int L) {
    if (s.variant() != Variant::ordered)
        throw VariantMismatch("core blocks exist only for the ordered variant");
    const int p = s.p();
    std::vector<int> mins(static_cast<std::size_t>(p) + 1, 0);
    int minsum = 0;
    for (int i = 1; i <= p; ++i) {
        mins[static_cast<std::size_t>(i)] = min_element(s.set(i));
        minsum += mins[static_cast<std::size_t>(i)];
    }
    std::vector<CoreBlock> out;
    if (minsum > L) return out;
    // Elements each letter may contribute, given every other letter at minimum.
    std::vector<std::vector<int>> choices(static_cast<std::size_t>(p) + 1);
    for (int i = 1; i <= p; ++i) {
        int room = L - (minsum - mins[static_cast<std::size_t>(i)]);
        try {
            choices[static_cast<std::size_t>(i)] = enumerate_up_to(s.set(i), room);
        } catch (const BoundBreached&) {
            throw UnknownMembership("core_blocks_up_to: set undetermined past its declared bound");
        }
    }
    std::vector<int> exps(static_cast<std::size_t>(p), 0);
    auto rec = [&](auto&& self, int i, int used) -> void {
        if (i > p) {
            out.push_back(CoreBlock{exps});
            return;
        }
        int tail_min = 0;
        for (int j = i + 1; j <= p; ++j) tail_min += mins[static_cast<std::size_t>(j)];
        for (int m : choices[static_cast<std::size_t>(i)]) {
            if (used + m + tail_min > L) break;
            exps[static_cast<std::size_t>(i - 1)] = m;
            self(self, i + 1, used + m);
        }
    };
    rec(rec, 1, 0);
    std::sort(out.begin(), out.end(), [](const CoreBlock& a, const CoreBlock& b) {
        int la = a.length(), lb = b.length();
        if (la != lb) return la < lb;
        return a.exponents < b.exponents;
    });
    return out;
}

// counts[l] = # core blocks of length l, l <= L (convolution of indicators).
inline CoreLengthSpectrum length_spectrum(const ShiftSpec& s, int L) {
    if (s.variant() != Variant::ordered)
        throw VariantMismatch("length spectrum is defined from core blocks (ordered variant)");
    if (L < 0) throw SemanticError("length_spectrum: L must be >= 0");
    const int p = s.p();
    int minsum = 0;
    for (int i = 1; i <= p; ++i) minsum += min_element(s.set(i));
    std::vector<std::uint64_t> conv(static_cast<std::size_t>(L) + 1, 0);
    conv[0] = 1;
    for (int i = 1; i <= p; ++i) {
        // Letter i contributes at most L minus the other letters' minima.
        int room = L - (minsum - min_element(s.set(i)));
        std::vector<char> ind = detail::indicator_up_to(
            s.set(i), std::min(room, L), "length_spectrum: set undetermined past its declared bound");
        std::vector<std::uint64_t> next(static_cast<std::size_t>(L) + 1, 0);
        for (int t = 0; t <= L; ++t) {
            if (!conv[static_cast<std::size_t>(t)]) continue;
            for (int m = 1; m + t <= L && m < static_cast<int>(ind.size()); ++m)
                if (ind[static_cast<std::size_t>(m)])
                    next[static_cast<std::size_t>(t + m)] += conv[static_cast<std::size_t>(t)];
        }
        conv = std::move(next);
    }
    return CoreLengthSpectrum{std::move(conv), L};
}

// Cyclic validity of one period: every (wrapped) run exact, letters admissible
// around the cycle; constant strings need an infinite set.
inline bool is_periodic_string(const ShiftSpec& s, const std::vector<int>& letters) {
    if (letters.empty()) throw SemanticError("is_periodic_string: period must be >= 1");
    const int n = static_cast<int>(letters.size());
    for (int a : letters)
        if (a < 1 || a > s.p()) return false;
    bool constant = std::all_of(letters.begin(), letters.end(), [&](int a) { return a == letters[0]; });
    if (constant) {
        Verdict inf = is_infinite(s.set(letters[0]));
        if (inf == Verdict::unknown)
            throw InfinitudeUnknown("is_periodic_string: infinitude undetermined under declared bound");
        return inf == Verdict::yes;
    }
    // Rotate so position 0 starts a run, then read complete runs.
    int b = 0;
    while (letters[static_cast<std::size_t>((b + n - 1) % n)] == letters[static_cast<std::size_t>(b)]) ++b;
    std::vector<int> rot(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) rot[static_cast<std::size_t>(t)] = letters[static_cast<std::size_t>((b + t) % n)];
    RunWord w = RunWord::from_letters(rot);
    const auto& runs = w.runs();
    for (std::size_t k = 0; k < runs.size(); ++k) {
        if (!detail::yes_or_throw(contains(s.set(runs[k].letter), runs[k].length),
                                  "is_periodic_string: membership beyond declared bound"))
            return false;
        int nxt = runs[(k + 1) % runs.size()].letter;
        if (!s.follows(runs[k].letter, nxt)) return false;
    }
    return true;
}

// Number of points fixed by the n-th shift power: strings of length n whose
// periodic extension is valid.  Non-constant strings are counted by anchoring
// the run covering position 0 (letter i, exact length m, one of m phases)
// and filling the remaining n-m positions with a chain of exact runs that
// closes the letter cycle; constants i^infinity contribute one point per
// infinite set.
inline std::uint64_t periodic_points(const ShiftSpec& s, int n) {
    if (n < 1) throw SemanticError("periodic_points: n must be >= 1");
    const int p = s.p();
    std::uint64_t total = 0;
    for (int i = 1; i <= p; ++i) {
        Verdict inf = is_infinite(s.set(i));
        if (inf == Verdict::unknown)
            throw InfinitudeUnknown("periodic_points: infinitude undetermined under declared bound");
        if (inf == Verdict::yes) ++total;
    }
    if (n == 1) return total;
    std::vector<std::vector<char>> exact(static_cast<std::size_t>(p) + 1);
    for (int i = 1; i <= p; ++i)
        exact[static_cast<std::size_t>(i)] = detail::indicator_up_to(
            s.set(i), n - 1, "periodic_points: membership beyond declared bound");
    for (int i = 1; i <= p; ++i) {
        // D[j][c]: chains of exact runs, total length j, first letter follows i,
        // ending at letter c.
        std::vector<std::vector<std::uint64_t>> D(
            static_cast<std::size_t>(n), std::vector<std::uint64_t>(static_cast<std::size_t>(p) + 1, 0));
        for (int j = 1; j <= n - 1; ++j) {
            for (int c = 1; c <= p; ++c) {
                std::uint64_t ways = 0;
                for (int l = 1; l <= j; ++l) {
                    if (!exact[static_cast<std::size_t>(c)][static_cast<std::size_t>(l)]) continue;
                    if (l == j) {
                        if (s.follows(i, c)) ways += 1;
                    } else {
                        for (int q : detail::predecessor_letters(s, c))
                            ways += D[static_cast<std::size_t>(j - l)][static_cast<std::size_t>(q)];
                    }
                }
                D[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)] = ways;
            }
        }
        for (int m = 1; m <= n - 1; ++m) {
            if (!exact[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)]) continue;
            std::uint64_t chains = 0;
            for (int c = 1; c <= p; ++c)
                if (s.follows(c, i)) chains += D[static_cast<std::size_t>(n - m)][static_cast<std::size_t>(c)];
            total += static_cast<std::uint64_t>(m) * chains;
        }
    }
    return total;
}

// The strings behind periodic_points (periods as raw letter vectors, sorted).
inline std::vector<std::vector<int>> periodic_strings(const ShiftSpec& s, int n) {
    if (n < 1) throw SemanticError("periodic_strings: n must be >= 1");
    std::set<std::vector<int>> out;
    for (int i = 1; i <= s.p(); ++i) {
        Verdict inf = is_infinite(s.set(i));
        if (inf == Verdict::unknown)
            throw InfinitudeUnknown("periodic_strings: infinitude undetermined under declared bound");
        if (inf == Verdict::yes) out.insert(std::vector<int>(static_cast<std::size_t>(n), i));
    }
    // Anchored run cycles: run letters around the cycle are admissible, every
    // run exact; emit all rotations of the expanded string.
    std::vector<Run> cycle;
    auto emit = [&]() {
        std::vector<int> base;
        for (const Run& r : cycle)
            for (int t = 0; t < r.length; ++t) base.push_back(r.letter);
        std::vector<int> rot(base.size());
        for (std::size_t off = 0; off < base.size(); ++off) {
            for (std::size_t t = 0; t < base.size(); ++t)
                rot[t] = base[(t + off) % base.size()];
            out.insert(rot);
        }
    };
    auto rec = [&](auto&& self, int used) -> void {
        if (used == n) {
            if (cycle.size() >= 2 && s.follows(cycle.back().letter, cycle.front().letter)) emit();
            return;
        }
        for (int c = 1; c <= s.p(); ++c) {
            if (!cycle.empty() && !s.follows(cycle.back().letter, c)) continue;
            for (int l : enumerate_up_to(s.set(c), n - used)) {
                cycle.push_back({c, l});
                self(self, used + l);
                cycle.pop_back();
            }
        }
    };
    try {
        rec(rec, 0);
    } catch (const BoundBreached&) {
        throw UnknownMembership("periodic_strings: membership beyond declared bound");
    }
    return {out.begin(), out.end()};
}

// Smallest-by-letters connecting word xi with |xi| = n and u xi v in the
// language, if one exists.  Search over (position, open-run letter, open-run
// length, still-inside-first-run) with failed states memoized.
inline std::optional<RunWord> find_connector(const ShiftSpec& s, const RunWord& u, const RunWord& v,
                                             int n, int cap = 24) {
    if (u.empty() || v.empty()) throw SemanticError("find_connector: u and v must be nonempty");
    if (n < 0) throw SemanticError("find_connector: n must be >= 0");
    if (n > cap) throw CapExceeded("find_connector: n exceeds the search cap");
    if (!is_in_language(s, u)) throw WordNotInLanguage("find_connector: u not in language");
    if (!is_in_language(s, v)) throw WordNotInLanguage("find_connector: v not in language");

    const auto& vruns = v.runs();
    bool saw_unknown = false;
    auto ext = [&](int i, int l) {
        Verdict w = has_element_geq(s.set(i), l);
        if (w == Verdict::unknown) saw_unknown = true;
        return w == Verdict::yes;
    };
    auto exact = [&](int i, int l) {
        Verdict w = contains(s.set(i), l);
        if (w == Verdict::unknown) saw_unknown = true;
        return w == Verdict::yes;
    };

    // Can the open run (c, rho) be welded onto v?
    auto final_ok = [&](int c, int rho, bool first_open) -> bool {
        const Run& b1 = vruns.front();
        if (b1.letter == c) {
            int merged = rho + b1.length;
            if (vruns.size() == 1) return ext(c, merged);
            return first_open ? ext(c, merged) : exact(c, merged);
        }
        if (!s.follows(c, b1.letter)) return false;
        if (!(first_open ? ext(c, rho) : exact(c, rho))) return false;
        if (vruns.size() == 1) return true;       // v's single run stays the word's last
        return exact(b1.letter, b1.length);       // v's first run becomes interior
    };

    const int max_rho = u.length() + n + 1;
    std::unordered_set<std::uint64_t> dead;
    auto key = [&](int j, int c, int rho, bool first) {
        return ((static_cast<std::uint64_t>(j) * static_cast<std::uint64_t>(s.p() + 1) +
                 static_cast<std::uint64_t>(c)) *
                    static_cast<std::uint64_t>(max_rho + 2) +
                static_cast<std::uint64_t>(rho)) *
                   2 +
               (first ? 1 : 0);
    };
    std::vector<int> xi(static_cast<std::size_t>(n), 0);
    auto dfs = [&](auto&& self, int j, int c, int rho, bool first) -> bool {
        if (j == n) return final_ok(c, rho, first);
        std::uint64_t k = key(j, c, rho, first);
        if (dead.contains(k)) return false;
        for (int a = 1; a <= s.p(); ++a) {
            bool ok = false;
            if (a == c) {
                if (ext(c, rho + 1)) {
                    xi[static_cast<std::size_t>(j)] = a;
                    ok = self(self, j + 1, c, rho + 1, first);
                }
            } else if (s.follows(c, a)) {
                if (first ? ext(c, rho) : exact(c, rho)) {
                    xi[static_cast<std::size_t>(j)] = a;
                    ok = self(self, j + 1, a, 1, false);
                }
            }
            if (ok) return true;
        }
        dead.insert(k);
        return false;
    };
    const Run& last = u.runs().back();
    if (dfs(dfs, 0, last.letter, last.length, u.runs().size() == 1))
        return RunWord::from_letters(xi);
    if (saw_unknown)
        throw UnknownMembership("find_connector: outcome depends on membership beyond a declared bound");
    return std::nullopt;
}

// --- boundary classes and the prefix/core/suffix factorization -------------

// Prefix-boundary words: a core-block tail l^c (l+1)^{s_{l+1}} ... p^{s_p}
// whose first (cut) run is free and later runs are exact.
inline bool in_prefix_boundary(const ShiftSpec& s, const RunWord& w) {
    if (s.variant() != Variant::ordered)
        throw VariantMismatch("boundary classes exist only for the ordered variant");
    if (w.empty()) return false;
    const auto& runs = w.runs();
    if (runs.back().letter != s.p()) return false;
    if (!detail::yes_or_throw(has_element_geq(s.set(runs.front().letter), runs.front().length),
                              "prefix boundary: extendability beyond declared bound"))
        return false;  // the cut run is free in length but must extend to a set element
    for (std::size_t k = 1; k < runs.size(); ++k) {
        if (runs[k].letter != runs[k - 1].letter + 1) return false;
        if (!detail::yes_or_throw(contains(s.set(runs[k].letter), runs[k].length),
                                  "prefix boundary: membership beyond declared bound"))
            return false;
    }
    return true;
}

// Suffix-boundary words: any cut piece of a single ascending run segment
// l^c (l+1)^{s_{l+1}} ... k^{c'} — interior runs exact, the two cut end runs
// free but extendable.  Covering every start letter (not just 1) makes the
// prefix/blocks/suffix factorization below total: words lying strictly inside
// one core block land here whole.
inline bool in_suffix_boundary(const ShiftSpec& s, const RunWord& w) {
    if (s.variant() != Variant::ordered)
        throw VariantMismatch("boundary classes exist only for the ordered variant");
    if (w.empty()) return false;
    const auto& runs = w.runs();
    for (std::size_t k = 1; k < runs.size(); ++k)
        if (runs[k].letter != runs[k - 1].letter + 1) return false;
    for (std::size_t k = 1; k + 1 < runs.size(); ++k)
        if (!detail::yes_or_throw(contains(s.set(runs[k].letter), runs[k].length),
                                  "suffix boundary: membership beyond declared bound"))
            return false;
    if (!detail::yes_or_throw(has_element_geq(s.set(runs.front().letter), runs.front().length),
                              "suffix boundary: extendability beyond declared bound"))
        return false;
    return detail::yes_or_throw(has_element_geq(s.set(runs.back().letter), runs.back().length),
                                "suffix boundary: extendability beyond declared bound");
}

struct Decomposition {
    RunWord prefix;                     // in the prefix boundary class, or empty
    std::vector<CoreBlock> core_blocks; // complete core blocks, possibly none
    RunWord suffix;                     // in the suffix boundary class, or empty

    RunWord core() const {
        std::vector<int> ls;
        for (const CoreBlock& b : core_blocks) {
            std::vector<int> bl = b.word().letters();
            ls.insert(ls.end(), bl.begin(), bl.end());
        }
        return RunWord::from_letters(ls);
    }
};

// Canonical factorization w = prefix . core blocks . suffix with the shortest
// possible prefix, then the longest possible block chain.  Total for words in
// the language: a word without a p->1 run transition is one ascending segment
// and rides in the suffix class whole; a word with one factors at its first
// p-run, after which greedy block parsing always leaves an ascending tail.
inline Decomposition decompose(const ShiftSpec& s, const RunWord& w) {
    if (s.variant() != Variant::ordered)
        throw VariantMismatch("decompose is defined for the ordered variant");
    if (w.empty()) throw SemanticError("decompose: word must be nonempty");
    if (!is_in_language(s, w)) throw WordNotInLanguage("decompose: word not in language");

    const auto& runs = w.runs();
    const int k = static_cast<int>(runs.size());
    const int p = s.p();
    auto exact = [&](const Run& r) {
        return detail::yes_or_throw(contains(s.set(r.letter), r.length),
                                    "decompose: membership beyond declared bound");
    };

    // Candidate prefix lengths in runs: empty, or up to the first p-run.
    std::vector<int> candidates{0};
    for (int t = 0; t < k; ++t) {
        if (runs[static_cast<std::size_t>(t)].letter == p) {
            bool ok = true;
            for (int q = 1; q <= t; ++q)
                if (!exact(runs[static_cast<std::size_t>(q)])) { ok = false; break; }
            if (ok) candidates.push_back(t + 1);
            break;
        }
    }

    // runs[from..k) empty or suffix-boundary: an ascending segment suffices,
    // since its interior runs are word-interior (exact by membership) and its
    // end runs are extendable either by membership or by their own exactness.
    auto suffix_shape = [&](int from) -> bool {
        for (int t = from + 1; t < k; ++t)
            if (runs[static_cast<std::size_t>(t)].letter !=
                runs[static_cast<std::size_t>(t - 1)].letter + 1)
                return false;
        return true;
    };

    for (int a : candidates) {
        // Maximal chain of complete exact core blocks after the prefix.
        std::vector<CoreBlock> blocks;
        int pos = a;
        while (pos + p <= k && runs[static_cast<std::size_t>(pos)].letter == 1) {
            bool ok = true;
            CoreBlock b;
            b.exponents.resize(static_cast<std::size_t>(p));
            for (int t = 0; t < p; ++t) {
                const Run& r = runs[static_cast<std::size_t>(pos + t)];
                if (r.letter != t + 1 || !exact(r)) { ok = false; break; }
                b.exponents[static_cast<std::size_t>(t)] = r.length;
            }
            if (!ok) break;
            blocks.push_back(std::move(b));
            pos += p;
        }
        for (int t = static_cast<int>(blocks.size()); t >= 0; --t) {
            int from = a + t * p;
            if (from < k && !suffix_shape(from)) continue;
            Decomposition d;
            d.prefix = RunWord(std::vector<Run>(runs.begin(), runs.begin() + a));
            d.core_blocks.assign(blocks.begin(), blocks.begin() + t);
            d.suffix = RunWord(std::vector<Run>(runs.begin() + from, runs.end()));
            return d;
        }
    }
    // Unreachable for words in the language; kept as a defensive invariant.
    throw DecompositionNotFound("decompose: no boundary factorization found");
}

// Number of length-n words in the prefix boundary class: free first run over
// every starting letter l, exact runs l+1..p after it.
inline std::uint64_t count_prefix_boundary_words(const ShiftSpec& s, int n) {
    if (s.variant() != Variant::ordered)
        throw VariantMismatch("boundary classes exist only for the ordered variant");
    if (n < 1) throw SemanticError("count_prefix_boundary_words: n must be >= 1");
    const int p = s.p();
    std::uint64_t total = 0;
    std::vector<std::uint64_t> conv(static_cast<std::size_t>(n), 0);
    conv[0] = 1;  // letters l+1..p, starting from l = p (empty tail)
    for (int l = p; l >= 1; --l) {
        std::uint64_t here = 0;  // tail length m <= n-1, free run takes n-m >= 1
        for (int m = 0; m <= n - 1; ++m) {
            if (!conv[static_cast<std::size_t>(m)]) continue;
            if (detail::yes_or_throw(has_element_geq(s.set(l), n - m),
                                     "boundary count: extendability beyond declared bound"))
                here += conv[static_cast<std::size_t>(m)];
        }
        total += here;
        if (l == 1) break;
        std::vector<char> ind = detail::indicator_up_to(
            s.set(l), n - 1, "boundary count: membership beyond declared bound");
        std::vector<std::uint64_t> next(static_cast<std::size_t>(n), 0);
        for (int t = 0; t < n; ++t) {
            if (!conv[static_cast<std::size_t>(t)]) continue;
            for (int m = 1; m + t < n && m < static_cast<int>(ind.size()); ++m)
                if (ind[static_cast<std::size_t>(m)])
                    next[static_cast<std::size_t>(t + m)] += conv[static_cast<std::size_t>(t)];
        }
        conv = std::move(next);
    }
    return total;
}

inline std::uint64_t count_suffix_boundary_words(const ShiftSpec& s, int n) {
    if (s.variant() != Variant::ordered)
        throw VariantMismatch("boundary classes exist only for the ordered variant");
    if (n < 1) throw SemanticError("count_suffix_boundary_words: n must be >= 1");
    const int p = s.p();
    auto ext = [&](int i, int c) {
        return detail::yes_or_throw(has_element_geq(s.set(i), c),
                                    "boundary count: extendability beyond declared bound");
    };
    std::uint64_t total = 0;
    for (int l = 1; l <= p; ++l) {
        if (ext(l, n)) ++total;  // single cut run l^n
        // Two cut runs l^c, k^{c'} around exact interior letters l+1..k-1.
        std::vector<std::uint64_t> conv(static_cast<std::size_t>(n), 0);
        conv[0] = 1;
        for (int k = l + 1; k <= p; ++k) {
            for (int m = 0; m <= n - 2; ++m) {
                if (!conv[static_cast<std::size_t>(m)]) continue;
                std::uint64_t splits = 0;
                for (int c = 1; c <= n - m - 1; ++c)
                    if (ext(l, c) && ext(k, n - m - c)) ++splits;
                total += conv[static_cast<std::size_t>(m)] * splits;
            }
            if (k == p) break;
            std::vector<char> ind = detail::indicator_up_to(
                s.set(k), n - 1, "boundary count: membership beyond declared bound");
            std::vector<std::uint64_t> next(static_cast<std::size_t>(n), 0);
            for (int t = 0; t < n; ++t) {
                if (!conv[static_cast<std::size_t>(t)]) continue;
                for (int m = 1; m + t < n && m < static_cast<int>(ind.size()); ++m)
                    if (ind[static_cast<std::size_t>(m)])
                        next[static_cast<std::size_t>(t + m)] += conv[static_cast<std::size_t>(t)];
            }
            conv = std::move(next);
        }
    }
    return total;
}

}  // namespace limshift
