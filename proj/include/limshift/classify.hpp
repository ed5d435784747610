#pragma once

// Structural classification: shift of finite type, sofic, mixing,
// irreducibility — with witnesses (forbidden-word lists, the gcd of
// achievable block lengths, a synchronizing word).

#include <bit>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "limshift/language.hpp"

namespace limshift {

struct MixingResult {
    Verdict verdict = Verdict::unknown;
    std::optional<std::uint64_t> gcd_value;  // present iff verdict is decided
    int truncation = 0;                      // stabilization bound for the scan
};

struct ClassificationReport {
    Verdict sft = Verdict::unknown;
    Verdict sofic = Verdict::unknown;
    Verdict mixing = Verdict::unknown;
    bool irreducible = true;
    std::optional<std::uint64_t> gcd_value;
    std::optional<RunWord> synchronizing_example;
    std::optional<std::vector<RunWord>> forbidden_words;
    int mixing_truncation = 0;
};

// SFT iff every run-length set is finite or cofinite.  A periodic-difference
// set whose eventual gaps are all 1 is cofinite in substance and counts; one
// with a larger gap recurring forever is definitively not.  A definite "no"
// beats an open explicit set elsewhere.
inline Verdict is_sft(const ShiftSpec& s) {
    bool has_unknown = false;
    for (int i = 1; i <= s.p(); ++i) {
        const SetSpec& t = s.set(i);
        switch (t.kind()) {
            case SetKind::finite:
            case SetKind::cofinite:
                break;
            case SetKind::eventually_periodic: {
                bool all_ones = std::all_of(t.period_diffs().begin(), t.period_diffs().end(),
                                            [](int d) { return d == 1; });
                if (!all_ones) return Verdict::no;
                break;
            }
            case SetKind::bounded_explicit:
                has_unknown = true;
                break;
        }
    }
    return has_unknown ? Verdict::unknown : Verdict::yes;
}

// Every closed-form set has an eventually periodic difference sequence, so
// soficity is only ever left open by bounded-explicit sets.
inline Verdict is_sofic(const ShiftSpec& s) {
    for (int i = 1; i <= s.p(); ++i)
        if (s.set(i).kind() == SetKind::bounded_explicit) return Verdict::unknown;
    return Verdict::yes;
}

// The defining forbidden list: letter-order violations (ordered variant only)
// plus, per letter, the runs a i^n b with n surely outside S_i and — for
// finite sets — the over-long run i^{1+max}.
inline std::vector<RunWord> forbidden_words(const ShiftSpec& s) {
    if (is_sft(s) != Verdict::yes)
        throw NotSft("forbidden_words: shift is not (known to be) of finite type");
    const int p = s.p();
    std::vector<RunWord> out;
    if (s.variant() == Variant::ordered) {
        for (int n = 1; n < p; ++n)
            for (int m = 1; m <= p; ++m)
                if (m != n && m != n + 1) out.push_back(RunWord({{n, 1}, {m, 1}}));
        for (int i = 2; i < p; ++i) out.push_back(RunWord({{p, 1}, {i, 1}}));
    }
    for (int i = 1; i <= p; ++i) {
        const SetSpec& t = s.set(i);
        std::vector<int> gaps;  // run lengths surely outside S_i
        std::optional<int> overlong;
        switch (t.kind()) {
            case SetKind::finite: {
                int mx = t.elements().back();
                for (int n = 1; n <= mx; ++n)
                    if (contains(t, n) == Verdict::no) gaps.push_back(n);
                overlong = mx + 1;
                break;
            }
            case SetKind::cofinite:
                gaps = t.excluded();
                break;
            case SetKind::eventually_periodic: {
                // Reached only when the gaps are eventually 1 (cofinite in
                // substance): missing values all sit below the initial tail.
                for (int n = 1; n <= t.elements().back(); ++n)
                    if (contains(t, n) == Verdict::no) gaps.push_back(n);
                break;
            }
            case SetKind::bounded_explicit:
                break;  // unreachable behind the is_sft gate
        }
        for (int n : gaps)
            for (int a = 1; a <= p; ++a) {
                if (a == i) continue;
                for (int b = 1; b <= p; ++b)
                    if (b != i) out.push_back(RunWord({{a, 1}, {i, n}, {b, 1}}));
            }
        if (overlong) out.push_back(RunWord({{i, *overlong}}));
    }
    std::sort(out.begin(), out.end(), [](const RunWord& a, const RunWord& b) {
        if (a.length() != b.length()) return a.length() < b.length();
        return a.letters() < b.letters();
    });
    return out;
}

namespace detail {

// Horizon after which a set's membership pattern has shown everything the
// gcd scan needs: the irregular head plus one full period of gaps.
inline int sample_horizon(const SetSpec& s) { return head_horizon(s) + period_span(s); }

}  // namespace detail

// Ordered variant: gcd of achievable core-block lengths, scanned up to a
// stabilization bound.  Generalized variant: gcd of sums over every selection
// of two or more distinct letters.  A bounded-explicit set leaves the verdict
// unknown: its tail is undeclared, so no stabilization horizon exists for the
// scan, and no gcd is reported.
inline MixingResult is_mixing(const ShiftSpec& s) {
    const int p = s.p();
    MixingResult r;
    for (int i = 1; i <= p; ++i)
        if (s.set(i).kind() == SetKind::bounded_explicit) {
            r.verdict = Verdict::unknown;
            return r;
        }

    std::uint64_t g = 0;
    if (s.variant() == Variant::ordered) {
        int lstar = 0, maxspan = 0;
        for (int i = 1; i <= p; ++i) {
            lstar += detail::sample_horizon(s.set(i));
            maxspan = std::max(maxspan, period_span(s.set(i)));
        }
        lstar += p * maxspan;
        r.truncation = lstar;
        CoreLengthSpectrum sp = length_spectrum(s, lstar);
        for (int l = 1; l <= lstar; ++l)
            if (sp.counts[static_cast<std::size_t>(l)] > 0)
                g = std::gcd(g, static_cast<std::uint64_t>(l));
    } else {
        int horizon = 0;
        std::vector<std::vector<int>> samples(static_cast<std::size_t>(p) + 1);
        for (int i = 1; i <= p; ++i) {
            int h = detail::sample_horizon(s.set(i));
            horizon = std::max(horizon, h);
            samples[static_cast<std::size_t>(i)] = enumerate_up_to(s.set(i), h);
        }
        r.truncation = horizon;
        for (unsigned mask = 0; mask < (1u << p); ++mask) {
            if (std::popcount(mask) < 2) continue;
            std::uint64_t base = 0;
            for (int i = 1; i <= p; ++i)
                if (mask & (1u << (i - 1))) base += static_cast<std::uint64_t>(
                    samples[static_cast<std::size_t>(i)].front());
            g = std::gcd(g, base);
            for (int i = 1; i <= p; ++i) {
                if (!(mask & (1u << (i - 1)))) continue;
                const auto& xs = samples[static_cast<std::size_t>(i)];
                for (std::size_t t = 1; t < xs.size(); ++t)
                    g = std::gcd(g, static_cast<std::uint64_t>(xs[t] - xs[t - 1]));
            }
        }
    }
    r.verdict = g == 1 ? Verdict::yes : Verdict::no;
    r.gcd_value = g;
    return r;
}

// Every instance is irreducible and synchronized: the two-letter word p1
// (ordered) or 12 (generalized) pins the run structure on both sides.
inline std::pair<bool, RunWord> irreducibility_and_sync(const ShiftSpec& s) {
    if (s.variant() == Variant::ordered) return {true, RunWord({{s.p(), 1}, {1, 1}})};
    return {true, RunWord({{1, 1}, {2, 1}})};
}

inline ClassificationReport classify_shift(const ShiftSpec& s) {
    ClassificationReport r;
    r.sft = is_sft(s);
    r.sofic = is_sofic(s);
    MixingResult m = is_mixing(s);
    r.mixing = m.verdict;
    r.gcd_value = m.gcd_value;
    r.mixing_truncation = m.truncation;
    auto [irr, sync] = irreducibility_and_sync(s);
    r.irreducible = irr;
    r.synchronizing_example = sync;
    if (r.sft == Verdict::yes) r.forbidden_words = forbidden_words(s);
    return r;
}

}  // namespace limshift
