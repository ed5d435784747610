#pragma once

// Conjugacy machinery for ordered shifts: the offset-vector sufficient
// condition, the induced length-preserving bijection on core blocks, sliding
// block codes synthesized from transition-point translation, and desk-scale
// verification of conjugacy evidence.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "limshift/language.hpp"

namespace limshift {

struct OffsetVector {
    std::vector<int> d;  // one entry per letter; sums to zero when valid

    bool operator==(const OffsetVector&) const = default;
};

struct OffsetRefutation {
    enum class Reason { sum_nonzero, cardinality_mismatch, element_mismatch };
    Reason reason = Reason::sum_nonzero;
    int letter = 0;     // 1-based letter of the witnessing set; 0 for the sum condition
    int index = 0;      // element index m at which the shifted enumerations differ
    long long sum = 0;  // the nonzero offset sum, when that is the reason
};

struct OffsetCheck {
    std::optional<OffsetVector> offsets;
    std::optional<OffsetRefutation> refutation;

    bool accepted() const { return offsets.has_value(); }
};

struct ComparisonResult {
    bool equal = true;
    int first_mismatch = -1;  // length l or period n of the first difference
};

// Compare core-block length spectra coefficient by coefficient for l <= L.
// The alphabet sizes may differ; only the induced length counts matter.
inline ComparisonResult length_spectra_equal(const ShiftSpec& s, const ShiftSpec& t, int L) {
    CoreLengthSpectrum a = length_spectrum(s, L);
    CoreLengthSpectrum b = length_spectrum(t, L);
    for (int l = 1; l <= L; ++l)
        if (a.counts[static_cast<std::size_t>(l)] != b.counts[static_cast<std::size_t>(l)])
            return {false, l};
    return {true, -1};
}

inline ComparisonResult periodic_counts_equal(const ShiftSpec& s, const ShiftSpec& t, int N) {
    for (int n = 1; n <= N; ++n)
        if (periodic_points(s, n) != periodic_points(t, n)) return {false, n};
    return {true, -1};
}

// Sufficient conjugacy condition: per-letter constants d_i with zero sum such
// that the i-th run-length enumerations satisfy t^i_m = s^i_m + d_i for every
// index m.  Closed-form sets are checked symbolically: finite lists
// elementwise, infinite enumerations up to the longer head plus one full
// cycle of both difference patterns (they are eventually arithmetic, so
// agreement there forces agreement everywhere).
inline OffsetCheck sufficient_offsets(const ShiftSpec& s, const ShiftSpec& t) {
    if (s.variant() != Variant::ordered || t.variant() != Variant::ordered)
        throw VariantMismatch("sufficient_offsets: defined for ordered shifts");
    if (s.p() != t.p())
        throw AlphabetSizeMismatch("sufficient_offsets: alphabet sizes differ");
    const int p = s.p();
    for (int i = 1; i <= p; ++i)
        if (s.set(i).kind() == SetKind::bounded_explicit ||
            t.set(i).kind() == SetKind::bounded_explicit)
            throw UnknownMembership(
                "sufficient_offsets: explicit bounded sets leave the enumeration tail open");

    OffsetVector d;
    d.d.resize(static_cast<std::size_t>(p));
    long long sum = 0;
    for (int i = 1; i <= p; ++i) {
        d.d[static_cast<std::size_t>(i - 1)] = min_element(t.set(i)) - min_element(s.set(i));
        sum += d.d[static_cast<std::size_t>(i - 1)];
    }
    if (sum != 0) {
        OffsetRefutation r;
        r.reason = OffsetRefutation::Reason::sum_nonzero;
        r.sum = sum;
        return {std::nullopt, r};
    }

    for (int i = 1; i <= p; ++i) {
        const SetSpec& a = s.set(i);
        const SetSpec& b = t.set(i);
        const int di = d.d[static_cast<std::size_t>(i - 1)];
        const bool a_inf = is_infinite(a) == Verdict::yes;
        const bool b_inf = is_infinite(b) == Verdict::yes;
        if (a_inf != b_inf) {
            int finite_count = static_cast<int>((a_inf ? b : a).elements().size());
            OffsetRefutation r;
            r.reason = OffsetRefutation::Reason::cardinality_mismatch;
            r.letter = i;
            r.index = finite_count + 1;
            return {std::nullopt, r};
        }
        if (!a_inf) {
            const std::vector<int>& ea = a.elements();
            const std::vector<int>& eb = b.elements();
            if (ea.size() != eb.size()) {
                OffsetRefutation r;
                r.reason = OffsetRefutation::Reason::cardinality_mismatch;
                r.letter = i;
                r.index = static_cast<int>(std::min(ea.size(), eb.size())) + 1;
                return {std::nullopt, r};
            }
            for (std::size_t m = 0; m < ea.size(); ++m)
                if (eb[m] != ea[m] + di) {
                    OffsetRefutation r;
                    r.reason = OffsetRefutation::Reason::element_mismatch;
                    r.letter = i;
                    r.index = static_cast<int>(m) + 1;
                    return {std::nullopt, r};
                }
        } else {
            DeltaSequence da = delta_sequence(a);
            DeltaSequence db = delta_sequence(b);
            long long cycle = std::lcm(static_cast<long long>(da.eventual_period->size()),
                                       static_cast<long long>(db.eventual_period->size()));
            int horizon = static_cast<int>(std::max(da.head.size(), db.head.size()) +
                                           static_cast<std::size_t>(cycle)) +
                          1;
            for (int m = 1; m <= horizon; ++m)
                if (nth_element(b, m) != nth_element(a, m) + di) {
                    OffsetRefutation r;
                    r.reason = OffsetRefutation::Reason::element_mismatch;
                    r.letter = i;
                    r.index = m;
                    return {std::nullopt, r};
                }
        }
    }
    return {d, std::nullopt};
}

// The induced bijection on core blocks: add d_i to the i-th exponent.  It
// preserves block length whenever the offsets sum to zero.
struct Psi {
    OffsetVector d;

    CoreBlock operator()(const CoreBlock& g) const {
        if (g.exponents.size() != d.d.size())
            throw AlphabetSizeMismatch("psi: block arity does not match the offset vector");
        CoreBlock out = g;
        for (std::size_t k = 0; k < out.exponents.size(); ++k) {
            out.exponents[k] += d.d[k];
            if (out.exponents[k] < 1)
                throw InvalidOffsets("psi: offset drives an exponent below one");
        }
        return out;
    }
};

inline Psi build_psi(const ShiftSpec& s, const ShiftSpec& t, const OffsetVector& d) {
    if (s.p() != t.p()) throw AlphabetSizeMismatch("build_psi: alphabet sizes differ");
    if (static_cast<int>(d.d.size()) != s.p())
        throw InvalidOffsets("build_psi: need exactly one offset per letter");
    if (std::accumulate(d.d.begin(), d.d.end(), 0LL) != 0)
        throw InvalidOffsets("build_psi: offsets must sum to zero");
    return Psi{d};
}

struct TransitionPoint {
    enum class Kind { internal, external };
    int index = 0;  // position of the last letter before the change
    Kind kind = Kind::internal;
    int from_letter = 0;
    int to_letter = 0;
};

// Letter changes in a word of the ordered language: k -> k+1 inside a core
// block, p -> 1 between blocks.  Any other change is out of language.
inline std::vector<TransitionPoint> find_transition_points(const std::vector<int>& letters,
                                                           int p) {
    std::vector<TransitionPoint> out;
    for (std::size_t j = 0; j + 1 < letters.size(); ++j) {
        int c1 = letters[j], c2 = letters[j + 1];
        if (c1 == c2) continue;
        TransitionPoint tp;
        tp.index = static_cast<int>(j);
        tp.from_letter = c1;
        tp.to_letter = c2;
        if (c2 == c1 + 1 && c1 >= 1 && c1 < p)
            tp.kind = TransitionPoint::Kind::internal;
        else if (c1 == p && c2 == 1)
            tp.kind = TransitionPoint::Kind::external;
        else
            throw WordNotInLanguage("letter change violates the cyclic run order");
        out.push_back(tp);
    }
    return out;
}

struct TransitionRule {
    OffsetVector d;
    std::vector<int> partials;  // r_k = d_1 + ... + d_k for k = 1..p-1
    int radius = 1;             // 1 + max(0, max_k |r_k|)

    bool operator==(const TransitionRule&) const = default;
};

// A sliding block code given either by an explicit window table or by the
// transition-translation procedure.  Window letters are addressed as
// w_{-memory} .. w_0 .. w_{+anticipation}.
struct BlockMap {
    int p = 2;
    int memory = 0;
    int anticipation = 0;
    std::optional<std::map<std::string, int>> table;  // window digit string -> letter
    std::optional<TransitionRule> transitions;

    int window_length() const { return memory + anticipation + 1; }

    int evaluate(const std::vector<int>& window) const {
        if (static_cast<int>(window.size()) != window_length())
            throw InvalidWindow("block map: window length must be memory + anticipation + 1");
        if (table) {
            std::string key;
            key.reserve(window.size());
            for (int c : window) key += static_cast<char>('0' + c);
            auto it = table->find(key);
            if (it == table->end())
                throw WordNotInLanguage("block map: window missing from the rule table");
            return it->second;
        }
        // Transition translation: move every internal k -> k+1 change by r_k
        // and every external change by 0, then let the image change nearest
        // to the center decide the output letter, ties favoring the left.
        const TransitionRule& tr = *transitions;
        const int center = memory;
        bool found = false;
        std::tuple<int, int, int> best{0, 0, 0};
        int out = window[static_cast<std::size_t>(center)];
        for (const TransitionPoint& tp : find_transition_points(window, p)) {
            int shift = tp.kind == TransitionPoint::Kind::internal
                            ? tr.partials[static_cast<std::size_t>(tp.from_letter - 1)]
                            : 0;
            int u = tp.index - center + shift;
            std::tuple<int, int, int> key{std::abs(u), u, tp.index - center};
            if (!found || key < best) {
                found = true;
                best = key;
                out = u < 0 ? tp.to_letter : tp.from_letter;
            }
        }
        return out;
    }
};

// Realize the offset bijection as a sliding block code.  The image of an
// internal transition sits r_k places away, so a window reaching one past
// the largest displacement on both sides decides every output letter.
inline BlockMap synthesize_block_map(const ShiftSpec& s, const ShiftSpec& t,
                                     const OffsetVector& d) {
    if (s.p() != t.p()) throw AlphabetSizeMismatch("synthesize_block_map: alphabet sizes differ");
    const int p = s.p();
    if (static_cast<int>(d.d.size()) != p)
        throw InvalidOffsets("synthesize_block_map: need exactly one offset per letter");
    if (std::accumulate(d.d.begin(), d.d.end(), 0LL) != 0)
        throw InvalidOffsets("synthesize_block_map: offsets must sum to zero");
    TransitionRule tr;
    tr.d = d;
    int partial = 0, worst = 0;
    for (int k = 1; k <= p - 1; ++k) {
        partial += d.d[static_cast<std::size_t>(k - 1)];
        tr.partials.push_back(partial);
        worst = std::max(worst, std::abs(partial));
    }
    tr.radius = 1 + worst;
    BlockMap phi;
    phi.p = p;
    phi.memory = tr.radius;
    phi.anticipation = tr.radius;
    phi.transitions = std::move(tr);
    return phi;
}

inline RunWord apply_block_map(const BlockMap& phi, const RunWord& w) {
    std::vector<int> in = w.letters();
    if (static_cast<int>(in.size()) <= phi.memory + phi.anticipation)
        throw WordTooShort("apply_block_map: word no longer than memory + anticipation");
    std::vector<int> out;
    out.reserve(in.size() - static_cast<std::size_t>(phi.memory + phi.anticipation));
    std::vector<int> window(static_cast<std::size_t>(phi.window_length()));
    for (int c = phi.memory; c + phi.anticipation < static_cast<int>(in.size()); ++c) {
        for (int k = 0; k < phi.window_length(); ++k)
            window[static_cast<std::size_t>(k)] =
                in[static_cast<std::size_t>(c - phi.memory + k)];
        out.push_back(phi.evaluate(window));
    }
    return RunWord::from_letters(out);
}

// Evaluate around the cycle: the word supplies its own context, as for the
// finite description of a periodic point.
inline std::vector<int> apply_block_map_cyclic(const BlockMap& phi, const std::vector<int>& in) {
    if (in.empty()) throw WordTooShort("apply_block_map_cyclic: empty period");
    const int n = static_cast<int>(in.size());
    std::vector<int> out(static_cast<std::size_t>(n));
    std::vector<int> window(static_cast<std::size_t>(phi.window_length()));
    for (int c = 0; c < n; ++c) {
        for (int k = 0; k < phi.window_length(); ++k) {
            int idx = ((c - phi.memory + k) % n + n) % n;
            window[static_cast<std::size_t>(k)] = in[static_cast<std::size_t>(idx)];
        }
        out[static_cast<std::size_t>(c)] = phi.evaluate(window);
    }
    return out;
}

// The letter map induced on constant points: evaluate each infinite-set
// letter on its constant window and compare the image set with the letters
// whose image sets are infinite.
struct PiReport {
    std::map<int, int> assignment;     // infinite domain letter -> image letter
    std::vector<int> domain_infinite;  // letters of s with infinite run sets
    std::vector<int> image_infinite;   // letters of t with infinite run sets
    bool image_matches = false;
};

inline PiReport compute_pi(const BlockMap& phi, const ShiftSpec& s, const ShiftSpec& t) {
    PiReport r;
    for (int i = 1; i <= s.p(); ++i) {
        Verdict v = is_infinite(s.set(i));
        if (v == Verdict::unknown)
            throw UnknownMembership("compute_pi: cannot decide which constant points exist");
        if (v == Verdict::yes) r.domain_infinite.push_back(i);
    }
    for (int j = 1; j <= t.p(); ++j) {
        Verdict v = is_infinite(t.set(j));
        if (v == Verdict::unknown)
            throw UnknownMembership("compute_pi: cannot decide which constant points exist");
        if (v == Verdict::yes) r.image_infinite.push_back(j);
    }
    std::set<int> image;
    for (int i : r.domain_infinite) {
        std::vector<int> window(static_cast<std::size_t>(phi.window_length()), i);
        int img = phi.evaluate(window);
        r.assignment[i] = img;
        image.insert(img);
    }
    r.image_matches = image == std::set<int>(r.image_infinite.begin(), r.image_infinite.end());
    return r;
}

struct VerifyParams {
    int word_len = 10;      // image-containment horizon
    int period_bound = 10;  // periodic-point horizon
    int core_len = 20;      // core-block induction horizon
};

struct ConjugacyEvidence {
    bool induction_ok = false;  // map output over core blocks equals the offset image
    bool image_ok = false;      // images of legal words are legal
    bool periodic_ok = false;   // periodic points map bijectively per period
    bool pi_ok = false;         // constant points map onto constant points

    bool all_passed() const { return induction_ok && image_ok && periodic_ok && pi_ok; }
};

// Desk-scale evidence that phi realizes a conjugacy.  Passing is evidence,
// not proof: the symbolic offset check is what guarantees conjugacy; these
// finite runs guard the implementation.
inline ConjugacyEvidence verify_conjugacy_evidence(const BlockMap& phi, const ShiftSpec& s,
                                                   const ShiftSpec& t,
                                                   const VerifyParams& params = {}) {
    ConjugacyEvidence ev;
    const int m = phi.memory, a = phi.anticipation;

    OffsetVector d;
    for (int i = 1; i <= s.p(); ++i)
        d.d.push_back(min_element(t.set(i)) - min_element(s.set(i)));
    Psi psi = build_psi(s, t, d);

    // Sample context words: repeat a short core block far enough to cut a
    // legal suffix of length `m` (respectively prefix of length `a`).
    int shortest = 0;
    for (int i = 1; i <= s.p(); ++i) shortest += min_element(s.set(i));
    std::vector<CoreBlock> samples = core_blocks_up_to(s, shortest + 2);
    if (samples.size() > 3) samples.resize(3);
    auto left_contexts = [&] {
        std::set<std::vector<int>> ctxs;
        for (const CoreBlock& g : samples) {
            std::vector<int> letters = g.word().letters();
            std::vector<int> rep;
            while (static_cast<int>(rep.size()) < m + 1)
                rep.insert(rep.end(), letters.begin(), letters.end());
            ctxs.insert(std::vector<int>(rep.end() - m, rep.end()));
        }
        return ctxs;
    }();
    auto right_contexts = [&] {
        std::set<std::vector<int>> ctxs;
        for (const CoreBlock& g : samples) {
            std::vector<int> letters = g.word().letters();
            std::vector<int> rep;
            while (static_cast<int>(rep.size()) < a + 1)
                rep.insert(rep.end(), letters.begin(), letters.end());
            ctxs.insert(std::vector<int>(rep.begin(), rep.begin() + a));
        }
        return ctxs;
    }();

    ev.induction_ok = true;
    for (const CoreBlock& z : core_blocks_up_to(s, params.core_len)) {
        RunWord expected = psi(z).word();
        for (const std::vector<int>& lc : left_contexts) {
            for (const std::vector<int>& rc : right_contexts) {
                std::vector<int> word = lc;
                std::vector<int> zl = z.word().letters();
                word.insert(word.end(), zl.begin(), zl.end());
                word.insert(word.end(), rc.begin(), rc.end());
                if (apply_block_map(phi, RunWord::from_letters(word)) != expected)
                    ev.induction_ok = false;
            }
        }
    }

    ev.image_ok = true;
    for (const RunWord& w : enumerate_words(s, params.word_len + m + a))
        if (!is_in_language(t, apply_block_map(phi, w))) ev.image_ok = false;

    ev.periodic_ok = true;
    for (int n = 1; n <= params.period_bound; ++n) {
        std::vector<std::vector<int>> source = periodic_strings(s, n);
        std::vector<std::vector<int>> target = periodic_strings(t, n);
        std::set<std::vector<int>> images;
        for (const std::vector<int>& x : source) {
            std::vector<int> y = apply_block_map_cyclic(phi, x);
            if (!is_periodic_string(t, y)) ev.periodic_ok = false;
            images.insert(y);
        }
        if (images.size() != source.size() || images.size() != target.size())
            ev.periodic_ok = false;
    }

    ev.pi_ok = compute_pi(phi, s, t).image_matches;
    return ev;
}

}  // namespace limshift
