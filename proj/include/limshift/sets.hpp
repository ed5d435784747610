#pragma once

// Declarative subsets of the positive integers used as run-length sets.
// Four encodings: finite lists, cofinite sets (everything minus a finite
// exclusion list), eventually periodic difference sequences, and explicitly
// listed elements with a declared knowledge bound (membership past the bound
// is unknown, not false).

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "limshift/error.hpp"

namespace limshift {

enum class Verdict { yes, no, unknown };

enum class SetKind { finite, cofinite, eventually_periodic, bounded_explicit };

enum class SetClass { finite, cofinite, eventually_periodic_delta, unknown };

namespace detail {
inline void require_increasing_positive(const std::vector<int>& xs, const char* what) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] < 1) throw SemanticError(std::string(what) + ": entries must be >= 1");
        if (i > 0 && xs[i] <= xs[i - 1])
            throw SemanticError(std::string(what) + ": entries must be strictly increasing");
    }
}
}  // namespace detail

class SetSpec {
  public:
    static SetSpec finite(std::vector<int> elements) {
        if (elements.empty()) throw SemanticError("finite set: needs at least one element");
        detail::require_increasing_positive(elements, "finite set");
        SetSpec s;
        s.kind_ = SetKind::finite;
        s.elements_ = std::move(elements);
        return s;
    }

    // Empty exclusion list encodes the whole of {1, 2, 3, ...}.
    static SetSpec cofinite(std::vector<int> excluded) {
        detail::require_increasing_positive(excluded, "cofinite set");
        SetSpec s;
        s.kind_ = SetKind::cofinite;
        s.excluded_ = std::move(excluded);
        return s;
    }

    // Elements are `initial`, then repeatedly extended by cycling `diffs`.
    static SetSpec eventually_periodic(std::vector<int> initial, std::vector<int> diffs) {
        if (initial.empty()) throw SemanticError("epd set: needs at least one initial element");
        if (diffs.empty()) throw SemanticError("epd set: needs at least one period diff");
        detail::require_increasing_positive(initial, "epd set initial");
        for (int d : diffs)
            if (d < 1) throw SemanticError("epd set: period diffs must be >= 1");
        SetSpec s;
        s.kind_ = SetKind::eventually_periodic;
        s.elements_ = std::move(initial);
        s.period_ = std::move(diffs);
        return s;
    }

    // Membership is decided up to `bound` by the list; unknown beyond it.
    static SetSpec bounded(std::vector<int> elements, int bound) {
        if (elements.empty()) throw SemanticError("explicit set: needs at least one element");
        detail::require_increasing_positive(elements, "explicit set");
        if (bound < elements.back())
            throw SemanticError("explicit set: bound must cover every listed element");
        SetSpec s;
        s.kind_ = SetKind::bounded_explicit;
        s.elements_ = std::move(elements);
        s.bound_ = bound;
        return s;
    }

    SetKind kind() const { return kind_; }
    const std::vector<int>& elements() const { return elements_; }  // finite/epd-initial/listed
    const std::vector<int>& excluded() const { return excluded_; }  // cofinite only
    const std::vector<int>& period_diffs() const { return period_; }  // epd only
    int bound() const { return bound_; }

    bool operator==(const SetSpec& o) const = default;

  private:
    SetSpec() = default;
    SetKind kind_ = SetKind::finite;
    std::vector<int> elements_;
    std::vector<int> excluded_;
    std::vector<int> period_;
    int bound_ = 0;
};

// Minimum element plus consecutive first differences; the eventual period is
// absent when the difference sequence never cycles (finite sets) or when the
// tail is not declared (bounded-explicit sets).
struct DeltaSequence {
    std::vector<int> head;
    std::optional<std::vector<int>> eventual_period;

    bool operator==(const DeltaSequence& o) const = default;
};

inline int min_element(const SetSpec& s) {
    switch (s.kind()) {
        case SetKind::finite:
        case SetKind::eventually_periodic:
        case SetKind::bounded_explicit:
            return s.elements().front();
        case SetKind::cofinite: {
            int n = 1;
            for (int e : s.excluded()) {
                if (e == n) ++n;
                else if (e > n) break;
            }
            return n;
        }
    }
    return 1;  // unreachable
}

inline Verdict contains(const SetSpec& s, int n) {
    if (n < 1) return Verdict::no;
    switch (s.kind()) {
        case SetKind::finite:
            return std::binary_search(s.elements().begin(), s.elements().end(), n)
                       ? Verdict::yes : Verdict::no;
        case SetKind::cofinite:
            return std::binary_search(s.excluded().begin(), s.excluded().end(), n)
                       ? Verdict::no : Verdict::yes;
        case SetKind::bounded_explicit:
            if (n > s.bound()) return Verdict::unknown;
            return std::binary_search(s.elements().begin(), s.elements().end(), n)
                       ? Verdict::yes : Verdict::no;
        case SetKind::eventually_periodic: {
            const auto& init = s.elements();
            if (n <= init.back())
                return std::binary_search(init.begin(), init.end(), n) ? Verdict::yes : Verdict::no;
            // Beyond the initial part the gaps cycle; reduce modulo one span.
            const auto& d = s.period_diffs();
            long long span = 0;
            for (int x : d) span += x;
            long long q = n - init.back();
            long long r = q % span;
            if (r == 0) return Verdict::yes;  // q is a whole number of spans
            long long partial = 0;
            for (std::size_t i = 0; i + 1 < d.size(); ++i) {
                partial += d[i];
                if (partial == r) return Verdict::yes;
                if (partial > r) break;
            }
            return Verdict::no;
        }
    }
    return Verdict::no;  // unreachable
}

// Is there an element >= n?  (Run extendability at word boundaries.)
inline Verdict has_element_geq(const SetSpec& s, int n) {
    switch (s.kind()) {
        case SetKind::finite:
            return s.elements().back() >= n ? Verdict::yes : Verdict::no;
        case SetKind::cofinite:
        case SetKind::eventually_periodic:
            return Verdict::yes;  // infinite
        case SetKind::bounded_explicit:
            return s.elements().back() >= n ? Verdict::yes : Verdict::unknown;
    }
    return Verdict::no;  // unreachable
}

inline Verdict is_infinite(const SetSpec& s) {
    switch (s.kind()) {
        case SetKind::finite: return Verdict::no;
        case SetKind::cofinite:
        case SetKind::eventually_periodic: return Verdict::yes;
        case SetKind::bounded_explicit: return Verdict::unknown;
    }
    return Verdict::no;  // unreachable
}

// All elements <= limit, ascending.  BoundedExplicit refuses to look past its
// declared bound.
inline std::vector<int> enumerate_up_to(const SetSpec& s, int limit) {
    std::vector<int> out;
    if (limit < 1) {
        if (s.kind() == SetKind::bounded_explicit && limit > s.bound())
            throw BoundBreached("enumerate_up_to: limit exceeds declared bound");
        return out;
    }
    switch (s.kind()) {
        case SetKind::finite:
            for (int e : s.elements())
                if (e <= limit) out.push_back(e);
            break;
        case SetKind::bounded_explicit:
            if (limit > s.bound())
                throw BoundBreached("enumerate_up_to: limit exceeds declared bound");
            for (int e : s.elements())
                if (e <= limit) out.push_back(e);
            break;
        case SetKind::cofinite: {
            std::size_t j = 0;
            for (int n = 1; n <= limit; ++n) {
                while (j < s.excluded().size() && s.excluded()[j] < n) ++j;
                if (j < s.excluded().size() && s.excluded()[j] == n) continue;
                out.push_back(n);
            }
            break;
        }
        case SetKind::eventually_periodic: {
            for (int e : s.elements())
                if (e <= limit) out.push_back(e);
            long long v = s.elements().back();
            std::size_t i = 0;
            const auto& d = s.period_diffs();
            while (true) {
                v += d[i % d.size()];
                ++i;
                if (v > limit) break;
                out.push_back(static_cast<int>(v));
            }
            break;
        }
    }
    return out;
}

// 1-based m-th smallest element.  For bounded-explicit sets only the listed
// elements are indexable; the true set may extend further, so running off the
// list is IndexBeyondSet rather than a made-up value.
inline int nth_element(const SetSpec& s, int m) {
    if (m < 1) throw IndexBeyondSet("nth_element: index must be >= 1");
    switch (s.kind()) {
        case SetKind::finite:
        case SetKind::bounded_explicit:
            if (static_cast<std::size_t>(m) > s.elements().size())
                throw IndexBeyondSet("nth_element: index past the end of the set");
            return s.elements()[m - 1];
        case SetKind::cofinite: {
            int r = m;
            for (int e : s.excluded()) {
                if (e <= r) ++r;
                else break;
            }
            return r;
        }
        case SetKind::eventually_periodic: {
            const auto& init = s.elements();
            if (static_cast<std::size_t>(m) <= init.size()) return init[m - 1];
            const auto& d = s.period_diffs();
            long long span = 0;
            for (int x : d) span += x;
            long long q = m - static_cast<long long>(init.size());
            long long cycles = q / static_cast<long long>(d.size());
            long long rem = q % static_cast<long long>(d.size());
            long long v = init.back() + cycles * span;
            for (long long i = 0; i < rem; ++i) v += d[static_cast<std::size_t>(i)];
            return static_cast<int>(v);
        }
    }
    throw IndexBeyondSet("nth_element: unreachable");
}

inline DeltaSequence delta_sequence(const SetSpec& s) {
    DeltaSequence ds;
    auto push_diffs = [&ds](const std::vector<int>& xs) {
        ds.head.push_back(xs.front());
        for (std::size_t i = 1; i < xs.size(); ++i) ds.head.push_back(xs[i] - xs[i - 1]);
    };
    switch (s.kind()) {
        case SetKind::finite:
        case SetKind::bounded_explicit:
            push_diffs(s.elements());
            break;
        case SetKind::eventually_periodic:
            push_diffs(s.elements());
            ds.eventual_period = s.period_diffs();
            break;
        case SetKind::cofinite: {
            // Head covers every member up to one past the last excluded value;
            // from there on the gaps are all 1.
            int horizon = s.excluded().empty() ? 1 : s.excluded().back() + 1;
            push_diffs(enumerate_up_to(s, horizon));
            ds.eventual_period = std::vector<int>{1};
            break;
        }
    }
    return ds;
}

// Reports the declared encoding; semantic coincidences (an eventually periodic
// set that happens to be cofinite) are the classifier module's business.
inline SetClass classify_set(const SetSpec& s) {
    switch (s.kind()) {
        case SetKind::finite: return SetClass::finite;
        case SetKind::cofinite: return SetClass::cofinite;
        case SetKind::eventually_periodic: return SetClass::eventually_periodic_delta;
        case SetKind::bounded_explicit: return SetClass::unknown;
    }
    return SetClass::unknown;  // unreachable
}

// Last "irregular" element: beyond it the membership pattern is periodic.
// Used by stabilization bounds and the follower-state collapse.
inline int head_horizon(const SetSpec& s) {
    switch (s.kind()) {
        case SetKind::finite:
        case SetKind::bounded_explicit:
            return s.elements().back();
        case SetKind::cofinite:
            return s.excluded().empty() ? 1 : s.excluded().back() + 1;
        case SetKind::eventually_periodic:
            return s.elements().back();
    }
    return 1;  // unreachable
}

// Length of one period of the membership pattern past head_horizon (0 when the
// set has no periodic tail).
inline int period_span(const SetSpec& s) {
    switch (s.kind()) {
        case SetKind::finite:
        case SetKind::bounded_explicit:
            return 0;
        case SetKind::cofinite:
            return 1;
        case SetKind::eventually_periodic: {
            int span = 0;
            for (int d : s.period_diffs()) span += d;
            return span;
        }
    }
    return 0;  // unreachable
}

}  // namespace limshift
