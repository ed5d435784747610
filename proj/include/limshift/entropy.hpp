#pragma once

// Certified topological entropy.  The growth rate of the language is
// ln(1/lambda) where lambda is the unique root in (0,1) of the core-block
// generating function F_1(x) = sum over core blocks of x^|block| = 1; this
// header brackets that root with verified partial sums plus closed-form tail
// bounds, and provides truncation (finite-type lower bound) and empirical
// estimators.

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "limshift/language.hpp"

namespace limshift {

struct GenfunBounds {
    double lower = 0.0;  // certified F_1(x) >= lower
    double upper = 0.0;  // certified F_1(x) <= upper (may be +infinity)
};

struct EntropyResult {
    double value = 0.0;      // natural-log entropy, = -ln(lambda)
    double lambda = 1.0;     // certified root location (geometric bracket mean)
    double tolerance = 0.0;  // requested absolute error on value
    int truncation_l = 0;    // generating-function truncation that closed the bracket
    // Certified F_1 values proving the bracket: first <= 1 at the left end of
    // the final root bracket, second >= 1 at the right end.
    std::pair<double, double> certificate{0.0, 0.0};
};

namespace detail {

inline void require_exact_entropy_inputs(const ShiftSpec& s, const char* who) {
    if (s.variant() != Variant::ordered)
        throw VariantMismatch(std::string(who) +
                              ": the generating function is built from core blocks "
                              "(ordered variant only)");
    for (int i = 1; i <= s.p(); ++i)
        if (s.set(i).kind() == SetKind::bounded_explicit)
            throw UnknownMembership(std::string(who) +
                                    ": an explicit bounded set leaves the block-length tail "
                                    "undetermined; truncate first to get a lower bound");
}

// Partial sum of F_1 at x over lengths <= truncation, plus a closed-form
// bound on the discarded tail.  The tail uses the composition bound
// c_l <= C(l-1, p-1): past L the term ratio is at most x*(L+1)/(L+2-p), so
// the tail is dominated by a geometric series (or by the full series
// (x/(1-x))^p when the truncation has not yet reached length p).
struct GenfunEval {
    long double partial = 0.0L;
    long double tail = 0.0L;
};

// When every run-length set is finite, F_1 is a polynomial whose degree is
// the sum of the maximal run lengths; past that degree the tail is zero.
inline int exact_genfun_degree(const ShiftSpec& s) {
    int degree = 0;
    for (int i = 1; i <= s.p(); ++i) {
        const SetSpec& t = s.set(i);
        if (t.kind() != SetKind::finite) return -1;
        degree += t.elements().back();
    }
    return degree;
}

inline GenfunEval genfun_eval(const CoreLengthSpectrum& cs, int p, long double x,
                              int exact_degree) {
    const int l_max = cs.truncation;
    GenfunEval out;
    long double xl = 1.0L;
    for (int l = 1; l <= l_max; ++l) {
        xl *= x;
        std::uint64_t c = cs.counts[static_cast<std::size_t>(l)];
        if (c) out.partial += static_cast<long double>(c) * xl;
    }
    if (exact_degree >= 0 && l_max >= exact_degree) return out;  // polynomial fully summed
    if (l_max + 1 <= p) {
        out.tail = std::pow(x / (1.0L - x), static_cast<long double>(p));
        return out;
    }
    long double q = static_cast<long double>(l_max + 1) / static_cast<long double>(l_max + 2 - p);
    if (q * x >= 1.0L) {
        out.tail = std::numeric_limits<long double>::infinity();
        return out;
    }
    long double binom = 1.0L;  // C(l_max, p-1)
    for (int k = 1; k <= p - 1; ++k)
        binom *= static_cast<long double>(l_max + 1 - k) / static_cast<long double>(k);
    out.tail = binom * xl * x / (1.0L - q * x);
    return out;
}

constexpr long double kGenfunNudge = 1e-12L;  // outward rounding allowance

}  // namespace detail

inline GenfunBounds genfun_bounds(const ShiftSpec& s, double x, int L) {
    detail::require_exact_entropy_inputs(s, "genfun_bounds");
    if (!(x > 0.0 && x < 1.0)) throw SemanticError("genfun_bounds: x must lie in (0, 1)");
    if (L < 1) throw SemanticError("genfun_bounds: truncation must be >= 1");
    CoreLengthSpectrum cs = length_spectrum(s, L);
    detail::GenfunEval e = detail::genfun_eval(cs, s.p(), static_cast<long double>(x),
                                               detail::exact_genfun_degree(s));
    return {static_cast<double>(e.partial * (1.0L - detail::kGenfunNudge)),
            static_cast<double>((e.partial + e.tail) * (1.0L + detail::kGenfunNudge))};
}

// Certified bisection for the root of F_1(x) = 1.  Bracket ends are only
// moved on conclusive bound comparisons; when a midpoint sits too close to
// the root for the truncated bounds to decide, either the truncation grows
// or a mean-value clamp (|x - root| <= |F_1(x) - 1| / F_1'(witness)) shrinks
// the bracket directly.  Every core-block generating function satisfies
// F_1(x) <= (x/(1-x))^p, so the root is never below 1/2 and the derivative
// witness at max(bracket left end, midpoint/2) stays below the root.
inline EntropyResult solve_entropy(const ShiftSpec& s, double tol) {
    detail::require_exact_entropy_inputs(s, "solve_entropy");
    if (!(tol > 0.0)) throw SemanticError("solve_entropy: tolerance must be positive");
    const int p = s.p();

    bool single_block = true;
    int block_len = 0;
    for (int i = 1; i <= p; ++i) {
        const SetSpec& t = s.set(i);
        if (t.kind() == SetKind::finite && t.elements().size() == 1)
            block_len += t.elements()[0];
        else
            single_block = false;
    }
    if (single_block)  // one periodic orbit; F_1(1) = 1 exactly and h = 0
        return {0.0, 1.0, tol, block_len, {1.0, 1.0}};

    const long double nudge = detail::kGenfunNudge;
    const long double tol_l = static_cast<long double>(tol);
    const int exact_degree = detail::exact_genfun_degree(s);
    int L = 16;
    if (exact_degree >= 0) L = std::max(L, exact_degree);  // polynomial: sum it all at once
    CoreLengthSpectrum cs = length_spectrum(s, L);
    auto grow = [&] {
        if (L >= (1 << 14))
            throw ConvergenceFailure("solve_entropy: truncation exhausted before bracket closed");
        L *= 2;
        cs = length_spectrum(s, L);
    };

    long double lo = 0.0L, hi = 1.0L;
    // Defaults are honest outer statements: F_1 vanishes at 0+, and with at
    // least two core blocks F_1 reaches 2 before x = 1.
    double cert_below = 0.0, cert_above = 2.0;

    for (int iter = 0; iter < 20000; ++iter) {
        if (lo > 0.0L && std::log(hi) - std::log(lo) <= 2.0L * tol_l) {
            long double lambda = std::sqrt(lo * hi);
            return {static_cast<double>(-std::log(lambda)), static_cast<double>(lambda), tol, L,
                    {cert_below, cert_above}};
        }
        long double mid = 0.5L * (lo + hi);
        detail::GenfunEval e = detail::genfun_eval(cs, p, mid, exact_degree);
        long double lower = e.partial * (1.0L - nudge);
        long double upper = (e.partial + e.tail) * (1.0L + nudge);
        if (upper < 1.0L) {
            lo = mid;
            cert_below = static_cast<double>(upper);
        } else if (lower > 1.0L) {
            hi = mid;
            cert_above = static_cast<double>(lower);
        } else if (e.tail * (1.0L + nudge) >= tol_l / 4.0L) {
            grow();
        } else {
            // Inconclusive with a tiny tail: the midpoint is within
            // (upper - lower) of F-value 1, so the mean-value theorem pins
            // the root to mid +- (upper - lower) / F_1'(x0) for any witness
            // x0 below both mid and the root.
            long double x0 = std::max(lo, 0.5L * mid);
            long double deriv = 0.0L, xpow = 1.0L;  // xpow tracks x0^(l-1)
            for (int l = 1; l <= L; ++l) {
                std::uint64_t c = cs.counts[static_cast<std::size_t>(l)];
                if (c) deriv += static_cast<long double>(l) * static_cast<long double>(c) * xpow;
                xpow *= x0;
            }
            deriv *= (1.0L - nudge);
            long double width = hi - lo;
            if (deriv > 0.0L) {
                long double delta = (upper - lower) / deriv;
                lo = std::max(lo, mid - delta);
                hi = std::min(hi, mid + delta);
            }
            if (hi - lo > 0.99L * width) grow();  // clamp stalled; sharpen the tail
        }
    }
    throw ConvergenceFailure("solve_entropy: bisection failed to close the bracket");
}

// Finite-type inner approximation: keep only the first min(n, available)
// run lengths of every letter.  The result's language is contained in the
// original one, so its entropy is a lower bound (and converges upward as n
// grows).  For an explicit bounded set the listed elements are its known
// members, which is exactly the certified part.
inline ShiftSpec truncated_shift(const ShiftSpec& s, int n) {
    if (s.variant() != Variant::ordered)
        throw VariantMismatch("truncated_shift: defined for the ordered variant");
    if (n < 1) throw SemanticError("truncated_shift: n must be >= 1");
    std::vector<SetSpec> sets;
    sets.reserve(static_cast<std::size_t>(s.p()));
    for (int i = 1; i <= s.p(); ++i) {
        const SetSpec& t = s.set(i);
        std::vector<int> first;
        if (t.kind() == SetKind::finite || t.kind() == SetKind::bounded_explicit) {
            const std::vector<int>& e = t.elements();
            first.assign(e.begin(),
                         e.begin() + std::min<std::ptrdiff_t>(n, static_cast<std::ptrdiff_t>(
                                                                     e.size())));
        } else {
            for (int m = 1; m <= n; ++m) first.push_back(nth_element(t, m));
        }
        sets.push_back(SetSpec::finite(std::move(first)));
    }
    return ShiftSpec(s.p(), std::move(sets), s.variant());
}

inline double empirical_entropy(const ShiftSpec& s, int n) {
    if (n < 1) throw SemanticError("empirical_entropy: n must be >= 1");
    return std::log(static_cast<double>(count_words(s, n))) / static_cast<double>(n);
}

}  // namespace limshift
