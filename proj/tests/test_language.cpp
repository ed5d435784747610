#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "limshift/language.hpp"

using namespace limshift;

namespace {

ShiftSpec golden() {  // runs of 1 have length exactly 1, runs of 2 unconstrained
    return ShiftSpec(2, {SetSpec::finite({1}), SetSpec::cofinite({})}, Variant::ordered);
}
ShiftSpec even_runs() {  // runs of 2 must have even length
    return ShiftSpec(2, {SetSpec::cofinite({}), SetSpec::eventually_periodic({2}, {2})},
                     Variant::ordered);
}
ShiftSpec odd_runs() {  // all runs odd
    SetSpec odd = SetSpec::eventually_periodic({1}, {2});
    return ShiftSpec(2, {odd, odd}, Variant::ordered);
}
ShiftSpec all_nat2() {
    return ShiftSpec(2, {SetSpec::cofinite({}), SetSpec::cofinite({})}, Variant::ordered);
}
ShiftSpec all_nat3() {
    return ShiftSpec(3, {SetSpec::cofinite({}), SetSpec::cofinite({}), SetSpec::cofinite({})},
                     Variant::ordered);
}
ShiftSpec full2_generalized() {
    return ShiftSpec(2, {SetSpec::cofinite({}), SetSpec::cofinite({})}, Variant::generalized);
}

RunWord W(const std::string& digits) { return RunWord::parse(digits); }

// All length-n strings accepted by the membership rule, in lexicographic order.
std::vector<std::string> brute_words(const ShiftSpec& s, int n) {
    std::vector<std::string> out;
    std::vector<int> letters(static_cast<std::size_t>(n), 1);
    while (true) {
        RunWord w = RunWord::from_letters(letters);
        if (membership_verdict(s, w) == Verdict::yes) out.push_back(w.str());
        int i = n - 1;
        while (i >= 0 && letters[static_cast<std::size_t>(i)] == s.p()) {
            letters[static_cast<std::size_t>(i)] = 1;
            --i;
        }
        if (i < 0) break;
        ++letters[static_cast<std::size_t>(i)];
    }
    return out;
}

std::optional<std::string> brute_connector(const ShiftSpec& s, const RunWord& u, const RunWord& v,
                                           int n) {
    if (n == 0) return is_in_language(s, u + v) ? std::optional<std::string>("") : std::nullopt;
    std::vector<int> xi(static_cast<std::size_t>(n), 1);
    while (true) {
        RunWord mid = RunWord::from_letters(xi);
        if (membership_verdict(s, u + mid + v) == Verdict::yes) return mid.str();
        int i = n - 1;
        while (i >= 0 && xi[static_cast<std::size_t>(i)] == s.p()) {
            xi[static_cast<std::size_t>(i)] = 1;
            --i;
        }
        if (i < 0) return std::nullopt;
        ++xi[static_cast<std::size_t>(i)];
    }
}

std::set<std::vector<int>> brute_periodic(const ShiftSpec& s, int n) {
    std::set<std::vector<int>> out;
    std::vector<int> letters(static_cast<std::size_t>(n), 1);
    while (true) {
        if (is_periodic_string(s, letters)) out.insert(letters);
        int i = n - 1;
        while (i >= 0 && letters[static_cast<std::size_t>(i)] == s.p()) {
            letters[static_cast<std::size_t>(i)] = 1;
            --i;
        }
        if (i < 0) break;
        ++letters[static_cast<std::size_t>(i)];
    }
    return out;
}

}  // namespace

TEST_CASE("membership: run rules on known configurations") {
    ShiftSpec g = golden();
    CHECK(is_in_language(g, W("12")));
    CHECK(is_in_language(g, W("21")));
    CHECK(is_in_language(g, W("22")));
    CHECK(is_in_language(g, W("2212")));
    CHECK_FALSE(is_in_language(g, W("11")));   // interior/boundary run of 1s too long
    CHECK_FALSE(is_in_language(g, W("211")));  // last run 11 not extendable in {1}
    CHECK_FALSE(is_in_language(g, W("112")));

    ShiftSpec e = even_runs();
    CHECK(is_in_language(e, W("2")));     // boundary run: extendable to an even length
    CHECK(is_in_language(e, W("1221")));  // interior run 22 exact
    CHECK_FALSE(is_in_language(e, W("121")));  // interior run of one 2 is odd
    CHECK_FALSE(is_in_language(e, W("12221")));

    ShiftSpec f = full2_generalized();
    for (const std::string& w : {"11", "12", "21", "22", "121", "212"})
        CHECK(is_in_language(f, W(w)));

    // Ordered variant enforces the letter cycle 1 -> 2 -> 3 -> 1.
    ShiftSpec a3 = all_nat3();
    CHECK(is_in_language(a3, W("123")));
    CHECK(is_in_language(a3, W("312")));
    CHECK_FALSE(is_in_language(a3, W("13")));
    CHECK_FALSE(is_in_language(a3, W("132")));
    CHECK_FALSE(is_in_language(a3, W("21")));

    // Letters beyond the alphabet are rejected outright.
    CHECK_FALSE(is_in_language(g, W("13")));
}

TEST_CASE("membership: three-valued outcomes under declared bounds") {
    // Runs of 2 drawn from {2,3,5,7}, described only up to 10.
    ShiftSpec b(2, {SetSpec::cofinite({}), SetSpec::bounded({2, 3, 5, 7}, 10)}, Variant::ordered);
    CHECK(membership_verdict(b, W("1221")) == Verdict::yes);
    CHECK(membership_verdict(b, W("12221")) == Verdict::yes);
    CHECK(membership_verdict(b, W("122221")) == Verdict::no);  // 4 surely absent
    CHECK(membership_verdict(b, RunWord({{1, 1}, {2, 9}, {1, 1}})) == Verdict::no);
    CHECK(membership_verdict(b, RunWord({{1, 1}, {2, 11}, {1, 1}})) == Verdict::unknown);
    CHECK(membership_verdict(b, RunWord({{1, 1}, {2, 8}})) == Verdict::unknown);  // extendability
    CHECK(membership_verdict(b, RunWord({{1, 1}, {2, 6}})) == Verdict::yes);      // 7 >= 6
    CHECK_THROWS_AS(is_in_language(b, RunWord({{1, 1}, {2, 11}, {1, 1}})), UnknownMembership);
    CHECK_FALSE(is_in_language(b, W("122221")));  // definite no, no throw
}

TEST_CASE("count_words matches the Fibonacci law on the golden configuration") {
    ShiftSpec g = golden();
    std::vector<std::uint64_t> expected{2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377};
    for (int n = 1; n <= 12; ++n)
        CHECK(count_words(g, n) == expected[static_cast<std::size_t>(n - 1)]);
}

TEST_CASE("count_words and enumerate_words agree with brute force") {
    auto check = [](const ShiftSpec& s, int maxN) {
        for (int n = 1; n <= maxN; ++n) {
            std::vector<std::string> brute = brute_words(s, n);
            CHECK(count_words(s, n) == brute.size());
            std::vector<std::string> enumerated;
            for (const RunWord& w : enumerate_words(s, n)) enumerated.push_back(w.str());
            CHECK(enumerated == brute);
        }
    };
    check(golden(), 11);
    check(even_runs(), 11);
    check(odd_runs(), 11);
    check(all_nat2(), 11);
    check(all_nat3(), 8);
    check(full2_generalized(), 11);
    check(ShiftSpec(3,
                    {SetSpec::finite({1, 2}), SetSpec::cofinite({1}),
                     SetSpec::eventually_periodic({1, 4}, {2, 3})},
                    Variant::ordered),
          8);
    check(ShiftSpec(3,
                    {SetSpec::finite({1, 3}), SetSpec::cofinite({}), SetSpec::finite({2})},
                    Variant::generalized),
          8);

    // Full 2-letter generalized shift has every word.
    for (int n = 1; n <= 10; ++n)
        CHECK(count_words(full2_generalized(), n) == (std::uint64_t{1} << n));
}

TEST_CASE("enumerate_words order and caps") {
    std::vector<std::string> got;
    for (const RunWord& w : enumerate_words(golden(), 2)) got.push_back(w.str());
    CHECK(got == std::vector<std::string>{"12", "21", "22"});
    CHECK_THROWS_AS(enumerate_words(golden(), 25), CapExceeded);
    CHECK_THROWS_AS(enumerate_words(golden(), 5, 4), CapExceeded);
    CHECK_NOTHROW(enumerate_words(golden(), 5, 5));
}

TEST_CASE("languages are factor-closed") {
    for (const ShiftSpec& s : {golden(), even_runs(), all_nat3(), full2_generalized()}) {
        for (int n = 3; n <= 7; ++n) {
            for (const RunWord& w : enumerate_words(s, n)) {
                std::vector<int> ls = w.letters();
                std::vector<int> head(ls.begin(), ls.end() - 1), tail(ls.begin() + 1, ls.end());
                CHECK(is_in_language(s, RunWord::from_letters(head)));
                CHECK(is_in_language(s, RunWord::from_letters(tail)));
            }
        }
    }
}

TEST_CASE("core blocks up to a length bound") {
    ShiftSpec g = golden();
    auto blocks = core_blocks_up_to(g, 4);
    REQUIRE(blocks.size() == 3);
    CHECK(blocks[0].word().str() == "12");
    CHECK(blocks[1].word().str() == "122");
    CHECK(blocks[2].word().str() == "1222");
    CHECK(core_blocks_up_to(g, 1).empty());

    auto b3 = core_blocks_up_to(all_nat3(), 4);
    std::vector<std::string> words;
    for (const CoreBlock& b : b3) words.push_back(b.word().str());
    // Ordered by length, then exponent tuple: (1,1,1) < (1,1,2) < (1,2,1) < (2,1,1).
    CHECK(words == std::vector<std::string>{"123", "1233", "1223", "1123"});

    CHECK_THROWS_AS(core_blocks_up_to(full2_generalized(), 4), VariantMismatch);

    ShiftSpec bounded(2, {SetSpec::cofinite({}), SetSpec::bounded({2, 3}, 5)}, Variant::ordered);
    CHECK_NOTHROW(core_blocks_up_to(bounded, 6));  // letter 2 needs elements <= 5 only
    CHECK_THROWS_AS(core_blocks_up_to(bounded, 7), UnknownMembership);
}

TEST_CASE("length spectrum: frozen values and block cross-check") {
    ShiftSpec g = golden();
    CoreLengthSpectrum sp = length_spectrum(g, 8);
    REQUIRE(sp.counts.size() == 9);
    CHECK(sp.truncation == 8);
    CHECK(sp.counts[0] == 0);
    CHECK(sp.counts[1] == 0);
    for (int l = 2; l <= 8; ++l) CHECK(sp.counts[static_cast<std::size_t>(l)] == 1);

    CoreLengthSpectrum se = length_spectrum(even_runs(), 7);
    CHECK(se.counts[3] == 1);  // 1 22
    CHECK(se.counts[4] == 1);  // 11 22
    CHECK(se.counts[5] == 2);  // 111 22, 1 2222
    CHECK(se.counts[6] == 2);
    CHECK(se.counts[7] == 3);

    // Counts match grouping the explicit block list by length.
    for (const ShiftSpec& s : {golden(), even_runs(), all_nat2(), all_nat3()}) {
        const int L = 10;
        CoreLengthSpectrum spec = length_spectrum(s, L);
        std::vector<std::uint64_t> tally(static_cast<std::size_t>(L) + 1, 0);
        for (const CoreBlock& b : core_blocks_up_to(s, L)) ++tally[static_cast<std::size_t>(b.length())];
        CHECK(spec.counts == tally);
    }

    // Compositions bound: at most C(l-1, p-1) blocks of length l.
    CoreLengthSpectrum s3 = length_spectrum(all_nat3(), 12);
    for (int l = 0; l <= 12; ++l) {
        std::uint64_t bound = (l >= 2) ? static_cast<std::uint64_t>(l - 1) * (l - 2) / 2 : 0;
        CHECK(s3.counts[static_cast<std::size_t>(l)] <= std::max<std::uint64_t>(bound, 1));
    }
    CHECK_THROWS_AS(length_spectrum(full2_generalized(), 4), VariantMismatch);
}

TEST_CASE("periodic points: frozen values and brute cross-check") {
    ShiftSpec g = golden();
    std::vector<std::uint64_t> lucas{1, 3, 4, 7, 11, 18, 29, 47};
    for (int n = 1; n <= 8; ++n)
        CHECK(periodic_points(g, n) == lucas[static_cast<std::size_t>(n - 1)]);

    for (const ShiftSpec& s : {golden(), even_runs(), odd_runs(), all_nat2(), full2_generalized()}) {
        for (int n = 1; n <= 9; ++n) {
            std::set<std::vector<int>> brute = brute_periodic(s, n);
            CHECK(periodic_points(s, n) == brute.size());
            std::vector<std::vector<int>> listed = periodic_strings(s, n);
            CHECK(std::set<std::vector<int>>(listed.begin(), listed.end()) == brute);
        }
    }
    for (int n = 1; n <= 7; ++n) {
        std::set<std::vector<int>> brute = brute_periodic(all_nat3(), n);
        CHECK(periodic_points(all_nat3(), n) == brute.size());
    }

    // Full generalized 2-shift: every string is periodic.
    for (int n = 1; n <= 8; ++n)
        CHECK(periodic_points(full2_generalized(), n) == (std::uint64_t{1} << n));
}

TEST_CASE("periodic strings are rotation-closed and valid") {
    for (const ShiftSpec& s : {golden(), even_runs(), odd_runs()}) {
        for (int n = 2; n <= 8; ++n) {
            std::vector<std::vector<int>> listed = periodic_strings(s, n);
            std::set<std::vector<int>> all(listed.begin(), listed.end());
            for (const std::vector<int>& w : listed) {
                CHECK(is_periodic_string(s, w));
                CHECK(is_in_language(s, RunWord::from_letters(w)));
                std::vector<int> rot(w.size());
                for (std::size_t off = 1; off < w.size(); ++off) {
                    for (std::size_t t = 0; t < w.size(); ++t) rot[t] = w[(t + off) % w.size()];
                    CHECK(all.contains(rot));
                }
            }
        }
    }
    CHECK(is_periodic_string(golden(), {2, 2}));        // 2^inf valid, set infinite
    CHECK_FALSE(is_periodic_string(golden(), {1, 1}));  // 1^inf needs infinite {1}
    ShiftSpec b(2, {SetSpec::cofinite({}), SetSpec::bounded({2}, 9)}, Variant::ordered);
    CHECK_THROWS_AS(is_periodic_string(b, std::vector<int>{2, 2}), InfinitudeUnknown);
}

TEST_CASE("find_connector agrees with brute-force search") {
    struct Probe { ShiftSpec s; std::string u, v; };
    std::vector<Probe> probes{
        {golden(), "21", "12"},   {golden(), "2", "1"},      {golden(), "12", "21"},
        {even_runs(), "12", "21"}, {even_runs(), "122", "1"}, {odd_runs(), "21", "12"},
        {odd_runs(), "1", "1"},    {all_nat3(), "123", "23"}, {all_nat3(), "3", "1"},
        {full2_generalized(), "11", "22"},
    };
    for (const Probe& pr : probes) {
        for (int n = 0; n <= 7; ++n) {
            std::optional<std::string> expect = brute_connector(pr.s, W(pr.u), W(pr.v), n);
            std::optional<RunWord> got = find_connector(pr.s, W(pr.u), W(pr.v), n);
            REQUIRE(got.has_value() == expect.has_value());
            if (got) {
                CHECK(got->str() == *expect);  // lexicographically least
                CHECK(is_in_language(pr.s, W(pr.u) + *got + W(pr.v)));
            }
        }
    }
}

TEST_CASE("find_connector frozen cases and bound handling") {
    auto xi = find_connector(golden(), W("21"), W("12"), 1);
    REQUIRE(xi.has_value());
    CHECK(xi->str() == "2");

    // Odd-run configuration, interior runs pinned on both sides: the welded
    // word is 2 1^{...} 2 with every interior run odd and both cut 2-runs of
    // length exactly 1, so a connector exists only for odd gaps.
    for (int n = 0; n <= 8; ++n) {
        auto c = find_connector(odd_runs(), W("21"), W("12"), n);
        CHECK(c.has_value() == (n % 2 == 1));
    }

    CHECK_THROWS_AS(find_connector(golden(), W("21"), W("12"), 25), CapExceeded);
    CHECK_NOTHROW(find_connector(golden(), W("21"), W("12"), 25, 30));
    CHECK_THROWS_AS(find_connector(golden(), W("11"), W("12"), 1), WordNotInLanguage);

    // Runs of 2 known only as {1} up to bound 20: welding "2"+"2" is undetermined,
    // but a definite connector wins when one exists.
    ShiftSpec b(2, {SetSpec::cofinite({}), SetSpec::bounded({1}, 20)}, Variant::ordered);
    CHECK_THROWS_AS(find_connector(b, W("2"), W("2"), 0), UnknownMembership);
    auto via1 = find_connector(b, W("2"), W("2"), 1);
    REQUIRE(via1.has_value());
    CHECK(via1->str() == "1");
}

TEST_CASE("decompose: frozen factorizations and canonical choices") {
    ShiftSpec g = golden();
    auto render = [](const Decomposition& d) {
        std::vector<std::string> blocks;
        for (const CoreBlock& b : d.core_blocks) blocks.push_back(b.word().str());
        return std::make_tuple(d.prefix.str(), blocks, d.suffix.str());
    };

    CHECK(render(decompose(g, W("2212"))) ==
          std::make_tuple(std::string("22"), std::vector<std::string>{"12"}, std::string("")));
    CHECK(render(decompose(g, W("1221"))) ==
          std::make_tuple(std::string(""), std::vector<std::string>{"122"}, std::string("1")));
    CHECK(render(decompose(g, W("1212"))) ==
          std::make_tuple(std::string(""), std::vector<std::string>{"12", "12"}, std::string("")));
    // A single cut run is an ascending segment: empty prefix wins.
    CHECK(render(decompose(g, W("22"))) ==
          std::make_tuple(std::string(""), std::vector<std::string>{}, std::string("22")));
    CHECK(render(decompose(g, W("21"))) ==
          std::make_tuple(std::string("2"), std::vector<std::string>{}, std::string("1")));

    // Shortest prefix wins: "122" is a complete block, not prefix+nothing.
    CHECK(render(decompose(g, W("122"))) ==
          std::make_tuple(std::string(""), std::vector<std::string>{"122"}, std::string("")));
    // Longest block chain wins over pushing a block into the suffix.
    CHECK(render(decompose(all_nat2(), W("12"))) ==
          std::make_tuple(std::string(""), std::vector<std::string>{"12"}, std::string("")));

    CHECK_THROWS_AS(decompose(g, W("11")), WordNotInLanguage);
    CHECK_THROWS_AS(decompose(full2_generalized(), W("12")), VariantMismatch);
}

TEST_CASE("decompose: validity across enumerated words") {
    for (const ShiftSpec& s : {golden(), even_runs(), all_nat2()}) {
        for (int n = 1; n <= 10; ++n) {
            for (const RunWord& w : enumerate_words(s, n)) {
                Decomposition d = decompose(s, w);
                RunWord rebuilt = d.prefix + d.core() + d.suffix;
                CHECK(rebuilt == w);
                if (!d.prefix.empty()) CHECK(in_prefix_boundary(s, d.prefix));
                if (!d.suffix.empty()) CHECK(in_suffix_boundary(s, d.suffix));
                for (const CoreBlock& b : d.core_blocks) {
                    REQUIRE(static_cast<int>(b.exponents.size()) == s.p());
                    for (int i = 1; i <= s.p(); ++i)
                        CHECK(contains(s.set(i), b.exponents[static_cast<std::size_t>(i - 1)]) ==
                              Verdict::yes);
                }
            }
        }
    }
    for (int n = 1; n <= 8; ++n) {
        for (const RunWord& w : enumerate_words(all_nat3(), n)) {
            Decomposition d = decompose(all_nat3(), w);
            CHECK(d.prefix + d.core() + d.suffix == w);
            if (!d.prefix.empty()) CHECK(in_prefix_boundary(all_nat3(), d.prefix));
            if (!d.suffix.empty()) CHECK(in_suffix_boundary(all_nat3(), d.suffix));
        }
    }
}

TEST_CASE("decompose: cut factors of a single block ride in the suffix class") {
    ShiftSpec s(2, {SetSpec::finite({5}), SetSpec::finite({7})}, Variant::ordered);
    RunWord w({{1, 2}, {2, 3}});  // interior cut of 1^5 2^7 on both sides
    REQUIRE(is_in_language(s, w));
    Decomposition d = decompose(s, w);
    CHECK(d.prefix.empty());
    CHECK(d.core_blocks.empty());
    CHECK(d.suffix == w);
    CHECK(in_suffix_boundary(s, w));
    CHECK_FALSE(in_prefix_boundary(s, w));  // 2-run is cut, not an exact block tail

    // Pure interior-letter words of a 3-letter shift are the same phenomenon.
    CHECK(in_suffix_boundary(all_nat3(), W("222")));
    Decomposition d3 = decompose(all_nat3(), W("222"));
    CHECK(d3.prefix.empty());
    CHECK(d3.suffix == W("222"));
}

TEST_CASE("boundary classes: predicates match counters") {
    for (const ShiftSpec& s : {golden(), even_runs(), all_nat2(), all_nat3()}) {
        for (int n = 1; n <= 8; ++n) {
            std::uint64_t np = 0, ns = 0;
            std::vector<int> letters(static_cast<std::size_t>(n), 1);
            while (true) {
                RunWord w = RunWord::from_letters(letters);
                if (in_prefix_boundary(s, w)) {
                    ++np;
                    CHECK(is_in_language(s, w));  // boundary classes sit inside the language
                }
                if (in_suffix_boundary(s, w)) {
                    ++ns;
                    CHECK(is_in_language(s, w));
                }
                int i = n - 1;
                while (i >= 0 && letters[static_cast<std::size_t>(i)] == s.p()) {
                    letters[static_cast<std::size_t>(i)] = 1;
                    --i;
                }
                if (i < 0) break;
                ++letters[static_cast<std::size_t>(i)];
            }
            CHECK(count_prefix_boundary_words(s, n) == np);
            CHECK(count_suffix_boundary_words(s, n) == ns);
        }
    }
    CHECK_THROWS_AS(in_prefix_boundary(full2_generalized(), W("12")), VariantMismatch);
    CHECK_THROWS_AS(count_suffix_boundary_words(full2_generalized(), 3), VariantMismatch);
}

TEST_CASE("boundary counters on the full 2-letter configuration") {
    ShiftSpec s = all_nat2();
    for (int n = 1; n <= 30; ++n) {
        CHECK(count_prefix_boundary_words(s, n) == static_cast<std::uint64_t>(n));
        // 1^n, 2^n, and the n-1 mixed segments 1^a 2^b: the suffix class also
        // carries the pure middle pieces, hence one more than the prefix class.
        CHECK(count_suffix_boundary_words(s, n) == static_cast<std::uint64_t>(n) + 1);
    }
}
