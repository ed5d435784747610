#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "limshift/specfile.hpp"

using namespace limshift;

namespace {

SpecDocument golden_doc() {
    SpecDocument d;
    d.alphabet = 2;
    d.variant = Variant::ordered;
    d.sets = {SetSpec::finite({1}), SetSpec::cofinite({})};
    return d;
}

}  // namespace

TEST_CASE("parse the minimal two-letter document") {
    SpecDocument doc = parse_spec(
        "alphabet: 2\n"
        "variant: ordered\n"
        "S1: finite 1\n"
        "S2: cofinite []\n");
    CHECK(doc == golden_doc());
    CHECK_FALSE(doc.name.has_value());
    CHECK(doc.shift() ==
          ShiftSpec(2, {SetSpec::finite({1}), SetSpec::cofinite({})}, Variant::ordered));
}

TEST_CASE("alphabet and variant lines may be omitted") {
    // The alphabet is then the highest clause index; the variant is ordered.
    SpecDocument doc = parse_spec(
        "S1: cofinite []\n"
        "S2: epd initial=2 diffs=2\n"
        "S3: finite 3 5\n");
    CHECK(doc.alphabet == 3);
    CHECK(doc.variant == Variant::ordered);
    CHECK(doc.sets == std::vector<SetSpec>{SetSpec::cofinite({}),
                                           SetSpec::eventually_periodic({2}, {2}),
                                           SetSpec::finite({3, 5})});
}

TEST_CASE("comments, names, blank lines, and CRLF endings") {
    SpecDocument doc = parse_spec(
        "# run sets for the golden mean shift\n"
        "name: golden mean\n"
        "\n"
        "alphabet: 2 # two letters\n"
        "variant: ordered\r\n"
        "S1: finite 1\n"
        "S2: cofinite []");  // no trailing newline
    CHECK(doc.name == "golden mean");
    CHECK(doc.alphabet == 2);
    CHECK(doc.sets[0] == SetSpec::finite({1}));
    CHECK(doc.sets[1] == SetSpec::cofinite({}));
}

TEST_CASE("every clause kind parses") {
    SpecDocument doc = parse_spec(
        "alphabet: 4\n"
        "variant: generalized\n"
        "S1: epd initial=1,2,5 diffs=2,3\n"
        "S2: explicit 2 3 5 7 bound=10\n"
        "S3: cofinite [ 1 4 ]\n"
        "S4: finite 2 4 8\n");
    CHECK(doc.variant == Variant::generalized);
    CHECK(doc.sets[0] == SetSpec::eventually_periodic({1, 2, 5}, {2, 3}));
    CHECK(doc.sets[1] == SetSpec::bounded({2, 3, 5, 7}, 10));
    CHECK(doc.sets[2] == SetSpec::cofinite({1, 4}));
    CHECK(doc.sets[3] == SetSpec::finite({2, 4, 8}));
}

TEST_CASE("semantic rejections") {
    CHECK_THROWS_AS(parse_spec("S1: finite 3 1\nS2: cofinite []\n"), SemanticError);
    CHECK_THROWS_AS(parse_spec("S1: explicit 5 bound=3\nS2: cofinite []\n"), SemanticError);
    CHECK_THROWS_AS(parse_spec("S1: finite 1\nS1: finite 2\nS2: cofinite []\n"), SemanticError);
    CHECK_THROWS_AS(parse_spec("alphabet: 3\nS1: finite 1\nS2: cofinite []\n"), SemanticError);
    CHECK_THROWS_AS(parse_spec("alphabet: 1\nS1: finite 1\n"), SemanticError);
    CHECK_THROWS_AS(parse_spec("alphabet: 2\nalphabet: 2\nS1: finite 1\nS2: cofinite []\n"),
                    SemanticError);
    CHECK_THROWS_AS(parse_spec("alphabet: 2\nS1: finite 1\nS2: cofinite []\nS3: finite 1\n"),
                    SemanticError);
    CHECK_THROWS_AS(parse_spec("# only a comment\n"), SemanticError);
    CHECK_THROWS_AS(parse_spec("S1: finite 1\n"), SemanticError);  // inferred alphabet of one
}

TEST_CASE("parse errors carry line and column") {
    auto check_pos = [](const std::string& text, int line, int column) {
        try {
            parse_spec(text);
            FAIL("expected a parse error for: " << text);
        } catch (const ParseError& e) {
            CHECK(e.line == line);
            CHECK(e.column == column);
        }
    };
    check_pos("alphabet: x\n", 1, 11);
    check_pos("alphabet: 2\nvariant: diagonal\n", 2, 10);
    check_pos("S1: blah 1\n", 1, 5);
    check_pos("foo: 1\n", 1, 1);
    check_pos("S1: epd initial=2\n", 1, 5);
    check_pos("S1: cofinite 1 2\n", 1, 14);
    check_pos("alphabet: 2\nvariant: ordered\nS1: finite one\n", 3, 12);
    check_pos("name:\n", 1, 1);
    check_pos("S1: finite 1\nS2: explicit 2 3\n", 2, 5);
}

TEST_CASE("rendering is the inverse of parsing") {
    std::vector<SpecDocument> docs;
    docs.push_back(golden_doc());
    SpecDocument named = golden_doc();
    named.name = "golden mean";
    docs.push_back(named);
    SpecDocument ex51;
    ex51.alphabet = 3;
    ex51.sets = {SetSpec::cofinite({}), SetSpec::eventually_periodic({2}, {2}),
                 SetSpec::finite({3, 5})};
    docs.push_back(ex51);
    SpecDocument primes;
    primes.alphabet = 2;
    primes.sets = {SetSpec::cofinite({}), SetSpec::bounded({2, 3, 5, 7, 11, 13}, 16)};
    docs.push_back(primes);
    SpecDocument full2;
    full2.alphabet = 2;
    full2.variant = Variant::generalized;
    full2.sets = {SetSpec::cofinite({1}), SetSpec::eventually_periodic({1, 2, 5}, {2, 3})};
    docs.push_back(full2);

    for (const SpecDocument& doc : docs) {
        std::string text = render_spec(doc);
        CHECK(parse_spec(text) == doc);
        CHECK(render_spec(parse_spec(text)) == text);
    }

    CHECK(render_spec(golden_doc()) ==
          "alphabet: 2\n"
          "variant: ordered\n"
          "S1: finite 1\n"
          "S2: cofinite []\n");

    SpecDocument broken = golden_doc();
    broken.sets.pop_back();
    CHECK_THROWS_AS(render_spec(broken), SemanticError);
}
