#pragma once

// Line-oriented text format for shift specifications and its canonical
// pretty-printer.  Parsing the rendered form reproduces the document.
//
//   # comment
//   name: optional free text
//   alphabet: 3
//   variant: ordered
//   S1: cofinite []
//   S2: epd initial=2 diffs=2
//   S3: finite 3 5
//
// Set clauses: `finite <n...>`, `cofinite [<n...>]` (empty list means all of
// {1,2,3,...}), `epd initial=<n,...> diffs=<d,...>`, and
// `explicit <n...> bound=<B>` for lists only known up to a bound.

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "limshift/shift.hpp"

namespace limshift {

struct SpecDocument {
    std::optional<std::string> name;
    int alphabet = 2;
    Variant variant = Variant::ordered;
    std::vector<SetSpec> sets;  // sets[i - 1] constrains the runs of letter i

    ShiftSpec shift() const { return ShiftSpec(alphabet, sets, variant); }

    bool operator==(const SpecDocument&) const = default;
};

namespace detail {

struct SpecToken {
    std::string text;
    int column = 1;  // 1-based start position in the line
};

inline std::vector<SpecToken> spec_tokens(const std::string& line) {
    std::vector<SpecToken> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
        i = j;
    }
    return out;
}

inline int spec_int(const std::string& text, int line, int column) {
    if (text.empty()) throw ParseError(line, column, "expected an integer");
    for (char c : text)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError(line, column, "expected an unsigned integer, got '" + text + "'");
    if (text.size() > 9) throw ParseError(line, column, "integer out of range: '" + text + "'");
    return std::stoi(text);
}

inline std::vector<int> spec_comma_list(const std::string& text, int line, int column) {
    std::vector<int> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        std::string piece = text.substr(start, comma == std::string::npos ? comma : comma - start);
        out.push_back(spec_int(piece, line, column + static_cast<int>(start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace detail

inline SpecDocument parse_spec(const std::string& text) {
    std::optional<std::string> name;
    std::optional<int> alphabet;
    std::optional<Variant> variant;
    std::map<int, SetSpec> clauses;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string line = text.substr(pos, eol == std::string::npos ? eol : eol - pos);
        pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (std::size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);

        std::vector<detail::SpecToken> toks = detail::spec_tokens(line);
        if (toks.empty()) continue;
        const std::string& head = toks[0].text;

        if (head == "name:") {
            if (name) throw SemanticError("name declared twice");
            std::size_t from = line.find("name:") + 5;
            while (from < line.size() && std::isspace(static_cast<unsigned char>(line[from])))
                ++from;
            std::size_t to = line.size();
            while (to > from && std::isspace(static_cast<unsigned char>(line[to - 1]))) --to;
            if (to == from) throw ParseError(line_no, toks[0].column, "name: needs a value");
            name = line.substr(from, to - from);
        } else if (head == "alphabet:") {
            if (alphabet) throw SemanticError("alphabet declared twice");
            if (toks.size() != 2)
                throw ParseError(line_no, toks[0].column, "alphabet: needs one integer");
            alphabet = detail::spec_int(toks[1].text, line_no, toks[1].column);
            if (*alphabet < 2) throw SemanticError("alphabet must be at least 2");
        } else if (head == "variant:") {
            if (variant) throw SemanticError("variant declared twice");
            if (toks.size() != 2)
                throw ParseError(line_no, toks[0].column, "variant: needs one keyword");
            if (toks[1].text == "ordered")
                variant = Variant::ordered;
            else if (toks[1].text == "generalized")
                variant = Variant::generalized;
            else
                throw ParseError(line_no, toks[1].column,
                                 "variant must be 'ordered' or 'generalized'");
        } else if (head.size() >= 3 && head.front() == 'S' && head.back() == ':') {
            std::string digits = head.substr(1, head.size() - 2);
            int letter = detail::spec_int(digits, line_no, toks[0].column + 1);
            if (letter < 1)
                throw ParseError(line_no, toks[0].column, "set clauses are numbered from S1");
            if (clauses.count(letter))
                throw SemanticError("letter " + std::to_string(letter) + " declared twice");
            if (toks.size() < 2)
                throw ParseError(line_no, toks[0].column, "set clause needs a kind keyword");
            const std::string& kind = toks[1].text;
            if (kind == "finite") {
                std::vector<int> elems;
                for (std::size_t k = 2; k < toks.size(); ++k)
                    elems.push_back(detail::spec_int(toks[k].text, line_no, toks[k].column));
                clauses.emplace(letter, SetSpec::finite(std::move(elems)));
            } else if (kind == "cofinite") {
                std::string list;
                for (std::size_t k = 2; k < toks.size(); ++k) {
                    if (k > 2) list += ' ';
                    list += toks[k].text;
                }
                if (list.size() < 2 || list.front() != '[' || list.back() != ']')
                    throw ParseError(line_no, toks.size() > 2 ? toks[2].column : toks[1].column,
                                     "cofinite needs a bracketed exclusion list");
                std::vector<int> excl;
                for (const detail::SpecToken& t :
                     detail::spec_tokens(list.substr(1, list.size() - 2)))
                    excl.push_back(detail::spec_int(t.text, line_no, toks[2].column));
                clauses.emplace(letter, SetSpec::cofinite(std::move(excl)));
            } else if (kind == "epd") {
                if (toks.size() != 4 || toks[2].text.rfind("initial=", 0) != 0 ||
                    toks[3].text.rfind("diffs=", 0) != 0)
                    throw ParseError(line_no, toks[1].column,
                                     "epd needs 'initial=<n,...> diffs=<d,...>'");
                std::vector<int> init = detail::spec_comma_list(toks[2].text.substr(8), line_no,
                                                                toks[2].column + 8);
                std::vector<int> diffs = detail::spec_comma_list(toks[3].text.substr(6), line_no,
                                                                 toks[3].column + 6);
                clauses.emplace(letter,
                                SetSpec::eventually_periodic(std::move(init), std::move(diffs)));
            } else if (kind == "explicit") {
                if (toks.size() < 3 || toks.back().text.rfind("bound=", 0) != 0)
                    throw ParseError(line_no, toks[1].column,
                                     "explicit needs elements and a trailing 'bound=<B>'");
                int bound = detail::spec_int(toks.back().text.substr(6), line_no,
                                             toks.back().column + 6);
                std::vector<int> elems;
                for (std::size_t k = 2; k + 1 < toks.size(); ++k)
                    elems.push_back(detail::spec_int(toks[k].text, line_no, toks[k].column));
                clauses.emplace(letter, SetSpec::bounded(std::move(elems), bound));
            } else {
                throw ParseError(line_no, toks[1].column, "unknown set kind '" + kind + "'");
            }
        } else {
            throw ParseError(line_no, toks[0].column, "unknown directive '" + head + "'");
        }
    }

    if (clauses.empty()) throw SemanticError("no set clauses");
    int p = alphabet ? *alphabet : clauses.rbegin()->first;
    if (p < 2) throw SemanticError("alphabet must be at least 2");
    SpecDocument doc;
    doc.name = std::move(name);
    doc.alphabet = p;
    doc.variant = variant.value_or(Variant::ordered);
    for (int i = 1; i <= p; ++i) {
        auto it = clauses.find(i);
        if (it == clauses.end())
            throw SemanticError("letter " + std::to_string(i) + " has no set clause");
        doc.sets.push_back(it->second);
    }
    if (clauses.rbegin()->first > p)
        throw SemanticError("set clause S" + std::to_string(clauses.rbegin()->first) +
                            " exceeds the declared alphabet");
    return doc;
}

inline std::string render_spec(const SpecDocument& doc) {
    if (static_cast<int>(doc.sets.size()) != doc.alphabet)
        throw SemanticError("render_spec: need exactly one set per letter");
    std::string out;
    if (doc.name) out += "name: " + *doc.name + "\n";
    out += "alphabet: " + std::to_string(doc.alphabet) + "\n";
    out += std::string("variant: ") +
           (doc.variant == Variant::ordered ? "ordered" : "generalized") + "\n";
    auto join = [](const std::vector<int>& xs, char sep) {
        std::string s;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (i) s += sep;
            s += std::to_string(xs[i]);
        }
        return s;
    };
    for (int i = 1; i <= doc.alphabet; ++i) {
        const SetSpec& set = doc.sets[static_cast<std::size_t>(i - 1)];
        out += "S" + std::to_string(i) + ": ";
        switch (set.kind()) {
            case SetKind::finite:
                out += "finite " + join(set.elements(), ' ');
                break;
            case SetKind::cofinite:
                out += set.excluded().empty() ? "cofinite []"
                                              : "cofinite [" + join(set.excluded(), ' ') + "]";
                break;
            case SetKind::eventually_periodic:
                out += "epd initial=" + join(set.elements(), ',') +
                       " diffs=" + join(set.period_diffs(), ',');
                break;
            case SetKind::bounded_explicit:
                out += "explicit " + join(set.elements(), ' ') +
                       " bound=" + std::to_string(set.bound());
                break;
        }
        out += "\n";
    }
    return out;
}

}  // namespace limshift
