#pragma once

// Run-length encoded words, core blocks, and the shift-space descriptor.
//
// A shift descriptor is an alphabet size p >= 2, one run-length set per
// letter, and a variant flag.  In the ordered variant the letters of
// consecutive runs must follow the cycle 1 -> 2 -> ... -> p -> 1; in the
// generalized variant adjacent runs merely use distinct letters.

#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "limshift/error.hpp"
#include "limshift/sets.hpp"

namespace limshift {

struct Run {
    int letter = 0;   // 1-based
    int length = 0;   // >= 1
    bool operator==(const Run&) const = default;
};

// Possibly empty word stored as maximal runs (adjacent runs use distinct letters).
class RunWord {
  public:
    RunWord() = default;

    explicit RunWord(std::vector<Run> runs) : runs_(std::move(runs)) {
        for (std::size_t i = 0; i < runs_.size(); ++i) {
            if (runs_[i].letter < 1) throw SemanticError("run word: letters are 1-based");
            if (runs_[i].length < 1) throw SemanticError("run word: run lengths are >= 1");
            if (i > 0 && runs_[i].letter == runs_[i - 1].letter)
                throw SemanticError("run word: adjacent runs must use distinct letters");
            total_ += runs_[i].length;
        }
    }

    static RunWord from_letters(std::span<const int> letters) {
        std::vector<Run> rs;
        for (int a : letters) {
            if (!rs.empty() && rs.back().letter == a) ++rs.back().length;
            else rs.push_back({a, 1});
        }
        return RunWord(std::move(rs));
    }

    static RunWord from_letters(const std::vector<int>& letters) {
        return from_letters(std::span<const int>(letters));
    }

    // Accepts flat digit form ("1221", letters 1..9) and run form ("1^1 2^2 1^1").
    static RunWord parse(const std::string& text) {
        if (text.find('^') == std::string::npos) {
            std::vector<int> letters;
            for (char c : text) {
                if (c == ' ') continue;
                if (c < '1' || c > '9') throw SemanticError("word: expected digits 1-9");
                letters.push_back(c - '0');
            }
            return from_letters(letters);
        }
        std::vector<Run> rs;
        std::size_t i = 0;
        auto read_int = [&]() {
            if (i >= text.size() || !isdigit(static_cast<unsigned char>(text[i])))
                throw SemanticError("word: malformed run form");
            int v = 0;
            while (i < text.size() && isdigit(static_cast<unsigned char>(text[i])))
                v = v * 10 + (text[i++] - '0');
            return v;
        };
        while (i < text.size()) {
            if (text[i] == ' ') { ++i; continue; }
            int letter = read_int();
            if (i >= text.size() || text[i] != '^') throw SemanticError("word: expected '^'");
            ++i;
            int len = read_int();
            rs.push_back({letter, len});
        }
        return RunWord(std::move(rs));
    }

    const std::vector<Run>& runs() const { return runs_; }
    int length() const { return total_; }
    bool empty() const { return runs_.empty(); }
    int max_letter() const {
        int m = 0;
        for (const Run& r : runs_) m = std::max(m, r.letter);
        return m;
    }

    std::vector<int> letters() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(total_));
        for (const Run& r : runs_)
            for (int i = 0; i < r.length; ++i) out.push_back(r.letter);
        return out;
    }

    // Digit form when every letter fits one digit, run form otherwise.
    std::string str() const {
        if (max_letter() <= 9) {
            std::string s;
            for (const Run& r : runs_) s.append(static_cast<std::size_t>(r.length), static_cast<char>('0' + r.letter));
            return s;
        }
        std::string s;
        for (std::size_t i = 0; i < runs_.size(); ++i) {
            if (i) s += ' ';
            s += std::to_string(runs_[i].letter) + "^" + std::to_string(runs_[i].length);
        }
        return s;
    }

    friend RunWord operator+(const RunWord& a, const RunWord& b) {
        std::vector<int> ls = a.letters();
        std::vector<int> rs = b.letters();
        ls.insert(ls.end(), rs.begin(), rs.end());
        return from_letters(ls);
    }

    bool operator==(const RunWord&) const = default;
    bool operator<(const RunWord& o) const { return letters() < o.letters(); }

  private:
    std::vector<Run> runs_;
    int total_ = 0;
};

// One run length per letter; exponents[i] is the run length of letter i+1.
struct CoreBlock {
    std::vector<int> exponents;

    int length() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }

    RunWord word() const {
        std::vector<Run> rs;
        rs.reserve(exponents.size());
        for (std::size_t i = 0; i < exponents.size(); ++i)
            rs.push_back({static_cast<int>(i) + 1, exponents[i]});
        return RunWord(std::move(rs));
    }

    bool operator==(const CoreBlock&) const = default;
    bool operator<(const CoreBlock& o) const { return exponents < o.exponents; }
};

// counts[l] = number of core blocks of total length l, for l = 0..truncation.
struct CoreLengthSpectrum {
    std::vector<std::uint64_t> counts;
    int truncation = 0;
};

enum class Variant { ordered, generalized };

class ShiftSpec {
  public:
    ShiftSpec(int p, std::vector<SetSpec> sets, Variant variant)
        : p_(p), sets_(std::move(sets)), variant_(variant) {
        if (p_ < 2) throw SemanticError("shift: alphabet size must be >= 2");
        if (sets_.size() != static_cast<std::size_t>(p_))
            throw SemanticError("shift: need exactly one run-length set per letter");
    }

    int p() const { return p_; }
    Variant variant() const { return variant_; }
    const SetSpec& set(int letter) const { return sets_[static_cast<std::size_t>(letter - 1)]; }
    const std::vector<SetSpec>& sets() const { return sets_; }

    int next_letter(int i) const { return i % p_ + 1; }
    int prev_letter(int i) const { return i == 1 ? p_ : i - 1; }

    // May run j directly follow run i?
    bool follows(int i, int j) const {
        if (variant_ == Variant::ordered) return j == next_letter(i);
        return i != j;
    }

    bool operator==(const ShiftSpec&) const = default;

  private:
    int p_;
    std::vector<SetSpec> sets_;
    Variant variant_;
};

}  // namespace limshift
