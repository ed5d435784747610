#pragma once

#include <stdexcept>
#include <string>

namespace limshift {

// Base for all library failures so callers can catch one type.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A verdict depends on membership beyond a declared bound.
struct UnknownMembership : Error {
    explicit UnknownMembership(const std::string& what) : Error(what) {}
};

// Enumeration limit exceeds the declared bound of an explicit set.
struct BoundBreached : Error {
    explicit BoundBreached(const std::string& what) : Error(what) {}
};

// nth_element index past the end of a finite / listed set.
struct IndexBeyondSet : Error {
    explicit IndexBeyondSet(const std::string& what) : Error(what) {}
};

// Operation defined for the other variant (ordered vs generalized).
struct VariantMismatch : Error {
    explicit VariantMismatch(const std::string& what) : Error(what) {}
};

struct WordNotInLanguage : Error {
    explicit WordNotInLanguage(const std::string& what) : Error(what) {}
};

struct NotSft : Error {
    explicit NotSft(const std::string& what) : Error(what) {}
};

struct NotSofic : Error {
    explicit NotSofic(const std::string& what) : Error(what) {}
};

struct EmptyGraph : Error {
    explicit EmptyGraph(const std::string& what) : Error(what) {}
};

struct AlphabetSizeMismatch : Error {
    explicit AlphabetSizeMismatch(const std::string& what) : Error(what) {}
};

struct InvalidOffsets : Error {
    explicit InvalidOffsets(const std::string& what) : Error(what) {}
};

struct WordTooShort : Error {
    explicit WordTooShort(const std::string& what) : Error(what) {}
};

// Block-map rule has no entry / no valid reading for a window.
struct InvalidWindow : Error {
    explicit InvalidWindow(const std::string& what) : Error(what) {}
};

// Infinitude of a set can't be decided under its declared bound.
struct InfinitudeUnknown : Error {
    explicit InfinitudeUnknown(const std::string& what) : Error(what) {}
};

// Word is in the language but admits no prefix/core/suffix factorization
// (factor of a single core block cut strictly inside runs on both ends).
struct DecompositionNotFound : Error {
    explicit DecompositionNotFound(const std::string& what) : Error(what) {}
};

// Enumeration request beyond the configured cap.
struct CapExceeded : Error {
    explicit CapExceeded(const std::string& what) : Error(what) {}
};

// Numeric routine could not reach the requested tolerance.
struct ConvergenceFailure : Error {
    explicit ConvergenceFailure(const std::string& what) : Error(what) {}
};

// Malformed spec text: position is 1-based.
struct ParseError : Error {
    int line;
    int column;
    ParseError(int line_, int column_, const std::string& what)
        : Error("line " + std::to_string(line_) + ", col " + std::to_string(column_) + ": " + what),
          line(line_), column(column_) {}
};

// Well-formed text with inconsistent content (duplicate letters, bad bounds, ...).
struct SemanticError : Error {
    explicit SemanticError(const std::string& what) : Error(what) {}
};

}  // namespace limshift
