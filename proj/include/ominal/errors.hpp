#pragma once

#include <stdexcept>
#include <string>

namespace ominal {

// Error taxonomy. Every throwing operation documents which of these it uses;
// callers that need to distinguish catch the concrete type.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionMismatch : Error { using Error::Error; };
struct UnboundedInput : Error { using Error::Error; };
struct NonPositiveParameter : Error { using Error::Error; };
struct UnboundedCell : Error { using Error::Error; };
struct DegenerateSlice : Error { using Error::Error; };
struct NotDecreasing : Error { using Error::Error; };
struct NotClosedSlices : Error { using Error::Error; };
struct InvalidComplex : Error { using Error::Error; };
struct UnboundedIntersection : Error { using Error::Error; };
struct MissingCertificate : Error { using Error::Error; };
struct NotCompact : Error { using Error::Error; };
struct NotNested : Error { using Error::Error; };
struct NotDisjoint : Error { using Error::Error; };
struct NotClosed : Error { using Error::Error; };
struct InvalidCell : Error { using Error::Error; };

// DSL parse failure; position is 1-based.
struct ParseError : Error {
    int line;
    int column;
    ParseError(const std::string& msg, int line_, int col_)
        : Error(msg + " at line " + std::to_string(line_) + ", column " + std::to_string(col_)),
          line(line_), column(col_) {}
};

} // namespace ominal
