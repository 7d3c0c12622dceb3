#pragma once

#include <stdexcept>
#include <string>

namespace skewforge {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DivisionByZero : Error {
    explicit DivisionByZero(const std::string& m) : Error("DivisionByZero: " + m) {}
};

struct DegreeOverflow : Error {
    explicit DegreeOverflow(const std::string& m) : Error("DegreeOverflow: " + m) {}
};

struct BadModulus : Error {
    explicit BadModulus(const std::string& m) : Error("BadModulus: " + m) {}
};

struct InconsistentStructure : Error {
    explicit InconsistentStructure(const std::string& m) : Error("InconsistentStructure: " + m) {}
};

struct PrecisionExceeded : Error {
    explicit PrecisionExceeded(const std::string& m) : Error("PrecisionExceeded: " + m) {}
};

struct EmptyPrecision : Error {
    explicit EmptyPrecision(const std::string& m) : Error("EmptyPrecision: " + m) {}
};

struct MalformedWord : Error {
    explicit MalformedWord(const std::string& m) : Error("MalformedWord: " + m) {}
};

struct MissingInterpretation : Error {
    explicit MissingInterpretation(const std::string& m) : Error("MissingInterpretation: " + m) {}
};

struct InvalidIndex : Error {
    explicit InvalidIndex(const std::string& m) : Error("InvalidIndex: " + m) {}
};

struct Unsupported : Error {
    explicit Unsupported(const std::string& m) : Error("Unsupported: " + m) {}
};

struct NotDefined : Error {
    explicit NotDefined(const std::string& m) : Error("NotDefined: " + m) {}
};

struct BadPreset : Error {
    explicit BadPreset(const std::string& m) : Error("BadPreset: " + m) {}
};

struct NoSolution : Error {
    explicit NoSolution(const std::string& m) : Error("NoSolution: " + m) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& m) : Error("ParseError: " + m) {}
};

} // namespace skewforge
