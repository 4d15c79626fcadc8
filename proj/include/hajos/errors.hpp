#ifndef HAJOS_ERRORS_HPP
#define HAJOS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hajos {

// Root of every error raised by the library. Callers that only need to
// distinguish "bad input" from "the engine broke its own invariant" can
// catch HajosError and InvariantError respectively.
class HajosError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownVertexError : public HajosError {
public:
    using HajosError::HajosError;
};

class MissingArcError : public HajosError {
public:
    using HajosError::HajosError;
};

// Identification of a set that has an arc inside it.
class DependentSetError : public HajosError {
public:
    using HajosError::HajosError;
};

// Target label outside the identified set, overlapping operands, labels out of range.
class LabelError : public HajosError {
public:
    using HajosError::HajosError;
};

class DomainError : public HajosError {
public:
    using HajosError::HajosError;
};

// Input digraph does not have the structure a construction stage expects.
class ShapeError : public HajosError {
public:
    using HajosError::HajosError;
};

// Violated precondition of a cyclic identification (indices, arcs, offsets).
class SpecError : public HajosError {
public:
    using HajosError::HajosError;
};

class InvariantError : public HajosError {
public:
    using HajosError::HajosError;
};

class FormatError : public HajosError {
public:
    FormatError(std::size_t line, const std::string& what)
        : HajosError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class TraceSyntaxError : public FormatError {
public:
    using FormatError::FormatError;
};

class TraceSemanticError : public HajosError {
public:
    using HajosError::HajosError;
};

class ReplayError : public HajosError {
public:
    ReplayError(std::size_t step, const std::string& what)
        : HajosError("step " + std::to_string(step) + " (line " + std::to_string(step + 2) +
                     "): " + what),
          step_(step) {}

    // Zero-based index into the trace's step list; the header occupies line 1.
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

class SizeLimitError : public HajosError {
public:
    using HajosError::HajosError;
};

class NoColoringError : public HajosError {
public:
    using HajosError::HajosError;
};

}  // namespace hajos

#endif  // HAJOS_ERRORS_HPP
