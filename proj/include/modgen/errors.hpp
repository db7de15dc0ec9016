#ifndef MODGEN_ERRORS_HPP
#define MODGEN_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace modgen {

// Malformed input bytes (bad JSON, bad file header).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Well-formed input violating a structural invariant.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller broke a documented precondition.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Sentence has no noun chunk; it cannot be augmented.
class NoInsertionPoint : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Not enough records to carve the requested splits.
class SizingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Loss became NaN/Inf during training.
class TrainingDivergence : public std::runtime_error {
public:
    TrainingDivergence(const std::string& what, int epoch, std::size_t batch)
        : std::runtime_error(what), epoch(epoch), batch(batch) {}
    int epoch;
    std::size_t batch;
};

// Per-line problem report from skip-and-report ingestion.
struct Diagnostic {
    std::size_t line_no = 0;  // 1-based
    std::string reason;
};

using Diagnostics = std::vector<Diagnostic>;

}  // namespace modgen

#endif
