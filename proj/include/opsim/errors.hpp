#pragma once

#include <stdexcept>
#include <string>

namespace opsim {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Structural problem in a listing: unterminated proc, endp without proc,
// duplicate proc name, instruction outside any proc, mismatched endp name.
class MalformedListing : public Error {
public:
    MalformedListing(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

// A proc/endp pair with no instructions between them.
class EmptySubroutine : public Error {
public:
    EmptySubroutine(int line, const std::string& name)
        : Error("line " + std::to_string(line) + ": empty body for subroutine '" + name + "'"),
          line_(line), name_(name) {}

    int line() const { return line_; }
    const std::string& name() const { return name_; }

private:
    int line_;
    std::string name_;
};

// Histogram with a zero bin total cannot be normalized.
class ZeroTotal : public Error {
public:
    using Error::Error;
};

// A distance was requested on a histogram that is still raw.
class NonNormalizedInput : public Error {
public:
    using Error::Error;
};

// A profile with no histograms entered comparison.
class EmptyProfile : public Error {
public:
    using Error::Error;
};

// Two programs in one matrix share an id.
class DuplicateProgramId : public Error {
public:
    using Error::Error;
};

// Classifier metric does not match the metric a matrix was built with.
class MetricMismatch : public Error {
public:
    using Error::Error;
};

// Manifest and verdict files disagree on the program id universe.
class IdMismatch : public Error {
public:
    using Error::Error;
};

}  // namespace opsim
