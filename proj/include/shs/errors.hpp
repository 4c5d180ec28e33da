#pragma once

#include <stdexcept>
#include <string>

namespace shs {

// Error taxonomy. `input` maps to CLI exit code 2, `numeric` to exit code 3.
enum class ErrorClass { input, numeric };

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, std::string msg)
        : std::runtime_error(std::move(msg)), cls_(cls) {}
    ErrorClass error_class() const { return cls_; }

private:
    ErrorClass cls_;
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg)
        : Error(ErrorClass::input, "dimension mismatch: " + msg) {}
};

struct NotHermitian : Error {
    explicit NotHermitian(const std::string& msg)
        : Error(ErrorClass::input, "not Hermitian: " + msg) {}
};

struct NotPSD : Error {
    explicit NotPSD(const std::string& msg)
        : Error(ErrorClass::input, "not positive semidefinite: " + msg) {}
};

struct NoConvergence : Error {
    explicit NoConvergence(const std::string& msg)
        : Error(ErrorClass::numeric, "no convergence: " + msg) {}
};

struct NotABounded : Error {
    explicit NotABounded(const std::string& msg)
        : Error(ErrorClass::input, "operator is not A-bounded: " + msg) {}
};

struct NotAAdjointable : Error {
    explicit NotAAdjointable(const std::string& msg)
        : Error(ErrorClass::input, "operator admits no A-adjoint: " + msg) {}
};

struct RangeNotIncluded : Error {
    explicit RangeNotIncluded(const std::string& msg)
        : Error(ErrorClass::input, "range inclusion fails: " + msg) {}
};

struct ZeroWeight : Error {
    explicit ZeroWeight(const std::string& msg)
        : Error(ErrorClass::input, "weight has rank zero: " + msg) {}
};

struct OutsideDisk : Error {
    explicit OutsideDisk(const std::string& msg)
        : Error(ErrorClass::input, "outside the disk of convergence: " + msg) {}
};

struct TailBoundStall : Error {
    explicit TailBoundStall(const std::string& msg)
        : Error(ErrorClass::numeric, "series tail bound stalled: " + msg) {}
};

struct WeightSingular : Error {
    explicit WeightSingular(const std::string& msg)
        : Error(ErrorClass::input, "weight is singular: " + msg) {}
};

struct KindMismatch : Error {
    explicit KindMismatch(const std::string& msg)
        : Error(ErrorClass::input, "instance kind mismatch: " + msg) {}
};

struct EntryNotABounded : Error {
    explicit EntryNotABounded(const std::string& msg)
        : Error(ErrorClass::input, "block entry not A-bounded: " + msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg)
        : Error(ErrorClass::input, "parse error: " + msg) {}
};

} // namespace shs
