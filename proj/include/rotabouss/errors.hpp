#pragma once

#include <stdexcept>
#include <string>

namespace rotabouss {

// Base of every failure the library reports. The name is stable and is what
// the CLI prints next to the failing check.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

// Caller broke a documented precondition.
struct PreconditionError : Error {
    explicit PreconditionError(const std::string& w) : Error("PreconditionError", w) {}
};
struct OutOfLattice : Error {
    explicit OutOfLattice(const std::string& w) : Error("OutOfLattice", w) {}
};
struct WrongClass : Error {
    explicit WrongClass(const std::string& w) : Error("WrongClass", w) {}
};
struct NonConvergence : Error {
    explicit NonConvergence(const std::string& w) : Error("NonConvergence", w) {}
};
struct SingularShift : Error {
    explicit SingularShift(const std::string& w) : Error("SingularShift", w) {}
};
struct TruncationTooSmall : Error {
    explicit TruncationTooSmall(const std::string& w) : Error("TruncationTooSmall", w) {}
};
struct SigmaOutOfRange : Error {
    explicit SigmaOutOfRange(const std::string& w) : Error("SigmaOutOfRange", w) {}
};
struct PositiveDelta : Error {
    explicit PositiveDelta(const std::string& w) : Error("PositiveDelta", w) {}
};
struct BlowUp : Error {
    explicit BlowUp(const std::string& w) : Error("BlowUp", w) {}
};
struct InsufficientOscillations : Error {
    explicit InsufficientOscillations(const std::string& w)
        : Error("InsufficientOscillations", w) {}
};

}  // namespace rotabouss
