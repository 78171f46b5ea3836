#pragma once

#include "ptx/core.hpp"

namespace ptx {

enum class ViolationKind {
    BadInitialOrFinal,
    FinalStateHasOutgoing,
    InitialStateHasIncoming,
    EqualityAtomInBasicMachine,
    IndexOutOfRange,
    UnknownState,
    LetterNotInAlphabet,
    OutputNotInAlphabet,
    ReservedLetter,
};

struct Violation {
    ViolationKind kind;
    std::string detail;
};

[[nodiscard]] std::string to_string(ViolationKind k);
[[nodiscard]] std::vector<Violation> validate(const Transducer& T);

enum class Direction { Forward, Backward };

struct ConflictWitness {
    Transition t1;
    Transition t2;
    Direction direction = Direction::Forward;
    Test joint_test;
};

struct CheckResult {
    bool ok = true;
    std::optional<ConflictWitness> witness;
    explicit operator bool() const { return ok; }
};

[[nodiscard]] CheckResult is_deterministic(const Transducer& T);
[[nodiscard]] CheckResult is_reverse_deterministic(const Transducer& T);
[[nodiscard]] bool is_reversible(const Transducer& T);

[[nodiscard]] std::string describe(const Transducer& T, const ConflictWitness& w);

}  // namespace ptx
