#pragma once

#include "ptx/core.hpp"

namespace ptx {

struct NotReversible : Error {
    using Error::Error;
};

/// op(φ): a test that holds after op exactly when φ held before it.
[[nodiscard]] Test reverse_test_under_op(const PebbleOp& op, const Test& t);
[[nodiscard]] Transducer reverse_transducer(const Transducer& T);

/// Row-major k×k matrix; α_ii: pebble i dropped, α_ij: pebbles i and j co-located.
using EqualityMatrix = BoolMatrix;

[[nodiscard]] EqualityMatrix zero_matrix(int k);
[[nodiscard]] EqualityMatrix phi1(const Stack& peb, int k);
[[nodiscard]] BitVec phi2(int h, const Stack& peb, int k);
/// Invariants I1-I5 on a matrix/bit-vector pair.
[[nodiscard]] bool basic_consistent(const EqualityMatrix& a, const BitVec& b);
/// α,b ⊨ φ.
[[nodiscard]] bool abstract_holds(const Test& t, const EqualityMatrix& a, const BitVec& b);
/// α,b ⊨ op.
[[nodiscard]] bool abstract_enabled(const PebbleOp& op, const EqualityMatrix& a, const BitVec& b);
/// op(α,b).
[[nodiscard]] EqualityMatrix abstract_apply(const PebbleOp& op, const EqualityMatrix& a, const BitVec& b);

[[nodiscard]] Transducer eliminate_equality(const Transducer& A);

[[nodiscard]] Transducer split_outputs(const Transducer& T);
/// Requires 0 pebbles. The machine sweeps #u once before its original first move.
[[nodiscard]] Transducer ensure_full_read(const Transducer& T);
[[nodiscard]] Transducer separate_drop_lift_moves(const Transducer& T);
/// Head-neutral drop/lift for any machine: one fresh state per drop/lift transition.
/// Keeps determinism and the relation, not reverse-determinism.
[[nodiscard]] Transducer split_pebble_moves(const Transducer& T);
/// The full-read sweep without the 0-pebble restriction.
[[nodiscard]] Transducer add_full_read_sweep(const Transducer& T);

}  // namespace ptx
