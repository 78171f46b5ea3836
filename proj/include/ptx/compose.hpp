#pragma once

#include "ptx/core.hpp"

namespace ptx {

struct NotDeterministic : Error {
    using Error::Error;
};
struct AlphabetMismatch : Error {
    using Error::Error;
};

enum class StateRole { Sync, Sim, LiftGadget, DropGadget };

/// Components of a composed state. x/y are the stacked T-states and block sizes.
struct ProductState {
    StateRole role = StateRole::Sync;
    int q = 0;   // state of the left machine (hatted for Sim)
    int qp = 0;  // state of the right machine
    std::vector<int> x;
    std::vector<int> y;
    int z = 0;      // drop gadget only
    int level = 0;  // lift: l in (q'',-l); drop: l in (q'',z,l)

    auto operator<=>(const ProductState&) const = default;
    bool operator==(const ProductState&) const = default;
    [[nodiscard]] int d(int l) const;  // y_1 + ... + y_l
};

struct Composition {
    Transducer machine;
    std::vector<std::string> rule;  // per transition of `machine`
    std::vector<ProductState> info;  // per state of `machine`
    Transducer left;   // normalized T (one letter per output, # first, plus t_{f,i})
    Transducer right;  // normalized T'
    int n = 0;
    int m = 0;
};

/// T with `#` emitted by the initial transition and at most one letter per transition.
[[nodiscard]] Transducer normalize_left(const Transducer& T);
/// T' with the full-read sweep, and for m > 0 with head-neutral drop/lift moves.
[[nodiscard]] Transducer normalize_right(const Transducer& Tp);

/// Disjoint disjunction of conjunctive tests; empty means false.
using Dnf = std::vector<Test>;

/// ξ̄(q'',ψ'): ψ' over the right machine's pebbles rewritten on the composed stack of r pebbles.
[[nodiscard]] Dnf xi_bar(const ProductState& s, const Test& psi, int r);
/// ξ = (ξ₀∧φ∧test(op))^{+d_k} ∧ ξ̄(q'', φ'∧test(op')).
[[nodiscard]] Dnf build_xi(const ProductState& s, const Test& phi, const PebbleOp& op, const Test& phip,
                           const PebbleOp& opp, int n, int m);
/// ξ₀^{+d} clipped to r pebbles: at least d and at most d+n pebbles.
[[nodiscard]] Test xi0_shifted(int d, int n, int r);

[[nodiscard]] Composition compose_detailed(const Transducer& T, const Transducer& Tp);
[[nodiscard]] Transducer compose_simple(const Transducer& T, const Transducer& Tp);
[[nodiscard]] Transducer compose_general(const Transducer& T, const Transducer& Tp);
[[nodiscard]] Transducer compose(const Transducer& T, const Transducer& Tp);

/// Upper bound on the composed state count for the given normalized sizes.
[[nodiscard]] std::uint64_t composition_state_bound(std::size_t q, std::size_t qp, int n, int m);

}  // namespace ptx
