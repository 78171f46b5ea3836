#pragma once

#include "ptx/core.hpp"

#include <functional>
#include <set>

namespace ptx {

struct HasPebbles : Error {
    using Error::Error;
};
struct HookRequired : Error {
    using Error::Error;
};

/// M_b: (i,j) set iff b_i = b_j = 1.
[[nodiscard]] BoolMatrix matrix_of_bits(const BitVec& b);

/// Lexicographic sequence of all k-markings of #u, one copy of #u per marking.
[[nodiscard]] Transducer build_config_enumerator(int k, const std::vector<Symbol>& sigma);
/// 0 pebbles; annotates every letter of a copy with the co-location matrix of that copy.
[[nodiscard]] Transducer build_equality_annotator(int k, const std::vector<Symbol>& sigma);
/// The letters (σ,b,M) a simulator reads: σ ∈ Σ∪{#}, any b, M an equivalence on k pebbles.
[[nodiscard]] std::vector<Symbol> annotated_alphabet(int k, const std::vector<Symbol>& sigma);

struct Decomposition {
    Transducer normalized;   // T with head-neutral drop/lift
    Transducer enumerator;   // C_k
    Transducer annotator;    // C_k^=
    Transducer simulator;    // T_0, 0 pebbles
};

/// T = simulator ∘ annotator ∘ enumerator. Requires k >= 1.
[[nodiscard]] Decomposition decompose(const Transducer& T);

enum class EndKind : std::uint8_t { Letter, Left, Right };

struct TwoWayLetter {
    EndKind kind = EndKind::Letter;
    Symbol symbol;  // only for Letter

    auto operator<=>(const TwoWayLetter&) const = default;
    bool operator==(const TwoWayLetter&) const = default;
    [[nodiscard]] std::string render() const;
};

struct TwoWayTransition {
    int from = 0;
    TwoWayLetter letter;
    int to = 0;
    Word output;
};

/// Head sits between letters of ⊢u⊣; forward states read to the right, backward states to the left.
struct TwoWayTransducer {
    std::string name;
    std::vector<Symbol> input_alphabet;
    std::vector<Symbol> output_alphabet;
    std::vector<std::string> state_names;
    std::vector<bool> forward;
    int initial = -1;
    int final_state = -1;
    std::vector<TwoWayTransition> transitions;

    int add_state(const std::string& id, bool fwd);
    [[nodiscard]] std::size_t num_states() const { return state_names.size(); }
};

/// Endmarker discipline: ⊢ leads to forward states, ⊣ to backward ones or the final state.
[[nodiscard]] std::vector<std::string> validate_two_way(const TwoWayTransducer& T);
[[nodiscard]] bool two_way_deterministic(const TwoWayTransducer& T);
[[nodiscard]] bool two_way_reverse_deterministic(const TwoWayTransducer& T);
[[nodiscard]] bool two_way_reversible(const TwoWayTransducer& T);

struct TwoWayResult {
    std::set<Word> outputs;
    bool truncated = false;
};
/// All outputs of accepting runs without repeated configurations.
[[nodiscard]] TwoWayResult run_two_way(const TwoWayTransducer& T, const Word& u);

[[nodiscard]] TwoWayTransducer zero_pebble_to_two_way(const Transducer& P);
[[nodiscard]] Transducer two_way_to_zero_pebble(const TwoWayTransducer& T);

/// The reversible-uniformization seam. Either a machine transformer on the two-way form of T_0,
/// or an oracle-level selector picking one output of T_0 on a given input.
struct UniformizerHook {
    std::string name;
    std::function<TwoWayTransducer(const TwoWayTransducer&)> machine;
    std::function<std::optional<Word>(const Transducer&, const Word&)> select;
};

[[nodiscard]] UniformizerHook identity_hook();

struct UniformizeReport {
    std::string hook;
    bool deterministic = false;
    bool reversible = false;
    int pebbles = 0;
    std::size_t states = 0;
    bool state_bound_checked = false;
    std::string note;
};

struct Uniformization {
    std::optional<Transducer> machine;  // absent for selector hooks
    Decomposition parts;
    UniformizeReport report;
    std::function<std::optional<Word>(const Word&)> evaluate;
};

/// decompose, pass T_0 through the hook, then compose(compose(C_k, C_k^=), hooked T_0).
[[nodiscard]] Uniformization uniformize_pipeline(const Transducer& T, const std::optional<UniformizerHook>& hook);

}  // namespace ptx
