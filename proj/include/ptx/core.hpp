#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ptx {

using BitVec = std::vector<bool>;
using BoolMatrix = std::vector<std::vector<bool>>;

/// Input/output letter: a base character with optional bit and matrix annotations.
struct Symbol {
    std::string base;  // one code point, UTF-8
    std::optional<BitVec> bits;
    std::optional<BoolMatrix> matrix;

    Symbol() = default;
    explicit Symbol(std::string b) : base(std::move(b)) {}
    Symbol(std::string b, BitVec v) : base(std::move(b)), bits(std::move(v)) {}
    Symbol(std::string b, BitVec v, BoolMatrix m) : base(std::move(b)), bits(std::move(v)), matrix(std::move(m)) {}

    auto operator<=>(const Symbol&) const = default;
    bool operator==(const Symbol&) const = default;

    [[nodiscard]] bool is_endmarker() const { return base == "#" && !bits && !matrix; }
    [[nodiscard]] std::string render() const;
};

using Word = std::vector<Symbol>;

[[nodiscard]] inline Symbol endmarker() { return Symbol("#"); }
/// Marking appends a 1 bit; `a` becomes `_a`, `_a` becomes `__a`.
[[nodiscard]] Symbol marked(const Symbol& s);
[[nodiscard]] Word word_from_string(const std::string& s);
[[nodiscard]] std::string render_word(const Word& w, const std::string& sep = "");
/// Splits a UTF-8 string into code points.
[[nodiscard]] std::vector<std::string> code_points(const std::string& s);

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class AtomKind : std::uint8_t { HeadPeb, PebPeb };

/// (h=p_i) or (p_i=p_j), possibly negated. For PebPeb, i <= j.
struct Atom {
    AtomKind kind = AtomKind::HeadPeb;
    int i = 1;
    int j = 0;
    bool negated = false;

    auto operator<=>(const Atom&) const = default;
    bool operator==(const Atom&) const = default;

    [[nodiscard]] std::string render() const;
};

[[nodiscard]] Atom head_at(int i, bool negated = false);
[[nodiscard]] Atom pebs_eq(int i, int j, bool negated = false);

/// Conjunction of atoms in canonical (sorted, deduplicated) form, or the constant false.
class Test {
public:
    Test() = default;
    explicit Test(std::vector<Atom> atoms);
    Test(std::initializer_list<Atom> atoms) : Test(std::vector<Atom>(atoms)) {}

    static Test truth() { return {}; }
    static Test falsity();

    [[nodiscard]] bool is_false() const { return false_; }
    [[nodiscard]] bool is_true() const { return !false_ && atoms_.empty(); }
    [[nodiscard]] const std::vector<Atom>& atoms() const { return atoms_; }
    [[nodiscard]] int max_index() const;
    /// Some (p_i=p_j) atom with i != j; (p_i=p_i) only checks the stack size.
    [[nodiscard]] bool uses_equality() const;

    [[nodiscard]] Test operator&(const Test& o) const;
    Test& operator&=(const Test& o) { return *this = *this & o; }

    auto operator<=>(const Test&) const = default;
    bool operator==(const Test&) const = default;

    [[nodiscard]] std::string render() const;

private:
    void normalize();
    bool false_ = false;
    std::vector<Atom> atoms_;
};

/// (p_i=p_i) meaning "at least i pebbles"; true when i <= 0.
[[nodiscard]] Test at_least(int i);
/// ¬(p_{i+1}=p_{i+1}) meaning "at most i pebbles"; true when i >= k.
[[nodiscard]] Test at_most(int i, int k);

enum class OpKind : std::uint8_t { Nop, Drop, Lift };

struct PebbleOp {
    OpKind kind = OpKind::Nop;
    int index = 0;

    auto operator<=>(const PebbleOp&) const = default;
    bool operator==(const PebbleOp&) const = default;

    [[nodiscard]] bool is_nop() const { return kind == OpKind::Nop; }
    [[nodiscard]] std::string render() const;
};

[[nodiscard]] inline PebbleOp nop() { return {}; }
[[nodiscard]] inline PebbleOp drop(int i) { return {OpKind::Drop, i}; }
[[nodiscard]] inline PebbleOp lift(int i) { return {OpKind::Lift, i}; }

using Stack = std::vector<int>;

[[nodiscard]] Test test_of_op(const PebbleOp& op, int k);
[[nodiscard]] bool eval_atom(const Atom& a, const Stack& peb, int h);
[[nodiscard]] bool eval_test(const Test& t, const Stack& peb, int h);
/// op(peb,h), or nullopt when the operation is not enabled.
[[nodiscard]] std::optional<Stack> apply_op(const PebbleOp& op, const Stack& peb, int h);
[[nodiscard]] PebbleOp reverse_op(const PebbleOp& op);
[[nodiscard]] Test shift_test(const Test& t, int d);
[[nodiscard]] PebbleOp shift_op(const PebbleOp& op, int d);
[[nodiscard]] bool satisfiable(const Test& t, int k);

struct Transition {
    int from = 0;
    Symbol letter;
    Test test;
    PebbleOp op;
    int to = 0;
    Word output;

    auto operator<=>(const Transition&) const = default;
    bool operator==(const Transition&) const = default;
};

/// A k-pebble transducer. States carry a polarity in {-1,0,+1}.
struct Transducer {
    std::string name;
    int k = 0;
    bool equality_tests = false;
    std::vector<Symbol> input_alphabet;
    std::vector<Symbol> output_alphabet;
    std::vector<std::string> state_names;
    std::vector<int> polarity;
    int initial = -1;
    int final_state = -1;
    std::vector<Transition> transitions;

    int add_state(const std::string& id, int pol);
    /// Existing id, or a fresh one with the given polarity.
    int ensure_state(const std::string& id, int pol);
    [[nodiscard]] int state(const std::string& id) const;
    [[nodiscard]] bool has_state(const std::string& id) const { return index_.count(id) != 0; }
    [[nodiscard]] std::size_t num_states() const { return state_names.size(); }
    void add(int from, const Symbol& a, const Test& t, const PebbleOp& op, int to, Word out = {});
    /// Input alphabet plus the endmarker.
    [[nodiscard]] std::vector<Symbol> letters() const;

private:
    std::map<std::string, int> index_;
};

}  // namespace ptx
