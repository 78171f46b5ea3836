// Hand-written and generated machines used by several test files.
#pragma once

#include "ptx/analysis.hpp"
#include "ptx/builtins.hpp"
#include "ptx/core.hpp"

#include <algorithm>
#include <random>

namespace fixture {

using namespace ptx;

/// 2 pebbles with equality tests: for every pair (i,j) outputs u_j, marked when p1=p2.
inline Transducer pairs() {
    Transducer T;
    T.name = "pairs";
    T.k = 2;
    T.equality_tests = true;
    T.input_alphabet = alphabet("ab");
    const Symbol h = endmarker();
    int i = T.add_state("i", 0);
    int f = T.add_state("f", 0);
    int outer = T.add_state("outer", +1);
    int skip = T.add_state("skip", +1);
    int inner = T.add_state("inner", +1);
    int to2 = T.add_state("to2", +1);
    int tail = T.add_state("tail", +1);
    int to1 = T.add_state("to1", +1);
    T.initial = i;
    T.final_state = f;
    T.add(i, h, {}, nop(), outer);
    T.add(outer, h, at_most(0, 2), nop(), f);
    for (const auto& a : T.input_alphabet) {
        T.add(outer, a, {}, drop(1), skip);
        T.add(skip, a, {}, nop(), skip);
        T.add(inner, a, {}, drop(2), tail);
        T.add(tail, a, {}, nop(), tail);
        T.add(to2, a, {head_at(2, true)}, nop(), to2);
        T.add(to2, a, {head_at(2), pebs_eq(1, 2)}, lift(2), inner, {marked(a)});
        T.add(to2, a, {head_at(2), pebs_eq(1, 2, true)}, lift(2), inner, {a});
        T.add(to1, a, {head_at(1, true)}, nop(), to1);
        T.add(to1, a, {head_at(1)}, lift(1), outer);
    }
    T.add(skip, h, {}, nop(), inner);
    T.add(tail, h, {}, nop(), to2);
    T.add(inner, h, {}, nop(), to1);
    T.output_alphabet = T.input_alphabet;
    for (const auto& a : T.input_alphabet) T.output_alphabet.push_back(marked(a));
    return T;
}

inline Word pairs_oracle(const Word& u) {
    Word out;
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < u.size(); ++j) out.push_back(i == j ? marked(u[j]) : u[j]);
    return out;
}

/// 1 pebble, nondeterministic: marks any one position of u.
inline Transducer mark_one() {
    Transducer T;
    T.name = "mark_one";
    T.k = 1;
    T.input_alphabet = alphabet("ab");
    const Symbol h = endmarker();
    int i = T.add_state("i", 0);
    int f = T.add_state("f", 0);
    int s = T.add_state("s", +1);
    int c = T.add_state("c", +1);
    int wr = T.add_state("w", +1);
    int g = T.add_state("g", +1);
    int e = T.add_state("e", +1);
    T.initial = i;
    T.final_state = f;
    T.add(i, h, {}, nop(), s);
    for (const auto& a : T.input_alphabet) {
        T.add(s, a, {}, nop(), s);
        T.add(s, a, {}, drop(1), c);
        T.add(c, a, {}, nop(), c);
        T.add(wr, a, {head_at(1, true)}, nop(), wr, {a});
        T.add(wr, a, {head_at(1)}, nop(), wr, {marked(a)});
        T.add(g, a, {head_at(1, true)}, nop(), g);
        T.add(g, a, {head_at(1)}, lift(1), e);
        T.add(e, a, {}, nop(), e);
    }
    T.add(c, h, {}, nop(), wr);
    T.add(wr, h, {}, nop(), g);
    T.add(e, h, {}, nop(), f);
    T.output_alphabet = T.input_alphabet;
    for (const auto& a : T.input_alphabet) T.output_alphabet.push_back(marked(a));
    return T;
}

/// 2 pebbles, nondeterministic: guesses p1 <= p2, copies u with `!` for letters when p1=p2.
inline Transducer guess_equal() {
    Transducer T;
    T.name = "guess_equal";
    T.k = 2;
    T.equality_tests = true;
    T.input_alphabet = alphabet("ab");
    const Symbol h = endmarker();
    int i = T.add_state("i", 0);
    int f = T.add_state("f", 0);
    int s1 = T.add_state("s1", +1);
    int s2 = T.add_state("s2", 0);
    int s4 = T.add_state("s4", +1);
    int s3 = T.add_state("s3", +1);
    int back = T.add_state("back", +1);
    int l2 = T.add_state("l2", +1);
    int l1 = T.add_state("l1", +1);
    int e = T.add_state("e", +1);
    T.initial = i;
    T.final_state = f;
    T.add(i, h, {}, nop(), s1);
    for (const auto& a : T.input_alphabet) {
        T.add(s1, a, {}, nop(), s1);
        T.add(s1, a, {}, drop(1), s2);
        T.add(s2, a, {}, drop(2), s3);
        T.add(s2, a, {}, nop(), s4);
        T.add(s4, a, {}, nop(), s4);
        T.add(s4, a, {}, drop(2), s3);
        T.add(s3, a, {}, nop(), s3);
        T.add(back, a, {pebs_eq(1, 2)}, nop(), back, {Symbol("!")});
        T.add(back, a, {pebs_eq(1, 2, true)}, nop(), back, {a});
        T.add(l2, a, {head_at(2, true)}, nop(), l2);
        T.add(l2, a, {head_at(2)}, lift(2), l1);
        T.add(l1, a, {head_at(1, true)}, nop(), l1);
        T.add(l1, a, {head_at(1)}, lift(1), e);
        T.add(e, a, {}, nop(), e);
    }
    T.add(s3, h, {pebs_eq(1, 2)}, nop(), back, {Symbol("=")});
    T.add(s3, h, {pebs_eq(1, 2, true)}, nop(), back);
    T.add(back, h, {}, nop(), l2);
    T.add(l1, h, {}, nop(), l1);
    T.add(e, h, {}, nop(), f);
    T.output_alphabet = alphabet("ab!=");
    return T;
}

/// Reversible builtins with one defect each.
struct Mutant {
    std::string what;
    Transducer machine;
};

inline std::vector<Mutant> mutants() {
    const auto ab = alphabet("ab");
    std::vector<Mutant> out;
    {
        Transducer T = squaring(ab);  // same (q4,a) loop duplicated towards q5
        Transition t = T.transitions[0];
        for (const auto& x : T.transitions)
            if (T.state_names[x.from] == "q4" && !x.letter.is_endmarker()) t = x;
        t.to = T.state("q5");
        T.transitions.push_back(t);
        out.push_back({"duplicated q4 loop", T});
    }
    {
        Transducer T = squaring(ab);  // q5 loop loses its guard
        for (auto& x : T.transitions)
            if (T.state_names[x.from] == "q5" && x.from == x.to && x.letter == Symbol("a")) x.test = Test{};
        out.push_back({"unguarded q5 loop", T});
    }
    {
        Transducer T = iterated_reverse(ab);  // second edge into the same target
        Transition t = T.transitions.back();
        for (int q = 0; q < static_cast<int>(T.num_states()); ++q)
            if (q != t.from && q != T.final_state && T.polarity[q] == T.polarity[t.from]) {
                t.from = q;
                break;
            }
        T.transitions.push_back(t);
        out.push_back({"merged edge", T});
    }
    {
        Transducer T = all_prefixes_reversed(ab);  // drop a negated guard
        for (auto& x : T.transitions) {
            auto atoms = x.test.atoms();
            auto it = std::find_if(atoms.begin(), atoms.end(), [](const Atom& a) { return a.negated; });
            if (it != atoms.end()) {
                atoms.erase(it);
                x.test = Test(atoms);
                break;
            }
        }
        out.push_back({"lost negation", T});
    }
    return out;
}

/// Random machine over {a,b}; `keep` filters transitions as they are added.
enum class Keep { Any, Deterministic, Reversible };

inline Transducer random_machine(std::mt19937& rng, int n, int k, bool equality, Keep keep) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    Transducer T;
    T.name = "random";
    T.k = k;
    T.equality_tests = equality;
    T.input_alphabet = alphabet("ab");
    T.output_alphabet = alphabet("ab");
    T.initial = T.add_state("i", 0);
    T.final_state = T.add_state("f", 0);
    for (int q = 2; q < n; ++q) T.add_state("s" + std::to_string(q), pick(-1, 1));
    const std::vector<Symbol> letters = T.letters();
    auto atom = [&] {
        if (equality && k >= 2 && pick(0, 2) == 0) {
            int a = pick(1, k), b = pick(1, k);
            return pebs_eq(std::min(a, b), std::max(a, b), pick(0, 1) == 1);
        }
        return head_at(pick(1, k), pick(0, 1) == 1);
    };
    auto op = [&] {
        switch (pick(0, 3)) {
            case 1: return drop(pick(1, k));
            case 2: return lift(pick(1, k));
            default: return nop();
        }
    };
    auto accept = [&] {
        switch (keep) {
            case Keep::Any: return true;
            case Keep::Deterministic: return static_cast<bool>(is_deterministic(T));
            case Keep::Reversible: return is_reversible(T);
        }
        return true;
    };
    T.add(T.initial, endmarker(), {}, nop(), n > 2 ? pick(2, n - 1) : T.final_state);
    const int count = pick(3, 3 * n);
    for (int c = 0; c < count; ++c) {
        int from = pick(0, n - 1);
        if (from == T.final_state) continue;
        int to = pick(1, n - 1);
        std::vector<Atom> atoms;
        for (int a = pick(0, 2); a > 0; --a) atoms.push_back(atom());
        Word out;
        if (pick(0, 1)) out.push_back(letters[pick(0, 1)]);
        T.add(from, letters[pick(0, 2)], Test(atoms), op(), to, out);
        if (!accept()) T.transitions.pop_back();
    }
    return T;
}

}  // namespace fixture
