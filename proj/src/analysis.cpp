#include "ptx/analysis.hpp"

#include "ptx/transforms.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ptx {

std::string to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::BadInitialOrFinal: return "BadInitialOrFinal";
        case ViolationKind::FinalStateHasOutgoing: return "FinalStateHasOutgoing";
        case ViolationKind::InitialStateHasIncoming: return "InitialStateHasIncoming";
        case ViolationKind::EqualityAtomInBasicMachine: return "EqualityAtomInBasicMachine";
        case ViolationKind::IndexOutOfRange: return "IndexOutOfRange";
        case ViolationKind::UnknownState: return "UnknownState";
        case ViolationKind::LetterNotInAlphabet: return "LetterNotInAlphabet";
        case ViolationKind::OutputNotInAlphabet: return "OutputNotInAlphabet";
        case ViolationKind::ReservedLetter: return "ReservedLetter";
    }
    return "?";
}

std::vector<Violation> validate(const Transducer& T) {
    std::vector<Violation> v;
    const int n = static_cast<int>(T.num_states());
    auto name = [&](int q) { return q >= 0 && q < n ? T.state_names[q] : "#" + std::to_string(q); };
    auto ok_state = [&](int q) { return q >= 0 && q < n; };

    if (!ok_state(T.initial) || !ok_state(T.final_state))
        v.push_back({ViolationKind::UnknownState, "initial or final state undeclared"});
    else if (T.initial == T.final_state || T.polarity[T.initial] != 0 || T.polarity[T.final_state] != 0)
        v.push_back({ViolationKind::BadInitialOrFinal, "initial/final must be distinct polarity-0 states"});

    for (auto& a : T.input_alphabet)
        if (a.is_endmarker()) v.push_back({ViolationKind::ReservedLetter, "# in input alphabet"});
    std::set<Symbol> sigma(T.input_alphabet.begin(), T.input_alphabet.end());
    sigma.insert(endmarker());
    std::set<Symbol> gamma(T.output_alphabet.begin(), T.output_alphabet.end());

    for (std::size_t i = 0; i < T.transitions.size(); ++i) {
        const auto& t = T.transitions[i];
        const std::string where = "transition " + std::to_string(i) + " (" + name(t.from) + " -> " + name(t.to) + ")";
        if (!ok_state(t.from) || !ok_state(t.to)) {
            v.push_back({ViolationKind::UnknownState, where});
            continue;
        }
        if (t.from == T.final_state) v.push_back({ViolationKind::FinalStateHasOutgoing, where});
        if (t.to == T.initial) v.push_back({ViolationKind::InitialStateHasIncoming, where});
        if (!T.equality_tests && t.test.uses_equality())
            v.push_back({ViolationKind::EqualityAtomInBasicMachine, where + ": " + t.test.render()});
        if (t.test.max_index() > T.k || (!t.op.is_nop() && (t.op.index < 1 || t.op.index > T.k)))
            v.push_back({ViolationKind::IndexOutOfRange, where});
        if (!sigma.count(t.letter)) v.push_back({ViolationKind::LetterNotInAlphabet, where + ": " + t.letter.render()});
        for (auto& o : t.output)
            if (!gamma.count(o)) v.push_back({ViolationKind::OutputNotInAlphabet, where + ": " + o.render()});
    }
    return v;
}

namespace {

CheckResult pairwise(const Transducer& T, const std::vector<Transition>& ts, Direction dir, bool by_target) {
    std::map<std::pair<int, Symbol>, std::vector<int>> groups;
    for (int i = 0; i < static_cast<int>(ts.size()); ++i)
        groups[{by_target ? ts[i].to : ts[i].from, ts[i].letter}].push_back(i);
    for (auto& [key, ids] : groups) {
        for (std::size_t x = 0; x < ids.size(); ++x) {
            const auto& t1 = ts[ids[x]];
            Test g1 = t1.test & test_of_op(t1.op, T.k);
            if (!satisfiable(g1, T.k)) continue;
            for (std::size_t y = x + 1; y < ids.size(); ++y) {
                const auto& t2 = ts[ids[y]];
                Test joint = g1 & t2.test & test_of_op(t2.op, T.k);
                if (satisfiable(joint, T.k)) return {false, ConflictWitness{t1, t2, dir, joint}};
            }
        }
    }
    return {};
}

}  // namespace

CheckResult is_deterministic(const Transducer& T) { return pairwise(T, T.transitions, Direction::Forward, false); }

CheckResult is_reverse_deterministic(const Transducer& T) {
    // reversed guards, grouped by the shared target state
    std::vector<Transition> rev;
    rev.reserve(T.transitions.size());
    for (const auto& t : T.transitions)
        rev.push_back({t.from, t.letter, reverse_test_under_op(t.op, t.test), reverse_op(t.op), t.to, t.output});
    auto r = pairwise(T, rev, Direction::Backward, true);
    if (!r.ok) {
        // report the original transitions; the joint test stays over the successor configuration
        auto find = [&](const Transition& rt) {
            for (std::size_t i = 0; i < rev.size(); ++i)
                if (rev[i] == rt) return T.transitions[i];
            return rt;
        };
        r.witness->t1 = find(r.witness->t1);
        r.witness->t2 = find(r.witness->t2);
    }
    return r;
}

bool is_reversible(const Transducer& T) { return is_deterministic(T).ok && is_reverse_deterministic(T).ok; }

std::string describe(const Transducer& T, const ConflictWitness& w) {
    auto tr = [&](const Transition& t) {
        return T.state_names[t.from] + " --" + t.letter.render() + " / " + t.test.render() + " / " + t.op.render() +
               "--> " + T.state_names[t.to];
    };
    return std::string(w.direction == Direction::Forward ? "forward" : "backward") + " conflict: [" + tr(w.t1) +
           "] vs [" + tr(w.t2) + "] jointly satisfiable: " + w.joint_test.render();
}

}  // namespace ptx
