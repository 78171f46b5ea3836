#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "ptx/analysis.hpp"
#include "ptx/builtins.hpp"
#include "ptx/transforms.hpp"
#include "ptx/uniformize.hpp"

using namespace ptx;

namespace {

const auto ab = alphabet("ab");

bool has(const std::vector<Violation>& v, ViolationKind k) {
    return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.kind == k; });
}

std::vector<Transducer> corpus() {
    return {squaring(ab),
            squaring_variant(ab),
            modified_squaring(ab),
            all_prefixes_reversed(ab),
            iterated_reverse(ab),
            copier(ab),
            build_config_enumerator(1, ab),
            build_config_enumerator(2, ab),
            fixture::pairs(),
            fixture::mark_one(),
            fixture::guess_equal()};
}

}  // namespace

TEST_CASE("validate") {
    CHECK(validate(squaring(ab)).empty());
    Transducer T = squaring(ab);
    T.add(T.final_state, endmarker(), {}, nop(), T.state("q1"));
    CHECK(has(validate(T), ViolationKind::FinalStateHasOutgoing));
    Transducer E = squaring(ab);
    E.add(E.state("q3"), Symbol("a"), {pebs_eq(1, 1)}, nop(), E.state("q3"));
    CHECK_FALSE(has(validate(E), ViolationKind::EqualityAtomInBasicMachine));
    E.k = 2;
    E.add(E.state("q3"), Symbol("b"), {pebs_eq(1, 2)}, nop(), E.state("q3"));
    CHECK(has(validate(E), ViolationKind::EqualityAtomInBasicMachine));
    Transducer I = squaring(ab);
    I.add(I.state("q1"), endmarker(), {}, nop(), I.initial);
    CHECK(has(validate(I), ViolationKind::InitialStateHasIncoming));
    Transducer P = squaring(ab);
    P.polarity[P.initial] = 1;
    CHECK(has(validate(P), ViolationKind::BadInitialOrFinal));
    Transducer X = squaring(ab);
    X.add(X.state("q3"), Symbol("a"), {head_at(2)}, nop(), X.state("q3"));
    CHECK(has(validate(X), ViolationKind::IndexOutOfRange));
    Transducer R = squaring(ab);
    R.input_alphabet.push_back(endmarker());
    CHECK(has(validate(R), ViolationKind::ReservedLetter));
    Transducer L = squaring(ab);
    L.add(L.state("q3"), Symbol("z"), {}, nop(), L.state("q3"));
    CHECK(has(validate(L), ViolationKind::LetterNotInAlphabet));
}

TEST_CASE("verdicts on builtins") {
    for (const auto& T : {squaring(ab), squaring_variant(ab), all_prefixes_reversed(ab), iterated_reverse(ab),
                          modified_squaring(ab), copier(ab)}) {
        CAPTURE(T.name);
        CHECK(is_deterministic(T));
        CHECK(is_reverse_deterministic(T));
        CHECK(is_reversible(T));
        CHECK(validate(T).empty());
    }
}

TEST_CASE("identical guards conflict") {
    Transducer T = copier(ab);
    T.transitions.push_back(T.transitions.back());
    auto d = is_deterministic(T);
    REQUIRE_FALSE(d);
    REQUIRE(d.witness);
    CHECK(d.witness->direction == Direction::Forward);
    CHECK(oracle::satisfiable(d.witness->joint_test, T.k));
    CHECK_FALSE(is_reversible(T));
    CHECK(describe(T, *d.witness).find("forward conflict") == 0);
}

TEST_CASE("two nop transitions into one state") {
    Transducer T;
    T.k = 1;
    T.input_alphabet = ab;
    T.initial = T.add_state("i", 0);
    T.final_state = T.add_state("f", 0);
    int x = T.add_state("x", 1), y = T.add_state("y", 1), z = T.add_state("z", 1);
    T.add(T.initial, endmarker(), {}, nop(), x);
    T.add(x, Symbol("a"), {}, nop(), z);
    T.add(y, Symbol("a"), {head_at(1, true)}, nop(), z);
    CHECK(is_deterministic(T));
    auto r = is_reverse_deterministic(T);
    REQUIRE_FALSE(r);
    CHECK(r.witness->direction == Direction::Backward);
    CHECK(oracle::satisfiable(r.witness->joint_test, T.k));
}

TEST_CASE("mutants are caught with satisfiable witnesses") {
    for (const auto& m : fixture::mutants()) {
        CAPTURE(m.what);
        CHECK_FALSE(is_reversible(m.machine));
        auto d = is_deterministic(m.machine);
        auto r = is_reverse_deterministic(m.machine);
        const auto& w = !d ? d.witness : r.witness;
        REQUIRE(w);
        CHECK(oracle::satisfiable(w->joint_test, m.machine.k));
    }
}

TEST_CASE("syntactic verdicts imply the semantic ones on every reachable configuration") {
    for (const auto& T : corpus()) {
        CAPTURE(T.name);
        const bool det = static_cast<bool>(is_deterministic(T));
        const bool rdet = static_cast<bool>(is_reverse_deterministic(T));
        for (const auto& u : oracle::words(T.input_alphabet, 4)) {
            auto s = oracle::semantic_check(T, u);
            if (det) CHECK(s.deterministic);
            if (rdet) CHECK(s.reverse_deterministic);
        }
    }
}

TEST_CASE("nondeterministic fixtures are semantically nondeterministic somewhere") {
    for (const auto& T : {fixture::mark_one(), fixture::guess_equal()}) {
        CHECK_FALSE(is_deterministic(T));
        bool seen = false;
        for (const auto& u : oracle::words(T.input_alphabet, 2)) seen = seen || !oracle::semantic_check(T, u).deterministic;
        CHECK(seen);
    }
}

TEST_CASE("reverse-determinism is determinism of the reversed machine") {
    for (const auto& T : {squaring(ab), all_prefixes_reversed(ab), iterated_reverse(ab), copier(ab)}) {
        Transducer R = reverse_transducer(T);
        CHECK(static_cast<bool>(is_deterministic(R)) == static_cast<bool>(is_reverse_deterministic(T)));
        CHECK(static_cast<bool>(is_reverse_deterministic(R)) == static_cast<bool>(is_deterministic(T)));
    }
}
