#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "ptx/core.hpp"

#include <random>

using namespace ptx;

namespace {

std::vector<PebbleOp> ops(int k) {
    std::vector<PebbleOp> v{nop()};
    for (int i = 1; i <= k; ++i) {
        v.push_back(drop(i));
        v.push_back(lift(i));
    }
    return v;
}

}  // namespace

TEST_CASE("test_of_op") {
    CHECK(test_of_op(nop(), 2).is_true());
    CHECK(test_of_op(drop(1), 2) == Test{pebs_eq(1, 1, true)});
    CHECK(test_of_op(lift(2), 2) == Test{head_at(2)});
    CHECK(test_of_op(drop(2), 2) == (Test{pebs_eq(1, 1), pebs_eq(2, 2, true)}));
    CHECK(test_of_op(lift(1), 2) == (Test{head_at(1), pebs_eq(2, 2, true)}));
}

TEST_CASE("eval_test") {
    CHECK(eval_test({head_at(1)}, {3}, 3));
    CHECK_FALSE(eval_test({pebs_eq(1, 1)}, {}, 0));
    CHECK(eval_test({head_at(2, true)}, {1}, 1));
    CHECK_FALSE(eval_test(Test::falsity(), {}, 0));
    CHECK(eval_test(Test::truth(), {}, 0));
}

TEST_CASE("apply_op and reverse_op") {
    CHECK(apply_op(drop(1), {}, 2) == Stack{2});
    CHECK_FALSE(apply_op(lift(1), {2}, 3).has_value());
    CHECK(apply_op(nop(), {0, 4}, 1) == Stack{0, 4});
    CHECK_FALSE(apply_op(drop(2), {}, 1).has_value());
    CHECK(reverse_op(drop(3)) == lift(3));
    CHECK(reverse_op(nop()) == nop());
    CHECK(reverse_op(reverse_op(lift(1))) == lift(1));
}

TEST_CASE("shift") {
    CHECK(shift_test({head_at(1), pebs_eq(1, 2, true)}, 2) == (Test{head_at(3), pebs_eq(3, 4, true)}));
    CHECK(shift_op(drop(1), 3) == drop(4));
    CHECK(shift_test(Test::truth(), 5).is_true());
    CHECK(shift_op(nop(), 2) == nop());
}

TEST_CASE("satisfiable examples") {
    CHECK_FALSE(satisfiable({head_at(1), pebs_eq(1, 1, true)}, 1));
    CHECK_FALSE(satisfiable(test_of_op(lift(1), 2) & Test{head_at(1, true)}, 2));
    CHECK_FALSE(satisfiable({pebs_eq(1, 2), head_at(1, true), head_at(2)}, 2));
    CHECK(satisfiable({pebs_eq(1, 2), head_at(1, true)}, 2));
    CHECK_FALSE(satisfiable(Test::falsity(), 2));
    CHECK(satisfiable(Test::truth(), 0));
}

TEST_CASE("test normal form") {
    Test a{head_at(1), head_at(1), pebs_eq(2, 1)};
    Test b{pebs_eq(1, 2), head_at(1)};
    CHECK(a == b);
    CHECK((Test{head_at(1), head_at(1, true)}).is_false());
}

TEST_CASE("op round trip and test(op) agree with apply_op, exhaustively") {
    for (int k = 1; k <= 3; ++k)
        oracle::each_config(k, 4, [&](const std::vector<int>& peb, int h) {
            for (const auto& op : ops(k)) {
                auto after = apply_op(op, peb, h);
                CHECK(eval_test(test_of_op(op, k), peb, h) == after.has_value());
                if (after) {
                    CHECK(apply_op(reverse_op(op), *after, h) == Stack(peb));
                    CHECK(eval_test(test_of_op(reverse_op(op), k), *after, h));
                }
            }
        });
}

TEST_CASE("eval_test matches the oracle and is monotone under conjunction") {
    std::mt19937 rng(7);
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    for (int round = 0; round < 300; ++round) {
        const int k = pick(1, 3);
        auto atom = [&] {
            int i = pick(1, k), j = pick(1, k);
            return pick(0, 1) ? head_at(i, pick(0, 1)) : pebs_eq(std::min(i, j), std::max(i, j), pick(0, 1));
        };
        Test t1{atom(), atom()}, t2{atom()};
        oracle::each_config(k, 3, [&](const std::vector<int>& peb, int h) {
            CHECK(eval_test(t1, peb, h) == oracle::holds(t1, peb, h));
            CHECK(eval_test(t1 & t2, peb, h) == (eval_test(t1, peb, h) && eval_test(t2, peb, h)));
        });
        CHECK(satisfiable(t1 & t2, k) == oracle::satisfiable(t1 & t2, k));
    }
}

TEST_CASE("symbols") {
    Symbol a("a");
    CHECK(marked(a).render() == "_a");
    CHECK(marked(marked(a)).render() == "__a");
    CHECK(endmarker().is_endmarker());
    CHECK_FALSE(Symbol("#", BitVec{true}).is_endmarker());
    CHECK(word_from_string("ab!").size() == 3);
    CHECK(code_points("aé!").size() == 3);
}

TEST_CASE("transducer states") {
    Transducer T;
    int q = T.add_state("q", 1);
    CHECK(T.state("q") == q);
    CHECK(T.ensure_state("q", -1) == q);
    CHECK(T.polarity[q] == 1);
    CHECK_THROWS_AS((void)T.state("nope"), Error);
}
