#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "ptx/analysis.hpp"
#include "ptx/builtins.hpp"
#include "ptx/runner.hpp"

using namespace ptx;
using oracle::w;

namespace {

const auto ab = alphabet("ab");

std::string out(const Transducer& T, const std::string& u) {
    auto r = ptx::apply(T, w(u));
    return r ? oracle::str(*r) : "REJECT";
}

Symbol rename(const Symbol& s, const std::map<std::string, std::string>& m) {
    Symbol r = s;
    if (auto it = m.find(s.base); it != m.end()) r.base = it->second;
    return r;
}

}  // namespace

TEST_CASE("squaring") {
    CHECK(out(squaring(ab), "a") == "_a");
    CHECK(render_word(*ptx::apply(squaring(ab), w("ab")), " ") == "_a b a _b");
    CHECK(out(squaring(ab), "") == "");
    for (const auto& u : oracle::words(ab, 5)) CHECK(*ptx::apply(squaring(ab), u) == oracle::squaring(u));
    for (const auto& u : oracle::words(ab, 4)) CHECK(*ptx::apply(squaring_variant(ab), u) == oracle::squaring(u));
}

TEST_CASE("modified squaring") {
    CHECK(out(modified_squaring(alphabet("bcd")), "bcd") == "!cdb!dbc!");
    CHECK(out(modified_squaring(ab), "a") == "!");
    for (const auto& u : oracle::words(ab, 4))
        CHECK(*ptx::apply(modified_squaring(ab), u) == oracle::modified_squaring(u));
}

TEST_CASE("all prefixes reversed") {
    CHECK(out(all_prefixes_reversed(ab), "abb") == "a!ba!bba!");
    CHECK(out(all_prefixes_reversed(ab), "") == "");
    for (const auto& u : oracle::words(ab, 5))
        CHECK(*ptx::apply(all_prefixes_reversed(ab), u) == oracle::all_prefixes_reversed(u));
}

TEST_CASE("iterated reverse") {
    Transducer I = iterated_reverse(alphabet("abc"));
    CHECK(out(I, "ab!c") == "ba!c");
    CHECK(out(I, "!") == "!");
    CHECK(out(I, "ab!a!") == "ba!a!");
    for (const auto& u : oracle::words(I.input_alphabet, 4)) CHECK(*ptx::apply(I, u) == oracle::iterated_reverse(u));
}

TEST_CASE("copier") {
    CHECK(out(copier(ab), "ab") == "ab");
    CHECK(out(copier(ab), "") == "");
}

TEST_CASE("every builtin is valid and reversible") {
    for (const auto& name : builtin_names()) {
        CAPTURE(name);
        Transducer T = builtin(name, ab);
        CHECK(validate(T).empty());
        CHECK(is_reversible(T));
    }
    CHECK_THROWS((void)builtin("nope", ab));
}

TEST_CASE("reserved letter") {
    CHECK_THROWS_AS((void)squaring({Symbol("a"), endmarker()}), ReservedLetter);
    CHECK_THROWS_AS((void)copier({endmarker()}), ReservedLetter);
    CHECK_THROWS_AS((void)iterated_reverse({endmarker()}), ReservedLetter);
}

TEST_CASE("builtins do not depend on the letters chosen") {
    const std::map<std::string, std::string> m{{"a", "x"}, {"b", "y"}};
    const auto xy = alphabet("xy");
    for (const auto& name : {"squaring", "squaring_variant", "modified_squaring", "all_prefixes_reversed",
                             "iterated_reverse", "copier"}) {
        CAPTURE(name);
        Transducer A = builtin(name, ab), X = builtin(name, xy);
        CHECK(A.num_states() == X.num_states());
        CHECK(A.transitions.size() == X.transitions.size());
        for (const auto& u : oracle::words(A.input_alphabet, 4)) {
            Word v;
            for (const auto& s : u) v.push_back(rename(s, m));
            auto a = ptx::apply(A, u), x = ptx::apply(X, v);
            REQUIRE(a.has_value() == x.has_value());
            if (!a) continue;
            Word renamed;
            for (const auto& s : *a) renamed.push_back(rename(s, m));
            CHECK(renamed == *x);
        }
    }
}
