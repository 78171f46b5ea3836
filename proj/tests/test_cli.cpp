#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "ptx/analysis.hpp"
#include "ptx/builtins.hpp"
#include "ptx/cli.hpp"
#include "ptx/io.hpp"
#include "ptx/runner.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ptx;
namespace fs = std::filesystem;

namespace {

const auto ab = alphabet("ab");

struct Out {
    int code;
    std::string out, err;
};

Out cli(const std::vector<std::string>& args) {
    std::ostringstream o, e;
    int code = cli_main(args, o, e);
    return {code, o.str(), e.str()};
}

std::string corpus(const std::string& f) { return (fs::path(PTX_SOURCE_DIR) / "corpus" / f).string(); }

fs::path scratch() {
    fs::path d = fs::temp_directory_path() / "ptx_cli_test";
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("run") {
    auto r = cli({"run", corpus("squaring.ptx"), "--input", "ab"});
    CHECK(r.code == 0);
    CHECK(r.out == "_a b a _b\n");
    r = cli({"run", corpus("all_prefixes_reversed.ptx"), "-i", "abb"});
    CHECK(r.out == "a ! b a ! b b a !\n");
    r = cli({"run", corpus("squaring.ptx"), "--input", "ab", "--trace"});
    CHECK(r.code == 0);
    CHECK(r.err.find("q0") != std::string::npos);
    r = cli({"run", corpus("squaring.ptx"), "--input", "ab", "--budget", "3"});
    CHECK(r.code == 1);
    CHECK(r.out == "DIVERGE\n");
}

TEST_CASE("run on a nondeterministic machine lists every output") {
    const fs::path p = scratch() / "mark_one.ptx";
    save_machine(fixture::mark_one(), p);
    auto r = cli({"run", p.string(), "--input", "ab"});
    CHECK(r.code == 0);
    CHECK(r.out == "a _b\n_a b\n");
    r = cli({"run", p.string(), "--input", ""});
    CHECK(r.code == 1);
    CHECK(r.out == "REJECT\n");
}

TEST_CASE("a looping machine diverges within the default budget") {
    Transducer T;
    T.input_alphabet = ab;
    T.output_alphabet = ab;
    T.initial = T.add_state("i", 0);
    T.final_state = T.add_state("f", 0);
    int s = T.add_state("s", 1);
    T.add(T.initial, endmarker(), {}, nop(), s);
    for (const auto& a : ab) T.add(s, a, {}, nop(), s, {a});
    T.add(s, endmarker(), {}, nop(), s);
    const fs::path p = scratch() / "loop.ptx";
    save_machine(T, p);
    const Word u = oracle::w("ab");
    RunResult direct = run(T, u);
    CHECK(direct.verdict == Verdict::Diverge);
    CHECK(direct.steps == default_budget(T, u));
    CHECK(default_budget(T, u) == T.num_states() * 3 + 1);
    auto r = cli({"run", p.string(), "--input", "ab"});
    CHECK(r.code == 1);
    CHECK(r.out == "DIVERGE\n");
    r = cli({"run", p.string(), "--input", "ab", "--detect-loop"});
    CHECK(r.out == "DIVERGE\n");
    CHECK(r.err.find("repeated configuration") != std::string::npos);
}

TEST_CASE("check") {
    CHECK(cli({"check", corpus("squaring.ptx")}).code == 0);
    const fs::path p = scratch() / "mutant.ptx";
    save_machine(fixture::mutants().front().machine, p);
    auto r = cli({"check", p.string()});
    CHECK(r.code == 1);
    CHECK(r.out.find("reversible: no") != std::string::npos);
}

TEST_CASE("oracle compose") {
    auto r = cli({"oracle", "compose", corpus("modsq.ptx"), corpus("itrev.ptx"), "--maxlen", "4"});
    CHECK(r.code == 0);
    CHECK(r.out == "agree on 31 words\n");
    CHECK(cli({"oracle", "compose", corpus("modsq.ptx"), corpus("itrev.ptx"), "--maxlen", "40"}).code == 2);
}

TEST_CASE("machine-producing commands") {
    const fs::path d = scratch();
    auto r = cli({"compose", corpus("modsq.ptx"), corpus("itrev.ptx"), "-o", (d / "c.ptx").string()});
    REQUIRE(r.code == 0);
    Transducer C = load_machine(d / "c.ptx");
    CHECK(is_reversible(C));
    for (const auto& u : oracle::words(ab, 3))
        CHECK(*ptx::apply(C, u) == oracle::iterated_reverse(oracle::modified_squaring(u)));

    r = cli({"reverse", corpus("all_prefixes_reversed.ptx")});
    REQUIRE(r.code == 0);
    CHECK(oracle::str(*ptx::apply(parse_machine(r.out), oracle::w("abb"))) == "!abb!ab!a");

    REQUIRE(cli({"eliminate-eq", corpus("squaring.ptx"), "-o", (d / "e.ptx").string()}).code == 0);
    CHECK_FALSE(load_machine(d / "e.ptx").equality_tests);

    REQUIRE(cli({"normalize", corpus("squaring.ptx"), "--pass", "separate-moves", "-o", (d / "n.ptx").string()})
                .code == 0);
    CHECK(is_reversible(load_machine(d / "n.ptx")));
    CHECK(cli({"normalize", corpus("squaring.ptx"), "--pass", "bogus"}).code == 2);

    REQUIRE(cli({"decompose", corpus("squaring.ptx"), "-o", (d / "parts").string()}).code == 0);
    for (const auto* f : {"enumerator.ptx", "annotator.ptx", "simulator.ptx"}) CHECK(fs::exists(d / "parts" / f));

    r = cli({"uniformize", corpus("squaring.ptx"), "-o", (d / "u.ptx").string()});
    REQUIRE(r.code == 0);
    CHECK(r.err.find("not asserted") != std::string::npos);
    Transducer U = load_machine(d / "u.ptx");
    for (const auto& u : oracle::words(ab, 2)) CHECK(ptx::apply(U, u) == ptx::apply(squaring(ab), u));

    r = cli({"builtin", "copier", "--alphabet", "xyz"});
    REQUIRE(r.code == 0);
    CHECK(parse_machine(r.out).input_alphabet == alphabet("xyz"));
}

TEST_CASE("exit codes") {
    CHECK(cli({}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"run", "/nonexistent/machine.ptx", "--input", "a"}).code == 2);
    const fs::path bad = scratch() / "bad.ptx";
    {
        std::ofstream f(bad);
        f << "{ not json";
    }
    auto r = cli({"check", bad.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("syntax") != std::string::npos);

    const fs::path nd = scratch() / "mark_one.ptx";
    save_machine(fixture::mark_one(), nd);
    const fs::path cp = scratch() / "copier_marked.ptx";
    save_machine(copier(fixture::mark_one().output_alphabet), cp);
    CHECK(cli({"compose", nd.string(), cp.string()}).code == 3);
    CHECK(cli({"uniformize", nd.string()}).code == 3);
    CHECK(cli({"compose", corpus("squaring.ptx"), corpus("copier.ptx")}).code == 3);
}
