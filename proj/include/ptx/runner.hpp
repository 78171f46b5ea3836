#pragma once

#include "ptx/core.hpp"

#include <cstdint>
#include <set>
#include <utility>

namespace ptx {

struct Configuration {
    int state = 0;
    Stack peb;
    int head = 0;

    auto operator<=>(const Configuration&) const = default;
    bool operator==(const Configuration&) const = default;
};

/// Letter of the circular word #u at position h.
[[nodiscard]] const Symbol& letter_at(const Word& u, int h);
/// h+d on epos(u), wrapping across #.
[[nodiscard]] int move_head(int h, int d, const Word& u);

using Edge = std::pair<int, Configuration>;  // transition index, configuration

[[nodiscard]] bool enabled(const Transducer& T, const Transition& t, const Configuration& c, const Word& u);
[[nodiscard]] std::vector<Edge> step(const Transducer& T, const Configuration& c, const Word& u);
[[nodiscard]] bool reverse_enabled(const Transducer& T, const Transition& t, const Configuration& c2, const Word& u);
/// The predecessor t⁻¹(C′), assuming reverse_enabled.
[[nodiscard]] Configuration predecessor(const Transducer& T, const Transition& t, const Configuration& c2, const Word& u);
[[nodiscard]] std::vector<Edge> step_back(const Transducer& T, const Configuration& c2, const Word& u);

enum class Verdict { Accept, Reject, Diverge };

struct RunResult {
    Verdict verdict = Verdict::Reject;
    Word output;  // meaningful on Accept
    std::uint64_t steps = 0;
    std::vector<Edge> trace;  // filled when requested; entry i is (t_i, C_i)
    std::optional<Configuration> repeated;  // set by loop detection
};

struct RunOptions {
    std::optional<std::uint64_t> budget;
    bool trace = false;
    bool detect_loop = false;
};

struct NondeterministicChoice : Error {
    using Error::Error;
};

/// |Q|·(|u|+1)^{k+1}·(k+1) + 1, saturating.
[[nodiscard]] std::uint64_t default_budget(const Transducer& T, const Word& u);

[[nodiscard]] RunResult run(const Transducer& T, const Word& u, const RunOptions& opt = {});

struct Enumeration {
    std::set<Word> outputs;
    bool truncated = false;
};

/// Outputs of all accepting runs that do not repeat a configuration. `truncated` is set when
/// a path was cut by the budget or by a repeated configuration, or the expansion cap was hit.
[[nodiscard]] Enumeration enumerate_runs(const Transducer& T, const Word& u,
                                         std::optional<std::uint64_t> budget = std::nullopt,
                                         std::uint64_t expansion_cap = 4'000'000);

/// Convenience: output of an accepting deterministic run, or nullopt.
[[nodiscard]] std::optional<Word> apply(const Transducer& T, const Word& u);

}  // namespace ptx
