#include "ptx/runner.hpp"

#include <limits>

namespace ptx {

namespace {

const Symbol kHash = endmarker();

/// Per-state transition lists, built once per run.
struct Index {
    std::vector<std::vector<int>> out;
    std::vector<std::vector<int>> in;
    explicit Index(const Transducer& T) : out(T.num_states()), in(T.num_states()) {
        for (int i = 0; i < static_cast<int>(T.transitions.size()); ++i) {
            out[T.transitions[i].from].push_back(i);
            in[T.transitions[i].to].push_back(i);
        }
    }
};

std::optional<Configuration> fire(const Transducer& T, const Transition& t, const Configuration& c, const Word& u) {
    if (t.from != c.state || t.letter != letter_at(u, c.head)) return std::nullopt;
    if (!eval_test(t.test, c.peb, c.head)) return std::nullopt;
    auto peb = apply_op(t.op, c.peb, c.head);
    if (!peb) return std::nullopt;
    return Configuration{t.to, std::move(*peb), move_head(c.head, T.polarity[t.to], u)};
}

std::vector<Edge> successors(const Transducer& T, const Index& ix, const Configuration& c, const Word& u) {
    std::vector<Edge> res;
    for (int i : ix.out[c.state])
        if (auto n = fire(T, T.transitions[i], c, u)) res.emplace_back(i, std::move(*n));
    return res;
}

bool accepting(const Transducer& T, const Configuration& c) {
    return c.state == T.final_state && c.peb.empty() && c.head == 0;
}

}  // namespace

const Symbol& letter_at(const Word& u, int h) { return h == 0 ? kHash : u[h - 1]; }

int move_head(int h, int d, const Word& u) {
    const int n = static_cast<int>(u.size()) + 1;
    return ((h + d) % n + n) % n;
}

bool enabled(const Transducer& T, const Transition& t, const Configuration& c, const Word& u) {
    return fire(T, t, c, u).has_value();
}

std::vector<Edge> step(const Transducer& T, const Configuration& c, const Word& u) {
    return successors(T, Index(T), c, u);
}

bool reverse_enabled(const Transducer& T, const Transition& t, const Configuration& c2, const Word& u) {
    if (t.to != c2.state) return false;
    int h = move_head(c2.head, -T.polarity[t.to], u);
    if (t.letter != letter_at(u, h)) return false;
    auto peb = apply_op(reverse_op(t.op), c2.peb, h);
    return peb && eval_test(t.test, *peb, h);
}

Configuration predecessor(const Transducer& T, const Transition& t, const Configuration& c2, const Word& u) {
    int h = move_head(c2.head, -T.polarity[t.to], u);
    auto peb = apply_op(reverse_op(t.op), c2.peb, h);
    if (!peb) throw Error("predecessor: transition not reverse-enabled");
    return {t.from, *peb, h};
}

std::vector<Edge> step_back(const Transducer& T, const Configuration& c2, const Word& u) {
    std::vector<Edge> res;
    for (int i = 0; i < static_cast<int>(T.transitions.size()); ++i) {
        const auto& t = T.transitions[i];
        if (reverse_enabled(T, t, c2, u)) res.emplace_back(i, predecessor(T, t, c2, u));
    }
    return res;
}

std::uint64_t default_budget(const Transducer& T, const Word& u) {
    constexpr auto cap = std::numeric_limits<std::uint64_t>::max() / 4;
    std::uint64_t b = T.num_states() * static_cast<std::uint64_t>(T.k + 1);
    for (int i = 0; i <= T.k; ++i) {
        if (b > cap / (u.size() + 1)) return cap;
        b *= u.size() + 1;
    }
    return b + 1;
}

RunResult run(const Transducer& T, const Word& u, const RunOptions& opt) {
    Index ix(T);
    RunResult r;
    const std::uint64_t budget = opt.budget ? *opt.budget : default_budget(T, u);
    std::set<Configuration> seen;
    Configuration c{T.initial, {}, 0};
    while (true) {
        if (accepting(T, c)) {
            r.verdict = Verdict::Accept;
            return r;
        }
        if (opt.detect_loop && !seen.insert(c).second) {
            r.verdict = Verdict::Diverge;
            r.repeated = c;
            return r;
        }
        if (r.steps >= budget) {
            r.verdict = Verdict::Diverge;
            return r;
        }
        auto next = successors(T, ix, c, u);
        if (next.empty()) {
            r.verdict = Verdict::Reject;
            return r;
        }
        if (next.size() > 1)
            throw NondeterministicChoice("two transitions enabled in state " + T.state_names[c.state] +
                                         " at head " + std::to_string(c.head));
        const auto& t = T.transitions[next[0].first];
        r.output.insert(r.output.end(), t.output.begin(), t.output.end());
        if (opt.trace) r.trace.push_back(next[0]);
        c = std::move(next[0].second);
        ++r.steps;
    }
}

Enumeration enumerate_runs(const Transducer& T, const Word& u, std::optional<std::uint64_t> budget,
                           std::uint64_t expansion_cap) {
    Index ix(T);
    Enumeration e;
    const std::uint64_t limit = budget ? *budget : default_budget(T, u);
    struct Frame {
        Configuration c;
        std::vector<Edge> next;
        std::size_t pos = 0;
        std::size_t out_len = 0;  // output length before entering c
    };
    std::set<Configuration> on_path;
    std::vector<Frame> stack;
    Word out;
    std::uint64_t expansions = 0;

    auto enter = [&](Configuration c, std::size_t out_len) {
        on_path.insert(c);
        Frame f{std::move(c), {}, 0, out_len};
        if (!accepting(T, f.c)) f.next = successors(T, ix, f.c, u);
        stack.push_back(std::move(f));
    };
    enter({T.initial, {}, 0}, 0);
    if (accepting(T, stack.back().c)) e.outputs.insert(out);
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.pos == f.next.size()) {
            on_path.erase(f.c);
            out.resize(f.out_len);
            stack.pop_back();
            continue;
        }
        auto [ti, nc] = f.next[f.pos++];
        if (++expansions > expansion_cap) {
            e.truncated = true;
            break;
        }
        if (stack.size() > limit || on_path.count(nc)) {
            e.truncated = true;
            continue;
        }
        const std::size_t before = out.size();
        const auto& t = T.transitions[ti];
        out.insert(out.end(), t.output.begin(), t.output.end());
        if (accepting(T, nc)) {
            e.outputs.insert(out);
            out.resize(before);
            continue;
        }
        enter(std::move(nc), before);
    }
    return e;
}

std::optional<Word> apply(const Transducer& T, const Word& u) {
    auto r = run(T, u);
    if (r.verdict != Verdict::Accept) return std::nullopt;
    return r.output;
}

}  // namespace ptx
