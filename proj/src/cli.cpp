#include "ptx/cli.hpp"

#include "ptx/analysis.hpp"
#include "ptx/builtins.hpp"
#include "ptx/compose.hpp"
#include "ptx/io.hpp"
#include "ptx/runner.hpp"
#include "ptx/transforms.hpp"
#include "ptx/uniformize.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <functional>
#include <ostream>

namespace ptx {

namespace {

struct Precondition : Error {
    using Error::Error;
};

void emit(const Transducer& T, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-")
        out << serialize_machine(T);
    else
        save_machine(T, path);
}

std::string render_config(const Transducer& T, const Configuration& c) {
    std::string s = "(" + T.state_names[c.state] + ",[";
    for (std::size_t i = 0; i < c.peb.size(); ++i) s += (i ? "," : "") + std::to_string(c.peb[i]);
    return s + "]," + std::to_string(c.head) + ")";
}

/// All words over sigma up to length n, shortest first.
std::vector<Word> words_up_to(const std::vector<Symbol>& sigma, int n) {
    std::vector<Word> all{{}};
    std::vector<Word> layer{{}};
    for (int len = 1; len <= n; ++len) {
        std::vector<Word> next;
        for (const auto& w : layer)
            for (const auto& a : sigma) {
                Word x = w;
                x.push_back(a);
                next.push_back(x);
            }
        all.insert(all.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return all;
}

int cmd_run(const std::string& path, const std::string& input, std::optional<std::uint64_t> budget, bool trace,
            bool detect_loop, std::ostream& out, std::ostream& err) {
    Transducer T = load_machine(path);
    Word u = parse_word(input);
    if (!is_deterministic(T)) {
        Enumeration e = enumerate_runs(T, u, budget);
        for (const auto& w : e.outputs) out << render_word(w, " ") << "\n";
        if (e.truncated) err << "note: some runs were cut off (budget or repeated configuration)\n";
        if (e.outputs.empty()) {
            out << "REJECT\n";
            return kNegative;
        }
        return kOk;
    }
    RunOptions opt;
    opt.budget = budget;
    opt.trace = trace;
    opt.detect_loop = detect_loop;
    RunResult r = run(T, u, opt);
    if (trace) {
        err << "0 " << render_config(T, Configuration{T.initial, {}, 0}) << "\n";
        for (std::size_t i = 0; i < r.trace.size(); ++i) {
            const auto& [ti, c] = r.trace[i];
            const Transition& t = T.transitions[ti];
            err << i + 1 << " " << T.state_names[t.from] << " -" << t.letter.render() << "," << t.test.render() << ","
                << t.op.render() << "-> " << T.state_names[t.to] << " | " << render_word(t.output, " ") << "  "
                << render_config(T, c) << "\n";
        }
    }
    switch (r.verdict) {
        case Verdict::Accept: out << render_word(r.output, " ") << "\n"; return kOk;
        case Verdict::Reject: out << "REJECT\n"; return kNegative;
        case Verdict::Diverge:
            out << "DIVERGE\n";
            if (r.repeated) err << "repeated configuration " << render_config(T, *r.repeated) << "\n";
            return kNegative;
    }
    return kNegative;
}

int cmd_check(const std::string& path, std::ostream& out) {
    Transducer T = load_machine(path);
    auto violations = validate(T);
    out << "valid: " << (violations.empty() ? "yes" : "no") << "\n";
    for (const auto& v : violations) out << "  " << to_string(v.kind) << ": " << v.detail << "\n";
    auto det = is_deterministic(T);
    out << "deterministic: " << (det ? "yes" : "no") << "\n";
    if (!det) out << "  " << describe(T, *det.witness) << "\n";
    auto rdet = is_reverse_deterministic(T);
    out << "reverse-deterministic: " << (rdet ? "yes" : "no") << "\n";
    if (!rdet) out << "  " << describe(T, *rdet.witness) << "\n";
    const bool rev = det && rdet;
    out << "reversible: " << (rev ? "yes" : "no") << "\n";
    return rev && violations.empty() ? kOk : kNegative;
}

int cmd_oracle_compose(const std::string& p1, const std::string& p2, int maxlen, std::ostream& out) {
    Transducer T = load_machine(p1), Tp = load_machine(p2);
    Transducer C = compose(T, Tp);
    std::size_t checked = 0;
    for (const Word& u : words_up_to(T.input_alphabet, maxlen)) {
        std::optional<Word> mid = ptx::apply(T, u);
        std::optional<Word> want = mid ? ptx::apply(Tp, *mid) : std::nullopt;
        std::optional<Word> got = ptx::apply(C, u);
        ++checked;
        if (want != got) {
            out << "mismatch on '" << render_word(u) << "': expected " << (want ? render_word(*want, " ") : "REJECT")
                << ", composed " << (got ? render_word(*got, " ") : "REJECT") << "\n";
            return kNegative;
        }
    }
    out << "agree on " << checked << " words\n";
    return kOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"pebble transducer toolkit", "ptx"};
    app.require_subcommand(1);

    std::string machine, machine2, output, input, pass, hook = "identity", name, alpha = "ab";
    std::optional<std::uint64_t> budget;
    bool trace = false, detect_loop = false;
    int maxlen = 3;
    std::function<int()> action;

    auto* run_cmd = app.add_subcommand("run", "run a machine on a word");
    run_cmd->add_option("machine", machine)->required();
    run_cmd->add_option("--input,-i", input, "input word; `_` marks the next letter")->required();
    run_cmd->add_option("--budget", budget, "step budget (default: the configuration-count bound)");
    run_cmd->add_flag("--trace", trace, "print the run to stderr");
    run_cmd->add_flag("--detect-loop", detect_loop, "keep visited configurations and report a repeated one");
    run_cmd->callback(
        [&] { action = [&] { return cmd_run(machine, input, budget, trace, detect_loop, out, err); }; });

    auto* check_cmd = app.add_subcommand("check", "validate and check determinism and reversibility");
    check_cmd->add_option("machine", machine)->required();
    check_cmd->callback([&] { action = [&] { return cmd_check(machine, out); }; });

    auto unary = [&](const char* cmd, const char* help, std::function<Transducer(const Transducer&)> f) {
        auto* sc = app.add_subcommand(cmd, help);
        sc->add_option("machine", machine)->required();
        sc->add_option("-o,--output", output);
        sc->callback([&, f] {
            action = [&, f] {
                emit(f(load_machine(machine)), output, out);
                return kOk;
            };
        });
        return sc;
    };
    unary("reverse", "reverse a reversible machine", [](const Transducer& T) { return reverse_transducer(T); });
    unary("eliminate-eq", "remove equality tests", [](const Transducer& T) { return eliminate_equality(T); });

    auto* norm = unary("normalize", "apply a normalization pass", [&](const Transducer& T) {
        if (pass == "split-outputs") return split_outputs(T);
        if (pass == "full-read") return T.k == 0 ? ensure_full_read(T) : add_full_read_sweep(T);
        return separate_drop_lift_moves(T);
    });
    norm->add_option("--pass", pass)->required()->check(CLI::IsMember({"split-outputs", "full-read", "separate-moves"}));

    auto* comp = app.add_subcommand("compose", "compose a reversible machine with a deterministic one");
    comp->add_option("first", machine)->required();
    comp->add_option("second", machine2)->required();
    comp->add_option("-o,--output", output);
    comp->callback([&] {
        action = [&] {
            emit(compose(load_machine(machine), load_machine(machine2)), output, out);
            return kOk;
        };
    });

    auto* dec = app.add_subcommand("decompose", "write the enumerator, annotator and simulator");
    dec->add_option("machine", machine)->required();
    dec->add_option("-o,--output", output, "output directory")->required();
    dec->callback([&] {
        action = [&] {
            Decomposition D = decompose(load_machine(machine));
            std::filesystem::create_directories(output);
            save_machine(D.enumerator, std::filesystem::path(output) / "enumerator.ptx");
            save_machine(D.annotator, std::filesystem::path(output) / "annotator.ptx");
            save_machine(D.simulator, std::filesystem::path(output) / "simulator.ptx");
            out << "enumerator: " << D.enumerator.num_states() << " states\n"
                << "annotator: " << D.annotator.num_states() << " states\n"
                << "simulator: " << D.simulator.num_states() << " states\n";
            return kOk;
        };
    });

    auto* uni = app.add_subcommand("uniformize", "run the uniformization pipeline");
    uni->add_option("machine", machine)->required();
    uni->add_option("--hook", hook)->check(CLI::IsMember({"identity"}));
    uni->add_option("-o,--output", output);
    uni->callback([&] {
        action = [&] {
            Uniformization U = uniformize_pipeline(load_machine(machine), identity_hook());
            err << "hook: " << U.report.hook << "\n"
                << "deterministic: " << (U.report.deterministic ? "yes" : "no") << "\n"
                << "reversible: " << (U.report.reversible ? "yes" : "no") << "\n"
                << "pebbles: " << U.report.pebbles << "\n"
                << "states: " << U.report.states << "\n"
                << "note: " << U.report.note << "\n";
            emit(*U.machine, output, out);
            return kOk;
        };
    });

    auto* bi = app.add_subcommand("builtin", "write a builtin machine");
    bi->add_option("name", name)->required()->check(CLI::IsMember(builtin_names()));
    bi->add_option("--alphabet", alpha, "input letters");
    bi->add_option("-o,--output", output);
    bi->callback([&] {
        action = [&] {
            emit(builtin(name, alphabet(alpha)), output, out);
            return kOk;
        };
    });

    auto* oracle = app.add_subcommand("oracle", "differential checks");
    oracle->require_subcommand(1);
    auto* oc = oracle->add_subcommand("compose", "compare compose(T,T') with running T then T'");
    oc->add_option("first", machine)->required();
    oc->add_option("second", machine2)->required();
    oc->add_option("--maxlen", maxlen)->check(CLI::Range(0, 12));
    oc->callback([&] { action = [&] { return cmd_oracle_compose(machine, machine2, maxlen, out); }; });

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kIoError;
    }
    try {
        return action ? action() : kIoError;
    } catch (const FileError& e) {
        err << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const NotReversible& e) {
        err << "error: " << e.what() << "\n";
        return kPrecondition;
    } catch (const NotDeterministic& e) {
        err << "error: " << e.what() << "\n";
        return kPrecondition;
    } catch (const AlphabetMismatch& e) {
        err << "error: " << e.what() << "\n";
        return kPrecondition;
    } catch (const HookRequired& e) {
        err << "error: " << e.what() << "\n";
        return kPrecondition;
    } catch (const NondeterministicChoice& e) {
        err << "error: " << e.what() << "\n";
        return kPrecondition;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kPrecondition;
    }
}

}  // namespace ptx
