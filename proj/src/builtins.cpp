#include "ptx/builtins.hpp"

#include "ptx/uniformize.hpp"

#include <algorithm>
#include <set>

namespace ptx {

namespace {

const Symbol kBang("!");

void check_sigma(const std::vector<Symbol>& sigma) {
    for (auto& a : sigma)
        if (a.is_endmarker()) throw ReservedLetter("# cannot be an input letter");
}

std::vector<Symbol> dedup(std::vector<Symbol> v) {
    std::vector<Symbol> out;
    for (auto& s : v)
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    return out;
}

enum class Mark { Underline, Bang };

Transducer squaring_like(const std::vector<Symbol>& sigma, int q3_pol, Mark mark, const std::string& name) {
    check_sigma(sigma);
    Transducer T;
    T.name = name;
    T.k = 1;
    T.input_alphabet = dedup(sigma);
    const Symbol h = endmarker();
    int q0 = T.add_state("q0", 0);
    int q1 = T.add_state("q1", +1);
    int q2 = T.add_state("q2", 0);
    int q3 = T.add_state("q3", q3_pol);
    int q4 = T.add_state("q4", +1);
    int q5 = T.add_state("q5", +1);
    T.initial = q0;
    T.final_state = q2;
    const Test p1{head_at(1)}, np1{head_at(1, true)};
    T.add(q0, h, {}, nop(), q1);
    for (auto& a : T.input_alphabet) T.add(q1, a, {}, drop(1), q3);
    for (auto& a : T.input_alphabet) T.add(q3, a, np1, nop(), q3);
    T.add(q3, h, {}, nop(), q4);
    for (auto& a : T.input_alphabet) {
        T.add(q4, a, np1, nop(), q4, {a});
        T.add(q4, a, p1, nop(), q4, {mark == Mark::Bang ? kBang : marked(a)});
    }
    T.add(q4, h, {}, nop(), q5);
    for (auto& a : T.input_alphabet) T.add(q5, a, np1, nop(), q5);
    for (auto& a : T.input_alphabet) T.add(q5, a, {}, lift(1), q1);
    T.add(q1, h, {}, nop(), q2);

    T.output_alphabet = T.input_alphabet;
    for (auto& a : T.input_alphabet) T.output_alphabet.push_back(mark == Mark::Bang ? kBang : marked(a));
    T.output_alphabet = dedup(T.output_alphabet);
    return T;
}

}  // namespace

std::vector<Symbol> alphabet(const std::string& letters) { return dedup(word_from_string(letters)); }

Transducer squaring(const std::vector<Symbol>& sigma) { return squaring_like(sigma, +1, Mark::Underline, "squaring"); }

Transducer squaring_variant(const std::vector<Symbol>& sigma) {
    return squaring_like(sigma, -1, Mark::Underline, "squaring_variant");
}

Transducer modified_squaring(const std::vector<Symbol>& sigma) {
    return squaring_like(sigma, +1, Mark::Bang, "modified_squaring");
}

Transducer all_prefixes_reversed(const std::vector<Symbol>& sigma) {
    check_sigma(sigma);
    Transducer T;
    T.name = "all_prefixes_reversed";
    T.k = 1;
    T.input_alphabet = dedup(sigma);
    const Symbol h = endmarker();
    int q0 = T.add_state("q0", 0);
    int q1 = T.add_state("q1", +1);
    int q2 = T.add_state("q2", 0);
    int q3 = T.add_state("q3", -1);
    int q4 = T.add_state("q4", +1);
    T.initial = q0;
    T.final_state = q2;
    const Test np1{head_at(1, true)};
    T.add(q0, h, {}, nop(), q1);
    for (auto& a : T.input_alphabet) {
        T.add(q1, a, {}, drop(1), q3, {a});
        T.add(q3, a, np1, nop(), q3, {a});
        T.add(q4, a, np1, nop(), q4);
        T.add(q4, a, {}, lift(1), q1);
    }
    T.add(q3, h, {}, nop(), q4, {kBang});
    T.add(q1, h, {}, nop(), q2);
    T.output_alphabet = dedup([&] {
        auto v = T.input_alphabet;
        v.push_back(kBang);
        return v;
    }());
    return T;
}

Transducer iterated_reverse(const std::vector<Symbol>& sigma) {
    check_sigma(sigma);
    Transducer T;
    T.name = "iterated_reverse";
    T.k = 0;
    T.input_alphabet = dedup(sigma);
    if (std::find(T.input_alphabet.begin(), T.input_alphabet.end(), kBang) == T.input_alphabet.end())
        T.input_alphabet.push_back(kBang);
    T.output_alphabet = T.input_alphabet;
    const Symbol h = endmarker();
    int q0 = T.add_state("q0", 0);
    int q1 = T.add_state("q1", +1);
    int q2 = T.add_state("q2", -1);
    int q3 = T.add_state("q3", +1);
    int qf = T.add_state("qf", 0);
    T.initial = q0;
    T.final_state = qf;
    T.add(q0, h, {}, nop(), q1);
    for (auto& a : T.input_alphabet) {
        if (a == kBang) continue;
        T.add(q1, a, {}, nop(), q1);
        T.add(q2, a, {}, nop(), q2, {a});
        T.add(q3, a, {}, nop(), q3);
    }
    for (const Symbol& s : {h, kBang}) {
        T.add(q1, s, {}, nop(), q2);
        T.add(q2, s, {}, nop(), q3);
    }
    T.add(q3, kBang, {}, nop(), q1, {kBang});
    T.add(q3, h, {}, nop(), qf);
    return T;
}

Transducer copier(const std::vector<Symbol>& sigma) {
    check_sigma(sigma);
    Transducer T;
    T.name = "copier";
    T.input_alphabet = dedup(sigma);
    T.output_alphabet = T.input_alphabet;
    const Symbol h = endmarker();
    int q0 = T.add_state("q0", 0);
    int q1 = T.add_state("q1", +1);
    int qf = T.add_state("qf", 0);
    T.initial = q0;
    T.final_state = qf;
    T.add(q0, h, {}, nop(), q1);
    for (auto& a : T.input_alphabet) T.add(q1, a, {}, nop(), q1, {a});
    T.add(q1, h, {}, nop(), qf);
    return T;
}

std::vector<std::string> builtin_names() {
    return {"squaring", "squaring_variant", "modified_squaring", "all_prefixes_reversed", "iterated_reverse", "copier",
            "config_enumerator_1", "config_enumerator_2", "equality_annotator_1", "equality_annotator_2"};
}

Transducer builtin(const std::string& name, const std::vector<Symbol>& sigma) {
    if (name == "squaring") return squaring(sigma);
    if (name == "squaring_variant") return squaring_variant(sigma);
    if (name == "modified_squaring") return modified_squaring(sigma);
    if (name == "all_prefixes_reversed") return all_prefixes_reversed(sigma);
    if (name == "iterated_reverse") return iterated_reverse(sigma);
    if (name == "copier") return copier(sigma);
    auto suffix_k = [&](const std::string& prefix) -> int {
        if (name.rfind(prefix, 0) != 0) return 0;
        return std::stoi(name.substr(prefix.size()));
    };
    if (int k = suffix_k("config_enumerator_"); k > 0) return build_config_enumerator(k, sigma);
    if (int k = suffix_k("equality_annotator_"); k > 0) return build_equality_annotator(k, sigma);
    throw Error("unknown builtin: " + name);
}

}  // namespace ptx
