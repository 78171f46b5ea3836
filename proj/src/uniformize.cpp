#include "ptx/uniformize.hpp"

#include "ptx/analysis.hpp"
#include "ptx/compose.hpp"
#include "ptx/runner.hpp"
#include "ptx/transforms.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace ptx {

namespace {

std::vector<BitVec> all_bits(int k) {
    std::vector<BitVec> out;
    for (unsigned m = 0; m < (1u << k); ++m) {
        BitVec b(k);
        for (int i = 0; i < k; ++i) b[i] = (m >> (k - 1 - i)) & 1u;
        out.push_back(b);
    }
    return out;
}

BoolMatrix ones(int k) { return BoolMatrix(k, std::vector<bool>(k, true)); }

/// Full guard: h=p_i exactly where b_i.
Test bit_test(const BitVec& b) {
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < b.size(); ++i) atoms.push_back(head_at(static_cast<int>(i) + 1, !b[i]));
    return Test(std::move(atoms));
}

std::string matrix_name(const BoolMatrix& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) s += ";";
        for (bool x : m[i]) s += x ? '1' : '0';
    }
    return s + "]";
}

bool disjoint(const BoolMatrix& a, const BoolMatrix& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if (a[i][j] && b[i][j]) return false;
    return true;
}

BoolMatrix matrix_or(BoolMatrix a, const BoolMatrix& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) a[i][j] = a[i][j] || b[i][j];
    return a;
}

BoolMatrix matrix_minus(BoolMatrix a, const BoolMatrix& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) a[i][j] = a[i][j] && !b[i][j];
    return a;
}

bool full_diagonal(const BoolMatrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        if (!m[i][i]) return false;
    return true;
}

std::vector<Symbol> plain_letters(const std::vector<Symbol>& sigma) {
    std::vector<Symbol> out;
    for (const auto& a : sigma) {
        if (a.bits || a.matrix) throw Error("annotated letter " + a.render() + " not supported here");
        if (a.is_endmarker()) throw Error("# cannot be an input letter");
        if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
    }
    return out;
}

/// All equivalence relations on k elements, as matrices.
std::vector<BoolMatrix> equivalences(int k) {
    std::vector<BoolMatrix> out;
    std::vector<int> block(k, 0);
    // restricted growth strings
    std::function<void(int, int)> go = [&](int i, int used) {
        if (i == k) {
            BoolMatrix m(k, std::vector<bool>(k));
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b) m[a][b] = block[a] == block[b];
            out.push_back(m);
            return;
        }
        for (int c = 0; c <= used; ++c) {
            block[i] = c;
            go(i + 1, std::max(used, c + 1));
        }
    };
    go(0, 0);
    return out;
}

void enumerator_level(Transducer& T, int p, int k, const std::vector<Symbol>& sigma, int& entry, int& exit) {
    const std::string sfx = p == 1 ? "" : "." + std::to_string(p);
    auto st = [&](int i, int pol) { return T.add_state("q" + std::to_string(i) + sfx, pol); };
    const Symbol h = endmarker();
    int q0 = st(0, 0), q1 = st(1, +1), q2 = st(2, 0), q3 = st(3, +1), q5 = st(5, +1);
    entry = q0;
    exit = q2;
    const Test np{head_at(p, true)};
    T.add(q0, h, {}, drop(p), q3);
    for (const auto& a : sigma) {
        T.add(q1, a, {}, drop(p), q3);
        T.add(q3, a, np, nop(), q3);
    }
    if (p == k) {
        int q4 = st(4, +1);
        for (const auto& b : all_bits(k)) {
            T.add(q3, h, bit_test(b), nop(), q4, {Symbol("#", b)});
            for (const auto& a : sigma) T.add(q4, a, bit_test(b), nop(), q4, {Symbol(a.base, b)});
        }
        T.add(q4, h, {}, nop(), q5);
    } else {
        int in = 0, out = 0;
        enumerator_level(T, p + 1, k, sigma, in, out);
        T.add(q3, h, {}, nop(), in);
        T.add(out, h, {}, nop(), q5);
    }
    for (const auto& a : sigma) T.add(q5, a, np, nop(), q5);
    for (const auto& a : T.letters()) T.add(q5, a, {}, lift(p), q1);
    T.add(q1, h, {}, nop(), q2);
}

}  // namespace

BoolMatrix matrix_of_bits(const BitVec& b) {
    BoolMatrix m(b.size(), std::vector<bool>(b.size()));
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) m[i][j] = b[i] && b[j];
    return m;
}

std::vector<Symbol> annotated_alphabet(int k, const std::vector<Symbol>& sigma) {
    std::vector<Symbol> bases{endmarker()};
    for (const auto& a : plain_letters(sigma)) bases.push_back(a);
    const auto eqs = equivalences(k);
    std::vector<Symbol> out;
    for (const auto& s : bases)
        for (const auto& b : all_bits(k))
            for (const auto& m : eqs) out.emplace_back(s.base, b, m);
    return out;
}

Transducer build_config_enumerator(int k, const std::vector<Symbol>& sigma) {
    if (k < 1) throw Error("config enumerator needs k >= 1");
    Transducer T;
    T.name = "config_enumerator_" + std::to_string(k);
    T.k = k;
    T.input_alphabet = plain_letters(sigma);
    int in = 0, out = 0;
    enumerator_level(T, 1, k, T.input_alphabet, in, out);
    T.initial = in;
    T.final_state = out;
    for (const auto& s : T.letters())
        for (const auto& b : all_bits(k)) T.output_alphabet.emplace_back(s.base, b);
    return T;
}

Transducer build_equality_annotator(int k, const std::vector<Symbol>& sigma) {
    if (k < 1) throw Error("equality annotator needs k >= 1");
    const auto letters = plain_letters(sigma);
    Transducer T;
    T.name = "equality_annotator_" + std::to_string(k);
    for (const auto& s : std::vector<Symbol>{endmarker()})
        for (const auto& b : all_bits(k)) T.input_alphabet.emplace_back(s.base, b);
    for (const auto& a : letters)
        for (const auto& b : all_bits(k)) T.input_alphabet.emplace_back(a.base, b);
    T.output_alphabet = annotated_alphabet(k, letters);

    const Symbol h = endmarker();
    const BoolMatrix m1 = ones(k);
    int pi = T.add_state("pi", 0);
    int pf = T.add_state("pf", 0);
    int r = T.add_state("r", +1);
    T.initial = pi;
    T.final_state = pf;

    std::map<std::pair<char, BoolMatrix>, int> ids;
    std::deque<std::pair<char, BoolMatrix>> work;
    auto get = [&](char mode, const BoolMatrix& m) {
        auto key = std::make_pair(mode, m);
        if (auto it = ids.find(key); it != ids.end()) return it->second;
        const int pol = (mode == 'c' || mode == 'w') ? +1 : -1;
        int id = T.add_state(std::string(1, mode) + matrix_name(m), pol);
        ids.emplace(key, id);
        work.push_back(key);
        return id;
    };

    const auto bits = all_bits(k);
    // the first copy is entered through the reset state like every later one
    T.add(pi, h, {}, nop(), r);
    for (const auto& b : bits) {
        for (const auto& a : letters) T.add(r, Symbol(a.base, b), {}, nop(), r);
        T.add(r, Symbol("#", b), {}, nop(), get('c', matrix_of_bits(b)));
    }
    while (!work.empty()) {
        auto [mode, m] = work.front();
        work.pop_front();
        const int src = ids.at({mode, m});
        for (const auto& b : bits) {
            const BoolMatrix mb = matrix_of_bits(b);
            const Symbol hb("#", b);
            switch (mode) {
                case 'c':
                    for (const auto& a : letters)
                        if (disjoint(m, mb)) T.add(src, Symbol(a.base, b), {}, nop(), get('c', matrix_or(m, mb)));
                    if (full_diagonal(m)) T.add(src, hb, {}, nop(), get('l', m));
                    break;
                case 'l':
                    for (const auto& a : letters) T.add(src, Symbol(a.base, b), {}, nop(), src);
                    T.add(src, hb, {}, nop(), get('w', m), {Symbol("#", b, m)});
                    break;
                case 'w':
                    for (const auto& a : letters) T.add(src, Symbol(a.base, b), {}, nop(), src, {Symbol(a.base, b, m)});
                    T.add(src, hb, {}, nop(), get('u', m));
                    break;
                case 'u':
                    for (const auto& a : letters)
                        if (disjoint(matrix_minus(m, mb), mb) && matrix_or(matrix_minus(m, mb), mb) == m)
                            T.add(src, Symbol(a.base, b), {}, nop(), get('u', matrix_minus(m, mb)));
                    if (m == mb) T.add(src, hb, {}, nop(), r);
                    break;
            }
        }
        if (m == m1 && mode == 'c') T.add(src, h, {}, nop(), get('l', m1));
        if (m == m1 && mode == 'w') T.add(src, h, {}, nop(), pf);
    }
    return T;
}

Decomposition decompose(const Transducer& T) {
    if (T.k < 1) throw Error("decompose: machine " + T.name + " has no pebbles");
    if (auto v = validate(T); !v.empty()) throw Error("decompose: invalid machine: " + v.front().detail);
    const int k = T.k;
    Decomposition D;
    D.normalized = is_reversible(T) ? separate_drop_lift_moves(T) : split_pebble_moves(T);
    D.enumerator = build_config_enumerator(k, T.input_alphabet);
    D.annotator = build_equality_annotator(k, T.input_alphabet);
    const Transducer& N = D.normalized;

    Transducer& S = D.simulator;
    S.name = T.name + "_simulator";
    S.input_alphabet = annotated_alphabet(k, T.input_alphabet);
    S.output_alphabet = T.output_alphabet;

    auto plus = [&](const BitVec& b, int i) {
        for (int j = i + 1; j <= k; ++j)
            if (!b[j - 1]) return false;
        return true;
    };
    auto holds = [&](const Test& t, const BitVec& b, const BoolMatrix& m, int i) {
        if (t.is_false()) return false;
        for (const Atom& a : t.atoms()) {
            bool v = a.kind == AtomKind::HeadPeb ? a.i <= i && b[a.i - 1]
                                                 : a.i <= i && a.j <= i && m[a.i - 1][a.j - 1];
            if (v == a.negated) return false;
        }
        return true;
    };

    enum Mode : int { Sim = 0, Right = 1, Left = -1 };
    using Key = std::tuple<int, int, int>;  // q, i, mode
    std::map<Key, int> ids;
    std::deque<Key> work;
    auto get = [&](int q, int i, int mode) {
        Key key{q, i, mode};
        if (auto it = ids.find(key); it != ids.end()) return it->second;
        const char* tag = mode == Sim ? "s" : mode == Right ? "mr" : "ml";
        int id = S.add_state("(" + N.state_names[q] + "," + std::to_string(i) + "," + tag + ")", mode);
        ids.emplace(key, id);
        work.push_back(key);
        return id;
    };
    std::vector<std::vector<int>> out(N.num_states());
    for (int ti = 0; ti < static_cast<int>(N.transitions.size()); ++ti) out[N.transitions[ti].from].push_back(ti);

    const Symbol h = endmarker();
    const BoolMatrix m1 = ones(k);
    const Symbol first("#", BitVec(k, true), m1);
    int pi = S.add_state("pi", 0);
    int pf = S.add_state("pf", 0);
    S.initial = pi;
    S.final_state = pf;
    const int start = get(N.initial, 0, Right);
    S.add(pi, h, {}, nop(), start);
    S.add(start, first, {}, nop(), get(N.initial, 0, Sim));
    const int fin = get(N.final_state, 0, Sim);
    const int fin_left = get(N.final_state, 0, Left);
    S.add(fin, first, {}, nop(), fin_left);
    S.add(fin_left, h, {}, nop(), pf);

    while (!work.empty()) {
        auto [q, i, mode] = work.front();
        work.pop_front();
        const int src = ids.at({q, i, mode});
        if (q == N.initial || q == N.final_state) {
            if (mode != Sim || q == N.final_state) continue;
        }
        const int pol = N.polarity[q];
        for (const Symbol& x : S.input_alphabet) {
            const BitVec& b = *x.bits;
            const BoolMatrix& m = *x.matrix;
            const bool is_hash = x.base == "#";
            const bool p = plus(b, i);
            if (mode == Sim) {
                if (!p) continue;
                const Symbol sigma = is_hash ? endmarker() : Symbol(x.base);
                for (int ti : out[q]) {
                    const auto& t = N.transitions[ti];
                    if (t.letter != sigma) continue;
                    int i2 = i;
                    if (t.op.kind == OpKind::Drop) {
                        if (t.op.index != i + 1) continue;
                        i2 = i + 1;
                    } else if (t.op.kind == OpKind::Lift) {
                        if (t.op.index != i || i == 0 || !b[i - 1]) continue;
                        i2 = i - 1;
                    }
                    if (!holds(t.test & test_of_op(t.op, k), b, m, i)) continue;
                    const int tp = N.polarity[t.to];
                    const int m2 = tp == 0 ? Sim : (tp == -1 && !is_hash) ? Left : Right;
                    S.add(src, x, {}, nop(), get(t.to, i2, m2), t.output);
                }
            } else if (pol == -1 && mode == Left) {
                S.add(src, x, {}, nop(), p ? get(q, i, Sim) : src);
            } else if (pol == -1 && mode == Right) {
                S.add(src, x, {}, nop(), is_hash && p ? get(q, i, Left) : src);
            } else if (pol == +1 && mode == Right) {
                if (!p)
                    S.add(src, x, {}, nop(), src);
                else
                    S.add(src, x, {}, nop(), is_hash ? get(q, i, Left) : get(q, i, Sim));
            } else if (pol == +1 && mode == Left) {
                S.add(src, x, {}, nop(), is_hash && p ? get(q, i, Sim) : src);
            }
        }
        if (mode == Right && pol != 0) S.add(src, h, {}, nop(), get(q, i, Left));
    }
    return D;
}

// ---- two-way machines

std::string TwoWayLetter::render() const {
    switch (kind) {
        case EndKind::Left: return "|-";
        case EndKind::Right: return "-|";
        case EndKind::Letter: return symbol.render();
    }
    return "?";
}

int TwoWayTransducer::add_state(const std::string& id, bool fwd) {
    if (std::find(state_names.begin(), state_names.end(), id) != state_names.end())
        throw Error("duplicate state " + id);
    state_names.push_back(id);
    forward.push_back(fwd);
    return static_cast<int>(state_names.size()) - 1;
}

std::vector<std::string> validate_two_way(const TwoWayTransducer& T) {
    std::vector<std::string> errs;
    if (T.initial < 0 || T.final_state < 0 || !T.forward[T.initial] || !T.forward[T.final_state])
        errs.push_back("initial and final states must be forward states");
    for (const auto& t : T.transitions) {
        const std::string where = T.state_names[t.from] + " -" + t.letter.render() + "-> " + T.state_names[t.to];
        if (t.letter.kind == EndKind::Left && (!T.forward[t.to] || t.to == T.final_state))
            errs.push_back(where + ": left endmarker must lead to a forward state");
        if (t.letter.kind == EndKind::Right && T.forward[t.to] && t.to != T.final_state)
            errs.push_back(where + ": right endmarker must lead to a backward state or the final state");
        if (t.from == T.initial && t.letter.kind != EndKind::Left) errs.push_back(where + ": initial state reads only |-");
        if (t.to == T.final_state && t.letter.kind != EndKind::Right) errs.push_back(where + ": final state entered on -| only");
        if (t.to == T.initial) errs.push_back(where + ": initial state has an incoming transition");
        if (t.from == T.final_state) errs.push_back(where + ": final state has an outgoing transition");
    }
    return errs;
}

bool two_way_deterministic(const TwoWayTransducer& T) {
    std::set<std::pair<int, TwoWayLetter>> seen;
    for (const auto& t : T.transitions)
        if (!seen.insert({t.from, t.letter}).second) return false;
    return true;
}

bool two_way_reverse_deterministic(const TwoWayTransducer& T) {
    std::set<std::pair<int, TwoWayLetter>> seen;
    for (const auto& t : T.transitions)
        if (!seen.insert({t.to, t.letter}).second) return false;
    return true;
}

bool two_way_reversible(const TwoWayTransducer& T) { return two_way_deterministic(T) && two_way_reverse_deterministic(T); }

TwoWayResult run_two_way(const TwoWayTransducer& T, const Word& u) {
    const int n = static_cast<int>(u.size());
    auto letter = [&](int pos) {
        if (pos == 0) return TwoWayLetter{EndKind::Left, {}};
        if (pos == n + 1) return TwoWayLetter{EndKind::Right, {}};
        return TwoWayLetter{EndKind::Letter, u[pos - 1]};
    };
    std::vector<std::vector<int>> out(T.num_states());
    for (int i = 0; i < static_cast<int>(T.transitions.size()); ++i) out[T.transitions[i].from].push_back(i);

    TwoWayResult res;
    std::set<std::pair<int, int>> on_path;
    Word produced;
    std::uint64_t expansions = 0;
    const std::uint64_t cap = 4'000'000;
    std::function<void(int, int)> dfs = [&](int q, int h) {
        if (q == T.final_state && h == n + 2) {
            res.outputs.insert(produced);
            return;
        }
        if (++expansions > cap) {
            res.truncated = true;
            return;
        }
        const bool fwd = T.forward[q];
        const int pos = fwd ? h : h - 1;
        if (pos < 0 || pos > n + 1) return;
        const TwoWayLetter a = letter(pos);
        for (int ti : out[q]) {
            const auto& t = T.transitions[ti];
            if (t.letter != a) continue;
            const bool tf = T.forward[t.to];
            int h2 = h;
            if (fwd && tf) h2 = h + 1;
            if (!fwd && !tf) h2 = h - 1;
            if (h2 < 0 || h2 > n + 2) continue;
            if (h2 == n + 2 && t.to != T.final_state) continue;
            if (!on_path.insert({t.to, h2}).second) {
                res.truncated = true;
                continue;
            }
            const std::size_t mark = produced.size();
            produced.insert(produced.end(), t.output.begin(), t.output.end());
            dfs(t.to, h2);
            produced.resize(mark);
            on_path.erase({t.to, h2});
        }
    };
    on_path.insert({T.initial, 0});
    dfs(T.initial, 0);
    return res;
}

TwoWayTransducer zero_pebble_to_two_way(const Transducer& P) {
    if (P.k != 0) throw HasPebbles("zero_pebble_to_two_way: machine " + P.name + " has pebbles");
    TwoWayTransducer T;
    T.name = P.name + "_2way";
    T.input_alphabet = P.input_alphabet;
    T.output_alphabet = P.output_alphabet;
    const int n = static_cast<int>(P.num_states());
    std::vector<int> right(n, -1), stay(n, -1), left1(n, -1), left2(n, -1), plus(n, -1), minus(n, -1);
    const int si = T.add_state("si", true);
    const int sf = T.add_state("sf", true);
    T.initial = si;
    T.final_state = sf;
    for (int q = 0; q < n; ++q) right[q] = T.add_state("r:" + P.state_names[q], true);
    for (int q = 0; q < n; ++q) {
        const std::string& s = P.state_names[q];
        switch (P.polarity[q]) {
            case 0:
                if (q != P.initial && q != P.final_state) stay[q] = T.add_state("s:" + s, false);
                break;
            case -1:
                left1[q] = T.add_state("l1:" + s, false);
                left2[q] = T.add_state("l2:" + s, false);
                plus[q] = T.add_state("+:" + s, true);
                break;
            default: minus[q] = T.add_state("-:" + s, false);
        }
    }
    const TwoWayLetter lend{EndKind::Left, {}}, rend{EndKind::Right, {}};
    auto L = [](const Symbol& a) { return TwoWayLetter{EndKind::Letter, a}; };
    auto add = [&](int a, TwoWayLetter l, int b, Word out = {}) { T.transitions.push_back({a, std::move(l), b, std::move(out)}); };

    const int qir = right[P.initial];
    add(si, lend, qir);
    for (const auto& b : P.input_alphabet) add(qir, L(b), qir);

    for (const auto& t : P.transitions) {
        const int p = t.to;
        if (p == P.initial) continue;
        if (t.from == P.initial && !t.letter.is_endmarker()) continue;
        if (!t.test.is_true() || !t.op.is_nop()) throw Error("zero_pebble_to_two_way: unexpected test or operation");
        int target = -1;
        if (t.letter.is_endmarker()) {
            if (p == P.final_state) target = sf;
            else if (P.polarity[p] == 1) target = minus[p];
            else if (P.polarity[p] == 0) target = stay[p];
            else target = left1[p];
            add(right[t.from], rend, target, t.output);
        } else {
            if (p == P.final_state) continue;  // cannot end at position 0
            if (P.polarity[p] == 1) target = right[p];
            else if (P.polarity[p] == 0) target = stay[p];
            else target = left1[p];
            add(right[t.from], L(t.letter), target, t.output);
        }
    }
    for (int q = 0; q < n; ++q) {
        if (minus[q] >= 0) {
            for (const auto& b : P.input_alphabet) add(minus[q], L(b), minus[q]);
            add(minus[q], lend, right[q]);
        }
        if (stay[q] >= 0) {
            for (const auto& b : P.input_alphabet) add(stay[q], L(b), right[q]);
            add(stay[q], lend, right[q]);
        }
        if (left1[q] >= 0) {
            for (const auto& b : P.input_alphabet) {
                add(left1[q], L(b), left2[q]);
                add(left2[q], L(b), right[q]);
                add(plus[q], L(b), plus[q]);
            }
            add(left2[q], lend, right[q]);
            add(left1[q], lend, plus[q]);
            add(plus[q], rend, left2[q]);
        }
    }
    return T;
}

Transducer two_way_to_zero_pebble(const TwoWayTransducer& T) {
    if (auto errs = validate_two_way(T); !errs.empty()) throw Error("two_way_to_zero_pebble: " + errs.front());
    Transducer P;
    P.name = T.name + "_0peb";
    P.input_alphabet = T.input_alphabet;
    P.output_alphabet = T.output_alphabet;
    for (int q = 0; q < static_cast<int>(T.num_states()); ++q) {
        const int pol = (q == T.initial || q == T.final_state) ? 0 : T.forward[q] ? +1 : -1;
        P.add_state(T.state_names[q], pol);
    }
    P.initial = T.initial;
    P.final_state = T.final_state;
    for (const auto& t : T.transitions)
        P.add(t.from, t.letter.kind == EndKind::Letter ? t.letter.symbol : endmarker(), {}, nop(), t.to, t.output);
    return P;
}

// ---- pipeline

UniformizerHook identity_hook() {
    UniformizerHook h;
    h.name = "identity";
    h.machine = [](const TwoWayTransducer& T) { return T; };
    return h;
}

Uniformization uniformize_pipeline(const Transducer& T, const std::optional<UniformizerHook>& hook_in) {
    Uniformization U;
    U.parts = decompose(T);
    const Transducer& T0 = U.parts.simulator;
    UniformizerHook hook;
    if (hook_in) {
        hook = *hook_in;
    } else {
        if (!is_deterministic(T0))
            throw HookRequired("uniformize: the pebbleless simulator of " + T.name +
                               " is nondeterministic and no uniformizer was supplied");
        hook = identity_hook();
    }
    U.report.hook = hook.name;
    U.report.note = "size bound not asserted: it depends on the external reversible uniformizer";

    if (hook.machine) {
        TwoWayTransducer tw = zero_pebble_to_two_way(T0);
        TwoWayTransducer rt = hook.machine(tw);
        Transducer rp = two_way_to_zero_pebble(rt);
        if (!is_deterministic(rp))
            throw HookRequired("uniformize: hook " + hook.name + " returned a nondeterministic machine");
        if (hook.name != "identity" && !two_way_reversible(rt))
            throw Error("uniformize: hook " + hook.name + " returned a machine that is not reversible");
        Transducer front = compose(U.parts.enumerator, U.parts.annotator);
        Transducer R = compose(front, rp);
        R.name = T.name + "_uniformized";
        U.report.deterministic = static_cast<bool>(is_deterministic(R));
        U.report.reversible = is_reversible(R);
        U.report.pebbles = R.k;
        U.report.states = R.num_states();
        if (!U.report.reversible) U.report.note += "; result is deterministic but not reversible";
        U.machine = R;
        U.evaluate = [R](const Word& u) { return ptx::apply(R, u); };
    } else if (hook.select) {
        const Decomposition parts = U.parts;
        auto select = hook.select;
        U.report.deterministic = true;
        U.report.pebbles = T.k;
        U.report.note += "; selector hook: no machine is produced";
        U.evaluate = [parts, select](const Word& u) -> std::optional<Word> {
            auto w1 = ptx::apply(parts.enumerator, u);
            if (!w1) return std::nullopt;
            auto w2 = ptx::apply(parts.annotator, *w1);
            if (!w2) return std::nullopt;
            return select(parts.simulator, *w2);
        };
    } else {
        throw HookRequired("uniformize: hook " + hook.name + " provides neither a machine nor a selector");
    }
    return U;
}

}  // namespace ptx
