#include "ptx/transforms.hpp"

#include "ptx/analysis.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace ptx {

// ---- reversal

namespace {

/// op(a) for a positive atom; nullopt encodes true, and a false Test encodes false.
std::optional<Test> reverse_atom(const PebbleOp& op, Atom a) {
    a.negated = false;
    const int l = op.index;
    if (op.kind == OpKind::Nop) return Test{a};
    if (a.kind == AtomKind::HeadPeb) {
        if (a.i < l) return Test{a};
        if (op.kind == OpKind::Lift && a.i == l) return std::nullopt;
        return Test::falsity();
    }
    if (a.j < l) return Test{a};  // i <= j
    if (op.kind == OpKind::Drop) return Test::falsity();
    if (a.j == l && a.i < l) return Test{head_at(a.i)};
    if (a.i == l && a.j == l) return std::nullopt;
    return Test::falsity();
}

}  // namespace

Test reverse_test_under_op(const PebbleOp& op, const Test& t) {
    if (t.is_false()) return t;
    Test out;
    for (const Atom& a : t.atoms()) {
        auto r = reverse_atom(op, a);
        bool truth = !r.has_value();
        if (r && r->is_false()) truth = false;
        if (!r || r->is_false()) {
            if (truth == a.negated) return Test::falsity();
            continue;
        }
        Atom m = r->atoms().front();
        m.negated = a.negated;
        out &= Test{m};
    }
    return out;
}

Transducer reverse_transducer(const Transducer& T) {
    if (!is_reversible(T)) throw NotReversible("reverse_transducer: machine " + T.name + " is not reversible");
    Transducer R;
    R.name = T.name + "_rev";
    R.k = T.k;
    R.equality_tests = T.equality_tests;
    R.input_alphabet = T.input_alphabet;
    R.output_alphabet = T.output_alphabet;
    for (std::size_t q = 0; q < T.num_states(); ++q) R.add_state(T.state_names[q], -T.polarity[q]);
    R.initial = T.final_state;
    R.final_state = T.initial;
    for (const auto& t : T.transitions) {
        Word out(t.output.rbegin(), t.output.rend());
        R.add(t.to, t.letter, reverse_test_under_op(t.op, t.test), reverse_op(t.op), t.from, std::move(out));
    }
    return R;
}

// ---- equality elimination

EqualityMatrix zero_matrix(int k) { return EqualityMatrix(k, std::vector<bool>(k, false)); }

EqualityMatrix phi1(const Stack& peb, int k) {
    auto a = zero_matrix(k);
    const int n = static_cast<int>(peb.size());
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) a[i][j] = i < n && j < n && peb[i] == peb[j];
    return a;
}

BitVec phi2(int h, const Stack& peb, int k) {
    BitVec b(k, false);
    for (int i = 0; i < k && i < static_cast<int>(peb.size()); ++i) b[i] = peb[i] == h;
    return b;
}

bool basic_consistent(const EqualityMatrix& a, const BitVec& b) {
    const int k = static_cast<int>(b.size());
    for (int i = 0; i < k; ++i) {
        if (b[i] && !a[i][i]) return false;  // I2
        for (int j = 0; j < k; ++j) {
            if (a[i][j] != a[j][i]) return false;  // I1
            if (b[i] && b[j] && !a[i][j]) return false;  // I3
            if (a[i][j] && !(a[i][i] && a[j][j] && b[i] == b[j])) return false;  // I4
            if (i < j && a[j][j] && !a[i][i]) return false;  // I5
            for (int l = 0; l < k; ++l)
                if (a[i][j] && a[j][l] && !a[i][l]) return false;  // I1
        }
    }
    return true;
}

bool abstract_holds(const Test& t, const EqualityMatrix& a, const BitVec& b) {
    if (t.is_false()) return false;
    const int k = static_cast<int>(b.size());
    for (const Atom& x : t.atoms()) {
        bool v;
        if (x.kind == AtomKind::HeadPeb)
            v = x.i <= k && b[x.i - 1];
        else
            v = x.j <= k && a[x.i - 1][x.j - 1];
        if (v == x.negated) return false;
    }
    return true;
}

bool abstract_enabled(const PebbleOp& op, const EqualityMatrix& a, const BitVec& b) {
    const int k = static_cast<int>(b.size());
    const int n = op.index;
    switch (op.kind) {
        case OpKind::Nop: return true;
        case OpKind::Drop: return !a[n - 1][n - 1] && (n == 1 || a[n - 2][n - 2]);
        case OpKind::Lift: return b[n - 1] && (n == k || !a[n][n]);
    }
    return false;
}

EqualityMatrix abstract_apply(const PebbleOp& op, const EqualityMatrix& a, const BitVec& b) {
    const int k = static_cast<int>(b.size());
    const int n = op.index;  // 1-based
    if (op.kind == OpKind::Nop) return a;
    EqualityMatrix r = zero_matrix(k);
    for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n - 1; ++j) r[i][j] = a[i][j];
    if (op.kind == OpKind::Drop) {
        r[n - 1][n - 1] = true;
        for (int j = 0; j < n - 1; ++j) r[n - 1][j] = r[j][n - 1] = b[j];
    }
    return r;
}

namespace {

std::string matrix_tag(const EqualityMatrix& a) {
    std::string s = "[";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        for (bool x : a[i]) s += x ? '1' : '0';
    }
    return s + "]";
}

Test bit_guard(const BitVec& b) {
    std::vector<Atom> atoms;
    for (int i = 0; i < static_cast<int>(b.size()); ++i) atoms.push_back(head_at(i + 1, !b[i]));
    return Test(std::move(atoms));
}

}  // namespace

Transducer eliminate_equality(const Transducer& A) {
    const int k = A.k;
    Transducer B;
    B.name = A.name + "_basic";
    B.k = k;
    B.equality_tests = false;
    B.input_alphabet = A.input_alphabet;
    B.output_alphabet = A.output_alphabet;

    std::vector<std::vector<int>> out(A.num_states());
    for (int i = 0; i < static_cast<int>(A.transitions.size()); ++i) out[A.transitions[i].from].push_back(i);

    std::vector<BitVec> vectors;
    for (int m = 0; m < (1 << k); ++m) {
        BitVec b(k);
        for (int i = 0; i < k; ++i) b[i] = (m >> i) & 1;
        vectors.push_back(b);
    }

    std::map<std::pair<int, EqualityMatrix>, int> ids;
    std::deque<std::pair<int, EqualityMatrix>> work;
    auto get = [&](int q, const EqualityMatrix& a) {
        auto key = std::make_pair(q, a);
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        int id = B.add_state(A.state_names[q] + "@" + matrix_tag(a), A.polarity[q]);
        ids.emplace(key, id);
        work.push_back(key);
        return id;
    };
    B.initial = get(A.initial, zero_matrix(k));
    B.final_state = get(A.final_state, zero_matrix(k));
    while (!work.empty()) {
        auto [q, a] = work.front();
        work.pop_front();
        const int src = ids.at({q, a});
        for (int ti : out[q]) {
            const auto& t = A.transitions[ti];
            for (const auto& b : vectors) {
                if (!basic_consistent(a, b) || !abstract_holds(t.test, a, b) || !abstract_enabled(t.op, a, b))
                    continue;
                int dst = get(t.to, abstract_apply(t.op, a, b));
                B.add(src, t.letter, bit_guard(b), t.op, dst, t.output);
            }
        }
    }
    return B;
}

// ---- output splitting

Transducer split_outputs(const Transducer& T) {
    Transducer R = T;
    R.transitions.clear();
    for (const auto& t : T.transitions) {
        const int n = static_cast<int>(t.output.size());
        if (n <= 1) {
            R.transitions.push_back(t);
            continue;
        }
        const Test guard = t.test & test_of_op(t.op, T.k);
        int cur = t.from;
        Word prefix;
        for (int i = 0; i < n - 1; ++i) {
            prefix.push_back(t.output[i]);
            std::string id = T.state_names[t.from] + "~" + render_word(prefix, ".");
            if (T.has_state(id)) throw Error("split_outputs: state name clash " + id);
            int nxt = R.ensure_state(id, 0);
            R.add(cur, t.letter, guard, nop(), nxt, {t.output[i]});
            cur = nxt;
        }
        R.add(cur, t.letter, t.test, t.op, t.to, {t.output[n - 1]});
    }
    // transitions sharing an output prefix may produce the same chain edge twice
    std::vector<Transition> kept;
    for (auto& t : R.transitions) {
        bool chain = t.to >= static_cast<int>(T.num_states());
        if (chain && std::find(kept.begin(), kept.end(), t) != kept.end()) continue;
        kept.push_back(std::move(t));
    }
    R.transitions = std::move(kept);
    return R;
}

// ---- full read

Transducer ensure_full_read(const Transducer& T) {
    if (T.k != 0) throw Error("ensure_full_read: machine has pebbles");
    return add_full_read_sweep(T);
}

Transducer add_full_read_sweep(const Transducer& T) {
    Transducer R = T;
    R.transitions.clear();
    std::string id = "sweep";
    while (R.has_state(id)) id += "'";
    const int r = R.add_state(id, +1);
    R.add(T.initial, endmarker(), {}, nop(), r);
    for (const auto& a : T.input_alphabet) R.add(r, a, {}, nop(), r);
    for (const auto& t : T.transitions) {
        if (t.from != T.initial) {
            R.transitions.push_back(t);
        } else if (t.letter.is_endmarker()) {
            Transition m = t;
            m.from = r;
            R.transitions.push_back(m);
        }
        // transitions leaving the initial state on a non-# letter can never fire
    }
    return R;
}

// ---- head-neutral drop/lift

namespace {

Transducer split_moves(const Transducer& T, bool per_transition) {
    Transducer R = T;
    R.transitions.clear();
    for (std::size_t i = 0; i < T.transitions.size(); ++i) {
        const auto& t = T.transitions[i];
        if (t.op.is_nop()) {
            R.transitions.push_back(t);
            continue;
        }
        std::string id = T.state_names[t.from] + "^" + t.op.render();
        if (per_transition) id += "#" + std::to_string(i);
        if (T.has_state(id)) throw Error("state name clash " + id);
        int mid = R.ensure_state(id, 0);
        R.add(t.from, t.letter, t.test, t.op, mid, t.output);
        Test back = per_transition ? Test{} : reverse_test_under_op(t.op, t.test) & test_of_op(reverse_op(t.op), T.k);
        R.add(mid, t.letter, back, nop(), t.to);
    }
    return R;
}

}  // namespace

Transducer split_pebble_moves(const Transducer& T) { return split_moves(T, true); }

Transducer separate_drop_lift_moves(const Transducer& T) {
    if (!is_reversible(T)) throw NotReversible("separate_drop_lift_moves: machine " + T.name + " is not reversible");
    return split_moves(T, false);
}

}  // namespace ptx
