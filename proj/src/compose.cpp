#include "ptx/compose.hpp"

#include "ptx/analysis.hpp"
#include "ptx/transforms.hpp"

#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace ptx {

int ProductState::d(int l) const { return std::accumulate(y.begin(), y.begin() + l, 0); }

namespace {

/// Drops negated atoms beyond r (they hold), falsifies positive ones.
Test clip(const Test& t, int r) {
    if (t.is_false()) return t;
    std::vector<Atom> keep;
    for (const Atom& a : t.atoms()) {
        if (std::max(a.i, a.j) <= r) {
            keep.push_back(a);
        } else if (!a.negated) {
            return Test::falsity();
        }
    }
    return Test(std::move(keep));
}

Dnf dnf_and(const Dnf& a, const Dnf& b, int r) {
    Dnf out;
    for (const auto& x : a)
        for (const auto& y : b) {
            Test t = clip(x & y, r);
            if (satisfiable(t, r)) out.push_back(t);
        }
    return out;
}

/// ¬(a_1 ∧ … ∧ a_n) as the disjoint cases a_1 ∧ … ∧ a_{i-1} ∧ ¬a_i.
Dnf negate(const Test& c) {
    if (c.is_false()) return {Test{}};
    Dnf out;
    Test prefix;
    for (Atom a : c.atoms()) {
        Atom na = a;
        na.negated = !a.negated;
        out.push_back(prefix & Test{na});
        prefix &= Test{a};
    }
    return out;
}

std::string join(const std::vector<int>& v, const std::vector<std::string>* names) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += names ? (*names)[v[i]] : std::to_string(v[i]);
    }
    return s;
}

}  // namespace

Test xi0_shifted(int d, int n, int r) { return clip(at_least(d) & Test{pebs_eq(d + n + 1, d + n + 1, true)}, r); }

Dnf xi_bar(const ProductState& s, const Test& psi, int r) {
    if (psi.is_false()) return {};
    const int k = static_cast<int>(s.x.size());
    const int dk = s.d(k);
    Dnf dnf{Test{}};
    for (const Atom& a : psi.atoms()) {
        std::optional<Test> c;  // nullopt: the atom is false on every encoding
        if (a.kind == AtomKind::HeadPeb) {
            const int i = a.i;
            if (i <= k && s.x[i - 1] == s.q) {
                const int yi = s.y[i - 1], di = s.d(i), dprev = s.d(i - 1);
                std::vector<Atom> atoms;
                for (int l = 1; l <= yi - 1; ++l) atoms.push_back(pebs_eq(l + dk, l + dprev));
                atoms.push_back(head_at(di));
                atoms.push_back(pebs_eq(yi + dk, yi + dk, true));
                c = clip(Test(std::move(atoms)), r);
            }
        } else {
            const int i = a.i, j = a.j;
            if (i <= k && j <= k && s.x[i - 1] == s.x[j - 1] && s.y[i - 1] == s.y[j - 1]) {
                std::vector<Atom> atoms;
                for (int l = 1; l <= s.y[i - 1]; ++l) atoms.push_back(pebs_eq(l + s.d(i - 1), l + s.d(j - 1)));
                c = clip(Test(std::move(atoms)), r);
            }
        }
        if (!a.negated) {
            if (!c) return {};
            dnf = dnf_and(dnf, {*c}, r);
        } else if (c) {
            dnf = dnf_and(dnf, negate(*c), r);
        }
        if (dnf.empty()) return {};
    }
    return dnf;
}

Dnf build_xi(const ProductState& s, const Test& phi, const PebbleOp& op, const Test& phip, const PebbleOp& opp,
             int n, int m) {
    const int r = (n + 1) * (m + 1) - 1;
    const int dk = s.d(static_cast<int>(s.x.size()));
    Test left = xi0_shifted(dk, n, r) & clip(shift_test(phi & test_of_op(op, n), dk), r);
    return dnf_and({left}, xi_bar(s, phip & test_of_op(opp, m), r), r);
}

Transducer normalize_left(const Transducer& T) {
    Transducer L = T;
    for (auto& t : L.transitions)
        if (t.from == T.initial && t.letter.is_endmarker()) t.output.insert(t.output.begin(), endmarker());
    L.output_alphabet.push_back(endmarker());
    return split_outputs(L);
}

Transducer normalize_right(const Transducer& Tp) {
    if (Tp.k == 0) return ensure_full_read(Tp);
    Transducer R = add_full_read_sweep(Tp);
    return is_reversible(R) ? separate_drop_lift_moves(R) : split_pebble_moves(R);
}

std::uint64_t composition_state_bound(std::size_t q, std::size_t qp, int n, int m) {
    std::uint64_t total = 0, count = q * qp;
    const std::uint64_t per = 2 + (n + 2) + (n + 1) * (n + 2) / 2;
    for (int k = 0; k <= m; ++k) {
        total += count * per;
        count *= q * static_cast<std::uint64_t>(n + 1);
    }
    if (m == 0) return 2 * q * qp;
    return total;
}

Composition compose_detailed(const Transducer& T, const Transducer& Tp) {
    if (!is_reversible(T)) throw NotReversible("compose: left machine " + T.name + " is not reversible");
    if (auto det = is_deterministic(Tp); !det)
        throw NotDeterministic("compose: right machine " + Tp.name + " is not deterministic: " +
                               describe(Tp, *det.witness));
    {
        std::set<Symbol> sig(Tp.input_alphabet.begin(), Tp.input_alphabet.end());
        for (const auto& t : T.transitions)
            for (const auto& o : t.output)
                if (!sig.count(o))
                    throw AlphabetMismatch("compose: " + o.render() + " produced by " + T.name + " is not read by " +
                                           Tp.name);
    }

    Composition C;
    C.n = T.k;
    C.m = Tp.k;
    const int n = C.n, m = C.m;
    const int r = (n + 1) * (m + 1) - 1;
    C.left = normalize_left(T);
    C.right = normalize_right(Tp);
    Transducer& L = C.left;
    const Transducer& R = C.right;
    // wrap from the final configuration back to the initial one
    L.add(L.final_state, endmarker(), at_most(0, n), nop(), L.initial);

    std::vector<std::vector<int>> l_out(L.num_states()), l_in(L.num_states()), r_out(R.num_states());
    for (int i = 0; i < static_cast<int>(L.transitions.size()); ++i) {
        l_out[L.transitions[i].from].push_back(i);
        l_in[L.transitions[i].to].push_back(i);
    }
    for (int i = 0; i < static_cast<int>(R.transitions.size()); ++i) r_out[R.transitions[i].from].push_back(i);

    Transducer& M = C.machine;
    M.name = T.name + "_then_" + Tp.name;
    M.k = r;
    M.equality_tests = m > 0 || L.equality_tests;
    M.input_alphabet = L.input_alphabet;
    M.output_alphabet = R.output_alphabet;
    const std::vector<Symbol> letters = L.letters();
    const bool simple = m == 0;

    auto name_of = [&](const ProductState& s) {
        std::string body = (s.role == StateRole::Sim ? "^" : "") + L.state_names[s.q] + "," + R.state_names[s.qp];
        if (!simple) body += "|" + join(s.x, &L.state_names) + "|" + join(s.y, nullptr);
        std::string id = (simple ? "(" : "<") + body + (simple ? ")" : ">");
        if (s.role == StateRole::LiftGadget) id += "-" + std::to_string(s.level);
        if (s.role == StateRole::DropGadget) id += "z" + std::to_string(s.z) + "." + std::to_string(s.level);
        return id;
    };
    auto polarity_of = [&](const ProductState& s) {
        switch (s.role) {
            case StateRole::Sync: return 0;
            case StateRole::Sim: return L.polarity[s.q] * R.polarity[s.qp];
            case StateRole::LiftGadget: return s.level == 0 ? 0 : 1;
            case StateRole::DropGadget: return 1;
        }
        return 0;
    };

    std::map<ProductState, int> ids;
    std::deque<ProductState> work;
    auto get = [&](const ProductState& s) {
        auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        int id = M.add_state(name_of(s), polarity_of(s));
        ids.emplace(s, id);
        C.info.push_back(s);
        work.push_back(s);
        return id;
    };
    auto emit = [&](int src, const Symbol& a, const Dnf& guards, const PebbleOp& op, const ProductState& dst,
                    const Word& out, const std::string& rule) {
        for (const auto& g : guards) {
            if (!satisfiable(g, r)) continue;
            M.add(src, a, g, op, get(dst), out);
            C.rule.push_back(rule);
        }
    };
    auto sync = [](int q, int qp, std::vector<int> x, std::vector<int> y) {
        return ProductState{StateRole::Sync, q, qp, std::move(x), std::move(y), 0, 0};
    };
    auto sim = [](int q, int qp, const ProductState& s) {
        return ProductState{StateRole::Sim, q, qp, s.x, s.y, 0, 0};
    };
    auto rn = [&](const std::string& base) { return simple ? base : "g" + base; };

    M.initial = get(sync(L.initial, R.initial, {}, {}));
    M.final_state = get(sync(L.initial, R.final_state, {}, {}));

    std::set<ProductState> lift_built;
    std::set<std::pair<ProductState, int>> drop_built;

    auto build_lift_gadget = [&](const ProductState& s) {
        if (!lift_built.insert(s).second) return;
        const int k = static_cast<int>(s.x.size());
        const int d = s.d(k), yk = s.y.back();
        auto at = [&](int l) { return ProductState{StateRole::LiftGadget, s.q, s.qp, s.x, s.y, 0, l}; };
        for (int l = 1; l <= yk; ++l) {
            int src = get(at(l));
            for (const auto& a : letters) {
                emit(src, a, {Test{head_at(d - l + 1, true), head_at(d + yk - l, true)}}, nop(), at(l), {},
                     "lift-loop");
                if (l < yk)
                    emit(src, a, {Test{head_at(d - l)}}, lift(d + yk - l), at(l + 1), {}, "lift-step");
                else
                    emit(src, a, {Test{}}, lift(d), at(0), {}, "lift-step");
            }
        }
    };
    auto build_drop_gadget = [&](const ProductState& s, int z) {
        if (!drop_built.insert({s, z}).second) return;
        const int d = s.d(static_cast<int>(s.x.size()));
        auto at = [&](int l) { return ProductState{StateRole::DropGadget, s.q, s.qp, s.x, s.y, z, l}; };
        for (int l = 1; l <= z; ++l) {
            int src = get(at(l));
            for (const auto& a : letters) {
                emit(src, a, {Test{head_at(d + z + l - 1, true), head_at(d + l, true)}}, nop(), at(l), {},
                     "drop-loop");
                if (l < z) emit(src, a, {Test{head_at(d + l)}}, drop(d + z + l), at(l + 1), {}, "drop-step");
            }
        }
    };

    while (!work.empty()) {
        ProductState s = work.front();
        work.pop_front();
        const int src = ids.at(s);
        const int k = static_cast<int>(s.x.size());
        const int d = s.d(k);

        if (s.role == StateRole::Sync) {
            for (int ti : l_out[s.q]) {
                const auto& t = L.transitions[ti];
                if (t.output.size() != 1) continue;
                for (int tj : r_out[s.qp]) {
                    const auto& tp = R.transitions[tj];
                    if (tp.letter != t.output[0]) continue;
                    Dnf xi = build_xi(s, t.test, t.op, tp.test, tp.op, n, m);
                    if (xi.empty()) continue;
                    if (tp.op.is_nop()) {
                        switch (R.polarity[tp.to]) {
                            case 1:
                                emit(src, t.letter, xi, shift_op(t.op, d), sim(t.to, tp.to, s), tp.output, rn("tr-a"));
                                break;
                            case -1:
                                emit(src, t.letter, xi, nop(), sim(s.q, tp.to, s), tp.output, rn("tr-b"));
                                break;
                            default:
                                emit(src, t.letter, xi, nop(), sync(s.q, tp.to, s.x, s.y), tp.output, rn("tr-c"));
                        }
                    } else if (tp.op.kind == OpKind::Lift) {
                        if (k == 0 || R.polarity[tp.to] != 0) continue;
                        ProductState first{StateRole::LiftGadget, s.q, s.qp, s.x, s.y, 0, 1};
                        emit(src, t.letter, xi, nop(), first, tp.output, "lift-a");
                        build_lift_gadget(s);
                        ProductState last = first;
                        last.level = 0;
                        ProductState s2 = sync(s.q, tp.to, {s.x.begin(), s.x.end() - 1}, {s.y.begin(), s.y.end() - 1});
                        const int d2 = d - s.y.back();
                        Test left2 = xi0_shifted(d2, n, r) & clip(shift_test(t.test & test_of_op(t.op, n), d2), r);
                        // the restored configuration has y_k - 1 pebbles; saying so keeps gadgets
                        // of different sizes apart when run backwards
                        const int size = d - 1;
                        left2 = left2 & clip(at_least(size) & at_most(size, r), r);
                        Test back = reverse_test_under_op(tp.op, tp.test) & test_of_op(reverse_op(tp.op), m);
                        emit(get(last), t.letter, dnf_and({left2}, xi_bar(s2, back, r), r), nop(), s2, {}, "lift-b");
                    } else {
                        if (k >= m || R.polarity[tp.to] != 0) continue;
                        for (int z = 1; z <= n + 1; ++z) {
                            ProductState first{StateRole::DropGadget, s.q, s.qp, s.x, s.y, z, 1};
                            emit(src, t.letter, xi, drop(d + z), first, tp.output, "drop-a");
                            build_drop_gadget(s, z);
                            ProductState last = first;
                            last.level = z;
                            auto x2 = s.x, y2 = s.y;
                            x2.push_back(s.q);
                            y2.push_back(z);
                            ProductState s2 = sync(s.q, tp.to, x2, y2);
                            Test left2 = xi0_shifted(d + z, n, r) &
                                         clip(shift_test(t.test & test_of_op(t.op, n), d + z), r);
                            Test back = reverse_test_under_op(tp.op, tp.test) & test_of_op(reverse_op(tp.op), m);
                            emit(get(last), t.letter, dnf_and({left2}, xi_bar(s2, back, r), r), nop(), s2, {},
                                 "drop-b");
                        }
                    }
                }
            }
        } else if (s.role == StateRole::Sim) {
            if (R.polarity[s.qp] == 1) {
                for (int ti : l_out[s.q]) {
                    const auto& t = L.transitions[ti];
                    if (t.output.empty())
                        emit(src, t.letter, {clip(shift_test(t.test, d), r)}, shift_op(t.op, d), sim(t.to, s.qp, s), {},
                             rn("mv-a"));
                    else
                        emit(src, t.letter, {clip(shift_test(t.test & test_of_op(t.op, n), d), r)}, nop(),
                             sync(s.q, s.qp, s.x, s.y), {}, rn("sw-a"));
                }
            } else {
                for (int ti : l_in[s.q]) {
                    const auto& t = L.transitions[ti];
                    Dnf g{clip(shift_test(reverse_test_under_op(t.op, t.test), d), r)};
                    PebbleOp op = shift_op(reverse_op(t.op), d);
                    if (t.output.empty())
                        emit(src, t.letter, g, op, sim(t.from, s.qp, s), {}, rn("mv-b"));
                    else
                        emit(src, t.letter, g, op, sync(t.from, s.qp, s.x, s.y), {}, rn("sw-b"));
                }
            }
        }
    }
    return C;
}

Transducer compose_simple(const Transducer& T, const Transducer& Tp) {
    if (Tp.k != 0) throw Error("compose_simple: right machine has pebbles");
    return compose_detailed(T, Tp).machine;
}

Transducer compose_general(const Transducer& T, const Transducer& Tp) {
    if (Tp.k == 0) throw Error("compose_general: right machine has no pebbles");
    return compose_detailed(T, Tp).machine;
}

Transducer compose(const Transducer& T, const Transducer& Tp) { return compose_detailed(T, Tp).machine; }

}  // namespace ptx
