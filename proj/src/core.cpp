#include "ptx/core.hpp"

#include <algorithm>
#include <numeric>

namespace ptx {

std::vector<std::string> code_points(const std::string& s) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < s.size();) {
        auto c = static_cast<unsigned char>(s[i]);
        std::size_t len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xe ? 3 : 4;
        out.push_back(s.substr(i, len));
        i += len;
    }
    return out;
}

std::string Symbol::render() const {
    if (!matrix && bits && std::all_of(bits->begin(), bits->end(), [](bool b) { return b; }))
        return std::string(bits->size(), '_') + base;
    if (!bits && !matrix) return base;
    std::string s = "(" + base;
    if (bits) {
        s += ",";
        for (bool b : *bits) s += b ? '1' : '0';
    }
    if (matrix) {
        s += ",[";
        for (std::size_t i = 0; i < matrix->size(); ++i) {
            if (i) s += ";";
            for (bool b : (*matrix)[i]) s += b ? '1' : '0';
        }
        s += "]";
    }
    return s + ")";
}

Symbol marked(const Symbol& s) {
    Symbol m = s;
    if (!m.bits) m.bits.emplace();
    m.bits->push_back(true);
    return m;
}

Word word_from_string(const std::string& s) {
    Word w;
    for (auto& cp : code_points(s)) w.emplace_back(cp);
    return w;
}

std::string render_word(const Word& w, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += sep;
        out += w[i].render();
    }
    return out;
}

// ---- atoms and tests

Atom head_at(int i, bool negated) { return {AtomKind::HeadPeb, i, 0, negated}; }

Atom pebs_eq(int i, int j, bool negated) {
    if (i > j) std::swap(i, j);
    return {AtomKind::PebPeb, i, j, negated};
}

std::string Atom::render() const {
    std::string s = negated ? "!" : "";
    if (kind == AtomKind::HeadPeb) return s + "h=p" + std::to_string(i);
    return s + "p" + std::to_string(i) + "=p" + std::to_string(j);
}

Test::Test(std::vector<Atom> atoms) : atoms_(std::move(atoms)) { normalize(); }

Test Test::falsity() {
    Test t;
    t.false_ = true;
    return t;
}

void Test::normalize() {
    if (false_) {
        atoms_.clear();
        return;
    }
    std::sort(atoms_.begin(), atoms_.end());
    atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
    // a and ¬a side by side after sorting only differ in the last field
    for (std::size_t i = 0; i + 1 < atoms_.size(); ++i) {
        const Atom& x = atoms_[i];
        const Atom& y = atoms_[i + 1];
        if (x.kind == y.kind && x.i == y.i && x.j == y.j) {
            false_ = true;
            atoms_.clear();
            return;
        }
    }
}

int Test::max_index() const {
    int m = 0;
    for (auto& a : atoms_) m = std::max({m, a.i, a.j});
    return m;
}

bool Test::uses_equality() const {
    return std::any_of(atoms_.begin(), atoms_.end(),
                       [](const Atom& a) { return a.kind == AtomKind::PebPeb && a.i != a.j; });
}

Test Test::operator&(const Test& o) const {
    if (false_ || o.false_) return falsity();
    std::vector<Atom> all = atoms_;
    all.insert(all.end(), o.atoms_.begin(), o.atoms_.end());
    return Test(std::move(all));
}

std::string Test::render() const {
    if (false_) return "false";
    if (atoms_.empty()) return "true";
    std::string s;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (i) s += " & ";
        s += atoms_[i].render();
    }
    return s;
}

Test at_least(int i) { return i <= 0 ? Test{} : Test{pebs_eq(i, i)}; }

Test at_most(int i, int k) { return i >= k ? Test{} : Test{pebs_eq(i + 1, i + 1, true)}; }

// ---- operations

std::string PebbleOp::render() const {
    switch (kind) {
        case OpKind::Nop: return "nop";
        case OpKind::Drop: return "drop" + std::to_string(index);
        case OpKind::Lift: return "lift" + std::to_string(index);
    }
    return "?";
}

Test test_of_op(const PebbleOp& op, int k) {
    if (op.kind != OpKind::Nop && (op.index < 1 || op.index > k))
        throw Error("operation index out of range: " + op.render());
    switch (op.kind) {
        case OpKind::Nop: return {};
        case OpKind::Drop: return at_least(op.index - 1) & Test{pebs_eq(op.index, op.index, true)};
        case OpKind::Lift: return Test{head_at(op.index)} & at_most(op.index, k);
    }
    return {};
}

bool eval_atom(const Atom& a, const Stack& peb, int h) {
    const int n = static_cast<int>(peb.size());
    bool v;
    if (a.kind == AtomKind::HeadPeb)
        v = a.i >= 1 && a.i <= n && peb[a.i - 1] == h;
    else
        v = a.i >= 1 && a.j >= 1 && a.i <= n && a.j <= n && peb[a.i - 1] == peb[a.j - 1];
    return v != a.negated;
}

bool eval_test(const Test& t, const Stack& peb, int h) {
    if (t.is_false()) return false;
    return std::all_of(t.atoms().begin(), t.atoms().end(), [&](const Atom& a) { return eval_atom(a, peb, h); });
}

std::optional<Stack> apply_op(const PebbleOp& op, const Stack& peb, int h) {
    const int n = static_cast<int>(peb.size());
    switch (op.kind) {
        case OpKind::Nop: return peb;
        case OpKind::Drop: {
            if (n != op.index - 1) return std::nullopt;
            Stack s = peb;
            s.push_back(h);
            return s;
        }
        case OpKind::Lift: {
            if (n != op.index || op.index < 1 || peb.back() != h) return std::nullopt;
            Stack s = peb;
            s.pop_back();
            return s;
        }
    }
    return std::nullopt;
}

PebbleOp reverse_op(const PebbleOp& op) {
    switch (op.kind) {
        case OpKind::Nop: return op;
        case OpKind::Drop: return lift(op.index);
        case OpKind::Lift: return drop(op.index);
    }
    return op;
}

Test shift_test(const Test& t, int d) {
    if (t.is_false()) return t;
    std::vector<Atom> out;
    for (Atom a : t.atoms()) {
        a.i += d;
        if (a.kind == AtomKind::PebPeb) a.j += d;
        if (a.i < 1) throw Error("shift_test: index underflow");
        out.push_back(a);
    }
    return Test(std::move(out));
}

PebbleOp shift_op(const PebbleOp& op, int d) {
    if (op.is_nop()) return op;
    if (op.index + d < 1) throw Error("shift_op: index underflow");
    return {op.kind, op.index + d};
}

namespace {

struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

bool satisfiable(const Test& t, int k) {
    if (t.is_false()) return false;
    for (int s = 0; s <= k; ++s) {
        // node 0 is h, node i is p_i
        bool ok = true;
        Dsu dsu(s + 1);
        for (auto& a : t.atoms()) {
            if (a.negated) continue;
            if (std::max(a.i, a.j) > s) {
                ok = false;
                break;
            }
            if (a.kind == AtomKind::HeadPeb)
                dsu.unite(0, a.i);
            else
                dsu.unite(a.i, a.j);
        }
        if (!ok) continue;
        for (auto& a : t.atoms()) {
            if (!a.negated || std::max(a.i, a.j) > s) continue;
            int x = a.kind == AtomKind::HeadPeb ? 0 : a.i;
            int y = a.kind == AtomKind::HeadPeb ? a.i : a.j;
            if (dsu.find(x) == dsu.find(y)) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

// ---- transducer

int Transducer::add_state(const std::string& id, int pol) {
    if (index_.count(id)) throw Error("duplicate state: " + id);
    if (pol < -1 || pol > 1) throw Error("bad polarity for state " + id);
    int n = static_cast<int>(state_names.size());
    state_names.push_back(id);
    polarity.push_back(pol);
    index_[id] = n;
    return n;
}

int Transducer::ensure_state(const std::string& id, int pol) {
    auto it = index_.find(id);
    return it != index_.end() ? it->second : add_state(id, pol);
}

int Transducer::state(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw Error("unknown state: " + id);
    return it->second;
}

void Transducer::add(int from, const Symbol& a, const Test& t, const PebbleOp& op, int to, Word out) {
    transitions.push_back({from, a, t, op, to, std::move(out)});
}

std::vector<Symbol> Transducer::letters() const {
    std::vector<Symbol> v = input_alphabet;
    v.push_back(endmarker());
    return v;
}

}  // namespace ptx
