#include "ptx/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace ptx {

using json = nlohmann::json;

std::string to_string(FileErrorKind k) {
    switch (k) {
        case FileErrorKind::Io: return "io";
        case FileErrorKind::Syntax: return "syntax";
        case FileErrorKind::UnknownField: return "unknown-field";
        case FileErrorKind::MissingField: return "missing-field";
        case FileErrorKind::BadValue: return "bad-value";
        case FileErrorKind::UnknownState: return "unknown-state";
        case FileErrorKind::IndexOutOfRange: return "index-out-of-range";
        case FileErrorKind::ReservedLetter: return "reserved-letter";
    }
    return "?";
}

namespace {

std::string located(const std::string& msg, int line, int col) {
    if (line <= 0) return msg;
    return std::to_string(line) + ":" + std::to_string(col) + ": " + msg;
}

}  // namespace

FileError::FileError(FileErrorKind k, std::string msg, int l, int c)
    : Error(located(msg, l, c)), kind(k), line(l), column(c) {}

namespace {

/// Char iterator that publishes how far the lexer has read.
struct CountingIt {
    using iterator_category = std::input_iterator_tag;
    using value_type = char;
    using difference_type = std::ptrdiff_t;
    using pointer = const char*;
    using reference = const char&;

    const char* p = nullptr;
    const char* base = nullptr;
    std::size_t* off = nullptr;

    reference operator*() const {
        *off = static_cast<std::size_t>(p - base);
        return *p;
    }
    CountingIt& operator++() {
        ++p;
        return *this;
    }
    CountingIt operator++(int) {
        CountingIt t = *this;
        ++p;
        return t;
    }
    bool operator==(const CountingIt& o) const { return p == o.p; }
    bool operator!=(const CountingIt& o) const { return p != o.p; }
};

/// Records the byte offset of every value, keyed by JSON pointer.
struct Locator : nlohmann::json_sax<json> {
    std::size_t offset = 0;
    std::map<std::string, std::size_t> where;

    struct Frame {
        bool array;
        std::size_t index;
        std::string key;
    };
    std::vector<Frame> stack;

    std::string path() const {
        std::string s;
        for (const auto& f : stack) s += "/" + (f.array ? std::to_string(f.index) : f.key);
        return s;
    }
    void mark() { where.emplace(path(), offset); }
    void bump() {
        if (!stack.empty() && stack.back().array) ++stack.back().index;
    }
    bool value() {
        mark();
        bump();
        return true;
    }

    bool null() override { return value(); }
    bool boolean(bool) override { return value(); }
    bool number_integer(number_integer_t) override { return value(); }
    bool number_unsigned(number_unsigned_t) override { return value(); }
    bool number_float(number_float_t, const string_t&) override { return value(); }
    bool string(string_t&) override { return value(); }
    bool binary(binary_t&) override { return value(); }
    bool start_object(std::size_t) override {
        mark();
        stack.push_back({false, 0, ""});
        return true;
    }
    bool key(string_t& k) override {
        stack.back().key = k;
        return true;
    }
    bool end_object() override {
        stack.pop_back();
        bump();
        return true;
    }
    bool start_array(std::size_t) override {
        mark();
        stack.push_back({true, 0, ""});
        return true;
    }
    bool end_array() override {
        stack.pop_back();
        bump();
        return true;
    }
    bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) override { return false; }
};

class Reader {
public:
    explicit Reader(const std::string& text) : text_(text) {
        try {
            doc_ = json::parse(text);
        } catch (const json::parse_error& e) {
            auto [l, c] = line_col(e.byte > 0 ? e.byte - 1 : 0);
            throw FileError(FileErrorKind::Syntax, e.what(), l, c);
        }
        CountingIt first{text.data(), text.data(), &loc_.offset};
        CountingIt last{text.data() + text.size(), text.data(), &loc_.offset};
        json::sax_parse(first, last, &loc_);
    }

    const json& doc() const { return doc_; }

    [[noreturn]] void fail(FileErrorKind k, const std::string& path, const std::string& msg) const {
        auto it = loc_.where.find(path);
        if (it == loc_.where.end()) throw FileError(k, msg + " (at " + (path.empty() ? "/" : path) + ")");
        auto [l, c] = line_col(it->second);
        throw FileError(k, msg + " (at " + (path.empty() ? "/" : path) + ")", l, c);
    }

    void only_fields(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) const {
        if (!obj.is_object()) fail(FileErrorKind::BadValue, path, "expected an object");
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            bool ok = false;
            for (const char* a : allowed) ok = ok || it.key() == a;
            if (!ok) fail(FileErrorKind::UnknownField, path + "/" + it.key(), "unknown field '" + it.key() + "'");
        }
    }

    const json& need(const json& obj, const std::string& path, const char* field) const {
        if (!obj.contains(field)) fail(FileErrorKind::MissingField, path, std::string("missing field '") + field + "'");
        return obj.at(field);
    }

    int get_int(const json& v, const std::string& path) const {
        if (!v.is_number_integer()) fail(FileErrorKind::BadValue, path, "expected an integer");
        return v.get<int>();
    }
    std::string get_string(const json& v, const std::string& path) const {
        if (!v.is_string()) fail(FileErrorKind::BadValue, path, "expected a string");
        return v.get<std::string>();
    }

    Symbol symbol(const json& v, const std::string& path, bool allow_end) const {
        if (v.is_null()) {
            if (!allow_end) fail(FileErrorKind::ReservedLetter, path, "the endmarker is not a letter here");
            return endmarker();
        }
        if (v.is_string()) {
            std::string s = v.get<std::string>();
            if (code_points(s).size() != 1) fail(FileErrorKind::BadValue, path, "a letter is one character");
            if (s == "#") fail(FileErrorKind::ReservedLetter, path, "'#' is reserved");
            return Symbol(s);
        }
        only_fields(v, path, {"base", "bits", "matrix"});
        Symbol sym(get_string(need(v, path, "base"), path + "/base"));
        if (code_points(sym.base).size() != 1) fail(FileErrorKind::BadValue, path + "/base", "a letter is one character");
        if (v.contains("bits")) sym.bits = bits(v.at("bits"), path + "/bits");
        if (v.contains("matrix")) {
            const json& m = v.at("matrix");
            if (!m.is_array()) fail(FileErrorKind::BadValue, path + "/matrix", "expected an array of rows");
            BoolMatrix mat;
            for (std::size_t i = 0; i < m.size(); ++i) mat.push_back(bits(m[i], path + "/matrix/" + std::to_string(i)));
            for (const auto& row : mat)
                if (row.size() != mat.size()) fail(FileErrorKind::BadValue, path + "/matrix", "matrix must be square");
            sym.matrix = mat;
        }
        if (!sym.bits && !sym.matrix && sym.base == "#")
            fail(FileErrorKind::ReservedLetter, path, "'#' is reserved");
        return sym;
    }

    BitVec bits(const json& v, const std::string& path) const {
        std::string s = get_string(v, path);
        BitVec b;
        for (char c : s) {
            if (c != '0' && c != '1') fail(FileErrorKind::BadValue, path, "bits are written with 0 and 1");
            b.push_back(c == '1');
        }
        return b;
    }

private:
    std::pair<int, int> line_col(std::size_t off) const {
        int line = 1, col = 1;
        for (std::size_t i = 0; i < off && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        return {line, col};
    }

    const std::string& text_;
    json doc_;
    Locator loc_;
};

Atom parse_atom(const Reader& R, const std::string& s, const std::string& path, int k) {
    std::string t = s;
    bool neg = false;
    if (!t.empty() && t[0] == '!') {
        neg = true;
        t = t.substr(1);
    }
    auto index = [&](const std::string& x) -> int {
        if (x.size() < 2 || x[0] != 'p' || !std::all_of(x.begin() + 1, x.end(), ::isdigit))
            R.fail(FileErrorKind::BadValue, path, "bad atom '" + s + "'");
        int i = std::stoi(x.substr(1));
        if (i < 1 || i > k)
            R.fail(FileErrorKind::IndexOutOfRange, path, "pebble index " + std::to_string(i) + " out of range 1.." +
                                                             std::to_string(k));
        return i;
    };
    auto eq = t.find('=');
    if (eq == std::string::npos) R.fail(FileErrorKind::BadValue, path, "bad atom '" + s + "'");
    std::string lhs = t.substr(0, eq), rhs = t.substr(eq + 1);
    if (lhs == "h") return head_at(index(rhs), neg);
    return pebs_eq(index(lhs), index(rhs), neg);
}

nlohmann::ordered_json symbol_json(const Symbol& s) {
    if (s.is_endmarker()) return nullptr;
    if (!s.bits && !s.matrix) return s.base;
    nlohmann::ordered_json o = nlohmann::ordered_json::object();
    o["base"] = s.base;
    auto bits = [](const BitVec& b) {
        std::string r;
        for (bool x : b) r += x ? '1' : '0';
        return r;
    };
    if (s.bits) o["bits"] = bits(*s.bits);
    if (s.matrix) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& row : *s.matrix) rows.push_back(bits(row));
        o["matrix"] = rows;
    }
    return o;
}

}  // namespace

Transducer parse_machine(const std::string& text) {
    Reader R(text);
    const json& d = R.doc();
    R.only_fields(d, "", {"format_version", "name", "pebbles", "equality_tests", "input_alphabet", "output_alphabet",
                          "states", "initial", "final", "transitions"});
    const int version = R.get_int(R.need(d, "", "format_version"), "/format_version");
    if (version != kFormatVersion)
        R.fail(FileErrorKind::BadValue, "/format_version", "unsupported format version " + std::to_string(version));

    Transducer T;
    if (d.contains("name")) T.name = R.get_string(d.at("name"), "/name");
    T.k = R.get_int(R.need(d, "", "pebbles"), "/pebbles");
    if (T.k < 0) R.fail(FileErrorKind::BadValue, "/pebbles", "pebble count must be non-negative");
    if (d.contains("equality_tests")) {
        if (!d.at("equality_tests").is_boolean()) R.fail(FileErrorKind::BadValue, "/equality_tests", "expected a boolean");
        T.equality_tests = d.at("equality_tests").get<bool>();
    }
    auto alphabet = [&](const char* field, bool required) {
        std::vector<Symbol> out;
        const std::string path = std::string("/") + field;
        if (!d.contains(field)) {
            if (required) R.need(d, "", field);
            return out;
        }
        const json& a = d.at(field);
        if (!a.is_array()) R.fail(FileErrorKind::BadValue, path, "expected an array");
        for (std::size_t i = 0; i < a.size(); ++i) out.push_back(R.symbol(a[i], path + "/" + std::to_string(i), false));
        return out;
    };
    T.input_alphabet = alphabet("input_alphabet", true);
    T.output_alphabet = alphabet("output_alphabet", false);

    const json& states = R.need(d, "", "states");
    if (!states.is_array()) R.fail(FileErrorKind::BadValue, "/states", "expected an array");
    for (std::size_t i = 0; i < states.size(); ++i) {
        const std::string path = "/states/" + std::to_string(i);
        R.only_fields(states[i], path, {"id", "polarity"});
        std::string id = R.get_string(R.need(states[i], path, "id"), path + "/id");
        int pol = R.get_int(R.need(states[i], path, "polarity"), path + "/polarity");
        if (pol < -1 || pol > 1) R.fail(FileErrorKind::BadValue, path + "/polarity", "polarity must be -1, 0 or 1");
        if (T.has_state(id)) R.fail(FileErrorKind::BadValue, path + "/id", "duplicate state '" + id + "'");
        T.add_state(id, pol);
    }
    auto state_ref = [&](const json& v, const std::string& path) {
        std::string id = R.get_string(v, path);
        if (!T.has_state(id)) R.fail(FileErrorKind::UnknownState, path, "unknown state '" + id + "'");
        return T.state(id);
    };
    T.initial = state_ref(R.need(d, "", "initial"), "/initial");
    T.final_state = state_ref(R.need(d, "", "final"), "/final");

    const json& trs = R.need(d, "", "transitions");
    if (!trs.is_array()) R.fail(FileErrorKind::BadValue, "/transitions", "expected an array");
    for (std::size_t i = 0; i < trs.size(); ++i) {
        const std::string path = "/transitions/" + std::to_string(i);
        const json& t = trs[i];
        R.only_fields(t, path, {"from", "letter", "test", "op", "to", "output"});
        int from = state_ref(R.need(t, path, "from"), path + "/from");
        int to = state_ref(R.need(t, path, "to"), path + "/to");
        Symbol letter = R.symbol(R.need(t, path, "letter"), path + "/letter", true);
        std::vector<Atom> atoms;
        if (t.contains("test")) {
            const json& a = t.at("test");
            if (!a.is_array()) R.fail(FileErrorKind::BadValue, path + "/test", "expected an array of atoms");
            for (std::size_t j = 0; j < a.size(); ++j) {
                const std::string ap = path + "/test/" + std::to_string(j);
                atoms.push_back(parse_atom(R, R.get_string(a[j], ap), ap, T.k));
            }
        }
        PebbleOp op;
        if (t.contains("op")) {
            const std::string op_path = path + "/op";
            const json& o = t.at("op");
            R.only_fields(o, op_path, {"kind", "index"});
            std::string kind = R.get_string(R.need(o, op_path, "kind"), op_path + "/kind");
            if (kind == "nop") {
                op = nop();
            } else if (kind == "drop" || kind == "lift") {
                int idx = R.get_int(R.need(o, op_path, "index"), op_path + "/index");
                if (idx < 1 || idx > T.k)
                    R.fail(FileErrorKind::IndexOutOfRange, op_path + "/index",
                           "pebble index " + std::to_string(idx) + " out of range 1.." + std::to_string(T.k));
                op = kind == "drop" ? drop(idx) : lift(idx);
            } else {
                R.fail(FileErrorKind::BadValue, op_path + "/kind", "operation is nop, drop or lift");
            }
        }
        Word out;
        if (t.contains("output")) {
            const json& o = t.at("output");
            if (!o.is_array()) R.fail(FileErrorKind::BadValue, path + "/output", "expected an array");
            for (std::size_t j = 0; j < o.size(); ++j)
                out.push_back(R.symbol(o[j], path + "/output/" + std::to_string(j), true));
        }
        T.add(from, letter, Test(std::move(atoms)), op, to, out);
    }
    return T;
}

std::string serialize_machine(const Transducer& T) {
    using ojson = nlohmann::ordered_json;
    ojson d;
    d["format_version"] = kFormatVersion;
    d["name"] = T.name;
    d["pebbles"] = T.k;
    d["equality_tests"] = T.equality_tests;
    auto alph = [](const std::vector<Symbol>& v) {
        ojson a = ojson::array();
        for (const auto& s : v) a.push_back(symbol_json(s));
        return a;
    };
    d["input_alphabet"] = alph(T.input_alphabet);
    d["output_alphabet"] = alph(T.output_alphabet);

    std::vector<int> order(T.num_states());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return T.state_names[a] < T.state_names[b]; });
    ojson states = ojson::array();
    for (int q : order) states.push_back({{"id", T.state_names[q]}, {"polarity", T.polarity[q]}});
    d["states"] = states;
    d["initial"] = T.state_names.at(T.initial);
    d["final"] = T.state_names.at(T.final_state);

    std::vector<const Transition*> trs;
    for (const auto& t : T.transitions) trs.push_back(&t);
    auto key = [&](const Transition* t) {
        return std::tie(T.state_names[t->from], t->letter, t->test, t->op, T.state_names[t->to], t->output);
    };
    std::sort(trs.begin(), trs.end(), [&](auto a, auto b) { return key(a) < key(b); });
    ojson tj = ojson::array();
    for (const Transition* t : trs) {
        ojson o;
        o["from"] = T.state_names[t->from];
        o["letter"] = symbol_json(t->letter);
        ojson atoms = ojson::array();
        for (const Atom& a : t->test.atoms()) atoms.push_back(a.render());
        o["test"] = atoms;
        ojson op;
        op["kind"] = t->op.kind == OpKind::Nop ? "nop" : t->op.kind == OpKind::Drop ? "drop" : "lift";
        if (!t->op.is_nop()) op["index"] = t->op.index;
        o["op"] = op;
        o["to"] = T.state_names[t->to];
        o["output"] = alph(t->output);
        tj.push_back(o);
    }
    d["transitions"] = tj;
    return d.dump(2) + "\n";
}

Transducer load_machine(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw FileError(FileErrorKind::Io, "cannot open " + p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_machine(ss.str());
    } catch (const FileError& e) {
        FileError err(e.kind, p.string() + ":" + e.what());
        err.line = e.line;
        err.column = e.column;
        throw err;
    }
}

void save_machine(const Transducer& T, const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw FileError(FileErrorKind::Io, "cannot write " + p.string());
    out << serialize_machine(T);
    if (!out) throw FileError(FileErrorKind::Io, "write failed for " + p.string());
}

Word parse_word(const std::string& text) {
    Word w;
    int marks = 0;
    for (const auto& cp : code_points(text)) {
        if (cp == " " || cp == "\t") continue;
        if (cp == "_") {
            ++marks;
            continue;
        }
        if (cp == "#") throw Error("'#' is reserved and cannot appear in a word");
        Symbol s(cp);
        for (; marks > 0; --marks) s = marked(s);
        w.push_back(s);
    }
    if (marks > 0) throw Error("dangling mark in word '" + text + "'");
    return w;
}

}  // namespace ptx
