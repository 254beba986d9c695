#include "chaincode/parse.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "chaincode/errors.hpp"

namespace chaincode {

namespace {

// ---- expression parser -------------------------------------------------
//
// One recursive-descent core shared by the two expression kinds (ring
// polynomials and field moduli); the algebra parameter supplies the
// value type and the meaning of literals and symbols.

// Expressions are evaluated before any mod-z^n reduction, so cap the
// intermediate degree to keep hostile inputs like (z^99999)^99999 from
// allocating unbounded memory.
constexpr std::size_t max_expr_degree = std::size_t(1) << 16;

struct cursor {
    std::string_view src;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < src.size() &&
               std::isspace(static_cast<unsigned char>(src[pos])))
            ++pos;
    }
    bool at_end() {
        skip_ws();
        return pos >= src.size();
    }
    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() != c) return false;
        ++pos;
        return true;
    }

    [[noreturn]] void fail_at(std::size_t at, const std::string& what) const {
        throw input_error("syntax error at offset " + std::to_string(at) +
                          ": " + what);
    }
    [[noreturn]] void fail(const std::string& what) const {
        fail_at(pos, what);
    }

    // Next symbol atom ('z', 'g' or 'w'), consuming it; 0 when the next
    // token is not a symbol.  The two-byte UTF-8 spellings of γ and ω
    // are aliases for g and w.
    char take_symbol() {
        skip_ws();
        if (pos >= src.size()) return 0;
        unsigned char c0 = static_cast<unsigned char>(src[pos]);
        if (c0 == 'z' || c0 == 'g' || c0 == 'w') {
            ++pos;
            return char(c0);
        }
        if (pos + 1 < src.size()) {
            unsigned char c1 = static_cast<unsigned char>(src[pos + 1]);
            if (c0 == 0xCE && c1 == 0xB3) { // γ
                pos += 2;
                return 'g';
            }
            if (c0 == 0xCF && c1 == 0x89) { // ω
                pos += 2;
                return 'w';
            }
        }
        return 0;
    }

    bool at_digit() {
        skip_ws();
        return pos < src.size() &&
               std::isdigit(static_cast<unsigned char>(src[pos]));
    }

    std::uint64_t take_uint() {
        if (!at_digit()) fail("expected a number");
        std::uint64_t v = 0;
        while (pos < src.size() &&
               std::isdigit(static_cast<unsigned char>(src[pos]))) {
            std::uint64_t d = std::uint64_t(src[pos] - '0');
            if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10)
                fail("integer literal too large");
            v = v * 10 + d;
            ++pos;
        }
        return v;
    }
};

struct ring_algebra {
    using value = rpoly;
    ring_ptr ring;

    value from_uint(std::uint64_t k) const {
        return make_rpoly(ring, {ring->from_int(k)});
    }
    value symbol(char s, cursor& c, std::size_t at) const {
        switch (s) {
        case 'z':
            return make_rpoly(ring, {0, ring->one()});
        case 'g':
            return make_rpoly(ring, {ring->gamma()});
        default:
            if (ring->s() == 1)
                c.fail_at(at, "symbol w needs a residue field with s > 1");
            // The field generator w has digit vector (0, 1), i.e. index p.
            return make_rpoly(ring, {ring->lift(felem(ring->p()))});
        }
    }
    value one() const { return make_rpoly(ring, {ring->one()}); }
    value add(const value& a, const value& b) const {
        return chaincode::add(a, b);
    }
    value sub(const value& a, const value& b) const {
        return chaincode::sub(a, b);
    }
    value neg(const value& a) const {
        return chaincode::sub(make_rpoly(ring, {}), a);
    }
    value mul(const value& a, const value& b, cursor& c,
              std::size_t at) const {
        if (!is_zero(a) && !is_zero(b) &&
            std::size_t(deg(a)) + std::size_t(deg(b)) > max_expr_degree)
            c.fail_at(at, "expression degree exceeds " +
                              std::to_string(max_expr_degree));
        return chaincode::mul(a, b);
    }
};

struct modulus_algebra {
    using value = fpoly;
    const residue_field* F;

    value from_uint(std::uint64_t k) const {
        felem r = F->from_int(k);
        return r == 0 ? fpoly{} : make_fpoly({r});
    }
    value symbol(char s, cursor& c, std::size_t at) const {
        if (s != 'w')
            c.fail_at(at, std::string("symbol ") + s +
                              " is not allowed in a field modulus");
        return make_fpoly({0, 1});
    }
    value one() const { return make_fpoly({1}); }
    value add(const value& a, const value& b) const {
        return fadd(*F, a, b);
    }
    value sub(const value& a, const value& b) const {
        return fsub(*F, a, b);
    }
    value neg(const value& a) const { return fsub(*F, fpoly{}, a); }
    value mul(const value& a, const value& b, cursor& c,
              std::size_t at) const {
        if (!is_zero(a) && !is_zero(b) &&
            std::size_t(deg(a)) + std::size_t(deg(b)) > max_expr_degree)
            c.fail_at(at, "expression degree exceeds " +
                              std::to_string(max_expr_degree));
        return fmul(*F, a, b);
    }
};

template <class A>
typename A::value parse_expr(cursor& c, const A& alg);

template <class A>
typename A::value parse_atom(cursor& c, const A& alg) {
    c.skip_ws();
    std::size_t at = c.pos;
    if (c.eat('(')) {
        auto v = parse_expr(c, alg);
        if (!c.eat(')')) c.fail("expected )");
        return v;
    }
    if (c.eat('-')) return alg.neg(parse_atom(c, alg));
    if (char s = c.take_symbol()) return alg.symbol(s, c, at);
    if (c.at_digit()) return alg.from_uint(c.take_uint());
    c.fail("expected a number, z, g, w, or (");
}

template <class A>
typename A::value parse_factor(cursor& c, const A& alg) {
    auto base = parse_atom(c, alg);
    if (!c.eat('^')) return base;
    std::size_t at = c.pos;
    std::uint64_t e = c.take_uint();
    auto acc = alg.one();
    for (;;) { // square-and-multiply keeps huge exponents cheap
        if (e & 1) acc = alg.mul(acc, base, c, at);
        e >>= 1;
        if (e == 0) return acc;
        base = alg.mul(base, base, c, at);
    }
}

template <class A>
typename A::value parse_term(cursor& c, const A& alg) {
    auto v = parse_factor(c, alg);
    while (true) {
        c.skip_ws();
        std::size_t at = c.pos;
        if (!c.eat('*')) return v;
        v = alg.mul(v, parse_factor(c, alg), c, at);
    }
}

template <class A>
typename A::value parse_expr(cursor& c, const A& alg) {
    auto v = parse_term(c, alg);
    for (;;) {
        if (c.eat('+'))
            v = alg.add(v, parse_term(c, alg));
        else if (c.eat('-'))
            v = alg.sub(v, parse_term(c, alg));
        else
            return v;
    }
}

template <class A>
typename A::value parse_full(const std::string& src, const A& alg) {
    cursor c{src};
    if (c.at_end()) c.fail("empty expression");
    auto v = parse_expr(c, alg);
    if (!c.at_end()) c.fail("unexpected trailing input");
    return v;
}

// ---- spec files ----------------------------------------------------------

std::string trimmed(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::uint64_t parse_u64_value(const std::string& key,
                              const std::string& val) {
    if (val.empty()) throw input_error("key '" + key + "': empty value");
    std::uint64_t v = 0;
    for (char ch : val) {
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw input_error("key '" + key +
                              "': expected an unsigned integer, got '" +
                              val + "'");
        std::uint64_t d = std::uint64_t(ch - '0');
        if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10)
            throw input_error("key '" + key + "': value out of range");
        v = v * 10 + d;
    }
    return v;
}

std::uint32_t parse_length(const std::string& key, std::uint64_t v) {
    if (v < 1 || v > (std::uint64_t(1) << 20))
        throw input_error("key '" + key + "': must be between 1 and 2^20");
    return std::uint32_t(v);
}

ring_family parse_family(const std::string& val) {
    if (val == "integer-modular") return ring_family::integer_modular;
    if (val == "poly-extension") return ring_family::poly_extension;
    throw input_error(
        "key 'ring.family': expected integer-modular or poly-extension, "
        "got '" +
        val + "'");
}

// Assembles the descriptor once every key is in; the modulus string
// needs p, so it is resolved last.
code_spec assemble_spec(const std::map<std::string, std::string>& kv,
                        std::vector<std::string> gens) {
    auto get = [&](const char* key) -> const std::string* {
        auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    auto require = [&](const char* key) -> const std::string& {
        const std::string* v = get(key);
        if (!v) throw input_error(std::string("missing key '") + key + "'");
        return *v;
    };

    code_spec spec;
    spec.ring.family = parse_family(require("ring.family"));
    spec.ring.p = parse_u64_value("ring.p", require("ring.p"));
    if (const std::string* s = get("ring.s"))
        spec.ring.s = std::uint32_t(parse_u64_value("ring.s", *s));
    if (const std::string* nu = get("ring.nu"))
        spec.ring.nu = std::uint32_t(parse_u64_value("ring.nu", *nu));
    if (const std::string* mod = get("ring.modulus"))
        spec.ring.field_modulus = parse_field_modulus(*mod, spec.ring.p);
    spec.n = parse_length("n", parse_u64_value("n", require("n")));
    if (gens.empty()) throw input_error("missing key 'gen'");
    spec.generators = std::move(gens);
    if (const std::string* m = get("distance-method"))
        spec.method = parse_method_name(*m);
    if (const std::string* b = get("max-enum")) {
        std::uint64_t v = parse_u64_value("max-enum", *b);
        if (v == 0) throw input_error("key 'max-enum': must be positive");
        spec.max_enum = v;
    }
    return spec;
}

code_spec parse_kv_spec(const std::string& text) {
    static const char* single_keys[] = {
        "ring.family", "ring.p",          "ring.s",   "ring.nu",
        "ring.modulus", "n",              "distance-method", "max-enum",
    };

    std::map<std::string, std::string> kv;
    std::vector<std::string> gens;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trimmed(line);
        if (line.empty()) continue;
        auto where = [&] { return "line " + std::to_string(lineno) + ": "; };
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw input_error(where() + "expected key = value");
        std::string key = trimmed(line.substr(0, eq));
        std::string val = trimmed(line.substr(eq + 1));
        if (key.empty()) throw input_error(where() + "missing key");
        if (val.empty())
            throw input_error(where() + "empty value for key '" + key + "'");
        if (key == "gen") {
            gens.push_back(val);
            continue;
        }
        bool known = false;
        for (const char* k : single_keys) known = known || key == k;
        if (!known) throw input_error(where() + "unknown key '" + key + "'");
        if (!kv.emplace(key, val).second)
            throw input_error(where() + "duplicate key '" + key + "'");
    }
    return assemble_spec(kv, std::move(gens));
}

using nlohmann::json;

void reject_unknown_keys(const json& obj, const char* what,
                         std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed) known = known || it.key() == k;
        if (!known)
            throw input_error(std::string("unknown ") + what + " key '" +
                              it.key() + "'");
    }
}

std::uint64_t json_u64(const json& v, const char* key) {
    if (!v.is_number_unsigned())
        throw input_error(std::string("key '") + key +
                          "': expected an unsigned integer");
    return v.get<std::uint64_t>();
}

std::string json_str(const json& v, const char* key) {
    if (!v.is_string())
        throw input_error(std::string("key '") + key +
                          "': expected a string");
    return v.get<std::string>();
}

code_spec parse_json_spec(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw input_error(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw input_error("JSON spec must be an object");
    reject_unknown_keys(j, "spec",
                        {"ring", "n", "generators", "distance-method",
                         "max-enum"});
    if (!j.contains("ring") || !j["ring"].is_object())
        throw input_error("missing 'ring' object");
    const json& r = j["ring"];
    reject_unknown_keys(r, "ring", {"family", "p", "s", "nu", "modulus"});

    code_spec spec;
    if (!r.contains("family"))
        throw input_error("missing key 'ring.family'");
    spec.ring.family = parse_family(json_str(r["family"], "ring.family"));
    if (!r.contains("p")) throw input_error("missing key 'ring.p'");
    spec.ring.p = json_u64(r["p"], "ring.p");
    if (r.contains("s"))
        spec.ring.s = std::uint32_t(json_u64(r["s"], "ring.s"));
    if (r.contains("nu"))
        spec.ring.nu = std::uint32_t(json_u64(r["nu"], "ring.nu"));
    if (r.contains("modulus")) {
        const json& m = r["modulus"];
        if (m.is_string())
            spec.ring.field_modulus =
                parse_field_modulus(m.get<std::string>(), spec.ring.p);
        else if (m.is_array()) {
            for (const json& c : m)
                spec.ring.field_modulus.push_back(
                    std::uint32_t(json_u64(c, "ring.modulus")));
        } else {
            throw input_error(
                "key 'ring.modulus': expected a string or an array");
        }
    }
    if (!j.contains("n")) throw input_error("missing key 'n'");
    spec.n = parse_length("n", json_u64(j["n"], "n"));
    if (!j.contains("generators") || !j["generators"].is_array() ||
        j["generators"].empty())
        throw input_error("'generators' must be a non-empty array");
    for (const json& g : j["generators"])
        spec.generators.push_back(json_str(g, "generators"));
    if (j.contains("distance-method"))
        spec.method = parse_method_name(
            json_str(j["distance-method"], "distance-method"));
    if (j.contains("max-enum")) {
        std::uint64_t v = json_u64(j["max-enum"], "max-enum");
        if (v == 0) throw input_error("key 'max-enum': must be positive");
        spec.max_enum = v;
    }
    return spec;
}

} // namespace

rpoly parse_poly(const std::string& src, const ring_ptr& ring) {
    check_invariant(ring != nullptr, "parse_poly needs a ring");
    return parse_full(src, ring_algebra{ring});
}

std::vector<std::uint32_t> parse_field_modulus(const std::string& src,
                                               std::uint64_t p) {
    residue_field F(p, 1, {});
    fpoly m = parse_full(src, modulus_algebra{&F});
    return std::vector<std::uint32_t>(m.c.begin(), m.c.end());
}

code_spec parse_code_spec(const std::string& text) {
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        return ch == '{' ? parse_json_spec(text) : parse_kv_spec(text);
    }
    throw input_error("empty code spec");
}

code_spec load_code_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_code_spec(buf.str());
    } catch (const input_error& e) {
        throw input_error(path + ": " + e.what());
    }
}

classify_options::mode parse_method_name(const std::string& name) {
    if (name == "auto") return classify_options::mode::automatic;
    if (name == "torsion-search")
        return classify_options::mode::torsion_search;
    if (name == "exhaustive") return classify_options::mode::exhaustive;
    if (name == "formula") return classify_options::mode::formula;
    throw input_error("unknown distance method '" + name +
                      "' (expected auto, torsion-search, exhaustive, or "
                      "formula)");
}

std::optional<std::uint64_t> env_max_enum() {
    const char* v = std::getenv("CHAINCODE_MAX_ENUM");
    if (!v || !*v) return std::nullopt;
    std::uint64_t b = parse_u64_value("CHAINCODE_MAX_ENUM", v);
    if (b == 0)
        throw input_error("CHAINCODE_MAX_ENUM: must be positive");
    return b;
}

} // namespace chaincode
