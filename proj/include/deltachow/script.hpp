#pragma once

#include <nlohmann/json.hpp>

#include <chrono>
#include <map>
#include <new>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "deltachow/charset.hpp"
#include "deltachow/chow.hpp"
#include "deltachow/errors.hpp"
#include "deltachow/prolong.hpp"
#include "deltachow/text.hpp"

namespace deltachow::script {

using nlohmann::json;

inline constexpr int schema_version = 1;

struct Options {
    Limits limits;
    std::uint32_t irreducibility_bound = 2;
};

/// One argument of the command line: a polynomial name, a bracketed group
/// `[f, g]` with optional multiplicity `2*[f]`, or `key=value`.
struct Arg {
    enum class Kind { name, group, keyword };
    Kind kind = Kind::name;
    std::vector<std::string> names;
    std::uint32_t multiplicity = 1;
    std::string key;
    std::string value;
    std::size_t line = 1;
    std::size_t column = 1;
};

struct Script {
    VariableNames names;
    std::vector<std::pair<std::string, Polynomial>> polys;
    std::string command;
    std::string arguments;
    std::vector<Arg> args;
    std::size_t line = 1;
    std::size_t column = 1;

    const Polynomial* find(const std::string& id) const {
        for (const auto& [name, p] : polys)
            if (name == id) return &p;
        return nullptr;
    }
};

inline const std::set<std::string>& commands() {
    static const std::set<std::string> all{"charset", "reduce", "derive", "bh",    "admissible", "dominant", "kolchin",
                                           "prolongseq", "chow", "dchow", "index", "bound",      "cyclechow"};
    return all;
}

namespace detail {

class Scanner {
public:
    explicit Scanner(std::string_view text) : text_(text) {}

    std::size_t pos() const noexcept { return pos_; }
    void seek(std::size_t p) { pos_ = p; }
    bool done() const noexcept { return pos_ >= text_.size(); }
    char peek() const { return done() ? '\0' : text_[pos_]; }
    std::string_view text() const noexcept { return text_; }

    std::pair<std::size_t, std::size_t> position(std::size_t offset) const {
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
            const auto byte = static_cast<unsigned char>(text_[i]);
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else if ((byte & 0xC0u) != 0x80u) {
                ++col;
            }
        }
        return {line, col};
    }

    [[noreturn]] void fail(const std::string& what, std::optional<std::size_t> at = std::nullopt) const {
        auto [line, col] = position(at.value_or(pos_));
        throw SyntaxError(what, line, col);
    }

    void skip_ws() {
        while (!done()) {
            if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            } else if (text_[pos_] == '#') {
                while (!done() && text_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::string identifier() {
        skip_ws();
        const std::size_t start = pos_;
        if (!done() && (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_'))
            while (!done() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string integer() {
        skip_ws();
        const std::size_t start = pos_;
        while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    bool accept(char c) {
        skip_ws();
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string current() const {
        if (done()) return "end of input";
        std::size_t len = 1;
        const auto byte = static_cast<unsigned char>(text_[pos_]);
        if (byte >= 0xF0u)
            len = 4;
        else if (byte >= 0xE0u)
            len = 3;
        else if (byte >= 0xC0u)
            len = 2;
        return std::string(text_.substr(pos_, len));
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "' but found '" + current() + "'");
    }

    /// Offset of the next ';' (or the end of the text), skipping comments.
    std::size_t statement_end() const {
        std::size_t p = pos_;
        while (p < text_.size() && text_[p] != ';') {
            if (text_[p] == '#')
                while (p < text_.size() && text_[p] != '\n') ++p;
            else
                ++p;
        }
        return p;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

/// Copy of the text with comments blanked out, byte offsets preserved.
inline std::string strip_comments(std::string_view text) {
    std::string out(text);
    for (std::size_t i = 0; i < out.size(); ++i)
        if (out[i] == '#')
            for (; i < out.size() && out[i] != '\n'; ++i) out[i] = ' ';
    return out;
}

inline std::vector<Arg> parse_args(Scanner& s, std::size_t end, const Script& script) {
    std::vector<Arg> args;
    auto check_name = [&](const std::string& id, std::size_t at) {
        if (!script.find(id)) s.fail("undeclared polynomial '" + id + "'", at);
    };
    for (;;) {
        s.skip_ws();
        if (s.pos() >= end) break;
        if (s.accept(',')) continue;
        Arg arg;
        const std::size_t at = s.pos();
        std::tie(arg.line, arg.column) = s.position(at);
        std::uint32_t mult = 1;
        if (std::isdigit(static_cast<unsigned char>(s.peek()))) {
            const std::string digits = s.integer();
            if (digits.size() > 9 || std::stoul(digits) == 0) s.fail("invalid multiplicity", at);
            mult = static_cast<std::uint32_t>(std::stoul(digits));
            s.expect('*');
            s.skip_ws();
            if (s.peek() != '[') s.fail("expected '[' after a multiplicity");
        }
        if (s.accept('[')) {
            arg.kind = Arg::Kind::group;
            arg.multiplicity = mult;
            while (!s.accept(']')) {
                if (s.pos() >= end) s.fail("unterminated group", at);
                if (!arg.names.empty()) s.expect(',');
                s.skip_ws();
                const std::size_t name_at = s.pos();
                const std::string id = s.identifier();
                if (id.empty()) s.fail("expected a polynomial name but found '" + s.current() + "'");
                check_name(id, name_at);
                arg.names.push_back(id);
            }
            args.push_back(std::move(arg));
            continue;
        }
        const std::string id = s.identifier();
        if (id.empty()) s.fail("unexpected character '" + s.current() + "'");
        if (s.accept('=')) {
            arg.kind = Arg::Kind::keyword;
            arg.key = id;
            s.skip_ws();
            arg.value = std::isdigit(static_cast<unsigned char>(s.peek())) ? s.integer() : s.identifier();
            if (arg.value.empty()) s.fail("expected a value for '" + id + "'");
        } else {
            check_name(id, at);
            arg.kind = Arg::Kind::name;
            arg.names.push_back(id);
        }
        args.push_back(std::move(arg));
    }
    return args;
}

}  // namespace detail

/// Parses `vars ...; poly id = expr; ... command args;`.
inline Script parse(std::string_view source) {
    const std::string text = detail::strip_comments(source);
    detail::Scanner s(text);
    Script script;
    bool have_vars = false;
    for (;;) {
        s.skip_ws();
        if (s.done()) s.fail("missing command");
        const std::size_t at = s.pos();
        const std::string word = s.identifier();
        if (word.empty()) s.fail("unexpected character '" + s.current() + "'");
        if (word == "vars") {
            if (have_vars || !script.polys.empty()) s.fail("'vars' must be the first statement and appear once", at);
            std::vector<std::string> names;
            do {
                s.skip_ws();
                const std::size_t name_at = s.pos();
                const std::string id = s.identifier();
                if (id.empty()) s.fail("expected a variable name but found '" + s.current() + "'");
                names.push_back(id);
                try {
                    script.names = VariableNames(names);
                } catch (const DomainError& e) {
                    s.fail(e.what(), name_at);
                }
            } while (s.accept(','));
            s.expect(';');
            have_vars = true;
        } else if (word == "poly") {
            s.skip_ws();
            const std::size_t name_at = s.pos();
            const std::string id = s.identifier();
            if (id.empty()) s.fail("expected a polynomial name but found '" + s.current() + "'");
            if (script.find(id)) s.fail("polynomial '" + id + "' defined twice", name_at);
            if (script.names.find(id) || VariableNames::is_reserved(id) || commands().count(id) || id == "D")
                s.fail("name '" + id + "' is reserved", name_at);
            s.expect('=');
            s.skip_ws();
            const std::size_t expr_at = s.pos();
            const std::size_t end = s.statement_end();
            if (end >= text.size()) s.fail("missing ';' after polynomial definition", end);
            auto [line, col] = s.position(expr_at);
            Polynomial p = parse_polynomial(std::string_view(text).substr(expr_at, end - expr_at), script.names,
                                            line, col);
            script.polys.emplace_back(id, std::move(p));
            s.seek(end + 1);
        } else {
            if (!commands().count(word)) s.fail("unknown command '" + word + "'", at);
            script.command = word;
            std::tie(script.line, script.column) = s.position(at);
            const std::size_t end = s.statement_end();
            std::string args(std::string_view(text).substr(s.pos(), end - s.pos()));
            const auto first = args.find_first_not_of(" \t\r\n");
            const auto last = args.find_last_not_of(" \t\r\n");
            script.arguments = first == std::string::npos ? "" : args.substr(first, last - first + 1);
            script.args = detail::parse_args(s, end, script);
            s.seek(end < text.size() ? end + 1 : end);
            s.skip_ws();
            if (!s.done()) s.fail("unexpected text after the command");
            return script;
        }
    }
}

namespace detail {

/// Argument access with per-command validation.
class Args {
public:
    Args(const Script& script, std::set<std::string> allowed) : script_(script) {
        for (const auto& a : script.args) {
            if (a.kind != Arg::Kind::keyword) continue;
            if (!allowed.count(a.key))
                throw SyntaxError("unknown argument '" + a.key + "' for " + script.command, a.line, a.column);
            if (keywords_.count(a.key)) throw SyntaxError("argument '" + a.key + "' repeated", a.line, a.column);
            keywords_[a.key] = &a;
        }
    }

    std::optional<std::uint32_t> integer(const std::string& key) const {
        auto it = keywords_.find(key);
        if (it == keywords_.end()) return std::nullopt;
        const Arg& a = *it->second;
        if (a.value.empty() || a.value.size() > 9 ||
            a.value.find_first_not_of("0123456789") != std::string::npos)
            throw SyntaxError("argument '" + key + "' needs a nonnegative integer", a.line, a.column);
        return static_cast<std::uint32_t>(std::stoul(a.value));
    }

    std::uint32_t required(const std::string& key) const {
        auto v = integer(key);
        if (!v) throw SyntaxError("missing argument '" + key + "=' for " + script_.command, script_.line, script_.column);
        return *v;
    }

    std::string word(const std::string& key, const std::string& fallback, const std::set<std::string>& choices) const {
        auto it = keywords_.find(key);
        if (it == keywords_.end()) return fallback;
        if (!choices.count(it->second->value))
            throw SyntaxError("invalid value '" + it->second->value + "' for '" + key + "'", it->second->line,
                              it->second->column);
        return it->second->value;
    }

    /// All named polynomials, flattening groups.
    std::vector<Polynomial> polys() const {
        std::vector<Polynomial> out;
        for (const auto& a : script_.args)
            for (const auto& n : a.names) out.push_back(*script_.find(n));
        return out;
    }

    std::vector<const Arg*> positional() const {
        std::vector<const Arg*> out;
        for (const auto& a : script_.args)
            if (a.kind != Arg::Kind::keyword) out.push_back(&a);
        return out;
    }

    void require_polys() const {
        if (positional().empty())
            throw SyntaxError(script_.command + " needs at least one polynomial", script_.line, script_.column);
    }

private:
    const Script& script_;
    std::map<std::string, const Arg*> keywords_;
};

inline json number(const mpz_class& z) {
    if (z.fits_slong_p()) return json(z.get_si());
    return json(z.get_str());
}

inline std::string rational(const Rational& q) { return q.get_den() == 1 ? q.get_num().get_str() : q.get_str(); }

inline std::uint32_t max_order(const std::vector<Polynomial>& polys) {
    std::uint32_t o = 0;
    for (const auto& p : polys) o = std::max(o, order_of(p));
    return o;
}

}  // namespace detail

/// Executes a parsed script; returns the `result` value and appends notes.
inline json run(const Script& script, const Options& options, json& notes) {
    const Limits& lim = options.limits;
    const VariableNames& names = script.names;
    const auto n = static_cast<std::uint32_t>(names.size());
    auto text = [&](const Polynomial& p) { return to_string(p, names); };
    auto texts = [&](const std::vector<Polynomial>& ps) {
        json out = json::array();
        for (const auto& p : ps) out.push_back(text(p));
        return out;
    };
    auto index_json = [](const Index& i) { return json::array({i.d, i.h, i.g, i.m}); };
    auto coords_json = [&](const ChowForm& f) {
        const ChowCoordinates c = chow_coordinates(f);
        json entries = json::array();
        for (const auto& [k, v] : c.entries) entries.push_back({{"index", detail::number(k)}, {"value", detail::rational(v)}});
        return json{{"dimension", detail::number(c.dimension)}, {"entries", entries}};
    };
    auto kolchin_json = [](const KolchinData& k) { return json{{"d", k.d}, {"h", k.h}, {"omega", k.omega_text()}}; };
    auto need_vars = [&] {
        if (n == 0) throw DomainError("no variables declared");
    };
    const std::string& cmd = script.command;

    if (cmd == "derive") {
        detail::Args a(script, {"k"});
        if (a.positional().size() != 1 || a.positional().front()->kind != Arg::Kind::name)
            throw SyntaxError("derive takes exactly one polynomial", script.line, script.column);
        const Polynomial d = derive(a.polys().front(), a.integer("k").value_or(1));
        return json{{"polynomial", text(d)}, {"order", order_of(d)}};
    }
    if (cmd == "reduce") {
        detail::Args a(script, {"mode"});
        const auto pos = a.positional();
        if (pos.size() < 2 || pos.front()->kind != Arg::Kind::name)
            throw SyntaxError("reduce takes a polynomial followed by a chain", script.line, script.column);
        const Polynomial g = *script.find(pos.front()->names.front());
        std::vector<Polynomial> elems;
        for (std::size_t i = 1; i < pos.size(); ++i)
            for (const auto& id : pos[i]->names) elems.push_back(*script.find(id));
        const bool algebraic = a.word("mode", "differential", {"differential", "algebraic"}) == "algebraic";
        const AscendingChain chain(elems, algebraic ? ChainMode::algebraic : ChainMode::differential);
        const RittReduction r = reduce_by(g, chain);
        json factors = json::array();
        for (const auto& f : r.factors)
            factors.push_back({{"element", f.chain_index}, {"kind", f.separant ? "separant" : "initial"},
                               {"exponent", f.exponent}});
        json terms = json::array();
        for (const auto& t : r.terms)
            terms.push_back({{"element", t.chain_index}, {"derivative", t.derivative}, {"quotient", text(t.quotient)}});
        return json{{"remainder", text(r.remainder)},
                    {"multiplier", text(r.multiplier)},
                    {"chain", texts(chain.elements())},
                    {"factors", factors},
                    {"terms", terms},
                    {"max_order", r.max_order},
                    {"certificate_verified", r.verifies(g, chain.elements())}};
    }
    if (cmd == "kolchin") {
        detail::Args a(script, {});
        a.require_polys();
        need_vars();
        return kolchin_json(kolchin(AscendingChain(a.polys(), ChainMode::differential), n));
    }
    if (cmd == "charset") {
        detail::Args a(script, {"h"});
        a.require_polys();
        need_vars();
        const auto gens = a.polys();
        const JetContext ctx{n, a.integer("h").value_or(detail::max_order(gens))};
        const CharSetResult r = characteristic_set(TruncatedIdeal(ctx.symbols(), gens), options.irreducibility_bound,
                                                   Ranking::orderly(), lim);
        json irr{{"verdict", r.irreducible.kind == IrreducibilityVerdict::Kind::yes  ? "yes"
                             : r.irreducible.kind == IrreducibilityVerdict::Kind::no ? "no"
                                                                                     : "unknown"},
                 {"label", r.irreducible.label()},
                 {"bound", r.irreducible.bound}};
        if (r.irreducible.p) irr["witnesses"] = json::array({text(*r.irreducible.p), text(*r.irreducible.q)});
        if (!r.irreducible.note.empty()) irr["note"] = r.irreducible.note;
        json leaders = json::array();
        for (const auto& s : r.chain.leaders()) leaders.push_back(to_string(s, names));
        return json{{"chain", texts(r.chain.elements())},
                    {"leaders", leaders},
                    {"saturation", texts(r.saturation.generators())},
                    {"irreducible", irr}};
    }
    if (cmd == "bh") {
        detail::Args a(script, {"h"});
        a.require_polys();
        need_vars();
        const AscendingChain chain(a.polys(), ChainMode::differential);
        const JetContext ctx{n, a.integer("h").value_or(chain.max_order())};
        const TruncatedIdeal b = b_h(chain, ctx, lim);
        const DimDegree dd = dim_and_degree(b, lim);
        return json{{"generators", texts(b.generators())},
                    {"h", ctx.h},
                    {"dimension", dd.dimension},
                    {"degree", detail::number(dd.degree)}};
    }
    if (cmd == "admissible") {
        detail::Args a(script, {"h"});
        a.require_polys();
        need_vars();
        const auto gens = a.polys();
        const JetContext ctx{n, a.integer("h").value_or(detail::max_order(gens))};
        if (detail::max_order(gens) > ctx.h) throw DomainError("order too small");
        notes.push_back("the containment test is exact for irreducible varieties; per-component admissibility of "
                        "reducible inputs is not checked");
        return is_admissible(TruncatedIdeal(ctx.symbols(), gens), ctx, lim);
    }
    if (cmd == "dominant") {
        detail::Args a(script, {"h"});
        a.require_polys();
        need_vars();
        const auto gens = a.polys();
        const JetContext ctx{n, a.integer("h").value_or(detail::max_order(gens))};
        if (detail::max_order(gens) > ctx.h) throw DomainError("order too small");
        const AscendingChain chain = charset_of(TruncatedIdeal(ctx.symbols(), gens), Ranking::orderly(), lim);
        const DominantComponent dc = dominant_component(chain, ctx, lim);
        const KolchinData direct = kolchin(dc.diff_chain, n);
        json out = kolchin_json(dc.kolchin);
        out["diff_chain"] = texts(dc.diff_chain.elements());
        out["algebraic_chain"] = texts(chain.elements());
        out["dimension"] = dc.dimension;
        out["projected_dimension"] = dc.projected;
        out["kolchin_from_chain"] = kolchin_json(direct);
        out["routes_agree"] = direct == dc.kolchin;
        return out;
    }
    if (cmd == "prolongseq") {
        detail::Args a(script, {"l", "mode"});
        a.require_polys();
        need_vars();
        const std::uint32_t level = a.required("l");
        if (a.word("mode", "exact", {"exact", "naive"}) == "naive") {
            const NaiveProlongation np = naive_prolongation(a.polys(), level, n);
            return json{{"generators", texts(np.ideal.generators())}, {"level", level}, {"upper_approximation", true}};
        }
        std::vector<AscendingChain> components;
        for (const Arg* p : a.positional()) {
            std::vector<Polynomial> elems;
            for (const auto& id : p->names) elems.push_back(*script.find(id));
            components.emplace_back(elems, ChainMode::differential);
        }
        const TruncatedIdeal ideal = prolongation_sequence(components, level, n, lim);
        return json{{"generators", texts(ideal.generators())}, {"level", level}, {"upper_approximation", false}};
    }
    if (cmd == "chow") {
        detail::Args a(script, {"h", "d"});
        a.require_polys();
        need_vars();
        const auto gens = a.polys();
        const JetContext ctx{n, a.integer("h").value_or(detail::max_order(gens))};
        const TruncatedIdeal ideal(ctx.symbols(), gens);
        const auto d = a.integer("d").value_or(static_cast<std::uint32_t>(dim_and_degree(ideal, lim).dimension));
        const ChowForm f = chow_form_algebraic(ideal, d, lim);
        return json{{"chow_form", text(f.body)}, {"d", f.d}, {"m", block_degree(f)}, {"coordinates", coords_json(f)}};
    }
    if (cmd == "dchow" || cmd == "index") {
        detail::Args a(script, {"d", "h"});
        a.require_polys();
        const auto polys = a.polys();
        if (cmd == "index" && polys.size() == 1) {
            bool u_only = true;
            for (const auto& s : polys.front().symbols()) u_only = u_only && s.kind == SymbolKind::chow_u;
            if (u_only) return json{{"index", index_json(index_of(as_differential_form(polys.front())))}};
        }
        need_vars();
        const AscendingChain chain(polys, ChainMode::differential);
        const KolchinData k = kolchin(chain, n);
        const ChowForm f =
            chow_form_differential(chain, a.integer("d").value_or(k.d), a.integer("h").value_or(k.h), n, lim);
        if (cmd == "index") return json{{"index", index_json(index_of(f))}};
        return json{{"chow_form", text(f.body)}, {"index", index_json(index_of(f))}, {"coordinates", coords_json(f)}};
    }
    if (cmd == "bound") {
        detail::Args a(script, {"n", "d", "h", "m"});
        if (a.positional().empty()) {
            const DegreeBound b = degree_bound(a.integer("n").value_or(n), a.required("d"), a.required("h"), a.required("m"));
            return json{{"lower", detail::rational(b.lower)}, {"upper", detail::number(b.upper)}};
        }
        need_vars();
        const AscendingChain chain(a.polys(), ChainMode::differential);
        const KolchinData k = kolchin(chain, n);
        const Index idx = index_of(chow_form_differential(chain, k.d, k.h, n, lim));
        const DegreeBound b = degree_bound(n, idx.d, idx.h, idx.m);
        const DimDegree dd = dim_and_degree(b_h(chain, JetContext{n, k.h}, lim), lim);
        const bool holds = dd.degree >= idx.g && Rational(dd.degree) >= b.lower && dd.degree <= b.upper;
        return json{{"lower", detail::rational(b.lower)}, {"upper", detail::number(b.upper)},
                    {"index", index_json(idx)}, {"degree", detail::number(dd.degree)},
                    {"holds", holds}};
    }
    if (cmd == "cyclechow") {
        detail::Args a(script, {"kind", "h"});
        a.require_polys();
        need_vars();
        const std::string kind = a.word("kind", "differential", {"differential", "algebraic", "jet"});
        Cycle cycle;
        cycle.n = n;
        cycle.kind = kind == "algebraic" ? ChowForm::Kind::algebraic : ChowForm::Kind::differential;
        for (const Arg* p : a.positional()) {
            std::vector<Polynomial> elems;
            for (const auto& id : p->names) elems.push_back(*script.find(id));
            cycle.ambient_order = std::max(cycle.ambient_order, detail::max_order(elems));
            cycle.components.push_back(
                {p->multiplicity, AscendingChain(elems, kind == "algebraic" ? ChainMode::algebraic
                                                                             : ChainMode::differential)});
        }
        if (kind == "algebraic") {
            cycle.ambient_order = a.integer("h").value_or(cycle.ambient_order);
            const ChowForm f = cycle_chow_form(cycle, lim);
            return json{{"chow_form", text(f.body)}, {"d", f.d}, {"m", block_degree(f)}, {"coordinates", coords_json(f)}};
        }
        if (kind == "jet") {
            const std::uint32_t h = a.integer("h").value_or(cycle_kolchin(cycle).h);
            const ChowForm f = cycle_to_algebraic_chow(cycle, h, lim);
            return json{{"chow_form", text(f.body)}, {"d", f.d}, {"m", block_degree(f)}, {"coordinates", coords_json(f)}};
        }
        const ChowForm f = cycle_chow_form(cycle, lim);
        return json{{"chow_form", text(f.body)}, {"index", index_json(index_of(f))}, {"coordinates", coords_json(f)}};
    }
    throw SyntaxError("unknown command '" + cmd + "'", script.line, script.column);
}

/// A complete report and the process exit code.
struct Report {
    json document;
    int exit_code = 0;
};

/// Parses and runs a script, catching every library error into the report.
inline Report execute(std::string_view source, const Options& options) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    auto ms = [](clock::duration d) { return std::chrono::duration<double, std::milli>(d).count(); };

    Report report;
    json& doc = report.document;
    doc["schema_version"] = schema_version;
    doc["command"] = nullptr;
    doc["inputs"] = json{{"options",
                          {{"degree_cap", options.limits.degree_cap},
                           {"term_cap", options.limits.term_cap},
                           {"irreducibility_bound", options.irreducibility_bound},
                           {"jobs", options.limits.jobs}}}};
    doc["result"] = nullptr;
    json notes = json::array();
    std::optional<clock::time_point> t_parsed;

    auto fail = [&](int code, const std::string& kind, const std::string& message) {
        report.exit_code = code;
        doc["error"] = json{{"kind", kind}, {"message", message}};
    };

    try {
        const Script script = parse(source);
        t_parsed = clock::now();
        doc["command"] = script.command;
        json polys = json::object();
        for (const auto& [id, p] : script.polys) polys[id] = to_string(p, script.names);
        doc["inputs"]["vars"] = script.names.names();
        doc["inputs"]["polys"] = polys;
        doc["inputs"]["arguments"] = script.arguments;
        doc["result"] = run(script, options, notes);
    } catch (const SyntaxError& e) {
        fail(2, "syntax", e.message());
        doc["error"]["line"] = e.line();
        doc["error"]["column"] = e.column();
    } catch (const ResourceLimit& e) {
        fail(3, "resource", e.what());
    } catch (const std::bad_alloc&) {
        fail(3, "resource", "out of memory");
    } catch (const std::exception& e) {
        fail(1, "domain", e.what());
    }
    if (report.exit_code != 0) doc["result"] = nullptr;
    if (!notes.empty()) doc["notes"] = notes;
    const auto t1 = clock::now();
    const auto parsed = t_parsed.value_or(t1);
    doc["timings_ms"] = json{{"parse", ms(parsed - t0)}, {"run", ms(t1 - parsed)}, {"total", ms(t1 - t0)}};
    return report;
}

}  // namespace deltachow::script
