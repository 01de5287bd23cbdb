#include <algorithm>
#include <cctype>
#include <map>

#include "iflat/spec.hpp"

namespace iflat {

namespace {

std::string position_prefix(const SourceSpan& span) {
    return std::to_string(span.line) + ":" + std::to_string(span.column) + ": ";
}

}  // namespace

SpecError::SpecError(Kind kind, SourceSpan span, const std::string& message)
    : Error(position_prefix(span) + message), kind_(kind), span_(span), message_(message) {}

namespace {

enum class Tok { ident, fresh, lbrace, rbrace, semi, colon, comma, arrow, end };

std::string_view describe(Tok t) {
    switch (t) {
        case Tok::ident: return "identifier";
        case Tok::fresh: return "fresh label";
        case Tok::lbrace: return "'{'";
        case Tok::rbrace: return "'}'";
        case Tok::semi: return "';'";
        case Tok::colon: return "':'";
        case Tok::comma: return "','";
        case Tok::arrow: return "'->'";
        case Tok::end: return "end of input";
    }
    return "token";
}

struct Token {
    Tok kind;
    std::string text;
    SourceSpan span;
};

std::string describe(const Token& t) {
    if (t.kind == Tok::ident || t.kind == Tok::fresh) return "'" + t.text + "'";
    return std::string(describe(t.kind));
}

std::vector<Token> lex(std::string_view text) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    auto is_word = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    while (i < text.size()) {
        const char c = text[i];
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        SourceSpan span{line, col, 1};
        auto single = [&](Tok kind) {
            out.push_back({kind, std::string(1, c), span});
            advance(1);
        };
        switch (c) {
            case '{': single(Tok::lbrace); continue;
            case '}': single(Tok::rbrace); continue;
            case ';': single(Tok::semi); continue;
            case ':': single(Tok::colon); continue;
            case ',': single(Tok::comma); continue;
            default: break;
        }
        if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            span.length = 2;
            out.push_back({Tok::arrow, "->", span});
            advance(2);
            continue;
        }
        if (is_word(c)) {
            std::size_t j = i;
            while (j < text.size() && is_word(text[j])) ++j;
            std::string word(text.substr(i, j - i));
            span.length = word.size();
            if (word.front() == '_') {
                bool fresh = word.size() > 2 && word[1] == 'j' &&
                             std::all_of(word.begin() + 2, word.end(),
                                         [](char d) { return std::isdigit(static_cast<unsigned char>(d)); });
                if (!fresh)
                    throw SpecError(SpecError::Kind::syntax, span,
                                    "names beginning with '_' are reserved for fresh labels: '" + word + "'");
                out.push_back({Tok::fresh, std::move(word), span});
            } else if (std::isdigit(static_cast<unsigned char>(word.front()))) {
                throw SpecError(SpecError::Kind::syntax, span, "identifier cannot start with a digit: '" + word + "'");
            } else {
                out.push_back({Tok::ident, std::move(word), span});
            }
            advance(j - i);
            continue;
        }
        throw SpecError(SpecError::Kind::syntax, span, std::string("unexpected character '") + c + "'");
    }
    out.push_back({Tok::end, "", SourceSpan{line, col, 0}});
    return out;
}

struct NamedVar {
    Variable var;
    SourceSpan span;
};

struct WrittenPair {
    Variable from;
    Variable to;
    SourceSpan span;
};

// Reference to a label inside a lattice block, resolved after the block is read.
struct LabelRef {
    std::variant<std::string, VarSet, std::uint32_t> key;
    SourceSpan span;
};

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(lex(text)) {}

    SpecDocument parse() {
        SpecDocument doc;
        std::map<std::string, SourceSpan> names;
        while (peek().kind != Tok::end) {
            const Token& kw = expect_ident("'interface', 'flows', 'lattice' or 'contract'");
            Declaration decl = [&]() -> Declaration {
                if (kw.text == "interface") return parse_interface();
                if (kw.text == "flows") return parse_flows();
                if (kw.text == "lattice") return parse_lattice();
                if (kw.text == "contract") return parse_contract();
                throw SpecError(SpecError::Kind::syntax, kw.span,
                                "expected 'interface', 'flows', 'lattice' or 'contract', found " + describe(kw));
            }();
            const std::string& name = declaration_name(decl);
            if (auto [it, inserted] = names.emplace(name, declaration_span(decl)); !inserted)
                throw SpecError(SpecError::Kind::duplicate_name, declaration_span(decl),
                                "declaration '" + name + "' already defined at " + std::to_string(it->second.line) +
                                    ":" + std::to_string(it->second.column));
            doc.declarations.push_back(std::move(decl));
        }
        return doc;
    }

private:
    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }

    const Token& take() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }

    [[noreturn]] void unexpected(std::string_view expected) const {
        throw SpecError(SpecError::Kind::syntax, peek().span,
                        "expected " + std::string(expected) + ", found " + describe(peek()));
    }

    const Token& expect(Tok kind, std::string_view what = {}) {
        if (peek().kind != kind) unexpected(what.empty() ? describe(kind) : what);
        return take();
    }

    const Token& expect_ident(std::string_view what = "identifier") { return expect(Tok::ident, what); }

    void expect_keyword(std::string_view kw) {
        if (peek().kind != Tok::ident || peek().text != kw) unexpected("'" + std::string(kw) + "'");
        take();
    }

    bool accept_keyword(std::string_view kw) {
        if (peek().kind == Tok::ident && peek().text == kw) {
            take();
            return true;
        }
        return false;
    }

    NamedVar variable() {
        const Token& t = expect_ident("variable name");
        return {Variable(t.text), t.span};
    }

    // `name, name, ...;` after the colon of a port list.
    std::vector<NamedVar> var_list() {
        std::vector<NamedVar> out;
        if (peek().kind == Tok::semi) {
            take();
            return out;
        }
        out.push_back(variable());
        while (peek().kind == Tok::comma) {
            take();
            out.push_back(variable());
        }
        expect(Tok::semi);
        return out;
    }

    WrittenPair pair_stmt() {
        NamedVar from = variable();
        expect(Tok::arrow);
        NamedVar to = variable();
        expect(Tok::semi);
        SourceSpan span = from.span;
        span.length = to.span.line == from.span.line ? to.span.column + to.span.length - from.span.column
                                                     : from.span.length;
        return {from.var, to.var, span};
    }

    // Collects the `inputs:` / `outputs:` statements of a block.
    struct Ports {
        std::optional<std::vector<NamedVar>> inputs;
        std::optional<std::vector<NamedVar>> outputs;

        bool declared() const { return inputs || outputs; }
        VarSet in() const { return to_set(inputs); }
        VarSet out() const { return to_set(outputs); }
        VarSet all() const {
            VarSet s = in();
            VarSet o = out();
            s.insert(o.begin(), o.end());
            return s;
        }

        static VarSet to_set(const std::optional<std::vector<NamedVar>>& v) {
            VarSet s;
            if (v)
                for (const auto& n : *v) s.insert(n.var);
            return s;
        }
    };

    bool port_stmt(Ports& ports) {
        if (peek().kind != Tok::ident || peek(1).kind != Tok::colon) return false;
        if (peek().text != "inputs" && peek().text != "outputs") return false;
        const Token& kw = take();
        take();
        auto& slot = kw.text == "inputs" ? ports.inputs : ports.outputs;
        if (slot) throw SpecError(SpecError::Kind::duplicate_name, kw.span, "'" + kw.text + "' declared twice");
        slot = var_list();
        std::set<Variable> seen;
        if (ports.inputs) {
            for (const auto& n : *ports.inputs)
                if (!seen.insert(n.var).second)
                    throw SpecError(SpecError::Kind::duplicate_name, n.span, "port '" + n.var.name() + "' declared twice");
        }
        if (ports.outputs) {
            for (const auto& n : *ports.outputs)
                if (!seen.insert(n.var).second)
                    throw SpecError(SpecError::Kind::duplicate_name, n.span, "port '" + n.var.name() + "' declared twice");
        }
        return true;
    }

    void require_declared(const WrittenPair& p, const VarSet& declared) const {
        for (const Variable* v : {&p.from, &p.to})
            if (!declared.count(*v))
                throw SpecError(SpecError::Kind::unknown_variable, p.span, "unknown variable '" + v->name() + "'");
    }

    InterfaceDecl parse_interface() {
        InterfaceDecl d;
        const Token& name = expect_ident("interface name");
        d.name = name.text;
        d.span = name.span;
        expect(Tok::lbrace);
        Ports ports;
        std::vector<WrittenPair> assumes, guarantees;
        while (peek().kind != Tok::rbrace) {
            if (port_stmt(ports)) continue;
            if (accept_keyword("assume")) {
                expect_keyword("noflow");
                assumes.push_back(pair_stmt());
            } else if (accept_keyword("guarantee")) {
                expect_keyword("noflow");
                guarantees.push_back(pair_stmt());
            } else {
                unexpected("'inputs', 'outputs', 'assume', 'guarantee' or '}'");
            }
        }
        take();
        const VarSet in = ports.in(), out = ports.out(), all = ports.all();
        PairSet a, g;
        for (const auto& p : assumes) {
            require_declared(p, all);
            if (!in.count(p.to))
                throw SpecError(SpecError::Kind::semantic, p.span,
                                "assumption no-flow must target an input; '" + p.to.name() + "' is an output");
            a.emplace(p.from, p.to);
        }
        for (const auto& p : guarantees) {
            require_declared(p, all);
            if (!out.count(p.to))
                throw SpecError(SpecError::Kind::semantic, p.span,
                                "guarantee no-flow must target an output; '" + p.to.name() + "' is an input");
            g.emplace(p.from, p.to);
        }
        d.interface = make_interface(in, out, std::move(a), std::move(g));
        return d;
    }

    std::vector<WrittenPair> flow_body() {
        expect(Tok::lbrace);
        std::vector<WrittenPair> pairs;
        while (peek().kind != Tok::rbrace) {
            expect_keyword("flow");
            pairs.push_back(pair_stmt());
        }
        take();
        return pairs;
    }

    PairSet resolve_member(const std::vector<WrittenPair>& pairs, const VarSet& sources, const VarSet& targets,
                           std::string_view target_role) const {
        VarSet all = sources;
        all.insert(targets.begin(), targets.end());
        PairSet out;
        for (const auto& p : pairs) {
            require_declared(p, all);
            if (!targets.count(p.to))
                throw SpecError(SpecError::Kind::semantic, p.span,
                                "flow " + to_string(VarPair{p.from, p.to}) + " targets '" + p.to.name() +
                                    "', which is not " + std::string(target_role));
            out.emplace(p.from, p.to);
        }
        return out;
    }

    FlowsDecl parse_flows() {
        FlowsDecl d;
        const Token& name = expect_ident("flows name");
        d.name = name.text;
        d.span = name.span;
        d.strict = accept_keyword("strict");
        expect(Tok::lbrace);
        Ports ports;
        std::vector<WrittenPair> pairs;
        while (peek().kind != Tok::rbrace) {
            if (port_stmt(ports)) continue;
            expect_keyword("flow");
            pairs.push_back(pair_stmt());
        }
        take();
        VarDomain domain{ports.in(), ports.out()};
        const VarSet all = domain.all();
        for (const auto& p : pairs) {
            require_declared(p, all);
            if (!domain.targets.count(p.to))
                throw SpecError(SpecError::Kind::semantic, p.span,
                                "flow " + to_string(VarPair{p.from, p.to}) + " targets input '" + p.to.name() +
                                    "'; flows must target outputs");
            d.written.emplace(p.from, p.to);
        }
        d.relation = d.strict ? FlowRelation(domain, d.written)
                              : make_flow_relation(domain, d.written, CloseMode::close);
        return d;
    }

    LabelRef label_ref() {
        const Token& t = peek();
        if (t.kind == Tok::fresh) {
            take();
            return {static_cast<std::uint32_t>(std::stoul(t.text.substr(2))), t.span};
        }
        if (t.kind == Tok::ident) {
            take();
            return {t.text, t.span};
        }
        if (t.kind == Tok::lbrace) {
            SourceSpan span = take().span;
            VarSet vars;
            vars.insert(variable().var);
            while (peek().kind == Tok::comma) {
                take();
                vars.insert(variable().var);
            }
            expect(Tok::rbrace);
            return {std::move(vars), span};
        }
        unexpected("label");
    }

    LatticeDecl parse_lattice() {
        LatticeDecl d;
        const Token& name = expect_ident("lattice name");
        d.name = name.text;
        d.span = name.span;
        expect(Tok::lbrace);
        Ports ports;
        std::vector<std::pair<Label, SourceSpan>> declared;
        std::vector<std::pair<LabelRef, LabelRef>> below;
        while (peek().kind != Tok::rbrace) {
            if (port_stmt(ports)) continue;
            const bool is_label_decl = peek().kind == Tok::ident && peek().text == "label" &&
                                       (peek(1).kind == Tok::lbrace || peek(1).kind == Tok::fresh);
            if (is_label_decl) {
                take();
                LabelRef ref = label_ref();
                expect(Tok::semi);
                if (auto* vars = std::get_if<VarSet>(&ref.key))
                    declared.emplace_back(Label::of(*vars), ref.span);
                else
                    declared.emplace_back(Label::fresh(std::get<std::uint32_t>(ref.key)), ref.span);
                continue;
            }
            LabelRef lo = label_ref();
            expect_keyword("below");
            LabelRef hi = label_ref();
            expect(Tok::semi);
            below.emplace_back(std::move(lo), std::move(hi));
        }
        take();

        if (ports.declared()) d.ports = VarDomain{ports.in(), ports.out()};
        const VarSet port_vars = ports.all();
        std::multimap<std::string, Label> by_name;
        for (const auto& [label, span] : declared) {
            if (!d.declared.insert(label).second)
                throw SpecError(SpecError::Kind::duplicate_name, span, "label " + to_string(label) + " declared twice");
            if (d.ports)
                for (const auto& v : label.vars())
                    if (!port_vars.count(v))
                        throw SpecError(SpecError::Kind::unknown_variable, span,
                                        "label " + to_string(label) + " uses undeclared variable '" + v.name() + "'");
            by_name.emplace(joined_name(label), label);
        }

        auto resolve = [&](const LabelRef& ref) -> Label {
            if (auto* n = std::get_if<std::string>(&ref.key)) {
                auto [lo, hi] = by_name.equal_range(*n);
                if (lo == hi)
                    throw SpecError(SpecError::Kind::unknown_variable, ref.span, "unknown label '" + *n + "'");
                if (std::next(lo) != hi)
                    throw SpecError(SpecError::Kind::semantic, ref.span,
                                    "label name '" + *n + "' is ambiguous; use the {a, b} form");
                return lo->second;
            }
            Label l = std::holds_alternative<VarSet>(ref.key) ? Label::of(std::get<VarSet>(ref.key))
                                                               : Label::fresh(std::get<std::uint32_t>(ref.key));
            if (!d.declared.count(l))
                throw SpecError(SpecError::Kind::unknown_variable, ref.span, "undeclared label " + to_string(l));
            return l;
        };
        for (const auto& [lo, hi] : below) d.written.emplace(resolve(lo), resolve(hi));

        LabelSet labels = d.declared;
        labels.insert(Label::bottom());
        labels.insert(Label::top());
        std::set<LabelPair> order = d.written;
        for (const auto& l : labels) {
            order.emplace(Label::bottom(), l);
            order.emplace(l, Label::top());
        }
        d.lattice = SecurityLattice::closed(labels, order);
        return d;
    }

    ContractDecl parse_contract() {
        ContractDecl d;
        const Token& name = expect_ident("contract name");
        d.name = name.text;
        d.span = name.span;
        expect(Tok::lbrace);
        Ports ports;
        struct Member {
            bool assume;
            bool maximal;
            std::vector<WrittenPair> pairs;
        };
        std::vector<Member> members;
        while (peek().kind != Tok::rbrace) {
            if (port_stmt(ports)) continue;
            const bool assume = accept_keyword("assume");
            if (!assume && !accept_keyword("guarantee")) unexpected("'inputs', 'outputs', 'assume', 'guarantee' or '}'");
            const bool maximal = accept_keyword("maximal");
            members.push_back({assume, maximal, flow_body()});
        }
        take();
        d.contract.inputs = ports.in();
        d.contract.outputs = ports.out();
        const VarSet& in = d.contract.inputs;
        const VarSet& out = d.contract.outputs;
        for (const auto& m : members) {
            if (m.assume) {
                PairSet written = resolve_member(m.pairs, out, in, "an input");
                d.contract.assumption.push_back(make_flow_relation(VarDomain{out, in}, written, CloseMode::close));
                d.written_assumption.push_back(std::move(written));
                d.maximal_assumption.push_back(m.maximal);
            } else {
                PairSet written = resolve_member(m.pairs, in, out, "an output");
                d.contract.guarantee.push_back(make_flow_relation(VarDomain{in, out}, written, CloseMode::close));
                d.written_guarantee.push_back(std::move(written));
                d.maximal_guarantee.push_back(m.maximal);
            }
        }
        return d;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

SpecDocument parse_spec(std::string_view text) { return Parser(text).parse(); }

}  // namespace iflat
