#include "oracles.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <vector>

using namespace iflat;

namespace oracle {

PairSet closure(const PairSet& pairs) {
    PairSet out = pairs;
    for (bool changed = true; changed;) {
        changed = false;
        PairSet add;
        for (const auto& [a, b] : out)
            for (const auto& [c, d] : out)
                if (b == c && !out.contains({a, d})) add.emplace(a, d);
        if (!add.empty()) {
            out.insert(add.begin(), add.end());
            changed = true;
        }
    }
    return out;
}

std::optional<Label> join(const SecurityLattice& s, const Label& a, const Label& b) {
    std::vector<Label> upper;
    for (const auto& c : s.labels())
        if (leq(s, a, c) && leq(s, b, c)) upper.push_back(c);
    for (const auto& c : upper)
        if (std::all_of(upper.begin(), upper.end(), [&](const Label& d) { return leq(s, c, d); })) return c;
    return std::nullopt;
}

namespace {

// Whether some ordering of `vars` is a cycle of m.
bool forms_cycle(const FlowRelation& m, std::vector<Variable> vars) {
    std::sort(vars.begin(), vars.end());
    // Fix the first element; permute the rest.
    do {
        bool ok = true;
        for (std::size_t i = 0; ok && i < vars.size(); ++i)
            ok = m.contains(vars[i], vars[(i + 1) % vars.size()]);
        if (ok) return true;
    } while (std::next_permutation(vars.begin() + 1, vars.end()));
    return false;
}

}  // namespace

std::vector<std::uint32_t> normal_cuts(const SecurityLattice& s) {
    const std::size_t n = s.size();
    auto upper = [&](std::uint32_t set) {
        std::uint32_t out = 0;
        for (std::size_t x = 0; x < n; ++x) {
            bool ok = true;
            for (std::size_t a = 0; a < n && ok; ++a)
                if (set >> a & 1) ok = s.can_flow(a, x);
            if (ok) out |= 1u << x;
        }
        return out;
    };
    auto lower = [&](std::uint32_t set) {
        std::uint32_t out = 0;
        for (std::size_t x = 0; x < n; ++x) {
            bool ok = true;
            for (std::size_t a = 0; a < n && ok; ++a)
                if (set >> a & 1) ok = s.can_flow(x, a);
            if (ok) out |= 1u << x;
        }
        return out;
    };
    std::vector<std::uint32_t> cuts;
    for (std::uint32_t set = 0; set < (1u << n); ++set) cuts.push_back(lower(upper(set)));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

SecurityLattice translate(const FlowRelation& m) {
    const VarSet all = m.variables();
    if (all.size() > 8) throw InstanceTooLarge("oracle handles at most 8 variables");
    const std::vector<Variable> vars(all.begin(), all.end());
    const std::size_t n = vars.size();

    // Every variable set that lies on one cycle.
    std::vector<std::uint32_t> loops;
    for (std::uint32_t set = 1; set < (1u << n); ++set) {
        std::vector<Variable> members;
        for (std::size_t i = 0; i < n; ++i)
            if (set >> i & 1) members.push_back(vars[i]);
        if (forms_cycle(m, members)) loops.push_back(set);
    }
    // Keep only loops not contained in a larger one.
    LabelSet labels{Label::bottom(), Label::top()};
    for (auto a : loops) {
        bool subsumed = std::any_of(loops.begin(), loops.end(), [&](std::uint32_t b) { return b != a && (a & b) == a; });
        if (subsumed) continue;
        VarSet members;
        for (std::size_t i = 0; i < n; ++i)
            if (a >> i & 1) members.insert(vars[i]);
        labels.insert(Label::of(members));
    }
    for (const auto& u : m.domain().sources) labels.insert(Label::of({u}));

    std::set<LabelPair> order;
    for (const auto& a : labels)
        for (const auto& b : labels) {
            bool ok;
            if (a == b || a == Label::bottom() || b == Label::top()) {
                ok = true;
            } else if (a.is_sentinel() || b.is_sentinel()) {
                ok = false;
            } else {
                ok = true;
                for (const auto& x : a.vars())
                    for (const auto& y : b.vars()) ok = ok && m.contains(x, y);
            }
            if (ok) order.emplace(a, b);
        }
    const SecurityLattice poset(labels, order);

    // Dedekind-MacNeille: principal ideals keep their label, every other cut
    // becomes a fresh one.
    const auto cuts = normal_cuts(poset);
    std::map<std::uint32_t, Label> named;
    for (std::size_t p = 0; p < poset.size(); ++p) {
        std::uint32_t ideal = 0;
        for (std::size_t q = 0; q < poset.size(); ++q)
            if (poset.can_flow(q, p)) ideal |= 1u << q;
        named.emplace(ideal, poset.labels()[p]);
    }
    std::uint32_t next = 0;
    LabelSet out_labels;
    std::vector<std::pair<std::uint32_t, Label>> cut_labels;
    for (auto c : cuts) {
        auto it = named.find(c);
        Label l = it != named.end() ? it->second : Label::fresh(next++);
        out_labels.insert(l);
        cut_labels.emplace_back(c, l);
    }
    std::set<LabelPair> out_order;
    for (const auto& [c1, l1] : cut_labels)
        for (const auto& [c2, l2] : cut_labels)
            if ((c1 & c2) == c1) out_order.emplace(l1, l2);
    return SecurityLattice(out_labels, out_order);
}

namespace {

// Recursive descent over the DOT grammar:
//   graph     : [strict] (graph | digraph) [ID] '{' stmt_list '}'
//   stmt_list : [stmt [';'] stmt_list]
//   stmt      : node_stmt | edge_stmt | attr_stmt | ID '=' ID | subgraph
//   attr_stmt : (graph | node | edge) attr_list
//   attr_list : '[' [a_list] ']' [attr_list]
//   a_list    : ID '=' ID [(';' | ',')] [a_list]
//   edge_stmt : (node_id | subgraph) edgeRHS [attr_list]
//   edgeRHS   : edgeop (node_id | subgraph) [edgeRHS]
//   node_stmt : node_id [attr_list]
//   node_id   : ID [port]
//   port      : ':' ID [':' compass_pt] | ':' compass_pt
//   subgraph  : [subgraph [ID]] '{' stmt_list '}'
class DotChecker {
public:
    explicit DotChecker(std::string_view text) : text_(text) {}

    std::optional<std::string> check() {
        try {
            next();
            if (keyword("strict")) next();
            if (keyword("digraph")) {
                directed_ = true;
            } else if (!keyword("graph")) {
                throw std::string("expected 'graph' or 'digraph'");
            }
            next();
            if (kind_ == Tok::id) next();
            expect('{');
            stmt_list();
            expect('}');
            if (kind_ != Tok::end) throw std::string("trailing input after graph");
            return std::nullopt;
        } catch (const std::string& e) {
            return "offset " + std::to_string(pos_) + ": " + e;
        }
    }

private:
    enum class Tok { id, punct, edgeop, end };

    static bool is_keyword(std::string_view s, std::string_view k) {
        if (s.size() != k.size()) return false;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (std::tolower(static_cast<unsigned char>(s[i])) != k[i]) return false;
        return true;
    }
    bool keyword(std::string_view k) const { return kind_ == Tok::id && !quoted_ && is_keyword(tok_, k); }
    bool punct(char c) const { return kind_ == Tok::punct && tok_.size() == 1 && tok_[0] == c; }
    void expect(char c) {
        if (!punct(c)) throw std::string("expected '") + c + "'";
        next();
    }

    void skip_space() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (text_.substr(pos_, 2) == "//" || (c == '#' && (pos_ == 0 || text_[pos_ - 1] == '\n'))) {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else if (text_.substr(pos_, 2) == "/*") {
                auto end = text_.find("*/", pos_ + 2);
                if (end == std::string_view::npos) throw std::string("unterminated comment");
                pos_ = end + 2;
            } else {
                return;
            }
        }
    }

    void next() {
        skip_space();
        quoted_ = false;
        if (pos_ >= text_.size()) {
            kind_ = Tok::end;
            tok_.clear();
            return;
        }
        const char c = text_[pos_];
        if (c == '-' && pos_ + 1 < text_.size() && (text_[pos_ + 1] == '>' || text_[pos_ + 1] == '-')) {
            if ((text_[pos_ + 1] == '>') != directed_) throw std::string("edge operator does not match graph type");
            kind_ = Tok::edgeop;
            pos_ += 2;
            return;
        }
        if (std::string_view("{}[];,=:").find(c) != std::string_view::npos) {
            kind_ = Tok::punct;
            tok_ = std::string(1, c);
            ++pos_;
            return;
        }
        kind_ = Tok::id;
        tok_.clear();
        if (c == '"') {
            quoted_ = true;
            ++pos_;
            while (true) {
                if (pos_ >= text_.size()) throw std::string("unterminated string");
                char d = text_[pos_++];
                if (d == '"') break;
                if (d == '\\' && pos_ < text_.size()) d = text_[pos_++];
                tok_ += d;
            }
            return;
        }
        if (c == '<') {
            int depth = 0;
            do {
                if (pos_ >= text_.size()) throw std::string("unterminated HTML string");
                char d = text_[pos_++];
                depth += d == '<' ? 1 : d == '>' ? -1 : 0;
            } while (depth > 0);
            quoted_ = true;
            return;
        }
        auto alpha = [](char x) { return std::isalpha(static_cast<unsigned char>(x)) || x == '_' || (x & 0x80); };
        auto digit = [](char x) { return std::isdigit(static_cast<unsigned char>(x)) != 0; };
        if (alpha(c)) {
            while (pos_ < text_.size() && (alpha(text_[pos_]) || digit(text_[pos_]))) tok_ += text_[pos_++];
            return;
        }
        if (digit(c) || c == '.' || c == '-') {
            if (c == '-') tok_ += text_[pos_++];
            bool dot = false, any = false;
            while (pos_ < text_.size() && (digit(text_[pos_]) || (!dot && text_[pos_] == '.'))) {
                dot = dot || text_[pos_] == '.';
                any = any || digit(text_[pos_]);
                tok_ += text_[pos_++];
            }
            if (!any) throw std::string("malformed numeral");
            return;
        }
        throw std::string("unexpected character '") + c + "'";
    }

    void stmt_list() {
        while (!punct('}') && kind_ != Tok::end) {
            stmt();
            if (punct(';')) next();
        }
    }

    void attr_list() {
        while (punct('[')) {
            next();
            while (!punct(']')) {
                if (kind_ != Tok::id) throw std::string("expected attribute name");
                next();
                expect('=');
                if (kind_ != Tok::id) throw std::string("expected attribute value");
                next();
                if (punct(';') || punct(',')) next();
            }
            next();
        }
    }

    void subgraph() {
        if (keyword("subgraph")) {
            next();
            if (kind_ == Tok::id) next();
        }
        expect('{');
        stmt_list();
        expect('}');
    }

    void node_id() {
        next();
        port();
    }

    void port() {
        if (!punct(':')) return;
        next();
        if (kind_ != Tok::id) throw std::string("expected port");
        next();
        if (punct(':')) {
            next();
            if (kind_ != Tok::id) throw std::string("expected compass point");
            next();
        }
    }

    void edge_rhs() {
        while (kind_ == Tok::edgeop) {
            next();
            if (keyword("subgraph") || punct('{')) {
                subgraph();
            } else if (kind_ == Tok::id) {
                node_id();
            } else {
                throw std::string("expected edge target");
            }
        }
    }

    void stmt() {
        if (keyword("graph") || keyword("node") || keyword("edge")) {
            next();
            if (!punct('[')) throw std::string("expected attribute list");
            attr_list();
            return;
        }
        if (keyword("subgraph") || punct('{')) {
            subgraph();
            edge_rhs();
            attr_list();
            return;
        }
        if (kind_ != Tok::id) throw std::string("expected statement");
        next();
        if (punct('=')) {
            next();
            if (kind_ != Tok::id) throw std::string("expected value after '='");
            next();
            return;
        }
        port();
        edge_rhs();
        attr_list();
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    Tok kind_ = Tok::end;
    std::string tok_;
    bool quoted_ = false;
    bool directed_ = false;
};

}  // namespace

std::optional<std::string> dot_syntax_error(std::string_view text) { return DotChecker(text).check(); }

}  // namespace oracle
