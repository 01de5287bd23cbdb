#include "iflat/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "iflat/contracts.hpp"
#include "iflat/dot.hpp"
#include "iflat/generate.hpp"
#include "iflat/json_io.hpp"
#include "iflat/spec.hpp"
#include "iflat/translate.hpp"

namespace iflat::cli {

namespace {

// Raised after the diagnostic has been printed.
struct InputError {};

class Session {
public:
    Session(std::ostream& out, std::ostream& err, bool color) : out_(out), err_(err), color_(color) {}

    SpecDocument load(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) fail(path + ": error: cannot read file");
        std::ostringstream text;
        text << in.rdbuf();
        try {
            return parse_spec(text.str());
        } catch (const SpecError& e) {
            fail(path + ":" + std::to_string(e.span().line) + ":" + std::to_string(e.span().column) +
                 ": error: " + e.message());
        }
    }

    [[noreturn]] void fail(const std::string& diagnostic) {
        err_ << diagnostic << "\n";
        throw InputError{};
    }

    void pass(const std::string& what) { out_ << mark("PASS", "32") << " " << what << "\n"; }

    void failed(const std::string& what, const std::vector<std::string>& witnesses) {
        out_ << mark("FAIL", "31") << " " << what << "\n";
        for (const auto& w : witnesses) out_ << "  " << (w.rfind("witness:", 0) == 0 ? w : "witness: " + w) << "\n";
        status_ = kViolated;
    }

    void skip(const std::string& what) { out_ << mark("SKIP", "33") << " " << what << "\n"; }

    std::ostream& out() { return out_; }
    int status() const { return status_; }

private:
    std::string mark(const char* text, const char* code) const {
        if (!color_) return text;
        return std::string("\x1b[") + code + "m" + text + "\x1b[0m";
    }

    std::ostream& out_;
    std::ostream& err_;
    bool color_;
    int status_ = kOk;
};

template <class T>
const T& lookup(Session& s, const SpecDocument& doc, const std::string& path, const std::string& name,
                const char* kind) {
    const Declaration* d = doc.find(name);
    if (!d) s.fail(path + ": error: no declaration named '" + name + "'");
    const T* x = std::get_if<T>(d);
    if (!x)
        s.fail(path + ": error: '" + name + "' is a " + std::string(declaration_kind(*d)) + " block, expected " +
               kind);
    return *x;
}

std::vector<std::string> witness_lines(const std::vector<ViolationWitness>& ws) {
    std::vector<std::string> out;
    for (const auto& w : ws) out.push_back(to_string(w));
    return out;
}

std::vector<std::string> axiom_lines(const PosetReport& r) {
    std::vector<std::string> out;
    for (const auto& f : r.failures) out.push_back(to_string(f));
    return out;
}

VarSet source_part(const VarSet& all, const VarSet& targets) {
    VarSet out;
    for (const auto& v : all)
        if (!targets.contains(v)) out.insert(v);
    return out;
}

std::string label_list(const LabelSet& labels) {
    std::string out;
    for (const auto& l : labels) out += (out.empty() ? "" : ", ") + to_string(l);
    return out.empty() ? "(none)" : out;
}

void cmd_validate(Session& s, const std::string& path) {
    const SpecDocument doc = s.load(path);
    for (const auto& decl : doc.declarations) {
        const std::string what = std::string(declaration_kind(decl)) + " " + declaration_name(decl);
        if (std::get_if<InterfaceDecl>(&decl)) {
            s.pass(what);
        } else if (auto* f = std::get_if<FlowsDecl>(&decl)) {
            auto ws = validate_flow_relation(f->relation);
            ws.empty() ? s.pass(what) : s.failed(what, witness_lines(ws));
        } else if (auto* l = std::get_if<LatticeDecl>(&decl)) {
            auto report = validate_lattice(l->lattice);
            report.is_lattice ? s.pass(what) : s.failed(what, axiom_lines(report));
        } else if (auto* c = std::get_if<ContractDecl>(&decl)) {
            auto ws = validate_contract(c->contract);
            ws.empty() ? s.pass(what) : s.failed(what, witness_lines(ws));
        }
    }
}

void write_file(Session& s, const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) s.fail(path + ": error: cannot write file");
    f << text;
}

void cmd_to_lattice(Session& s, const std::string& path, const std::string& name, bool trace,
                    const std::string& dot_path) {
    const SpecDocument doc = s.load(path);
    const auto& flows = lookup<FlowsDecl>(s, doc, path, name, "flows");
    if (auto ws = validate_flow_relation(flows.relation); !ws.empty()) {
        s.failed("flows " + name + " is not a flow relation", witness_lines(ws));
        return;
    }
    const Translation t = to_lattice(flows.relation);
    if (trace) {
        auto& out = s.out();
        out << "# loop labels: " << label_list(t.trace.loop_labels) << "\n";
        out << "# pruned labels: " << label_list(t.trace.pruned_labels) << "\n";
        out << "# can-flow order: " << t.trace.pre_completion.size() << " labels\n";
        out << "# fresh labels: " << t.trace.fresh_labels_added.size() << "\n";
        for (const auto& ins : t.trace.fresh_labels_added)
            out << "# fresh " << to_string(ins.label) << " joins " << to_string(ins.first) << " and "
                << to_string(ins.second) << "\n";
    }
    s.out() << pretty_print(make_lattice_decl(name, t.lattice, flows.relation.domain()));
    if (!dot_path.empty()) write_file(s, dot_path, emit_dot(t.lattice, name));
}

VarSet to_vars(Session& s, const std::vector<std::string>& names, const char* option) {
    VarSet out;
    for (const auto& n : names) {
        if (!Variable::is_valid_name(n)) s.fail(std::string("error: ") + option + ": invalid variable name '" + n + "'");
        out.insert(Variable(n));
    }
    return out;
}

void cmd_to_flows(Session& s, const std::string& path, const std::string& name,
                  const std::vector<std::string>& sources, const std::vector<std::string>& targets) {
    const SpecDocument doc = s.load(path);
    const auto& decl = lookup<LatticeDecl>(s, doc, path, name, "lattice");
    VarSet u = to_vars(s, sources, "--sources"), v = to_vars(s, targets, "--targets");
    for (const auto& x : u)
        if (v.contains(x)) s.fail("error: '" + x.name() + "' given as both source and target");
    VarSet all = u;
    all.insert(v.begin(), v.end());
    const FlowRelation m = to_flow_rel(decl.lattice, all, v);
    s.out() << pretty_print(make_flows_decl(name, m));
}

void cmd_check(Session& s, const std::string& path, const std::string& impl, const std::string& against) {
    const SpecDocument doc = s.load(path);
    const auto& flows = lookup<FlowsDecl>(s, doc, path, impl, "flows");
    const auto& iface = lookup<InterfaceDecl>(s, doc, path, against, "interface");
    std::vector<ViolationWitness> ws;
    try {
        ws = satisfies_no_flows(flows.relation, iface.interface.guarantee_no_flows);
    } catch (const UnknownVariable& e) {
        s.fail(path + ": error: " + e.what());
    }
    if (ws.empty()) {
        s.out() << "no-flow guarantees satisfied\n";
    } else {
        s.failed(impl + " violates no-flow guarantees of " + against, witness_lines(ws));
    }
}

void check_equivalence(Session& s, const std::string& what, const FlowRelation& m, const SecurityLattice& lattice) {
    const PosetReport report = validate_lattice(lattice);
    if (!report.is_lattice) {
        s.failed("equivalence " + what, axiom_lines(report));
        return;
    }
    const auto verdict = is_equivalent(lattice, m, m.variables(), m.domain().targets);
    if (verdict.equivalent) {
        s.pass("equivalence " + what);
        return;
    }
    std::vector<std::string> ws;
    if (verdict.missing_flow) ws.push_back("missing flow " + to_string(*verdict.missing_flow));
    if (verdict.extra_flow) ws.push_back("extra flow " + to_string(*verdict.extra_flow));
    if (verdict.bad_order_pair)
        ws.push_back("bad order pair " + to_string(verdict.bad_order_pair->first) + " -> " +
                     to_string(verdict.bad_order_pair->second));
    s.failed("equivalence " + what, ws);
}

void check_flows_roundtrip(Session& s, const std::string& what, const FlowRelation& m, const SecurityLattice& lattice) {
    const FlowRelation back = to_flow_rel(lattice, m.variables(), m.domain().targets);
    if (back == m) {
        s.pass("flows-roundtrip " + what);
        return;
    }
    std::vector<std::string> ws;
    for (const auto& p : m.pairs())
        if (!back.pairs().contains(p)) ws.push_back("missing flow " + to_string(p));
    for (const auto& p : back.pairs())
        if (!m.pairs().contains(p)) ws.push_back("extra flow " + to_string(p));
    if (ws.empty()) ws.push_back("domain differs");
    s.failed("flows-roundtrip " + what, ws);
}

void check_lattice_roundtrip(Session& s, const std::string& what, const SecurityLattice& lattice, const VarDomain& ports) {
    const VarSet all = ports.all();
    if (!validate_lattice(lattice).is_lattice || !has_source_target_shape(lattice, all, ports.targets)) {
        s.skip("lattice-roundtrip " + what + ": lattice is not a source/target lattice");
        return;
    }
    const FlowRelation m = to_flow_rel(lattice, all, ports.targets);
    const SecurityLattice back = to_lattice(m).lattice;
    if (equal_up_to_fresh_renaming(back, lattice)) {
        s.pass("lattice-roundtrip " + what);
        return;
    }
    std::vector<std::string> ws;
    for (const auto& l : back.labels())
        if (!l.is_fresh() && !lattice.contains(l)) ws.push_back("extra label " + to_string(l));
    for (const auto& l : lattice.labels())
        if (!l.is_fresh() && !back.contains(l)) ws.push_back("missing label " + to_string(l));
    if (ws.empty()) ws.push_back("orders differ: " + std::to_string(back.size()) + " vs " + std::to_string(lattice.size()) + " labels");
    s.failed("lattice-roundtrip " + what, ws);
}

void cmd_roundtrip(Session& s, const std::string& path, std::size_t random, std::uint64_t seed) {
    const SpecDocument doc = s.load(path);
    for (const auto& decl : doc.declarations) {
        if (auto* f = std::get_if<FlowsDecl>(&decl)) {
            const std::string what = "flows " + f->name;
            if (auto ws = validate_flow_relation(f->relation); !ws.empty()) {
                s.failed(what + " is not a flow relation", witness_lines(ws));
                continue;
            }
            const SecurityLattice lattice = to_lattice(f->relation).lattice;
            check_equivalence(s, what, f->relation, lattice);
            check_flows_roundtrip(s, what, f->relation, lattice);
        } else if (auto* l = std::get_if<LatticeDecl>(&decl)) {
            if (l->ports) {
                check_lattice_roundtrip(s, "lattice " + l->name, l->lattice, *l->ports);
            } else {
                s.skip("lattice-roundtrip lattice " + l->name + ": no ports declared");
            }
        } else if (auto* c = std::get_if<ContractDecl>(&decl)) {
            const std::string what = "contract " + c->name;
            if (auto ws = validate_contract(c->contract); !ws.empty()) {
                s.failed(what + " is not a flow contract", witness_lines(ws));
                continue;
            }
            const FlowContract back = to_flow_contract(to_lattice_contract(c->contract));
            if (back == c->contract) {
                s.pass("contract-roundtrip " + what);
            } else {
                std::vector<std::string> ws;
                auto diff = [&](const char* part, const std::vector<FlowRelation>& a,
                                const std::vector<FlowRelation>& b) {
                    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
                        if (!(a[i] == b[i])) ws.push_back(std::string(part) + "[" + std::to_string(i) + "] differs");
                };
                diff("assumption", c->contract.assumption, back.assumption);
                diff("guarantee", c->contract.guarantee, back.guarantee);
                if (ws.empty()) ws.push_back("ports differ");
                s.failed("contract-roundtrip " + what, ws);
            }
        }
    }
    if (random == 0) return;
    Rng rng(seed);
    for (std::size_t i = 0; i < random; ++i) {
        const FlowRelation m = random_flow_relation(rng);
        const std::string what = "random[" + std::to_string(i) + "] seed " + std::to_string(seed);
        const SecurityLattice lattice = to_lattice(m).lattice;
        check_equivalence(s, what, m, lattice);
        check_flows_roundtrip(s, what, m, lattice);
        const DomainLattice d = random_source_target_lattice(rng);
        check_lattice_roundtrip(s, what, d.lattice, VarDomain{source_part(d.all, d.targets), d.targets});
    }
}

void cmd_export(Session& s, const std::string& path, const std::string& format, const std::string& name) {
    const SpecDocument doc = s.load(path);
    if (format == "json") {
        if (name.empty()) {
            s.out() << emit_json(doc) << "\n";
            return;
        }
        const Declaration* d = doc.find(name);
        if (!d) s.fail(path + ": error: no declaration named '" + name + "'");
        std::visit(
            [&](const auto& x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, InterfaceDecl>) s.out() << emit_json(x.interface) << "\n";
                if constexpr (std::is_same_v<T, FlowsDecl>) s.out() << emit_json(x.relation) << "\n";
                if constexpr (std::is_same_v<T, LatticeDecl>) s.out() << emit_json(x.lattice) << "\n";
                if constexpr (std::is_same_v<T, ContractDecl>) s.out() << emit_json(x.contract) << "\n";
            },
            *d);
        return;
    }
    // dot: lattice blocks as written, flows blocks through to_lattice.
    bool any = false;
    for (const auto& decl : doc.declarations) {
        if (!name.empty() && declaration_name(decl) != name) continue;
        if (auto* l = std::get_if<LatticeDecl>(&decl)) {
            s.out() << emit_dot(l->lattice, l->name);
            any = true;
        } else if (auto* f = std::get_if<FlowsDecl>(&decl)) {
            if (!validate_flow_relation(f->relation).empty())
                s.fail(path + ": error: flows " + f->name + " is not a flow relation");
            s.out() << emit_dot(to_lattice(f->relation).lattice, f->name);
            any = true;
        }
    }
    if (!any)
        s.fail(path + ": error: " +
               (name.empty() ? std::string("no lattice or flows blocks to draw") : "no lattice or flows block named '" + name + "'"));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color) {
    CLI::App app{"Information-flow interfaces and security lattices", "iflat"};
    app.require_subcommand(1);
    std::uint64_t seed = 1;
    app.add_option("--seed", seed, "Seed for randomized runs");

    std::string file, name, impl, against, dot_path, format = "json";
    bool trace = false;
    std::size_t random = 0;
    std::vector<std::string> sources, targets;

    auto* validate = app.add_subcommand("validate", "Check every declaration in a spec file");
    validate->add_option("file", file)->required();

    auto* to_lat = app.add_subcommand("to-lattice", "Translate a flows block into a security lattice");
    to_lat->add_option("file", file)->required();
    to_lat->add_option("--name", name, "flows block")->required();
    to_lat->add_flag("--trace", trace, "Print the translation steps");
    to_lat->add_option("--dot", dot_path, "Write the Hasse diagram to this file");

    auto* to_flows = app.add_subcommand("to-flows", "Read a lattice block back as a flow relation");
    to_flows->add_option("file", file)->required();
    to_flows->add_option("--name", name, "lattice block")->required();
    to_flows->add_option("--sources", sources)->delimiter(',');
    to_flows->add_option("--targets", targets)->delimiter(',')->required();

    auto* check = app.add_subcommand("check", "Check a flows block against an interface's no-flow guarantees");
    check->add_option("file", file)->required();
    check->add_option("--impl", impl, "flows block")->required();
    check->add_option("--against", against, "interface block")->required();

    auto* roundtrip = app.add_subcommand("roundtrip", "Translate both ways and compare");
    roundtrip->add_option("file", file)->required();
    roundtrip->add_option("--random", random, "Also run this many generated cases");

    auto* exp = app.add_subcommand("export", "Print a document or declaration as JSON or DOT");
    exp->add_option("file", file)->required();
    exp->add_option("--format", format)->check(CLI::IsMember({"dot", "json"}));
    exp->add_option("--name", name);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kInputError;
    }

    Session s(out, err, color);
    try {
        if (*validate) cmd_validate(s, file);
        if (*to_lat) cmd_to_lattice(s, file, name, trace, dot_path);
        if (*to_flows) cmd_to_flows(s, file, name, sources, targets);
        if (*check) cmd_check(s, file, impl, against);
        if (*roundtrip) cmd_roundtrip(s, file, random, seed);
        if (*exp) cmd_export(s, file, format, name);
    } catch (const InputError&) {
        return kInputError;
    } catch (const Error& e) {
        err << file << ": error: " << e.what() << "\n";
        return kInputError;
    }
    return s.status();
}

}  // namespace iflat::cli
