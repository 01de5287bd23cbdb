#include <doctest.h>

#include <fstream>
#include <sstream>

#include "iflat/corpus.hpp"
#include "iflat/dot.hpp"
#include "iflat/json_io.hpp"
#include "iflat/spec.hpp"
#include "iflat/translate.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace iflat;
using fixture::kBot;
using fixture::kTop;
using fixture::L;

namespace {

SpecError parse_error(std::string_view text) {
    try {
        parse_spec(text);
    } catch (const SpecError& e) {
        return e;
    }
    FAIL("expected a parse error for: " << text);
    throw;
}

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + needle.size())) ++n;
    return n;
}

}  // namespace

TEST_CASE("interface block") {
    const auto doc = parse_spec(
        "interface Bus { inputs: wheel_s, distw_f_s, distw_b_s; outputs: odo_t, distw_f_t, distw_b_t; "
        "guarantee noflow wheel_s -> distw_f_t; guarantee noflow wheel_s -> distw_b_t; }");
    const auto* bus = doc.find_interface("Bus");
    REQUIRE(bus);
    CHECK(bus->interface.inputs == make_vars({"wheel_s", "distw_f_s", "distw_b_s"}));
    CHECK(bus->interface.guarantee_no_flows == make_pairs({{"wheel_s", "distw_f_t"}, {"wheel_s", "distw_b_t"}}));
    CHECK(bus->interface.assumption_no_flows.empty());
    CHECK(bus->span.line == 1);
    CHECK(bus->span.column == 11);
}

TEST_CASE("flows blocks are closed unless strict") {
    const auto doc = parse_spec(
        "flows I3 { inputs: wheel_s, distw_f_s, distw_b_s; outputs: odo_t, distw_f_t, distw_b_t; "
        "flow wheel_s -> odo_t; flow distw_f_s -> distw_f_t; flow distw_f_s -> distw_b_t; "
        "flow distw_b_s -> distw_f_t; flow distw_b_s -> distw_b_t; }\n"
        "flows Raw strict { inputs: u; outputs: x; flow u -> x; }");
    CHECK(doc.find_flows("I3")->relation == fixture::bus_i3());
    const auto* raw = doc.find_flows("Raw");
    REQUIRE(raw);
    CHECK(raw->strict);
    CHECK(raw->relation.pairs() == make_pairs({{"u", "x"}}));
    CHECK_FALSE(validate_flow_relation(raw->relation).empty());
}

TEST_CASE("parse errors carry spans") {
    SUBCASE("flow into an input") {
        const auto e = parse_error("flows Bad { inputs: u; outputs: v; flow v -> u; }");
        CHECK(e.kind() == SpecError::Kind::semantic);
        CHECK(e.span().line == 1);
        CHECK(e.span().column == 41);
    }
    SUBCASE("unknown variable") {
        const auto e = parse_error("flows F {\n    inputs: u;\n    outputs: v;\n    flow u -> w;\n}\n");
        CHECK(e.kind() == SpecError::Kind::unknown_variable);
        CHECK(e.span().line == 4);
        CHECK(std::string(e.what()).rfind("4:", 0) == 0);
        CHECK(e.message().find("'w'") != std::string::npos);
    }
    SUBCASE("duplicate declaration") {
        const auto e = parse_error("interface A { inputs: x; }\ninterface A { inputs: y; }");
        CHECK(e.kind() == SpecError::Kind::duplicate_name);
        CHECK(e.span().line == 2);
    }
    SUBCASE("duplicate port") { CHECK(parse_error("interface A { inputs: x, x; }").kind() == SpecError::Kind::duplicate_name); }
    SUBCASE("syntax") {
        CHECK(parse_error("interface A { inputs: x }").kind() == SpecError::Kind::syntax);
        CHECK(parse_error("lattice L { label {}; }").kind() == SpecError::Kind::syntax);
        CHECK(parse_error("widget W {}").kind() == SpecError::Kind::syntax);
        CHECK(parse_error("interface _x {}").kind() == SpecError::Kind::syntax);
        CHECK(parse_error("interface A { inputs: x; } $").kind() == SpecError::Kind::syntax);
    }
    SUBCASE("guarantee into an input") {
        CHECK(parse_error("interface A { inputs: x; outputs: y; guarantee noflow y -> x; }").kind() ==
              SpecError::Kind::semantic);
    }
    SUBCASE("undeclared lattice label") {
        CHECK(parse_error("lattice L { label {a}; a below b; }").kind() == SpecError::Kind::unknown_variable);
    }
}

TEST_CASE("comments and whitespace are ignored") {
    const auto a = parse_spec("# header\nlattice L {\n  label {a}; # first\n  label {b};\n  a below b;\n}\n");
    const auto b = parse_spec("lattice L{label{a};label{b};a below b;}");
    CHECK(structurally_equal(a, b));
}

TEST_CASE("lattice blocks close the written order") {
    const auto doc = parse_spec("lattice L { label {a}; label {b, c}; label _j0; a below _j0; _j0 below b_c; }");
    const SecurityLattice& s = doc.find_lattice("L")->lattice;
    CHECK(s.size() == 5);
    CHECK(leq(s, L({"a"}), L({"b", "c"})));
    CHECK(leq(s, kBot, L({"a"})));
    CHECK(validate_lattice(s).is_lattice);
}

TEST_CASE("ambiguous joined names need braces") {
    CHECK(parse_error("lattice L { label {a_b}; label {a, b}; a_b below {a, b}; }").kind() == SpecError::Kind::semantic);
    const auto doc = parse_spec("lattice L { label {a_b}; label {a, b}; {a_b} below {a, b}; }");
    CHECK(leq(doc.find_lattice("L")->lattice, L({"a_b"}), L({"a", "b"})));
    // The printer has to fall back to braces as well.
    CHECK(structurally_equal(parse_spec(pretty_print(doc)), doc));
}

TEST_CASE("pretty printing round-trips") {
    for (const auto& [name, text] : corpus_sources()) {
        CAPTURE(name);
        const SpecDocument doc = parse_spec(text);
        CHECK(pretty_print(doc) == text);
        CHECK(structurally_equal(parse_spec(pretty_print(doc)), doc));
    }
}

TEST_CASE("corpus files on disk are the embedded ones") {
    for (const auto& [name, text] : corpus_sources()) {
        if (name.rfind("random_seed_", 0) == 0) continue;
        std::ifstream in(fixture::corpus_path(name));
        REQUIRE(in);
        std::stringstream buf;
        buf << in.rdbuf();
        CHECK(buf.str() == text);
    }
}

TEST_CASE("printing computed lattices") {
    const SecurityLattice s = to_lattice(fixture::bus_i3()).lattice;
    SpecDocument doc;
    doc.declarations.push_back(make_lattice_decl("I3", s, fixture::bus_i3().domain()));
    const SpecDocument back = parse_spec(pretty_print(doc));
    CHECK(back.find_lattice("I3")->lattice == s);
    CHECK(back.find_lattice("I3")->ports == fixture::bus_i3().domain());
}

TEST_CASE("json round trips") {
    const FlowRelation m = fixture::bus_i3();
    const SecurityLattice s = to_lattice(m).lattice;
    CHECK(flow_relation_from_json(parse_json_text(emit_json(m))) == m);
    CHECK(lattice_from_json(parse_json_text(emit_json(s))) == s);
    for (const Label& l : {kBot, kTop, Label::fresh(12), L({"a", "b"})}) CHECK(label_from_json(to_json(l)) == l);

    const auto& bus = corpus().at("bus");
    CHECK(interface_from_json(to_json(bus.find_interface("Bus")->interface)) == bus.find_interface("Bus")->interface);
    const FlowContract& c = bus.find_contract("BusContract")->contract;
    CHECK(flow_contract_from_json(to_json(c)) == c);
    const LatticeContract lc = to_lattice_contract(c);
    CHECK(lattice_contract_from_json(to_json(lc)) == lc);
    for (const auto& [name, doc] : corpus()) {
        CAPTURE(name);
        const std::string text = emit_json(doc);
        const SpecDocument back = document_from_json(parse_json_text(text));
        CHECK(structurally_equal(back, doc));
        CHECK(emit_json(back) == text);
    }
}

TEST_CASE("json canonical form") {
    CHECK(emit_json(FlowContract{}) ==
          R"({"assumption":[],"guarantee":[],"inputs":[],"outputs":[],"schema":1,"type":"flow_contract"})");
    CHECK(emit_json(sentinel_lattice()) ==
          R"({"can_flow":[[0,0],[0,1],[1,1]],"labels":[{"kind":"bottom"},{"kind":"top"}],"schema":1,"type":"lattice"})");
}

TEST_CASE("json schema errors") {
    auto lattice = to_json(sentinel_lattice());
    lattice.erase("labels");
    CHECK_THROWS_WITH_AS(lattice_from_json(lattice), doctest::Contains("labels"), JsonSchemaError);
    CHECK_THROWS_AS(parse_json_text("{\"schema\": 1,"), JsonSchemaError);
    CHECK_THROWS_AS(flow_relation_from_json(to_json(sentinel_lattice())), JsonSchemaError);
    auto wrong_version = to_json(fixture::bus_i3());
    wrong_version["schema"] = 2;
    CHECK_THROWS_AS(flow_relation_from_json(wrong_version), JsonSchemaError);
    auto bad_name = to_json(fixture::bus_i3());
    bad_name["sources"][0] = "_x";
    CHECK_THROWS_WITH_AS(flow_relation_from_json(bad_name), doctest::Contains("/sources/0"), JsonSchemaError);
    auto bad_index = to_json(sentinel_lattice());
    bad_index["can_flow"].push_back({0, 5});
    CHECK_THROWS_AS(lattice_from_json(bad_index), JsonSchemaError);
    CHECK_THROWS_AS(label_from_json(nlohmann::json{{"kind", "vars"}, {"vars", nlohmann::json::array()}}), JsonSchemaError);
}

TEST_CASE("dot output") {
    SUBCASE("sentinels only") {
        const std::string dot = emit_dot(sentinel_lattice());
        CHECK(count(dot, "->") == 1);
        CHECK(dot.find("\"BOT\" -> \"TOP\"") != std::string::npos);
        CHECK(count(dot, "\";\n") == 3);
    }
    SUBCASE("confidentiality chain") {
        const std::string dot = emit_dot(corpus().at("fig3_conf").find_lattice("Confidentiality")->lattice);
        CHECK(dot.find("\"{Public}\" -> \"{Secret}\"") != std::string::npos);
        CHECK(count(dot, "->") == 3);
    }
    SUBCASE("bus lattice") {
        const SecurityLattice s = to_lattice(fixture::bus_i3()).lattice;
        const std::string dot = emit_dot(s, "I3");
        CHECK(dot.rfind("digraph \"I3\" {\n  rankdir=BT;\n", 0) == 0);
        CHECK(count(dot, "->") == hasse_reduction(s).size());
        CHECK(dot.find("\"_j0\" -> \"{distw_f_t}\"") != std::string::npos);
        CHECK(emit_dot(s, "I3") == dot);
        CHECK_FALSE(oracle::dot_syntax_error(dot));
    }
    SUBCASE("not a lattice") {
        const std::string dot = emit_dot(fixture::bowtie());
        CHECK(dot.find("warning=") != std::string::npos);
        // Every non-reflexive ordered pair is drawn.
        std::size_t pairs = 0;
        for (const auto& [a, b] : fixture::bowtie().can_flow_pairs()) pairs += a != b;
        CHECK(count(dot, "->") == pairs);
        CHECK_FALSE(oracle::dot_syntax_error(dot));
    }
    SUBCASE("names are escaped") { CHECK_FALSE(oracle::dot_syntax_error(emit_dot(sentinel_lattice(), "a \"quoted\" name"))); }
}

TEST_CASE("corpus contents") {
    const auto& c = corpus();
    for (const char* name : {"bus_system", "bus_decomposed", "bus_i3", "bus", "fig3_conf", "fig3_int", "fig3_product", "loop"})
        CHECK(c.contains(name));
    for (auto seed : kCorpusSeeds) CHECK(c.contains("random_seed_" + std::to_string(seed)));

    const SecurityLattice& product = c.at("fig3_product").find_lattice("Combined")->lattice;
    CHECK(product.size() == 6);
    CHECK(validate_lattice(product).is_lattice);

    const FlowRelation& i3 = c.at("bus_i3").find_flows("I3")->relation;
    CHECK(i3 == fixture::bus_i3());
    CHECK(satisfies_no_flows(i3, c.at("bus_system").find_interface("Bus")->interface.guarantee_no_flows).empty());

    const auto* bus = c.at("bus_decomposed").find_interface("Bus");
    REQUIRE(bus);
    for (const char* src : {"odo_t_bus", "wheel_s_bus"})
        for (const char* dst : {"distw_f_s_bus", "distw_b_s_bus"})
            CHECK(bus->interface.assumption_no_flows.contains({Variable(src), Variable(dst)}));
}
