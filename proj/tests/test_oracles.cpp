#include <doctest.h>

#include "iflat/dot.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace iflat;
using fixture::L;

// The oracles are only useful if they are right on cases small enough to
// check by hand.

TEST_CASE("closure oracle") {
    CHECK(oracle::closure(make_pairs({{"a", "b"}, {"b", "c"}, {"c", "a"}})).size() == 9);
    CHECK(oracle::closure(make_pairs({{"a", "b"}, {"c", "d"}})) == make_pairs({{"a", "b"}, {"c", "d"}}));
}

TEST_CASE("join oracle") {
    CHECK(oracle::join(fixture::bowtie(), L({"a"}), L({"b"})) == std::nullopt);
    CHECK(oracle::join(fixture::bowtie(), L({"a"}), L({"c"})) == L({"c"}));
    CHECK(oracle::join(fixture::bowtie(), L({"c"}), L({"d"})) == Label::top());
}

TEST_CASE("normal cuts") {
    // A chain is its own completion; the bowtie gains one cut between {a,b} and {c,d}.
    CHECK(oracle::normal_cuts(sentinel_lattice()).size() == 2);
    CHECK(oracle::normal_cuts(fixture::bowtie()).size() == 7);
}

TEST_CASE("translation oracle on the bus implementation") {
    const SecurityLattice s = oracle::translate(fixture::bus_i3());
    CHECK(s.size() == 9);
    std::size_t fresh = 0;
    for (const auto& l : s.labels()) fresh += l.is_fresh();
    CHECK(fresh == 1);
    CHECK(validate_lattice(s).is_lattice);
}

TEST_CASE("translation oracle size limit") {
    VarSet targets;
    for (int i = 0; i < 9; ++i) targets.insert(Variable("v" + std::to_string(i)));
    CHECK_THROWS_AS(oracle::translate(make_flow_relation({{}, targets}, {}, CloseMode::close)), InstanceTooLarge);
}

TEST_CASE("dot grammar checker") {
    CHECK_FALSE(oracle::dot_syntax_error("digraph { a -> b; }"));
    CHECK_FALSE(oracle::dot_syntax_error("strict graph G { a -- b -- c [color=red]; node [shape=box]; x=1 }"));
    CHECK_FALSE(oracle::dot_syntax_error("digraph \"g\" { subgraph s { \"a b\" } -> c:n; /* c */ }"));
    CHECK(oracle::dot_syntax_error("digraph { a -- b; }"));
    CHECK(oracle::dot_syntax_error("graph { a -> b; }"));
    CHECK(oracle::dot_syntax_error("digraph { a -> ; }"));
    CHECK(oracle::dot_syntax_error("digraph { \"open }"));
    CHECK(oracle::dot_syntax_error("digraph { a [color=] }"));
    CHECK(oracle::dot_syntax_error("digraph { a } extra"));
    CHECK(oracle::dot_syntax_error("tree { }"));
}
