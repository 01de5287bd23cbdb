#include "iflat/corpus.hpp"

#include "corpus_data.hpp"
#include "iflat/generate.hpp"

namespace iflat {

namespace {

std::string generated_source(std::uint64_t seed) {
    Rng rng(seed);
    SpecDocument doc;
    doc.declarations.push_back(make_flows_decl("Random", random_flow_relation(rng)));
    DomainLattice d = random_source_target_lattice(rng);
    VarSet sources;
    for (const auto& v : d.all)
        if (!d.targets.contains(v)) sources.insert(v);
    doc.declarations.push_back(make_lattice_decl("RandomLattice", d.lattice, VarDomain{sources, d.targets}));
    return pretty_print(doc);
}

}  // namespace

const std::map<std::string, std::string>& corpus_sources() {
    static const std::map<std::string, std::string> sources = [] {
        std::map<std::string, std::string> out;
        for (const auto& [name, text] : embedded_corpus) out.emplace(name, text);
        for (auto seed : kCorpusSeeds) out.emplace("random_seed_" + std::to_string(seed), generated_source(seed));
        return out;
    }();
    return sources;
}

const std::map<std::string, SpecDocument>& corpus() {
    static const std::map<std::string, SpecDocument> docs = [] {
        std::map<std::string, SpecDocument> out;
        for (const auto& [name, text] : corpus_sources()) out.emplace(name, parse_spec(text));
        return out;
    }();
    return docs;
}

}  // namespace iflat
