#pragma once

#include <string>

#include "iflat/flow.hpp"
#include "iflat/lattice.hpp"

namespace fixture {

inline iflat::Label L(std::initializer_list<std::string_view> names) { return iflat::Label::of(iflat::make_vars(names)); }

inline const iflat::Label kBot = iflat::Label::bottom();
inline const iflat::Label kTop = iflat::Label::top();

/// Closes `labels` plus sentinels under `edges` plus the sentinel edges.
inline iflat::SecurityLattice bounded(std::initializer_list<iflat::Label> labels,
                                      std::initializer_list<iflat::LabelPair> edges) {
    iflat::LabelSet all(labels);
    all.insert(kBot);
    all.insert(kTop);
    std::set<iflat::LabelPair> order(edges);
    for (const auto& l : all) {
        order.emplace(kBot, l);
        order.emplace(l, kTop);
    }
    return iflat::SecurityLattice::closed(all, order);
}

inline iflat::FlowRelation bus_i3() {
    using namespace iflat;
    return make_flow_relation({make_vars({"wheel_s", "distw_f_s", "distw_b_s"}), make_vars({"odo_t", "distw_f_t", "distw_b_t"})},
                              make_pairs({{"wheel_s", "odo_t"},
                                          {"distw_f_s", "distw_f_t"},
                                          {"distw_f_s", "distw_b_t"},
                                          {"distw_b_s", "distw_f_t"},
                                          {"distw_b_s", "distw_b_t"}}),
                              CloseMode::close);
}

/// Two incomparable labels a, b with two incomparable upper bounds c, d.
inline iflat::SecurityLattice bowtie() {
    return bounded({L({"a"}), L({"b"}), L({"c"}), L({"d"})},
                   {{L({"a"}), L({"c"})}, {L({"a"}), L({"d"})}, {L({"b"}), L({"c"})}, {L({"b"}), L({"d"})}});
}

inline std::string corpus_path(const std::string& name) { return std::string(IFLAT_CORPUS_DIR) + "/" + name + ".ifs"; }

}  // namespace fixture
