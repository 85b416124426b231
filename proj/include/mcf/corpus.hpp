#pragma once

#include "mcf/group.hpp"

#include <string>
#include <vector>

namespace mcf {

// The built-in battery of groups the invariant and acceptance suites run
// over. Groups ship as data files under data/corpus; `p` is the prime the
// analyses use. `fusion_prime` > 0 marks entries whose realizable fusion
// system F_S(G) (S a Sylow p-subgroup) belongs to the corpus of fusion
// systems; for p-groups themselves that system is the self-fusion F_S(S).
struct CorpusEntry {
    std::string name;
    std::string file;
    int p = 0;
    int fusion_prime = 0;
    bool maximal_class_expected = false;
};

const std::vector<CorpusEntry>& corpus_entries();
GroupPtr corpus_group(const std::string& name, const Caps& caps = {});

} // namespace mcf
