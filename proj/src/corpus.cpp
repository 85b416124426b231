#include "mcf/corpus.hpp"

#include "mcf/report.hpp"

namespace mcf {

const std::vector<CorpusEntry>& corpus_entries() {
    static const std::vector<CorpusEntry> entries = {
        {"pgl2_7", "pgl2_7.json", 2, 2, false},
        {"sym4", "sym4.json", 2, 2, false},
        {"sl2_3", "sl2_3.json", 3, 3, false},
        {"sym9", "sym9.json", 3, 3, false},
        {"alt9", "alt9.json", 3, 3, false},
        {"d16", "d16.json", 2, 2, true},
        {"sd16", "sd16.json", 2, 2, true},
        {"q16", "q16.json", 2, 2, true},
        {"d32", "d32.json", 2, 2, true},
        {"c3wrc3", "c3wrc3.json", 3, 3, true},
        {"ext3_1_2_a", "ext3_1_2_a.json", 3, 3, true},
        {"ext3_1_2_b", "ext3_1_2_b.json", 3, 3, true},
        {"x27_exp3", "x27_exp3.json", 3, 0, true},
        {"x27_exp9", "x27_exp9.json", 3, 0, true},
        {"x125_exp5", "x125_exp5.json", 5, 0, true},
        {"ea27", "ea27.json", 3, 0, false},
    };
    return entries;
}

GroupPtr corpus_group(const std::string& name, const Caps& caps) {
    for (const CorpusEntry& e : corpus_entries())
        if (e.name == name)
            return load_group_file(data_dir() + "/corpus/" + e.file, caps);
    throw InputError("unknown corpus group: " + name);
}

} // namespace mcf
