#include "mcf/group.hpp"

#include <algorithm>
#include <list>

namespace mcf {

namespace {

// Appends the letters of a relation word given as an exponent vector.
void append_word(std::list<int>& out, const Elt& expvec) {
    for (std::size_t g = 0; g < expvec.size(); ++g)
        for (int k = 0; k < expvec[g]; ++k) out.push_back(static_cast<int>(g));
}

} // namespace

// Collection from the left at single-letter granularity. The smallest
// generator present is bubbled to the front one swap at a time; every swap
//   g_j g_i -> g_i g_j [g_j,g_i]   (j > i)
// only introduces letters above j, and power reduction
//   g_i^p -> (relation word)
// only introduces letters above i, so each phase terminates and the
// recursion descends through finitely many generators.
Elt pc_collect(const PcPresentation& pres, const std::vector<int>& word) {
    for (int letter : word)
        if (letter < 0 || letter >= pres.ngens)
            throw InputError("pc_collect: letter out of range");

    Elt out(static_cast<std::size_t>(pres.ngens), 0);
    std::list<int> w(word.begin(), word.end());

    auto comm_of = [&](int j, int i) -> const Elt* {
        auto it = pres.comms.find({j, i});
        return it == pres.comms.end() ? nullptr : &it->second;
    };

    while (!w.empty()) {
        int m = *std::min_element(w.begin(), w.end());

        // Bubble every occurrence of m into the front run.
        for (;;) {
            auto it = w.begin();
            while (it != w.end() && *it == m) ++it;     // skip the front run
            auto stray = std::find(it, w.end(), m);
            if (stray == w.end()) break;
            // The letter left of the leftmost stray is strictly larger.
            auto left = std::prev(stray);
            int j = *left;
            *left = m;
            *stray = j;
            if (const Elt* c = comm_of(j, m)) {
                std::list<int> tail;
                append_word(tail, *c);
                w.splice(std::next(stray), tail);
            }
        }

        // The word now starts with a run of m followed by larger letters.
        int e = 0;
        while (!w.empty() && w.front() == m) {
            w.pop_front();
            ++e;
        }
        while (e >= pres.p) {
            e -= pres.p;
            auto it = pres.powers.find(m);
            if (it != pres.powers.end()) {
                std::list<int> head;
                append_word(head, it->second);
                w.splice(w.begin(), head);
            }
        }
        out[static_cast<std::size_t>(m)] = static_cast<std::uint16_t>(e);
    }
    return out;
}

} // namespace mcf
