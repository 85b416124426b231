#include "mcf/scan.hpp"

#include "mcf/subgroups.hpp"

#include <algorithm>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mcf {

std::uint64_t p_part(std::uint64_t n, int p) {
    std::uint64_t q = 1;
    while (n % static_cast<std::uint64_t>(p) == 0) {
        n /= static_cast<std::uint64_t>(p);
        q *= static_cast<std::uint64_t>(p);
    }
    return q;
}

std::vector<Elt> scan_filter_serial(
    const std::vector<Elt>& universe,
    const std::function<bool(const Elt&)>& pred) {
    std::vector<Elt> out;
    for (const Elt& g : universe)
        if (pred(g)) out.push_back(g);
    return out;
}

std::vector<Elt> scan_filter(const std::vector<Elt>& universe,
                             const std::function<bool(const Elt&)>& pred) {
#ifdef _OPENMP
    std::vector<char> hits(universe.size(), 0);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(universe.size()); ++i)
        hits[static_cast<std::size_t>(i)] =
            pred(universe[static_cast<std::size_t>(i)]) ? 1 : 0;
    std::vector<Elt> out;
    for (std::size_t i = 0; i < universe.size(); ++i)
        if (hits[i]) out.push_back(universe[i]);
    return out;
#else
    return scan_filter_serial(universe, pred);
#endif
}

namespace {

const std::vector<Elt>& scan_universe(const GroupPtr& G, const Caps& caps) {
    if (G->order() > caps.max_scan)
        throw CapError("scan-cap: |G| = " + std::to_string(G->order()) +
                       " exceeds max-scan " + std::to_string(caps.max_scan));
    return G->elements(caps);
}

} // namespace

Subgroup normalizer(const GroupPtr& G, const Subgroup& H, const Caps& caps) {
    const auto& universe = scan_universe(G, caps);
    std::vector<Elt> hits = scan_filter(universe, [&](const Elt& g) {
        for (const Elt& h : H.gens())
            if (!H.contains(G->conj(h, g))) return false;
        return true;
    });
    return Subgroup::from_elements(G, std::move(hits), {});
}

Subgroup centralizer(const GroupPtr& G, const Subgroup& H, const Caps& caps) {
    const auto& universe = scan_universe(G, caps);
    std::vector<Elt> hits = scan_filter(universe, [&](const Elt& g) {
        for (const Elt& h : H.gens())
            if (G->mul(g, h) != G->mul(h, g)) return false;
        return true;
    });
    return Subgroup::from_elements(G, std::move(hits), {});
}

std::vector<GroupMap> transporter_maps(const GroupPtr& G, const Subgroup& P,
                                       const Subgroup& Q, const Caps& caps) {
    const auto& universe = scan_universe(G, caps);
    std::vector<Elt> hits = scan_filter(universe, [&](const Elt& g) {
        for (const Elt& h : P.elements())
            if (!Q.contains(G->conj(h, g))) return false;
        return true;
    });
    std::map<std::string, GroupMap> dedup;
    for (const Elt& g : hits) {
        GroupMap m = GroupMap::conjugation(P, Q, g);
        dedup.emplace(m.key(), std::move(m));
    }
    std::vector<GroupMap> out;
    out.reserve(dedup.size());
    for (auto& [k, m] : dedup) out.push_back(std::move(m));
    return out;
}

Subgroup sylow_p(const GroupPtr& G, int p, const Caps& caps) {
    std::uint64_t target = p_part(G->order(), p);
    if (target == 1)
        throw InputError("sylow_p: p does not divide the group order");
    const auto& universe = scan_universe(G, caps);

    // Seed with the first p-element in canonical order.
    Elt seed;
    for (const Elt& g : universe) {
        std::uint64_t o = G->elt_order(g);
        if (o > 1 && p_part(o, p) == o) {
            seed = g;
            break;
        }
    }
    Subgroup P(G, {seed}, caps);
    while (P.order() < target) {
        Subgroup N = normalizer(G, P, caps);
        bool grown = false;
        for (const Elt& y : N.elements()) {
            std::uint64_t o = G->elt_order(y);
            std::uint64_t pp = p_part(o, p);
            if (pp == 1) continue;
            Elt yp = G->pow(y, static_cast<long long>(o / pp));
            if (P.contains(yp)) continue;
            std::vector<Elt> gens = P.gens();
            gens.push_back(yp);
            Subgroup bigger(G, std::move(gens), caps);
            if (p_part(bigger.order(), p) == bigger.order()) {
                P = std::move(bigger);
                grown = true;
                break;
            }
        }
        if (!grown)
            throw VerifyError("sylow_p: normalizer climbing stalled");
    }
    return P;
}

} // namespace mcf
