#include "mcf/autact.hpp"

#include <algorithm>
#include <numeric>

namespace mcf {

namespace {

// Backtracking assignment of images to a minimal generating sequence. Partial
// assignments are validated by building the homomorphism on the subgroup the
// prefix generates, so dead branches are cut early.
void extend_aut(const Subgroup& P, const std::vector<Elt>& gens,
                const std::vector<std::vector<Elt>>& candidates,
                std::vector<Elt>& picked, const Caps& caps,
                std::vector<GroupMap>& out) {
    std::size_t k = picked.size();
    if (k == gens.size()) {
        try {
            GroupMap phi(P, P, picked);
            if (phi.is_bijective()) out.push_back(std::move(phi));
        } catch (const VerifyError&) {
        }
        return;
    }
    std::vector<Elt> prefix(gens.begin(),
                            gens.begin() + static_cast<long>(k) + 1);
    Subgroup dom(P.parent(), prefix, caps);
    for (const Elt& img : candidates[k]) {
        picked.push_back(img);
        bool viable = true;
        if (k + 1 < gens.size()) {
            try {
                GroupMap partial(dom, P, picked);
                viable = partial.is_bijective();
            } catch (const VerifyError&) {
                viable = false;
            }
        }
        if (viable) extend_aut(P, gens, candidates, picked, caps, out);
        picked.pop_back();
    }
}

} // namespace

std::vector<GroupMap> aut_group_bruteforce(const Subgroup& P,
                                           const Caps& caps) {
    if (P.order() > static_cast<std::uint64_t>(caps.max_aut_order))
        throw CapError("aut-cap: |P| = " + std::to_string(P.order()) +
                       " exceeds " + std::to_string(caps.max_aut_order));
    int p = p_group_prime(P);
    std::vector<Elt> gens = minimal_generators(P, p, caps);
    if (gens.size() > static_cast<std::size_t>(caps.max_aut_rank))
        throw CapError("aut-cap: minimal rank " + std::to_string(gens.size()) +
                       " exceeds " + std::to_string(caps.max_aut_rank));
    // Rebuild the subgroup over the minimal generating sequence so that the
    // image lists line up with it.
    Subgroup base(P.parent(), gens, caps);
    if (base.order() != P.order())
        throw VerifyError("minimal generators failed to generate");
    const GroupPtr& G = P.parent();
    Subgroup phi_sub = frattini_of(P, p, caps);
    std::vector<std::vector<Elt>> candidates(gens.size());
    for (std::size_t k = 0; k < gens.size(); ++k) {
        std::uint64_t o = G->elt_order(gens[k]);
        for (const Elt& x : P.elements())
            // Images must preserve element order and stay outside the
            // Frattini subgroup (otherwise the images cannot generate).
            if (G->elt_order(x) == o && !phi_sub.contains(x))
                candidates[k].push_back(x);
    }
    std::vector<GroupMap> out;
    std::vector<Elt> picked;
    extend_aut(base, gens, candidates, picked, caps, out);
    std::sort(out.begin(), out.end(),
              [](const GroupMap& a, const GroupMap& b) {
                  return a.key() < b.key();
              });
    return out;
}

GroupMap p_prime_part(const GroupMap& phi, int p) {
    std::uint64_t m = phi.map_order();
    std::uint64_t pk = 1;
    while (m % p == 0) {
        m /= static_cast<std::uint64_t>(p);
        pk *= static_cast<std::uint64_t>(p);
    }
    GroupMap result = GroupMap::identity_map(phi.domain());
    for (std::uint64_t i = 0; i < pk; ++i) result = result.then(phi);
    return result;
}

namespace {

// The unique exponent e (mod p) with phi(g) = g^e mod N; g must have order
// exactly p in the quotient by N.
int scalar_mod(const GroupPtr& G, const GroupMap& phi, const Elt& g,
               const Subgroup& N, int p, const char* what) {
    int found = -1;
    for (int e = 0; e < p; ++e) {
        if (N.contains(G->mul(phi.apply(g), G->inv(G->pow(g, e))))) {
            if (found != -1)
                throw VerifyError(std::string(what) +
                                  ": scalar is not unique (element is "
                                  "trivial in the quotient)");
            found = e;
        }
    }
    if (found == -1)
        throw VerifyError(std::string(what) +
                          ": image is not a power of the element modulo the "
                          "given subgroup");
    return found;
}

struct ActionContext {
    MaxClassProfile prof;
    Subgroup M;            // invariant maximal subgroup != gamma_1
    Elt x;                 // in M \ gamma_1
    Elt s1;                // in gamma_1 \ gamma_2
    std::vector<Elt> s;    // s[i-1] = s_i for 1 <= i <= n-1
};

const Subgroup& gamma_at(const MaxClassProfile& prof, int j) {
    // gamma_series[0] = gamma_2; clamp deep indices to the trivial tail.
    int idx = std::min(j, prof.n) - 2;
    return prof.gamma_series[static_cast<std::size_t>(idx)];
}

ActionContext make_action_context(const Subgroup& S, const GroupMap& phi,
                                  const Caps& caps) {
    ActionContext ctx;
    ctx.prof = maxclass_profile(S, caps);
    if (!ctx.prof.is_maximal_class || ctx.prof.n < 4)
        throw InputError("action analysis needs maximal class and n >= 4");
    std::uint64_t mo = phi.map_order();
    if (mo % static_cast<std::uint64_t>(ctx.prof.p) == 0)
        throw InputError("action analysis needs an automorphism of order "
                         "coprime to p");
    const GroupPtr& G = S.parent();
    bool have_m = false;
    for (const Subgroup& M : maximal_subgroups(S, ctx.prof.p, caps)) {
        if (M.same_as(ctx.prof.gamma1)) continue;
        if (phi.fixes_setwise(M)) {
            ctx.M = M;
            have_m = true;
            break;
        }
    }
    if (!have_m)
        throw VerifyError("no invariant maximal subgroup besides gamma_1 "
                          "exists for this automorphism");
    // x in M \ gamma_1, deterministically: prefer the smallest element of
    // order p, falling back to the overall smallest.
    bool have_x = false;
    for (const Elt& cand : ctx.M.elements()) {
        if (ctx.prof.gamma1.contains(cand)) continue;
        if (!have_x) {
            ctx.x = cand;
            have_x = true;
        }
        if (G->elt_order(cand) == static_cast<std::uint64_t>(ctx.prof.p)) {
            ctx.x = cand;
            break;
        }
    }
    if (!have_x) throw VerifyError("maximal subgroup lies inside gamma_1");
    const Subgroup& g2 = gamma_at(ctx.prof, 2);
    for (const Elt& cand : ctx.prof.gamma1.elements())
        if (!g2.contains(cand)) {
            ctx.s1 = cand;
            break;
        }
    if (ctx.s1.empty()) throw VerifyError("gamma_1 = gamma_2");
    int n = ctx.prof.n;
    ctx.s.push_back(ctx.s1);
    for (int i = 2; i <= n - 2; ++i)
        ctx.s.push_back(G->comm(ctx.x, ctx.s.back()));
    if (ctx.M.same_as(ctx.prof.cz2))
        ctx.s.push_back(G->comm(ctx.x, ctx.s.back()));
    else
        ctx.s.push_back(G->comm(ctx.s1, ctx.s[static_cast<std::size_t>(
                                              n - 3)]));
    // Each s_i with i <= n-2 must land in gamma_i \ gamma_{i+1} for the
    // level scalars to be well defined. The top element s_{n-1} is allowed
    // to collapse to the identity: when gamma_1 is abelian both defining
    // brackets vanish, and the top-level claim becomes vacuous.
    for (int i = 2; i <= n - 1; ++i) {
        const Elt& si = ctx.s[static_cast<std::size_t>(i - 1)];
        if (!gamma_at(ctx.prof, i).contains(si) ||
            (i <= n - 2 && gamma_at(ctx.prof, i + 1).contains(si)))
            throw VerifyError("s_" + std::to_string(i) +
                              " degenerates; the chain does not span the "
                              "lower central factors");
    }
    return ctx;
}

std::vector<int> measure_scalars(const Subgroup& S, const GroupMap& phi,
                                 const ActionContext& ctx) {
    const GroupPtr& G = S.parent();
    int n = ctx.prof.n;
    int p = ctx.prof.p;
    std::vector<int> e;
    for (int i = 1; i <= n - 1; ++i) {
        const Elt& si = ctx.s[static_cast<std::size_t>(i - 1)];
        // -1 marks an undefined level (trivial chain element at the top).
        if (gamma_at(ctx.prof, i + 1).contains(si)) {
            e.push_back(-1);
            continue;
        }
        e.push_back(scalar_mod(G, phi, si, gamma_at(ctx.prof, i + 1), p,
                               "action_exponents"));
    }
    return e;
}

} // namespace

DeltaElement mu(const Subgroup& S, const GroupMap& phi, const Caps& caps) {
    MaxClassProfile prof = maxclass_profile(S, caps);
    if (!prof.is_maximal_class || prof.n < 4)
        throw InputError("mu needs maximal class and n >= 4");
    if (phi.domain().order() != S.order())
        throw InputError("mu: the map must be an automorphism of S");
    if (prof.p == 2) return {1, 1};
    const GroupPtr& G = S.parent();
    int r = -1;
    for (const Elt& x : S.elements()) {
        if (prof.gamma1.contains(x)) continue;
        int rx = scalar_mod(G, phi, x, prof.gamma1, prof.p, "mu");
        if (r == -1)
            r = rx;
        else if (r != rx)
            throw VerifyError("mu: scalar on S/gamma_1 depends on the coset "
                              "representative");
        break;   // independence is re-checked via the homomorphism property
    }
    const Subgroup& z = prof.z_series.front();
    int s = -1;
    Subgroup triv(S.parent(), {});
    for (const Elt& zz : z.elements()) {
        if (zz == G->identity()) continue;
        int sz = scalar_mod(G, phi, zz, triv, prof.p, "mu");
        if (s == -1) s = sz;
        else if (s != sz)
            throw VerifyError("mu: scalar on Z(S) is not well defined");
    }
    if (r <= 0 || s <= 0)
        throw VerifyError("mu: automorphism does not act by nonzero scalars");
    return {r, s};
}

ActionExponents action_exponents(const Subgroup& S, const GroupMap& phi,
                                 const Caps& caps) {
    ActionContext ctx = make_action_context(S, phi, caps);
    const GroupPtr& G = S.parent();
    int p = ctx.prof.p;
    int n = ctx.prof.n;
    ActionExponents out;
    out.exceptional_tail = ctx.prof.is_exceptional;
    out.a = scalar_mod(G, phi, ctx.x, gamma_at(ctx.prof, 2), p,
                       "action_exponents");
    out.b = scalar_mod(G, phi, ctx.s1, gamma_at(ctx.prof, 2), p,
                       "action_exponents");
    out.e = measure_scalars(S, phi, ctx);
    auto powmod = [&](long long base, int exp) {
        long long r = 1 % p;
        base %= p;
        for (int i = 0; i < exp; ++i) r = r * base % p;
        return static_cast<int>(r);
    };
    for (int i = 1; i <= n - 2; ++i) {
        int predicted =
            static_cast<int>(static_cast<long long>(powmod(out.a, i - 1)) *
                             out.b % p);
        if (out.e[static_cast<std::size_t>(i - 1)] != predicted)
            throw VerifyError("action exponent mismatch at level " +
                              std::to_string(i) + ": measured " +
                              std::to_string(out.e[static_cast<std::size_t>(
                                  i - 1)]) +
                              ", predicted " + std::to_string(predicted));
    }
    long long tail =
        out.exceptional_tail
            ? static_cast<long long>(powmod(out.a, n - 3)) * out.b % p *
                  out.b % p
            : static_cast<long long>(powmod(out.a, n - 2)) * out.b % p;
    if (out.e.back() == -1)   // vacuous level: record the predicted value
        out.e.back() = static_cast<int>(tail);
    else if (out.e.back() != static_cast<int>(tail))
        throw VerifyError("action exponent mismatch at the top level " +
                          std::to_string(n - 1) + ": measured " +
                          std::to_string(out.e.back()) + ", predicted " +
                          std::to_string(tail));
    return out;
}

CongruenceReport verify_centralizer_congruence(const Subgroup& S,
                                               const GroupMap& phi,
                                               const Caps& caps) {
    ActionContext ctx = make_action_context(S, phi, caps);
    if (ctx.prof.is_exceptional)
        throw InputError("centralizer congruence applies to non-exceptional "
                         "groups only");
    const GroupPtr& G = S.parent();
    int p = ctx.prof.p;
    // Order of the action on S/gamma_1 = multiplicative order of r mod p.
    int r = -1;
    for (const Elt& x : S.elements())
        if (!ctx.prof.gamma1.contains(x)) {
            r = scalar_mod(G, phi, x, ctx.prof.gamma1, p,
                           "verify_centralizer_congruence");
            break;
        }
    CongruenceReport rep;
    rep.m = 1;
    {
        long long acc = r % p;
        while (acc != 1) {
            acc = acc * r % p;
            ++rep.m;
        }
    }
    if (rep.m == 1)
        throw InputError("automorphism acts trivially on S/gamma_1 (m = 1)");
    rep.scalars = measure_scalars(S, phi, ctx);
    for (std::size_t j = 0; j < rep.scalars.size(); ++j)
        for (std::size_t k = j + 1; k < rep.scalars.size(); ++k)
            if (rep.scalars[j] != -1 && rep.scalars[j] == rep.scalars[k] &&
                static_cast<int>(k - j) % rep.m != 0)
                rep.violations.emplace_back(static_cast<int>(j + 1),
                                            static_cast<int>(k + 1));
    return rep;
}

} // namespace mcf
