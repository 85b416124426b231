#include "mcf/fusion.hpp"

#include "mcf/scan.hpp"
#include "mcf/subgroups.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace mcf {

namespace {

std::string key_of(const std::vector<Elt>& v) {
    std::string s;
    if (!v.empty()) s.reserve(v.size() * v[0].size() * 2);
    for (const Elt& e : v)
        for (std::uint16_t x : e) {
            s.push_back(static_cast<char>(x & 0xff));
            s.push_back(static_cast<char>(x >> 8));
        }
    return s;
}

Subgroup trivial_subgroup(const GroupPtr& parent) {
    return Subgroup(parent, {parent->identity()});
}

// Smallest subgroup containing the given elements and normal in S.
Subgroup normal_closure_in(const Subgroup& S, std::vector<Elt> gens,
                           const Caps& caps) {
    const GroupPtr& par = S.parent();
    if (gens.empty()) return trivial_subgroup(par);
    Subgroup h(par, gens, caps);
    for (;;) {
        std::vector<Elt> extra;
        for (const Elt& s : S.gens())
            for (const Elt& x : h.gens()) {
                Elt c = par->conj(x, s);
                if (!h.contains(c)) extra.push_back(std::move(c));
            }
        if (extra.empty()) return h;
        gens.insert(gens.end(), extra.begin(), extra.end());
        h = Subgroup(par, gens, caps);
    }
}

// Sylow p-subgroup of a subgroup H (of any parent), by normalizer climbing
// entirely inside H.
Subgroup sylow_in(const Subgroup& H, int p, const Caps& caps) {
    std::uint64_t target = p_part(H.order(), p);
    const GroupPtr& G = H.parent();
    if (target == 1) return trivial_subgroup(G);
    Subgroup T;
    for (const Elt& x : H.elements())
        if (G->elt_order(x) == static_cast<std::uint64_t>(p)) {
            T = Subgroup(G, {x}, caps);
            break;
        }
    if (!T.valid()) throw VerifyError("p-group without an element of order p");
    while (T.order() < target) {
        Subgroup N = normalizer_in(H, T);
        bool grown = false;
        for (const Elt& y : N.elements()) {
            std::uint64_t o = G->elt_order(y);
            Elt yp = G->pow(y, static_cast<long long>(o / p_part(o, p)));
            if (T.contains(yp)) continue;
            Subgroup T2 = join(T, Subgroup(G, {yp}, caps), caps);
            if (p_part(T2.order(), p) != T2.order()) continue;
            T = T2;
            grown = true;
            break;
        }
        if (!grown)
            throw VerifyError("Sylow climbing stalled below the p-part");
    }
    return T;
}

struct Dsu {
    std::vector<int> up;
    explicit Dsu(int n) : up(n) {
        for (int i = 0; i < n; ++i) up[i] = i;
    }
    int find(int a) { return up[a] == a ? a : up[a] = find(up[a]); }
    void merge(int a, int b) { up[find(a)] = find(b); }
};

} // namespace

const char* essential_tag_name(EssentialTag t) {
    switch (t) {
        case EssentialTag::AbelianPearl: return "abelian-pearl";
        case EssentialTag::ExtraspecialPearl: return "extraspecial-pearl";
        case EssentialTag::QuaternionPearl: return "quaternion-pearl";
        case EssentialTag::Gamma1: return "gamma1";
        case EssentialTag::CZ2: return "two-step-centralizer";
        case EssentialTag::Other: return "other";
    }
    return "other";
}

std::optional<Subgroup> has_strongly_p_embedded(const Subgroup& H, int p,
                                                const Caps& caps,
                                                bool* trivial_sylow) {
    if (trivial_sylow) *trivial_sylow = false;
    if (p_part(H.order(), p) == 1) {
        if (trivial_sylow) *trivial_sylow = true;
        return std::nullopt;
    }
    const GroupPtr& G = H.parent();
    Subgroup T = sylow_in(H, p, caps);

    // All Sylow p-subgroups of H as sorted element sets.
    std::vector<std::vector<Elt>> syl;
    std::unordered_map<std::string, int> syl_idx;
    for (const Elt& h : H.elements()) {
        std::vector<Elt> img;
        img.reserve(T.order());
        for (const Elt& x : T.elements()) img.push_back(G->conj(x, h));
        std::sort(img.begin(), img.end());
        std::string k = key_of(img);
        if (syl_idx.emplace(k, static_cast<int>(syl.size())).second)
            syl.push_back(std::move(img));
    }
    if (syl.size() == 1) return std::nullopt;   // normal Sylow

    // Join Sylows sharing a non-trivial intersection.
    Dsu dsu(static_cast<int>(syl.size()));
    for (std::size_t i = 0; i < syl.size(); ++i)
        for (std::size_t j = i + 1; j < syl.size(); ++j) {
            std::size_t common = 0, a = 0, b = 0;
            while (a < syl[i].size() && b < syl[j].size()) {
                if (syl[i][a] < syl[j][b]) ++a;
                else if (syl[j][b] < syl[i][a]) ++b;
                else { ++common; ++a; ++b; }
            }
            if (common > 1) dsu.merge(static_cast<int>(i),
                                      static_cast<int>(j));
        }
    int c0 = dsu.find(syl_idx.at(key_of(
        std::vector<Elt>(T.elements().begin(), T.elements().end()))));
    std::vector<int> comp;
    for (std::size_t i = 0; i < syl.size(); ++i)
        if (dsu.find(static_cast<int>(i)) == c0)
            comp.push_back(static_cast<int>(i));
    if (comp.size() == syl.size()) return std::nullopt;  // connected graph

    // Setwise stabilizer of the component of T.
    std::unordered_set<std::string> comp_keys;
    for (int i : comp) comp_keys.insert(key_of(syl[i]));
    std::vector<Elt> melems;
    for (const Elt& h : H.elements()) {
        bool keeps = true;
        for (int i : comp) {
            std::vector<Elt> img;
            img.reserve(syl[i].size());
            for (const Elt& x : syl[i]) img.push_back(G->conj(x, h));
            std::sort(img.begin(), img.end());
            if (!comp_keys.count(key_of(img))) { keeps = false; break; }
        }
        if (keeps) melems.push_back(h);
    }
    Subgroup M = Subgroup::from_elements(G, melems, melems);

    // Re-verify the definition instead of trusting the graph criterion.
    if (M.order() == H.order())
        throw VerifyError("component stabilizer is the whole group");
    if (p_part(M.order(), p) == 1)
        throw VerifyError("component stabilizer has trivial p-part");
    for (const Elt& h : H.elements()) {
        if (M.contains(h)) continue;
        std::vector<Elt> mh;
        mh.reserve(M.order());
        for (const Elt& x : M.elements()) mh.push_back(G->conj(x, h));
        std::sort(mh.begin(), mh.end());
        for (const Elt& x : M.elements())
            if (std::binary_search(mh.begin(), mh.end(), x) &&
                G->elt_order(x) % static_cast<std::uint64_t>(p) == 0)
                throw VerifyError(
                    "conjugate intersection has order divisible by p");
    }
    return M;
}

std::vector<Subgroup> normalizer_tower(const Subgroup& S, const Subgroup& P) {
    std::vector<Subgroup> tower{P};
    for (;;) {
        Subgroup n = normalizer_in(S, tower.back());
        if (n.same_as(tower.back())) break;
        tower.push_back(n);
    }
    return tower;
}

// --------------------------------------------------------------------------

// Everything known about one F-conjugacy class in a realizable system,
// collected in a single pass over the ambient group: the members inside S, a
// conjugating element onto each member, Aut_F of the representative with
// ambient witnesses, and the ambient centralizer of the representative.
struct FClass {
    Subgroup rep;
    std::vector<Subgroup> members;
    std::vector<Elt> to_member;        // rep^t = member
    std::vector<GroupMap> aut;         // Aut_F(rep)
    std::vector<Elt> aut_wit;          // rep^w = rep inducing aut[i]
    std::vector<Elt> cg;               // C_G(rep)
};

struct OutInfo {
    GroupPtr out;
    std::uint64_t order = 0;
    std::optional<Subgroup> witness;
};

struct FusionSystem::Impl {
    bool realizable = false;
    GroupPtr G;
    Subgroup S;
    int p = 0;
    Caps caps;

    // Generated kind.
    std::vector<GroupMap> aut_s_gens;
    std::vector<std::pair<Subgroup, std::vector<GroupMap>>> listed;

    mutable std::unordered_map<std::string, std::shared_ptr<const FClass>>
        cache;
    mutable std::optional<MaxClassProfile> prof;

    void require_realizable() const {
        if (!realizable)
            throw InputError("operation needs a realizable fusion system");
    }

    const MaxClassProfile& profile() const {
        if (!prof) prof = maxclass_profile(S, caps);
        return *prof;
    }

    const FClass& class_of(const Subgroup& P) const;
    int member_index(const FClass& fc, const Subgroup& P) const;
    MapGroup aut_of(const Subgroup& P) const;
    OutInfo out_of(const Subgroup& P) const;
    std::uint64_t aut_s_order(const Subgroup& P) const;
    bool s_conjugate(const Subgroup& A, const Subgroup& B) const;
};

const FClass& FusionSystem::Impl::class_of(const Subgroup& P) const {
    require_realizable();
    auto it = cache.find(P.key());
    if (it != cache.end()) return *it->second;

    auto fc = std::make_shared<FClass>();
    fc->rep = P;
    const std::vector<Elt>& gens = P.gens();
    const std::vector<Elt>& pelems = P.elements();
    const std::string pkey = key_of(pelems);
    std::unordered_set<std::string> member_keys, aut_keys;

    for (const Elt& g : G->elements(caps)) {
        std::vector<Elt> imgs;
        imgs.reserve(gens.size());
        bool ok = true;
        for (const Elt& x : gens) {
            Elt y = G->conj(x, g);
            if (!S.contains(y)) { ok = false; break; }
            imgs.push_back(std::move(y));
        }
        if (!ok) continue;
        std::vector<Elt> ims;
        ims.reserve(pelems.size());
        for (const Elt& x : pelems) ims.push_back(G->conj(x, g));
        std::sort(ims.begin(), ims.end());
        std::string mkey = key_of(ims);
        if (member_keys.insert(mkey).second) {
            fc->members.push_back(
                Subgroup::from_elements(P.parent(), std::move(ims), imgs));
            fc->to_member.push_back(g);
        }
        if (mkey == pkey) {
            if (aut_keys.insert(key_of(imgs)).second) {
                fc->aut.emplace_back(P, P, imgs);
                fc->aut_wit.push_back(g);
            }
            if (imgs == gens) fc->cg.push_back(g);
        }
    }
    std::shared_ptr<const FClass> sp = fc;
    for (const Subgroup& m : fc->members) cache.emplace(m.key(), sp);
    return *cache.at(P.key());
}

int FusionSystem::Impl::member_index(const FClass& fc,
                                     const Subgroup& P) const {
    for (std::size_t i = 0; i < fc.members.size(); ++i)
        if (fc.members[i].same_as(P)) return static_cast<int>(i);
    throw VerifyError("subgroup missing from its own conjugacy class");
}

MapGroup FusionSystem::Impl::aut_of(const Subgroup& P) const {
    if (realizable) {
        const FClass& fc = class_of(P);
        if (fc.rep.same_as(P)) return build_map_group(P, fc.aut);
        int i = member_index(fc, P);
        const Elt& t = fc.to_member[i];
        GroupMap down = GroupMap::conjugation(P, fc.rep, G->inv(t));
        GroupMap up = GroupMap::conjugation(fc.rep, P, t);
        std::vector<GroupMap> maps;
        maps.reserve(fc.aut.size());
        for (const GroupMap& f : fc.aut)
            maps.push_back(down.then(f).then(up));
        return build_map_group(P, std::move(maps));
    }
    std::vector<GroupMap> gens;
    const Subgroup* base = nullptr;
    if (P.same_as(S)) {
        base = &S;
        gens = aut_s_gens;
    } else {
        for (const auto& e : listed)
            if (e.first.same_as(P)) {
                base = &e.first;
                gens = e.second;
                break;
            }
        if (!base)
            throw InputError(
                "generated fusion system is queried at an unlisted subgroup");
    }
    Subgroup n = normalizer_in(S, *base);
    for (const Elt& u : n.elements())
        gens.push_back(GroupMap::conjugation(*base, *base, u));
    return build_map_group(*base, std::move(gens));
}

OutInfo FusionSystem::Impl::out_of(const Subgroup& P) const {
    MapGroup mg = aut_of(P);
    std::set<Elt> inn;
    for (const Elt& x : P.elements()) {
        int i = mg.index_of_key(GroupMap::conjugation(P, P, x).key());
        if (i < 0) throw VerifyError("inner automorphism missing from Aut_F");
        inn.insert(Elt{static_cast<std::uint16_t>(i)});
    }
    std::vector<Elt> inn_elems(inn.begin(), inn.end());
    Subgroup inn_sub =
        Subgroup::from_elements(mg.table, inn_elems, inn_elems);
    Quotient q = quotient(Subgroup::whole(mg.table, caps), inn_sub);
    OutInfo info;
    info.out = q.group;
    info.order = mg.order() / inn_sub.order();
    info.witness =
        has_strongly_p_embedded(Subgroup::whole(q.group, caps), p, caps);
    return info;
}

std::uint64_t FusionSystem::Impl::aut_s_order(const Subgroup& P) const {
    return normalizer_in(S, P).order() / centralizer_in(S, P).order();
}

bool FusionSystem::Impl::s_conjugate(const Subgroup& A,
                                     const Subgroup& B) const {
    if (A.order() != B.order()) return false;
    for (const Elt& s : S.elements())
        if (A.conjugated_by(s).same_as(B)) return true;
    return false;
}

// --------------------------------------------------------------------------

FusionSystem::FusionSystem(std::shared_ptr<Impl> impl)
    : impl_(std::move(impl)) {}

FusionSystem FusionSystem::realizable(GroupPtr G, Subgroup S,
                                      const Caps& caps) {
    if (!S.valid() || S.parent() != G)
        throw InputError("S must be a subgroup of the ambient group");
    auto impl = std::make_shared<Impl>();
    impl->realizable = true;
    impl->p = p_group_prime(S);
    if (p_part(G->order(), impl->p) != S.order())
        throw InputError("S is not a Sylow p-subgroup of the ambient group");
    impl->G = std::move(G);
    impl->S = std::move(S);
    impl->caps = caps;
    return FusionSystem(std::move(impl));
}

FusionSystem FusionSystem::generated(
    Subgroup S, std::vector<GroupMap> aut_s_gens,
    std::vector<std::pair<Subgroup, std::vector<GroupMap>>> essentials,
    const Caps& caps) {
    auto impl = std::make_shared<Impl>();
    impl->realizable = false;
    impl->p = p_group_prime(S);
    impl->caps = caps;
    for (const GroupMap& f : aut_s_gens)
        if (!f.domain().same_as(S) || !f.codomain().same_as(S))
            throw InputError("top-level generators must be maps on S");
    for (const auto& e : essentials) {
        if (!S.contains_all(e.first))
            throw InputError("listed subgroup is not inside S");
        for (const GroupMap& f : e.second)
            if (!f.domain().same_as(e.first) || !f.codomain().same_as(e.first))
                throw InputError("listed generators must be maps on their "
                                 "own subgroup");
    }
    impl->S = std::move(S);
    impl->aut_s_gens = std::move(aut_s_gens);
    impl->listed = std::move(essentials);
    return FusionSystem(std::move(impl));
}

bool FusionSystem::realizable_kind() const { return impl_->realizable; }
const Subgroup& FusionSystem::sylow() const { return impl_->S; }
int FusionSystem::prime() const { return impl_->p; }

const GroupPtr& FusionSystem::ambient() const {
    impl_->require_realizable();
    return impl_->G;
}

const std::vector<std::pair<Subgroup, std::vector<GroupMap>>>&
FusionSystem::listed_essentials() const {
    return impl_->listed;
}

MapGroup FusionSystem::aut_F(const Subgroup& P) const {
    return impl_->aut_of(P);
}

std::vector<Subgroup> FusionSystem::f_class(const Subgroup& P) const {
    return impl_->class_of(P).members;
}

std::vector<GroupMap> FusionSystem::hom_F(const Subgroup& R,
                                          const Subgroup& P) const {
    impl_->require_realizable();
    return transporter_maps(impl_->G, R, P, impl_->caps);
}

bool FusionSystem::is_centric(const Subgroup& P) const {
    for (const Subgroup& R : impl_->class_of(P).members)
        if (!R.contains_all(centralizer_in(impl_->S, R))) return false;
    return true;
}

bool FusionSystem::is_fully_normalized(const Subgroup& P) const {
    std::uint64_t mine = normalizer_in(impl_->S, P).order();
    for (const Subgroup& R : impl_->class_of(P).members)
        if (normalizer_in(impl_->S, R).order() > mine) return false;
    return true;
}

bool FusionSystem::is_fully_centralized(const Subgroup& P) const {
    std::uint64_t mine = centralizer_in(impl_->S, P).order();
    for (const Subgroup& R : impl_->class_of(P).members)
        if (centralizer_in(impl_->S, R).order() > mine) return false;
    return true;
}

bool FusionSystem::is_fully_automized(const Subgroup& P) const {
    return impl_->aut_s_order(P) ==
           p_part(impl_->aut_of(P).order(), impl_->p);
}

bool FusionSystem::is_receptive(const Subgroup& P) const {
    const Impl& im = *impl_;
    im.require_realizable();
    const GroupPtr& G = im.G;
    const FClass& fc = im.class_of(P);
    const Elt& tp = fc.to_member[im.member_index(fc, P)];

    std::unordered_set<std::string> aut_s_keys;
    Subgroup nsp = normalizer_in(im.S, P);
    for (const Elt& u : nsp.elements()) {
        std::vector<Elt> img;
        img.reserve(P.gens().size());
        for (const Elt& x : P.gens()) img.push_back(G->conj(x, u));
        aut_s_keys.insert(key_of(img));
    }

    for (std::size_t ri = 0; ri < fc.members.size(); ++ri) {
        const Subgroup& R = fc.members[ri];
        Elt trinv = G->inv(fc.to_member[ri]);
        Subgroup nsr = normalizer_in(im.S, R);
        std::vector<Elt> cgr;
        cgr.reserve(fc.cg.size());
        for (const Elt& z : fc.cg) cgr.push_back(G->conj(z, fc.to_member[ri]));

        // Every morphism R -> P is induced by some t_R^-1 w t_P with w an
        // ambient witness of Aut_F(rep), up to C_G(R).
        for (const Elt& w : fc.aut_wit) {
            Elt h0 = G->mul(G->mul(trinv, w), tp);
            Elt h0inv = G->inv(h0);
            std::vector<Elt> nalpha;
            for (const Elt& g : nsr.elements()) {
                Elt u = G->mul(G->mul(h0inv, g), h0);
                std::vector<Elt> img;
                img.reserve(P.gens().size());
                bool inp = true;
                for (const Elt& x : P.gens()) {
                    Elt y = G->conj(x, u);
                    if (!P.contains(y)) { inp = false; break; }
                    img.push_back(std::move(y));
                }
                if (inp && aut_s_keys.count(key_of(img)))
                    nalpha.push_back(g);
            }
            bool extended = false;
            for (const Elt& z : cgr) {
                Elt h = G->mul(z, h0);
                bool allin = true;
                for (const Elt& u : nalpha)
                    if (!im.S.contains(G->conj(u, h))) {
                        allin = false;
                        break;
                    }
                if (allin) { extended = true; break; }
            }
            if (!extended) return false;
        }
    }
    return true;
}

bool FusionSystem::is_essential(const Subgroup& P) const {
    if (P.same_as(impl_->S)) return false;
    if (!P.contains_all(centralizer_in(impl_->S, P))) return false;
    if (!is_centric(P) || !is_fully_normalized(P)) return false;
    return impl_->out_of(P).witness.has_value();
}

EssentialReport FusionSystem::classify_pearl(const Subgroup& E) const {
    const Impl& im = *impl_;
    EssentialReport r;
    r.subgroup = E;
    const MaxClassProfile& prof = im.profile();
    if (!prof.is_maximal_class || prof.n < 4) return r;
    const std::uint64_t p = static_cast<std::uint64_t>(im.p);
    if (E.same_as(prof.gamma1)) {
        r.tag = EssentialTag::Gamma1;
        return r;
    }
    if (E.same_as(prof.cz2)) {
        r.tag = EssentialTag::CZ2;
        return r;
    }
    if (prof.gamma1.contains_all(E) || prof.cz2.contains_all(E)) return r;

    bool abelian_shape = is_elementary_abelian(E, im.p) && E.order() == p * p;
    bool big_shape = E.order() == p * p * p &&
                     (im.p == 2 ? is_quaternion8(E)
                                : is_extraspecial_p3_exp_p(E, im.p));
    if (!abelian_shape && !big_shape) return r;
    r.tag = abelian_shape ? EssentialTag::AbelianPearl
            : im.p == 2   ? EssentialTag::QuaternionPearl
                          : EssentialTag::ExtraspecialPearl;

    // Locate E among the H_i = <x s_1^i> Z(S) (abelian) or the
    // B_i = <x s_1^i> Z_2(S): x is the smallest element of order p (order 4
    // for the quaternion shape) outside gamma_1 and C_S(Z_2), s_1 the
    // smallest element of gamma_1 \ gamma_2.
    const GroupPtr& par = im.S.parent();
    std::uint64_t xorder = r.tag == EssentialTag::QuaternionPearl ? 4 : p;
    Elt x;
    for (const Elt& c : im.S.elements())
        if (par->elt_order(c) == xorder && !prof.gamma1.contains(c) &&
            !prof.cz2.contains(c)) {
            x = c;
            break;
        }
    if (x.empty()) return r;
    Elt s1;
    for (const Elt& c : prof.gamma1.elements())
        if (!prof.gamma_series[0].contains(c)) {
            s1 = c;
            break;
        }
    const Subgroup& tail = abelian_shape ? prof.z_series[0] : prof.z_series[1];
    for (int i = 0; i < im.p; ++i) {
        Elt xi = par->mul(x, par->pow(s1, i));
        Subgroup cand = join(Subgroup(par, {xi}, im.caps), tail, im.caps);
        if (im.s_conjugate(cand, E)) {
            r.pearl_index = i;
            break;
        }
    }
    return r;
}

std::vector<EssentialReport> FusionSystem::essential_subgroups(
    EssentialMode mode) const {
    const Impl& im = *impl_;
    std::vector<EssentialReport> out;

    if (!im.realizable) {
        // A generated system's essential subgroups are exactly the listed
        // classes; report one entry per S-class.
        for (const auto& e : im.listed) {
            bool dup = false;
            for (const EssentialReport& r : out)
                if (im.s_conjugate(r.subgroup, e.first)) {
                    dup = true;
                    break;
                }
            if (dup) continue;
            EssentialReport r = classify_pearl(e.first);
            OutInfo oi = im.out_of(e.first);
            r.out_group = oi.out;
            r.out_order = oi.order;
            if (oi.witness) r.embedded_witness = *oi.witness;
            std::size_t n = 0;
            for (const auto& other : im.listed)
                if (im.s_conjugate(e.first, other.first)) ++n;
            r.sclass_size = n;
            out.push_back(std::move(r));
        }
        return out;
    }

    std::vector<Subgroup> candidates;
    std::vector<std::size_t> sclass_sizes;
    if (mode == EssentialMode::Brute) {
        std::uint64_t bound = im.p == 2   ? 128
                              : im.p == 3 ? 243
                              : im.p == 5 ? 625
                                          : static_cast<std::uint64_t>(im.p) *
                                                im.p * im.p * im.p;
        if (im.S.order() > bound)
            throw CapError("S too large for exhaustive essential search");
        std::vector<Subgroup> subs = all_subgroups(im.S, im.caps);
        for (const std::vector<int>& cls :
             subgroup_conjugacy_classes(im.S, subs)) {
            candidates.push_back(subs[cls[0]]);
            sclass_sizes.push_back(cls.size());
        }
    } else {
        const MaxClassProfile& prof = im.profile();
        if (!prof.is_maximal_class || prof.n < 4)
            throw InputError("candidate-shape mode needs a maximal class S "
                             "of order at least p^4");
        const GroupPtr& par = im.S.parent();
        std::set<std::string> seen;
        auto push = [&](Subgroup c) {
            for (const Subgroup& prev : candidates)
                if (im.s_conjugate(prev, c)) return;
            if (seen.insert(c.key()).second) {
                candidates.push_back(std::move(c));
                sclass_sizes.push_back(0);
            }
        };
        push(prof.gamma1);
        push(prof.cz2);
        for (const Elt& x : im.S.elements()) {
            std::uint64_t o = par->elt_order(x);
            bool core = o == static_cast<std::uint64_t>(im.p) ||
                        (im.p == 2 && o == 4);
            if (!core || prof.gamma1.contains(x) || prof.cz2.contains(x))
                continue;
            Subgroup cyc(par, {x}, im.caps);
            push(join(cyc, prof.z_series[0], im.caps));
            push(join(cyc, prof.z_series[1], im.caps));
        }
    }

    for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
        const Subgroup& P = candidates[ci];
        if (P.same_as(im.S) || P.order() == 1) continue;
        if (!P.contains_all(centralizer_in(im.S, P))) continue;

        if (mode == EssentialMode::TheoremD) {
            // Rank bound: an essential E has |E/Phi(E)| >= |N_S(E)/E|^2.
            Subgroup n = normalizer_in(im.S, P);
            std::uint64_t idx = n.order() / P.order();
            std::uint64_t rank =
                P.order() / frattini_of(P, im.p, im.caps).order();
            if (rank < idx * idx) continue;

            // Stabilized-series filter: if N_S(P) acts trivially on every
            // factor of the iterated Frattini series of P while inducing an
            // outer automorphism, Out_F(P) has a normal p-subgroup and P is
            // not essential.
            std::vector<Subgroup> chain{P};
            while (chain.back().order() > 1)
                chain.push_back(frattini_of(chain.back(), im.p, im.caps));
            bool stabilizes = true;
            for (std::size_t i = 0; i + 1 < chain.size() && stabilizes; ++i)
                for (const Elt& u : n.gens()) {
                    for (const Elt& x : chain[i].elements()) {
                        Elt c = im.S.parent()->comm(x, u);
                        if (!chain[i + 1].contains(c)) {
                            stabilizes = false;
                            break;
                        }
                    }
                    if (!stabilizes) break;
                }
            bool outer = n.order() >
                         P.order() * centralizer_in(im.S, P).order() /
                             center_of(P).order();
            if (stabilizes && outer) continue;
        }

        if (!is_centric(P) || !is_fully_normalized(P)) continue;
        OutInfo oi = im.out_of(P);
        if (!oi.witness) continue;

        EssentialReport r = classify_pearl(P);
        r.out_group = oi.out;
        r.out_order = oi.order;
        r.embedded_witness = *oi.witness;
        r.fclass_size = im.class_of(P).members.size();
        r.sclass_size = sclass_sizes[ci] > 0
                            ? sclass_sizes[ci]
                            : im.S.order() / normalizer_in(im.S, P).order();
        out.push_back(std::move(r));
    }
    return out;
}

FocalData FusionSystem::focal_data() const {
    const Impl& im = *impl_;
    std::vector<EssentialReport> ess = essential_subgroups(
        im.realizable ? EssentialMode::Brute : EssentialMode::TheoremD);

    std::vector<Subgroup> domains{im.S};
    for (const EssentialReport& r : ess) domains.push_back(r.subgroup);

    const GroupPtr& par = im.S.parent();
    std::set<Elt> foc_gens, hyp_gens;
    for (const Subgroup& Q : domains) {
        MapGroup mg = im.aut_of(Q);
        std::vector<Elt> pprime;
        for (std::size_t i = 0; i < mg.maps.size(); ++i)
            if (mg.maps[i].map_order() %
                    static_cast<std::uint64_t>(im.p) != 0)
                pprime.push_back(Elt{static_cast<std::uint16_t>(i)});
        Subgroup op_aut = pprime.empty()
                              ? trivial_subgroup(mg.table)
                              : Subgroup(mg.table, pprime, im.caps);
        for (std::size_t i = 0; i < mg.maps.size(); ++i) {
            bool in_op =
                op_aut.contains(Elt{static_cast<std::uint16_t>(i)});
            for (const Elt& g : Q.elements()) {
                Elt c = par->mul(par->inv(g), mg.maps[i].apply(g));
                if (c == par->identity()) continue;
                foc_gens.insert(c);
                if (in_op) hyp_gens.insert(c);
            }
        }
    }

    // The contributions of an S-conjugate of an essential are S-conjugates
    // of the collected ones, so the normal closure in S completes the set.
    FocalData fd;
    fd.foc = normal_closure_in(
        im.S, std::vector<Elt>(foc_gens.begin(), foc_gens.end()), im.caps);
    fd.hyp = normal_closure_in(
        im.S, std::vector<Elt>(hyp_gens.begin(), hyp_gens.end()), im.caps);
    fd.index_s_hyp = im.S.order() / fd.hyp.order();

    if (ess.empty()) {
        fd.op_f = im.S;
        return fd;
    }
    MapGroup aut_s = im.aut_of(im.S);
    std::vector<MapGroup> aut_e;
    for (const EssentialReport& r : ess) aut_e.push_back(im.aut_of(r.subgroup));
    Subgroup best = trivial_subgroup(par);
    for (const Subgroup& T : all_subgroups(im.S, im.caps)) {
        if (!T.is_normal_in(im.S)) continue;
        bool ok = true;
        for (const EssentialReport& r : ess)
            if (!r.subgroup.contains_all(T)) { ok = false; break; }
        for (std::size_t i = 0; ok && i < aut_s.maps.size(); ++i)
            for (const Elt& x : T.gens())
                if (!T.contains(aut_s.maps[i].apply(x))) {
                    ok = false;
                    break;
                }
        for (std::size_t e = 0; ok && e < aut_e.size(); ++e)
            for (const GroupMap& f : aut_e[e].maps) {
                for (const Elt& x : T.gens())
                    if (!T.contains(f.apply(x))) { ok = false; break; }
                if (!ok) break;
            }
        if (ok) best = join(best, T, im.caps);
    }
    fd.op_f = best;
    return fd;
}

FusionSystem FusionSystem::prune_pearl_class(const Subgroup& P) const {
    const Impl& im = *impl_;
    if (im.realizable)
        throw InputError("pruning operates on generated fusion systems");
    bool found = false;
    for (const auto& e : im.listed)
        if (im.s_conjugate(e.first, P)) { found = true; break; }
    if (!found)
        throw InputError("subgroup is not a listed essential class");
    EssentialReport tag = classify_pearl(P);
    if (tag.tag != EssentialTag::AbelianPearl &&
        tag.tag != EssentialTag::ExtraspecialPearl &&
        tag.tag != EssentialTag::QuaternionPearl)
        throw InputError("only pearl classes can be pruned");

    std::vector<std::pair<Subgroup, std::vector<GroupMap>>> rest;
    for (const auto& e : im.listed)
        if (!im.s_conjugate(e.first, P)) rest.push_back(e);
    FusionSystem pruned = generated(im.S, im.aut_s_gens, rest, im.caps);
    if (!pruned.is_fully_automized(im.S))
        throw VerifyError("pruned system fails the Sylow check at S");
    for (const auto& e : rest)
        if (!pruned.is_fully_automized(e.first))
            throw VerifyError("pruned system fails the Sylow check at a "
                              "listed subgroup");
    return pruned;
}

TheoremDReport FusionSystem::verify_theorem_D() const {
    const Impl& im = *impl_;
    const MaxClassProfile& prof = im.profile();
    if (!prof.is_maximal_class || prof.n < 4)
        throw InputError(
            "verification needs a maximal class S of order at least p^4");

    TheoremDReport rep;
    rep.essentials = essential_subgroups(
        im.realizable ? EssentialMode::Brute : EssentialMode::TheoremD);
    rep.pass = true;
    for (const EssentialReport& e : rep.essentials) {
        if (e.tag == EssentialTag::Other) {
            rep.pass = false;
            rep.witness = e.subgroup;
            rep.message = "essential subgroup outside the predicted shapes";
            return rep;
        }
        if (prof.is_exceptional &&
            (e.tag == EssentialTag::ExtraspecialPearl ||
             e.tag == EssentialTag::QuaternionPearl)) {
            rep.pass = false;
            rep.witness = e.subgroup;
            rep.message = "non-abelian pearl in an exceptional group";
            return rep;
        }
    }
    rep.message = "all essentials are pearls, gamma_1, or the centralizer of "
                  "the second center";
    return rep;
}

FusionSystem FusionSystem::to_generated() const {
    const Impl& im = *impl_;
    im.require_realizable();
    std::vector<std::pair<Subgroup, std::vector<GroupMap>>> listed;
    for (const EssentialReport& r :
         essential_subgroups(EssentialMode::Brute))
        listed.emplace_back(r.subgroup, im.aut_of(r.subgroup).maps);
    return generated(im.S, im.aut_of(im.S).maps, std::move(listed), im.caps);
}

} // namespace mcf
