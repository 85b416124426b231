#include "mcf/subgroups.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace mcf {

namespace {

std::string bytes_of(const std::vector<Elt>& v) {
    std::string s;
    s.reserve(v.size() * (v.empty() ? 0 : v[0].size()) * 2);
    for (const Elt& e : v)
        for (auto x : e) {
            s.push_back(static_cast<char>(x & 0xff));
            s.push_back(static_cast<char>(x >> 8));
        }
    return s;
}

std::uint64_t lcm64(std::uint64_t a, std::uint64_t b) {
    std::uint64_t g = std::gcd(a, b);
    return a / g * b;
}

// Breadth-first closure of a generator list inside a parent group.
std::vector<Elt> close_under_product(const GroupPtr& parent,
                                     const std::vector<Elt>& gens,
                                     std::uint64_t cap) {
    std::set<Elt> seen;
    seen.insert(parent->identity());
    std::vector<Elt> queue{parent->identity()};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        for (const Elt& g : gens) {
            Elt next = parent->mul(queue[qi], g);
            if (seen.insert(next).second) {
                if (seen.size() > cap)
                    throw CapError("closure-cap: subgroup closure exceeds " +
                                   std::to_string(cap) + " elements");
                queue.push_back(std::move(next));
            }
        }
    }
    return {seen.begin(), seen.end()};
}

} // namespace

// ---------------------------------------------------------------------------
// Subgroup

Subgroup::Subgroup(GroupPtr parent, std::vector<Elt> gens, const Caps& caps) {
    for (const Elt& g : gens)
        if (!parent->contains(g))
            throw InputError("subgroup generator lies outside the parent group");
    parent_ = std::move(parent);
    elems_ = std::make_shared<std::vector<Elt>>(
        close_under_product(parent_, gens, caps.max_closure));
    gens_ = std::move(gens);
    if (gens_.empty()) gens_.push_back(parent_->identity());
}

Subgroup Subgroup::from_elements(GroupPtr parent, std::vector<Elt> elems,
                                 std::vector<Elt> gens) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    Subgroup s;
    s.parent_ = std::move(parent);
    if (gens.empty()) gens = elems;
    s.gens_ = std::move(gens);
    s.elems_ = std::make_shared<std::vector<Elt>>(std::move(elems));
    return s;
}

Subgroup Subgroup::whole(GroupPtr parent, const Caps& caps) {
    const auto& els = parent->elements(caps);
    Subgroup s;
    s.parent_ = parent;
    s.gens_ = parent->generators();
    if (s.gens_.empty()) s.gens_.push_back(parent->identity());
    s.elems_ = std::shared_ptr<const std::vector<Elt>>(parent, &els);
    return s;
}

bool Subgroup::contains(const Elt& e) const {
    return std::binary_search(elems_->begin(), elems_->end(), e);
}

bool Subgroup::contains_all(const Subgroup& other) const {
    for (const Elt& e : other.elements())
        if (!contains(e)) return false;
    return true;
}

bool Subgroup::same_as(const Subgroup& other) const {
    return *elems_ == *other.elems_;
}

bool Subgroup::is_normal_in(const Subgroup& big) const {
    for (const Elt& g : big.gens())
        for (const Elt& h : gens_)
            if (!contains(parent_->conj(h, g))) return false;
    return true;
}

bool Subgroup::is_abelian() const {
    for (const Elt& a : gens_)
        for (const Elt& b : gens_)
            if (parent_->mul(a, b) != parent_->mul(b, a)) return false;
    return true;
}

Subgroup Subgroup::conjugated_by(const Elt& g) const {
    std::vector<Elt> elems;
    elems.reserve(elems_->size());
    for (const Elt& e : *elems_) elems.push_back(parent_->conj(e, g));
    std::vector<Elt> gens;
    gens.reserve(gens_.size());
    for (const Elt& e : gens_) gens.push_back(parent_->conj(e, g));
    return from_elements(parent_, std::move(elems), std::move(gens));
}

const std::string& Subgroup::key() const {
    if (key_.empty()) key_ = bytes_of(*elems_);
    return key_;
}

// ---------------------------------------------------------------------------
// GroupMap

GroupMap::GroupMap(Subgroup dom, Subgroup cod, std::vector<Elt> gen_images) {
    if (gen_images.size() != dom.gens().size())
        throw InputError("GroupMap: one image per domain generator required");
    for (const Elt& im : gen_images)
        if (!cod.contains(im))
            throw VerifyError("GroupMap: image outside the codomain");
    const auto& dels = dom.elements();
    const GroupPtr& dp = dom.parent();
    const GroupPtr& cp = cod.parent();
    auto index_of = [&](const Elt& x) {
        auto it = std::lower_bound(dels.begin(), dels.end(), x);
        if (it == dels.end() || *it != x)
            throw VerifyError("GroupMap: product left the domain");
        return static_cast<std::size_t>(it - dels.begin());
    };
    std::vector<Elt> imgs(dels.size());
    std::vector<bool> known(dels.size(), false);
    std::size_t id_idx = index_of(dp->identity());
    imgs[id_idx] = cp->identity();
    known[id_idx] = true;
    std::vector<std::size_t> queue{id_idx};
    std::size_t reached = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        std::size_t xi = queue[qi];
        for (std::size_t k = 0; k < gen_images.size(); ++k) {
            std::size_t yi = index_of(dp->mul(dels[xi], dom.gens()[k]));
            Elt img = cp->mul(imgs[xi], gen_images[k]);
            if (!known[yi]) {
                imgs[yi] = std::move(img);
                known[yi] = true;
                ++reached;
                queue.push_back(yi);
            } else if (imgs[yi] != img) {
                throw VerifyError("GroupMap: generator images do not define a "
                                  "homomorphism");
            }
        }
    }
    if (reached != dels.size())
        throw VerifyError("GroupMap: domain generators do not generate the "
                          "domain");
    dom_ = std::move(dom);
    cod_ = std::move(cod);
    imgs_ = std::make_shared<const std::vector<Elt>>(std::move(imgs));
}

GroupMap GroupMap::conjugation(const Subgroup& dom, const Subgroup& cod,
                               const Elt& g) {
    const GroupPtr& gp = dom.parent();
    std::vector<Elt> imgs;
    imgs.reserve(dom.order());
    for (const Elt& x : dom.elements()) {
        Elt y = gp->conj(x, g);
        if (!cod.contains(y))
            throw VerifyError("conjugation does not map into the codomain");
        imgs.push_back(std::move(y));
    }
    GroupMap m;
    m.dom_ = dom;
    m.cod_ = cod;
    m.imgs_ = std::make_shared<const std::vector<Elt>>(std::move(imgs));
    return m;
}

GroupMap GroupMap::identity_map(const Subgroup& dom) {
    GroupMap m;
    m.dom_ = dom;
    m.cod_ = dom;
    m.imgs_ = std::make_shared<const std::vector<Elt>>(dom.elements());
    return m;
}

Elt GroupMap::apply(const Elt& x) const {
    const auto& dels = dom_.elements();
    auto it = std::lower_bound(dels.begin(), dels.end(), x);
    if (it == dels.end() || *it != x)
        throw InputError("GroupMap::apply: element outside the domain");
    return (*imgs_)[static_cast<std::size_t>(it - dels.begin())];
}

bool GroupMap::is_bijective() const {
    std::vector<Elt> sorted = *imgs_;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    return sorted.size() == imgs_->size();
}

GroupMap GroupMap::then(const GroupMap& g) const {
    std::vector<Elt> imgs;
    imgs.reserve(imgs_->size());
    for (const Elt& y : *imgs_) imgs.push_back(g.apply(y));
    GroupMap m;
    m.dom_ = dom_;
    m.cod_ = g.cod_;
    m.imgs_ = std::make_shared<const std::vector<Elt>>(std::move(imgs));
    return m;
}

GroupMap GroupMap::inverse() const {
    if (dom_.order() != cod_.order() || !is_bijective())
        throw InputError("GroupMap::inverse: map is not bijective");
    const auto& dels = dom_.elements();
    const auto& cels = cod_.elements();
    std::vector<std::pair<Elt, Elt>> pairs;
    pairs.reserve(dels.size());
    for (std::size_t i = 0; i < dels.size(); ++i)
        pairs.emplace_back((*imgs_)[i], dels[i]);
    std::sort(pairs.begin(), pairs.end());
    std::vector<Elt> imgs;
    imgs.reserve(cels.size());
    for (std::size_t i = 0; i < cels.size(); ++i) {
        if (pairs[i].first != cels[i])
            throw VerifyError("GroupMap::inverse: image set differs from the "
                              "codomain");
        imgs.push_back(pairs[i].second);
    }
    GroupMap m;
    m.dom_ = cod_;
    m.cod_ = dom_;
    m.imgs_ = std::make_shared<const std::vector<Elt>>(std::move(imgs));
    return m;
}

GroupMap GroupMap::restricted_to(const Subgroup& sub) const {
    std::vector<Elt> imgs;
    imgs.reserve(sub.order());
    for (const Elt& x : sub.elements()) imgs.push_back(apply(x));
    GroupMap m;
    m.dom_ = sub;
    m.cod_ = cod_;
    m.imgs_ = std::make_shared<const std::vector<Elt>>(std::move(imgs));
    return m;
}

bool GroupMap::fixes_setwise(const Subgroup& sub) const {
    for (const Elt& x : sub.elements())
        if (!sub.contains(apply(x))) return false;
    return true;
}

bool GroupMap::is_identity() const {
    return *imgs_ == dom_.elements();
}

std::uint64_t GroupMap::map_order() const {
    GroupMap cur = *this;
    std::uint64_t n = 1;
    while (!cur.is_identity()) {
        cur = cur.then(*this);
        ++n;
    }
    return n;
}

const std::string& GroupMap::key() const {
    if (key_.empty()) key_ = bytes_of(*imgs_);
    return key_;
}

// ---------------------------------------------------------------------------
// MapGroup

int MapGroup::index_of_key(const std::string& k) const {
    for (std::size_t i = 0; i < maps.size(); ++i)
        if (maps[i].key() == k) return static_cast<int>(i);
    return -1;
}

MapGroup build_map_group(Subgroup base, std::vector<GroupMap> gens) {
    std::map<std::string, GroupMap> closed;
    GroupMap id = GroupMap::identity_map(base);
    closed.emplace(id.key(), id);
    std::vector<GroupMap> queue{id};
    for (const GroupMap& g : gens)
        if (closed.emplace(g.key(), g).second) queue.push_back(g);
    std::vector<GroupMap> genlist(queue.begin() + 1, queue.end());
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        for (const GroupMap& g : genlist) {
            GroupMap next = queue[qi].then(g);
            if (closed.emplace(next.key(), next).second)
                queue.push_back(std::move(next));
        }
    }

    MapGroup mg;
    mg.base = std::move(base);
    for (auto& [k, m] : closed) mg.maps.push_back(std::move(m));

    std::size_t n = mg.maps.size();
    std::vector<std::string> keys;
    keys.reserve(n);
    for (const GroupMap& m : mg.maps) keys.push_back(m.key());
    auto idx = [&](const std::string& k) {
        auto it = std::lower_bound(keys.begin(), keys.end(), k);
        return static_cast<std::uint32_t>(it - keys.begin());
    };
    std::vector<std::uint32_t> table(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            table[i * n + j] = idx(mg.maps[i].then(mg.maps[j]).key());
    std::vector<Elt> tgens;
    for (const GroupMap& g : genlist)
        tgens.push_back(Elt{static_cast<std::uint16_t>(idx(g.key()))});
    mg.table = Group::make_table(std::move(table), n, std::move(tgens));
    return mg;
}

// ---------------------------------------------------------------------------
// Small-scale structure helpers

Subgroup center_of(const Subgroup& H) {
    const GroupPtr& p = H.parent();
    std::vector<Elt> z;
    for (const Elt& x : H.elements()) {
        bool central = true;
        for (const Elt& g : H.gens())
            if (p->mul(x, g) != p->mul(g, x)) {
                central = false;
                break;
            }
        if (central) z.push_back(x);
    }
    return Subgroup::from_elements(p, std::move(z), {});
}

Subgroup derived_of(const Subgroup& H) {
    const GroupPtr& p = H.parent();
    std::set<Elt> gens;
    for (const Elt& a : H.elements())
        for (const Elt& b : H.gens()) {
            Elt c = p->comm(a, b);
            if (c != p->identity()) gens.insert(c);
        }
    return Subgroup(p, {gens.begin(), gens.end()});
}

Subgroup centralizer_in(const Subgroup& H, const Subgroup& K) {
    const GroupPtr& p = H.parent();
    std::vector<Elt> c;
    for (const Elt& x : H.elements()) {
        bool ok = true;
        for (const Elt& g : K.gens())
            if (p->mul(x, g) != p->mul(g, x)) {
                ok = false;
                break;
            }
        if (ok) c.push_back(x);
    }
    return Subgroup::from_elements(p, std::move(c), {});
}

Subgroup normalizer_in(const Subgroup& H, const Subgroup& K) {
    const GroupPtr& p = H.parent();
    std::vector<Elt> nrm;
    for (const Elt& x : H.elements()) {
        bool ok = true;
        for (const Elt& g : K.gens())
            if (!K.contains(p->conj(g, x))) {
                ok = false;
                break;
            }
        if (ok) nrm.push_back(x);
    }
    return Subgroup::from_elements(p, std::move(nrm), {});
}

Subgroup intersect(const Subgroup& A, const Subgroup& B) {
    const Subgroup& small = A.order() <= B.order() ? A : B;
    const Subgroup& big = A.order() <= B.order() ? B : A;
    std::vector<Elt> e;
    for (const Elt& x : small.elements())
        if (big.contains(x)) e.push_back(x);
    return Subgroup::from_elements(A.parent(), std::move(e), {});
}

Subgroup join(const Subgroup& A, const Subgroup& B, const Caps& caps) {
    std::vector<Elt> gens = A.gens();
    gens.insert(gens.end(), B.gens().begin(), B.gens().end());
    return Subgroup(A.parent(), std::move(gens), caps);
}

Subgroup frattini_of(const Subgroup& P, int p, const Caps& caps) {
    std::vector<Elt> gens;
    const GroupPtr& gp = P.parent();
    for (const Elt& a : P.elements())
        for (const Elt& b : P.gens()) {
            Elt c = gp->comm(a, b);
            if (c != gp->identity()) gens.push_back(c);
        }
    for (const Elt& a : P.elements()) {
        Elt q = gp->pow(a, p);
        if (q != gp->identity()) gens.push_back(q);
    }
    return Subgroup(gp, std::move(gens), caps);
}

std::uint64_t exponent_of(const Subgroup& H) {
    std::uint64_t e = 1;
    for (const Elt& x : H.elements()) e = lcm64(e, H.parent()->elt_order(x));
    return e;
}

bool is_elementary_abelian(const Subgroup& H, int p) {
    if (!H.is_abelian()) return false;
    const GroupPtr& gp = H.parent();
    for (const Elt& x : H.elements())
        if (x != gp->identity() &&
            gp->elt_order(x) != static_cast<std::uint64_t>(p))
            return false;
    return true;
}

bool is_extraspecial_p3_exp_p(const Subgroup& H, int p) {
    std::uint64_t p3 = static_cast<std::uint64_t>(p) * p * p;
    if (p == 2 || H.order() != p3) return false;
    Subgroup z = center_of(H);
    Subgroup d = derived_of(H);
    return z.order() == static_cast<std::uint64_t>(p) && z.same_as(d) &&
           exponent_of(H) == static_cast<std::uint64_t>(p);
}

bool is_quaternion8(const Subgroup& H) {
    if (H.order() != 8) return false;
    int involutions = 0;
    for (const Elt& x : H.elements())
        if (x != H.parent()->identity() && H.parent()->elt_order(x) == 2)
            ++involutions;
    return involutions == 1 && exponent_of(H) == 4;
}

std::vector<Elt> minimal_generators(const Subgroup& P, int p,
                                    const Caps& caps) {
    Subgroup phi = frattini_of(P, p, caps);
    std::vector<Elt> picked;
    Subgroup cur = phi;
    for (const Elt& x : P.elements()) {
        if (cur.order() == P.order()) break;
        if (cur.contains(x)) continue;
        std::vector<Elt> gens = cur.gens();
        gens.push_back(x);
        cur = Subgroup(P.parent(), std::move(gens), caps);
        picked.push_back(x);
    }
    if (cur.order() != P.order())
        throw VerifyError("minimal_generators: generation failed");
    return picked;
}

// ---------------------------------------------------------------------------
// Subgroup lattice

std::vector<Subgroup> all_subgroups(const Subgroup& S, const Caps& caps) {
    const GroupPtr& gp = S.parent();
    std::map<std::string, Subgroup> found;
    Subgroup triv = Subgroup(gp, {S.parent()->identity()});
    found.emplace(triv.key(), triv);
    std::vector<Subgroup> queue{triv};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        Subgroup h = queue[qi];
        for (const Elt& x : S.elements()) {
            if (h.contains(x)) continue;
            std::vector<Elt> gens = h.gens();
            gens.push_back(x);
            Subgroup k(gp, std::move(gens), caps);
            if (found.size() >= caps.max_subgroup_enum)
                throw CapError("subgroup-enum-cap: more than " +
                               std::to_string(caps.max_subgroup_enum) +
                               " subgroups");
            if (found.emplace(k.key(), k).second) queue.push_back(k);
        }
    }
    std::vector<Subgroup> out;
    out.reserve(found.size());
    for (auto& [k, v] : found) out.push_back(std::move(v));
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        return a.order() != b.order() ? a.order() < b.order()
                                      : a.key() < b.key();
    });
    return out;
}

std::vector<std::vector<int>> subgroup_conjugacy_classes(
    const Subgroup& S, const std::vector<Subgroup>& subs) {
    std::map<std::string, int> index_of;
    for (std::size_t i = 0; i < subs.size(); ++i)
        index_of[subs[i].key()] = static_cast<int>(i);
    std::vector<bool> seen(subs.size(), false);
    std::vector<std::vector<int>> classes;
    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (seen[i]) continue;
        std::vector<int> cls{static_cast<int>(i)};
        seen[i] = true;
        for (std::size_t qi = 0; qi < cls.size(); ++qi) {
            for (const Elt& g : S.gens()) {
                Subgroup c = subs[static_cast<std::size_t>(cls[qi])]
                                 .conjugated_by(g);
                auto it = index_of.find(c.key());
                if (it == index_of.end())
                    throw VerifyError(
                        "subgroup_conjugacy_classes: conjugate missing from "
                        "the lattice");
                if (!seen[static_cast<std::size_t>(it->second)]) {
                    seen[static_cast<std::size_t>(it->second)] = true;
                    cls.push_back(it->second);
                }
            }
        }
        std::sort(cls.begin(), cls.end());
        classes.push_back(std::move(cls));
    }
    return classes;
}

std::vector<Subgroup> maximal_subgroups(const Subgroup& S, int p,
                                        const Caps& caps) {
    Subgroup phi = frattini_of(S, p, caps);
    Quotient q = quotient(S, phi);
    std::uint64_t qn = q.group->order();
    // S/Phi is elementary abelian; find a basis by greedy extension.
    std::vector<Elt> basis;
    Subgroup qtriv(q.group, {q.group->identity()});
    Subgroup span = qtriv;
    for (const Elt& x : q.group->elements()) {
        if (span.order() == qn) break;
        if (span.contains(x)) continue;
        std::vector<Elt> g = span.gens();
        g.push_back(x);
        span = Subgroup(q.group, std::move(g), caps);
        basis.push_back(x);
    }
    std::size_t d = basis.size();
    // Coordinates of every quotient element over the basis.
    std::map<Elt, std::vector<int>> coords;
    coords[q.group->identity()] = std::vector<int>(d, 0);
    std::vector<Elt> bfs{q.group->identity()};
    for (std::size_t qi = 0; qi < bfs.size(); ++qi) {
        for (std::size_t b = 0; b < d; ++b) {
            Elt next = q.group->mul(bfs[qi], basis[b]);
            if (!coords.count(next)) {
                auto c = coords[bfs[qi]];
                c[b] = (c[b] + 1) % p;
                coords[next] = std::move(c);
                bfs.push_back(next);
            }
        }
    }
    // One functional per hyperplane: first nonzero coefficient = 1.
    std::vector<Subgroup> out;
    std::vector<int> f(d, 0);
    auto advance = [&]() {
        for (std::size_t i = d; i-- > 0;) {
            f[i] = (f[i] + 1) % p;
            if (f[i] != 0) return true;
        }
        return false;
    };
    while (advance()) {
        std::size_t first = 0;
        while (first < d && f[first] == 0) ++first;
        if (f[first] != 1) continue;
        // Preimage of the kernel of f in S.
        std::vector<Elt> elems;
        const auto& sels = S.elements();
        for (std::size_t i = 0; i < sels.size(); ++i) {
            const auto& c = coords.at(
                Elt{static_cast<std::uint16_t>(q.coset_of[i])});
            int val = 0;
            for (std::size_t b = 0; b < d; ++b) val = (val + f[b] * c[b]) % p;
            if (val == 0) elems.push_back(sels[i]);
        }
        out.push_back(Subgroup::from_elements(S.parent(), std::move(elems), {}));
    }
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        return a.key() < b.key();
    });
    return out;
}

// ---------------------------------------------------------------------------
// Quotients

int Quotient::coset_index(const Subgroup& H, const Elt& x) const {
    const auto& els = H.elements();
    auto it = std::lower_bound(els.begin(), els.end(), x);
    if (it == els.end() || *it != x)
        throw InputError("coset_index: element outside the subgroup");
    return coset_of[static_cast<std::size_t>(it - els.begin())];
}

Quotient quotient(const Subgroup& H, const Subgroup& N) {
    if (!H.contains_all(N) || !N.is_normal_in(H))
        throw InputError("quotient: the kernel must be normal in the group");
    const GroupPtr& gp = H.parent();
    const auto& els = H.elements();
    Quotient q;
    q.coset_of.assign(els.size(), -1);
    auto idx = [&](const Elt& x) {
        auto it = std::lower_bound(els.begin(), els.end(), x);
        return static_cast<std::size_t>(it - els.begin());
    };
    for (std::size_t i = 0; i < els.size(); ++i) {
        if (q.coset_of[i] != -1) continue;
        int c = static_cast<int>(q.coset_rep.size());
        q.coset_rep.push_back(els[i]);
        for (const Elt& n : N.elements()) q.coset_of[idx(gp->mul(els[i], n))] = c;
    }
    std::size_t n = q.coset_rep.size();
    std::vector<std::uint32_t> table(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            table[i * n + j] = static_cast<std::uint32_t>(
                q.coset_of[idx(gp->mul(q.coset_rep[i], q.coset_rep[j]))]);
    std::vector<Elt> tgens;
    for (const Elt& g : H.gens())
        tgens.push_back(Elt{static_cast<std::uint16_t>(
            q.coset_of[idx(g)])});
    std::sort(tgens.begin(), tgens.end());
    tgens.erase(std::unique(tgens.begin(), tgens.end()), tgens.end());
    q.group = Group::make_table(std::move(table), n, std::move(tgens));
    return q;
}

// ---------------------------------------------------------------------------
// Derived subgroup of a large ambient group

GroupPtr derived_group(const GroupPtr& G, const Caps& caps) {
    if (G->backend() == Backend::Perm) {
        std::set<Elt> kgens;
        const auto& gg = G->generators();
        for (const Elt& a : gg)
            for (const Elt& b : gg) {
                Elt c = G->comm(a, b);
                if (c != G->identity()) kgens.insert(c);
            }
        GroupPtr K = Group::make_perm(G->degree(),
                                      {kgens.begin(), kgens.end()});
        // Normal closure: conjugate generators back in until stable.
        for (;;) {
            bool grew = false;
            for (const Elt& g : gg) {
                for (const Elt& k : std::vector<Elt>(kgens.begin(),
                                                     kgens.end())) {
                    Elt c = G->conj(k, g);
                    if (!K->contains(c)) {
                        kgens.insert(c);
                        K = Group::make_perm(G->degree(),
                                             {kgens.begin(), kgens.end()});
                        grew = true;
                    }
                }
            }
            if (!grew) break;
        }
        return K;
    }
    Subgroup whole = Subgroup::whole(G, caps);
    Subgroup d = derived_of(whole);
    if (G->backend() == Backend::Pc || G->backend() == Backend::Table) {
        // Return a table group over the derived subgroup's elements.
        const auto& els = d.elements();
        std::size_t n = els.size();
        std::vector<std::uint32_t> table(n * n);
        auto idx = [&](const Elt& x) {
            auto it = std::lower_bound(els.begin(), els.end(), x);
            return static_cast<std::uint32_t>(it - els.begin());
        };
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                table[i * n + j] = idx(G->mul(els[i], els[j]));
        return Group::make_table(std::move(table), n, {});
    }
    throw McfError("unreachable");
}

} // namespace mcf
