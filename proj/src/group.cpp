#include "mcf/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace mcf {

namespace {

bool is_identity_perm(const Elt& a) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != i) return false;
    return true;
}

int smallest_moved_point(const Elt& a) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != i) return static_cast<int>(i);
    return -1;
}

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

} // namespace

std::string elt_repr(const Elt& e) {
    std::string s = "[";
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(e[i]);
    }
    return s + "]";
}

// ---------------------------------------------------------------------------
// Construction

GroupPtr Group::make_perm(int degree, std::vector<Elt> generators) {
    if (degree < 1) throw InputError("make_perm: degree must be positive");
    for (const Elt& g : generators) {
        if (static_cast<int>(g.size()) != degree)
            throw InputError("make_perm: generator degree mismatch");
        std::vector<bool> seen(static_cast<std::size_t>(degree), false);
        for (auto img : g) {
            if (img >= degree || seen[img])
                throw InputError("make_perm: generator is not a bijection");
            seen[img] = true;
        }
    }
    auto g = std::shared_ptr<Group>(new Group());
    g->backend_ = Backend::Perm;
    g->degree_ = degree;
    std::sort(generators.begin(), generators.end());
    generators.erase(std::unique(generators.begin(), generators.end()),
                     generators.end());
    std::erase_if(generators, is_identity_perm);
    g->gens_ = std::move(generators);
    g->build_bsgs();
    return g;
}

GroupPtr Group::make_pc(PcPresentation pres, const Caps& caps) {
    if (pres.p < 2) throw InputError("make_pc: prime must be at least 2");
    if (pres.ngens < 0) throw InputError("make_pc: negative generator count");
    auto check_word = [&](const Elt& w, int above) {
        if (static_cast<int>(w.size()) != pres.ngens)
            throw InputError("make_pc: relation word length mismatch");
        for (int g = 0; g <= above && g < pres.ngens; ++g)
            if (w[static_cast<std::size_t>(g)] != 0)
                throw InputError(
                    "make_pc: relation word uses a generator that is not "
                    "above its own");
        for (auto e : w)
            if (e >= pres.p)
                throw InputError("make_pc: relation exponent out of range");
    };
    for (const auto& [i, w] : pres.powers) {
        if (i < 0 || i >= pres.ngens)
            throw InputError("make_pc: power relation index out of range");
        check_word(w, i);
    }
    for (const auto& [ji, w] : pres.comms) {
        auto [j, i] = ji;
        if (!(0 <= i && i < j && j < pres.ngens))
            throw InputError("make_pc: commutator relation index out of range");
        check_word(w, j);
    }

    auto g = std::shared_ptr<Group>(new Group());
    g->backend_ = Backend::Pc;
    g->pres_ = std::move(pres);
    for (int i = 0; i < g->pres_.ngens; ++i) {
        Elt e(static_cast<std::size_t>(g->pres_.ngens), 0);
        e[static_cast<std::size_t>(i)] = 1;
        g->gens_.push_back(e);
    }
    g->check_pc_consistency(caps);
    return g;
}

GroupPtr Group::make_table(std::vector<std::uint32_t> table, std::size_t n,
                           std::vector<Elt> generators) {
    if (n == 0 || n > 65535) throw InputError("make_table: bad size");
    if (table.size() != n * n) throw InputError("make_table: bad table shape");
    auto g = std::shared_ptr<Group>(new Group());
    g->backend_ = Backend::Table;
    g->tbl_n_ = n;
    g->tbl_mul_ = std::move(table);
    // Locate the identity: the unique e with e*x = x for all x.
    bool found = false;
    for (std::size_t e = 0; e < n && !found; ++e) {
        bool ok = true;
        for (std::size_t x = 0; x < n && ok; ++x)
            ok = g->tbl_mul_[e * n + x] == x;
        if (ok) {
            g->tbl_id_ = static_cast<std::uint32_t>(e);
            found = true;
        }
    }
    if (!found) throw InputError("make_table: no identity element");
    g->tbl_inv_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        bool ok = false;
        for (std::size_t b = 0; b < n; ++b)
            if (g->tbl_mul_[a * n + b] == g->tbl_id_) {
                g->tbl_inv_[a] = static_cast<std::uint32_t>(b);
                ok = true;
                break;
            }
        if (!ok) throw InputError("make_table: element without inverse");
    }
    if (generators.empty())
        for (std::size_t i = 0; i < n; ++i)
            generators.push_back(Elt{static_cast<std::uint16_t>(i)});
    g->gens_ = std::move(generators);
    return g;
}

// ---------------------------------------------------------------------------
// Element arithmetic

Elt Group::identity() const {
    switch (backend_) {
        case Backend::Perm: {
            Elt e(static_cast<std::size_t>(degree_));
            std::iota(e.begin(), e.end(), 0);
            return e;
        }
        case Backend::Pc:
            return Elt(static_cast<std::size_t>(pres_.ngens), 0);
        case Backend::Table:
            return Elt{static_cast<std::uint16_t>(tbl_id_)};
    }
    throw McfError("unreachable");
}

std::uint64_t Group::pc_order() const {
    std::uint64_t n = 1;
    for (int i = 0; i < pres_.ngens; ++i) n *= static_cast<std::uint64_t>(pres_.p);
    return n;
}

namespace {
// Mixed-radix rank of a PC exponent vector, all digits in [0, p).
std::uint32_t pc_rank(const Elt& a, int p) {
    std::uint32_t r = 0;
    for (auto d : a) r = r * static_cast<std::uint32_t>(p) + d;
    return r;
}
Elt pc_unrank(std::uint32_t r, int p, int n) {
    Elt a(static_cast<std::size_t>(n), 0);
    for (int i = n - 1; i >= 0; --i) {
        a[static_cast<std::size_t>(i)] =
            static_cast<std::uint16_t>(r % static_cast<std::uint32_t>(p));
        r /= static_cast<std::uint32_t>(p);
    }
    return a;
}
} // namespace

Elt Group::mul(const Elt& a, const Elt& b) const {
    switch (backend_) {
        case Backend::Perm: {
            Elt c(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) c[i] = b[a[i]];
            return c;
        }
        case Backend::Pc: {
            if (!pc_tbl_.empty()) {
                std::uint64_t n = pc_order();
                std::uint32_t r =
                    pc_tbl_[pc_rank(a, pres_.p) * n + pc_rank(b, pres_.p)];
                return pc_unrank(r, pres_.p, pres_.ngens);
            }
            std::vector<int> word;
            for (std::size_t g = 0; g < a.size(); ++g)
                for (int k = 0; k < a[g]; ++k) word.push_back(static_cast<int>(g));
            for (std::size_t g = 0; g < b.size(); ++g)
                for (int k = 0; k < b[g]; ++k) word.push_back(static_cast<int>(g));
            return pc_collect(pres_, word);
        }
        case Backend::Table:
            return Elt{static_cast<std::uint16_t>(
                tbl_mul_[static_cast<std::size_t>(a[0]) * tbl_n_ + b[0]])};
    }
    throw McfError("unreachable");
}

Elt Group::inv(const Elt& a) const {
    switch (backend_) {
        case Backend::Perm: {
            Elt c(a.size());
            for (std::size_t i = 0; i < a.size(); ++i)
                c[a[i]] = static_cast<std::uint16_t>(i);
            return c;
        }
        case Backend::Pc: {
            // Element orders are small p-powers, so a^(ord-1) is cheap.
            Elt id = identity();
            if (a == id) return id;
            Elt prev = a;
            Elt cur = mul(a, a);
            while (cur != id) {
                prev = cur;
                cur = mul(cur, a);
            }
            return prev;
        }
        case Backend::Table:
            return Elt{static_cast<std::uint16_t>(tbl_inv_[a[0]])};
    }
    throw McfError("unreachable");
}

Elt Group::conj(const Elt& a, const Elt& g) const {
    return mul(mul(inv(g), a), g);
}

Elt Group::comm(const Elt& a, const Elt& b) const {
    return mul(mul(inv(a), inv(b)), mul(a, b));
}

Elt Group::pow(const Elt& a, long long e) const {
    Elt base = a;
    if (e < 0) {
        base = inv(a);
        e = -e;
    }
    Elt acc = identity();
    while (e > 0) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

std::uint64_t Group::elt_order(const Elt& a) const {
    if (backend_ == Backend::Perm) {
        std::uint64_t ord = 1;
        std::vector<bool> seen(a.size(), false);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (seen[i]) continue;
            std::uint64_t len = 0;
            std::size_t j = i;
            while (!seen[j]) {
                seen[j] = true;
                j = a[j];
                ++len;
            }
            ord = ord / gcd64(ord, len) * len;
        }
        return ord;
    }
    Elt id = identity();
    Elt cur = a;
    std::uint64_t n = 1;
    while (cur != id) {
        cur = mul(cur, a);
        ++n;
    }
    return n;
}

// ---------------------------------------------------------------------------
// BSGS (permutation backend)

void Group::build_bsgs() {
    levels_.clear();
    if (gens_.empty()) return;

    std::set<Elt> strong(gens_.begin(), gens_.end());

    auto rebuild_chain = [&]() {
        levels_.clear();
        std::vector<Elt> active(strong.begin(), strong.end());
        while (!active.empty()) {
            BsgsLevel lv;
            int base = degree_;
            for (const Elt& g : active) {
                int m = smallest_moved_point(g);
                if (m >= 0 && m < base) base = m;
            }
            lv.base = base;
            lv.gens = active;
            lv.transversal.assign(static_cast<std::size_t>(degree_), Elt{});
            lv.transversal[static_cast<std::size_t>(base)] = identity();
            std::vector<int> queue{base};
            for (std::size_t qi = 0; qi < queue.size(); ++qi) {
                int pt = queue[qi];
                for (const Elt& g : lv.gens) {
                    int img = g[static_cast<std::size_t>(pt)];
                    if (lv.transversal[static_cast<std::size_t>(img)].empty() &&
                        img != base) {
                        lv.transversal[static_cast<std::size_t>(img)] =
                            mul(lv.transversal[static_cast<std::size_t>(pt)], g);
                        queue.push_back(img);
                    }
                }
            }
            lv.orbit_size = queue.size();
            // Next level: strong generators fixing this base point.
            std::vector<Elt> next;
            for (const Elt& g : lv.gens)
                if (g[static_cast<std::size_t>(base)] ==
                    static_cast<std::uint16_t>(base))
                    next.push_back(g);
            levels_.push_back(std::move(lv));
            active = std::move(next);
        }
    };

    // Add Schreier generators until the chain verifies; each round either
    // finishes or grows the strong set, so this terminates.
    for (;;) {
        rebuild_chain();
        bool added = false;
        for (const BsgsLevel& lv : levels_) {
            for (int pt = 0; pt < degree_ && !added; ++pt) {
                const Elt& t = lv.transversal[static_cast<std::size_t>(pt)];
                if (t.empty()) continue;
                for (const Elt& g : lv.gens) {
                    int img = g[static_cast<std::size_t>(pt)];
                    Elt s = mul(mul(t, g),
                                inv(lv.transversal[static_cast<std::size_t>(img)]));
                    if (is_identity_perm(s)) continue;
                    auto [res, depth] = sift(s);
                    if (depth < levels_.size() || !is_identity_perm(res)) {
                        strong.insert(res);
                        added = true;
                        break;
                    }
                }
            }
            if (added) break;
        }
        if (!added) break;
    }
}

std::pair<Elt, std::size_t> Group::sift(Elt g) const {
    for (std::size_t l = 0; l < levels_.size(); ++l) {
        const BsgsLevel& lv = levels_[l];
        int img = g[static_cast<std::size_t>(lv.base)];
        const Elt& t = lv.transversal[static_cast<std::size_t>(img)];
        if (t.empty() && img != lv.base) return {g, l};
        if (!(t.empty() && img == lv.base)) g = mul(g, inv(t));
    }
    return {g, levels_.size()};
}

std::uint64_t Group::order() const {
    switch (backend_) {
        case Backend::Perm: {
            std::uint64_t n = 1;
            for (const BsgsLevel& lv : levels_) n *= lv.orbit_size;
            return n;
        }
        case Backend::Pc:
            return pc_order();
        case Backend::Table:
            return tbl_n_;
    }
    throw McfError("unreachable");
}

bool Group::contains(const Elt& a) const {
    switch (backend_) {
        case Backend::Perm: {
            if (static_cast<int>(a.size()) != degree_) return false;
            if (is_identity_perm(a)) return true;
            auto [res, depth] = sift(a);
            return depth == levels_.size() && is_identity_perm(res);
        }
        case Backend::Pc: {
            if (static_cast<int>(a.size()) != pres_.ngens) return false;
            for (auto e : a)
                if (e >= pres_.p) return false;
            return true;
        }
        case Backend::Table:
            return a.size() == 1 && a[0] < tbl_n_;
    }
    throw McfError("unreachable");
}

const std::vector<Elt>& Group::elements(const Caps& caps) const {
    if (!elements_.empty()) return elements_;
    std::uint64_t n = order();
    if (n > caps.max_scan)
        throw CapError("scan-cap: group of order " + std::to_string(n) +
                       " exceeds max-scan " + std::to_string(caps.max_scan));
    std::vector<Elt> out;
    out.reserve(static_cast<std::size_t>(n));
    switch (backend_) {
        case Backend::Perm: {
            out.push_back(identity());
            // Product of transversal representatives, deepest level first.
            for (auto lvit = levels_.rbegin(); lvit != levels_.rend(); ++lvit) {
                std::vector<Elt> next;
                next.reserve(out.size() * lvit->orbit_size);
                for (int pt = 0; pt < degree_; ++pt) {
                    const Elt& t = lvit->transversal[static_cast<std::size_t>(pt)];
                    if (t.empty()) continue;
                    // Stabilizer elements compose on the left: g = h * t.
                    for (const Elt& tail : out) next.push_back(mul(tail, t));
                }
                out = std::move(next);
            }
            break;
        }
        case Backend::Pc: {
            for (std::uint32_t r = 0; r < n; ++r)
                out.push_back(pc_unrank(r, pres_.p, pres_.ngens));
            break;
        }
        case Backend::Table: {
            for (std::uint32_t i = 0; i < n; ++i)
                out.push_back(Elt{static_cast<std::uint16_t>(i)});
            break;
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.size() != n)
        throw VerifyError("element enumeration disagrees with group order");
    elements_ = std::move(out);
    return elements_;
}

// ---------------------------------------------------------------------------
// PC consistency

void Group::check_pc_consistency(const Caps& caps) {
    const PcPresentation& pr = pres_;
    auto letters_of = [&](const Elt& w) {
        std::vector<int> ls;
        for (std::size_t g = 0; g < w.size(); ++g)
            for (int k = 0; k < w[g]; ++k) ls.push_back(static_cast<int>(g));
        return ls;
    };
    auto power_word = [&](int i) {
        auto it = pr.powers.find(i);
        return it == pr.powers.end() ? std::vector<int>{} : letters_of(it->second);
    };
    auto comm_word = [&](int j, int i) {
        auto it = pr.comms.find({j, i});
        return it == pr.comms.end() ? std::vector<int>{}
                                    : letters_of(it->second);
    };
    auto cat = [](std::initializer_list<std::vector<int>> parts) {
        std::vector<int> w;
        for (const auto& p : parts) w.insert(w.end(), p.begin(), p.end());
        return w;
    };
    auto expect_equal = [&](const std::vector<int>& w1,
                            const std::vector<int>& w2, const char* what) {
        if (pc_collect(pr, w1) != pc_collect(pr, w2))
            throw VerifyError(std::string("inconsistent PC presentation (") +
                              what + " overlap)");
    };

    // Confluence of the two ways to resolve each critical pair. Passing all
    // overlaps is the standard certificate that the group has order p^n.
    for (int k = 0; k < pr.ngens; ++k)
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < j; ++i)
                expect_equal(cat({{k, i, j}, comm_word(j, i)}),
                             cat({{j, k}, comm_word(k, j), {i}}),
                             "associativity");
    for (int j = 0; j < pr.ngens; ++j)
        for (int i = 0; i < j; ++i) {
            std::vector<int> jp1(static_cast<std::size_t>(pr.p - 1), j);
            std::vector<int> ip1(static_cast<std::size_t>(pr.p - 1), i);
            expect_equal(cat({power_word(j), {i}}),
                         cat({jp1, {i, j}, comm_word(j, i)}), "power-left");
            expect_equal(cat({{j}, power_word(i)}),
                         cat({{i, j}, comm_word(j, i), ip1}), "power-right");
        }
    for (int i = 0; i < pr.ngens; ++i)
        expect_equal(cat({power_word(i), {i}}), cat({{i}, power_word(i)}),
                     "power-power");

    std::uint64_t n = pc_order();
    if (n > 1'000'000) {
        pc_warned_ = true;
        return;
    }

    // Cache the full multiplication table for small groups; that doubles as
    // an enumeration check (left translations must be bijections).
    if (n <= 3000) {
        pc_tbl_.assign(static_cast<std::size_t>(n * n), 0);
        for (std::uint32_t a = 0; a < n; ++a) {
            Elt ea = pc_unrank(a, pr.p, pr.ngens);
            for (std::uint32_t b = 0; b < n; ++b) {
                Elt eb = pc_unrank(b, pr.p, pr.ngens);
                std::vector<int> word;
                for (std::size_t g = 0; g < ea.size(); ++g)
                    for (int t = 0; t < ea[g]; ++t)
                        word.push_back(static_cast<int>(g));
                for (std::size_t g = 0; g < eb.size(); ++g)
                    for (int t = 0; t < eb[g]; ++t)
                        word.push_back(static_cast<int>(g));
                pc_tbl_[a * n + b] = pc_rank(pc_collect(pr, word), pr.p);
            }
        }
        for (std::uint32_t a = 0; a < n; ++a) {
            std::vector<bool> hit(static_cast<std::size_t>(n), false);
            for (std::uint32_t b = 0; b < n; ++b) {
                std::uint32_t c = pc_tbl_[a * n + b];
                if (hit[c])
                    throw VerifyError(
                        "inconsistent PC presentation (translation not "
                        "bijective)");
                hit[c] = true;
            }
        }
    }
    (void)caps;
}

} // namespace mcf
