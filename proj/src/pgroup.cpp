#include "mcf/pgroup.hpp"

#include <algorithm>

namespace mcf {

namespace {

// [K, S] = <[k, s] : k in K, s in S>, computed as the normal closure in S of
// the commutators of K's elements against S's generators. Splitting s into
// generator letters only costs conjugates of earlier commutators, which the
// normal closure supplies.
Subgroup bracket_with_group(const Subgroup& K, const Subgroup& S,
                            const Caps& caps) {
    const GroupPtr& G = S.parent();
    std::vector<Elt> gens;
    for (const Elt& k : K.elements())
        for (const Elt& s : S.gens()) {
            Elt c = G->comm(k, s);
            if (c != G->identity()) gens.push_back(c);
        }
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    Subgroup H(S.parent(), gens, caps);
    for (;;) {
        std::vector<Elt> extra;
        for (const Elt& h : H.elements())
            for (const Elt& s : S.gens()) {
                Elt c = G->conj(h, s);
                if (!H.contains(c)) extra.push_back(c);
            }
        if (extra.empty()) return H;
        std::vector<Elt> next = H.gens();
        next.insert(next.end(), extra.begin(), extra.end());
        H = Subgroup(S.parent(), next, caps);
    }
}

// [H, K] for H, K normal in S: normal closure of the generator-generator
// commutators.
Subgroup bracket_normal(const Subgroup& H, const Subgroup& K,
                        const Subgroup& S, const Caps& caps) {
    const GroupPtr& G = S.parent();
    std::vector<Elt> gens;
    for (const Elt& h : H.gens())
        for (const Elt& k : K.gens()) {
            Elt c = G->comm(h, k);
            if (c != G->identity()) gens.push_back(c);
        }
    Subgroup B(S.parent(), gens, caps);
    for (;;) {
        std::vector<Elt> extra;
        for (const Elt& b : B.elements())
            for (const Elt& s : S.gens()) {
                Elt c = G->conj(b, s);
                if (!B.contains(c)) extra.push_back(c);
            }
        if (extra.empty()) return B;
        std::vector<Elt> next = B.gens();
        next.insert(next.end(), extra.begin(), extra.end());
        B = Subgroup(S.parent(), next, caps);
    }
}

int log_p(std::uint64_t order, int p, const char* what) {
    int n = 0;
    std::uint64_t m = order;
    while (m % p == 0) {
        m /= p;
        ++n;
    }
    if (m != 1) throw InputError(std::string(what) + ": order " +
                                 std::to_string(order) +
                                 " is not a power of " + std::to_string(p));
    return n;
}

} // namespace

int p_group_prime(const Subgroup& P) {
    std::uint64_t m = P.order();
    if (m == 1) throw InputError("trivial group has no defining prime");
    int p = 2;
    while (m % p != 0) ++p;
    log_p(P.order(), p, "p_group_prime");
    return p;
}

std::vector<Subgroup> lower_central_series(const Subgroup& S,
                                           const Caps& caps) {
    std::vector<Subgroup> series;
    Subgroup cur = bracket_with_group(S, S, caps);   // gamma_2
    for (;;) {
        series.push_back(cur);
        if (cur.order() == 1) return series;
        cur = bracket_with_group(cur, S, caps);
        if (cur.same_as(series.back()))
            throw VerifyError("lower central series does not terminate "
                              "(group is not nilpotent)");
    }
}

std::vector<Subgroup> upper_central_series(const Subgroup& S,
                                           const Caps& caps) {
    (void)caps;
    const GroupPtr& G = S.parent();
    std::vector<Subgroup> series;
    Subgroup z = center_of(S);
    for (;;) {
        series.push_back(z);
        if (z.order() == S.order()) return series;
        // Preimage of Z(S/z): x with [x, s] in z for all generators s.
        std::vector<Elt> next;
        for (const Elt& x : S.elements()) {
            bool ok = true;
            for (const Elt& s : S.gens())
                if (!z.contains(G->comm(x, s))) {
                    ok = false;
                    break;
                }
            if (ok) next.push_back(x);
        }
        Subgroup z2 = Subgroup::from_elements(S.parent(), next, next);
        if (z2.order() == z.order()) return series;   // hypercenter reached
        z = z2;
    }
}

std::vector<Subgroup> two_step_centralizers(const Subgroup& S,
                                            const Caps& caps) {
    int p = p_group_prime(S);
    int n = log_p(S.order(), p, "two_step_centralizers");
    std::vector<Subgroup> gamma = lower_central_series(S, caps);
    if (n < 4 || static_cast<int>(gamma.size()) != n - 1)
        throw InputError("two_step_centralizers needs maximal class, n >= 4");
    const GroupPtr& G = S.parent();
    auto gamma_j = [&](int j) -> const Subgroup& {
        // gamma[0] = gamma_2; for j >= n the series has hit 1 already.
        return gamma[static_cast<std::size_t>(std::min(j, n) - 2)];
    };
    std::vector<Subgroup> out;
    for (int j = 2; j <= n - 2; ++j) {
        const Subgroup& top = gamma_j(j);
        const Subgroup& bot = gamma_j(j + 2);
        std::vector<Elt> members;
        for (const Elt& x : S.elements()) {
            bool ok = true;
            for (const Elt& g : top.gens())
                if (!bot.contains(G->comm(x, g))) {
                    ok = false;
                    break;
                }
            if (ok) members.push_back(x);
        }
        out.push_back(Subgroup::from_elements(S.parent(), members, members));
    }
    return out;
}

Subgroup omega1(const Subgroup& P, int p, const Caps& caps) {
    std::vector<Elt> gens;
    for (const Elt& x : P.elements())
        if (P.parent()->elt_order(x) == static_cast<std::uint64_t>(p))
            gens.push_back(x);
    return Subgroup(P.parent(), gens, caps);
}

Subgroup agemo1(const Subgroup& P, int p, const Caps& caps) {
    std::vector<Elt> gens;
    for (const Elt& x : P.elements()) {
        Elt xp = P.parent()->pow(x, p);
        if (xp != P.parent()->identity()) gens.push_back(xp);
    }
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    return Subgroup(P.parent(), gens, caps);
}

bool is_regular(const Subgroup& P, int p, const Caps& caps) {
    if (P.order() > static_cast<std::uint64_t>(caps.max_regular))
        throw CapError("is_regular: |P| = " + std::to_string(P.order()) +
                       " exceeds pair-enumeration cap " +
                       std::to_string(caps.max_regular));
    const GroupPtr& G = P.parent();
    const Elt id = G->identity();
    const auto& els = P.elements();
    for (const Elt& x : els) {
        Elt xp_inv = G->inv(G->pow(x, p));
        for (const Elt& y : els) {
            Elt lhs = G->mul(G->pow(G->mul(x, y), p),
                             G->mul(xp_inv, G->inv(G->pow(y, p))));
            if (lhs == id) continue;
            if (G->comm(x, y) == id) return false;   // abelian pair must close
            Subgroup T(P.parent(), {x, y}, caps);
            Subgroup D = derived_of(T);
            Subgroup DP = agemo1(D, p, caps);
            if (!DP.contains(lhs)) return false;
        }
    }
    return true;
}

Subgroup e2_subgroup(const Subgroup& P, const Caps& caps) {
    const GroupPtr& G = P.parent();
    const Elt id = G->identity();
    std::vector<Elt> members;
    for (const Elt& x : P.elements()) {
        bool ok = true;
        for (const Elt& y : P.elements())
            if (G->comm(G->comm(x, y), y) != id) {
                ok = false;
                break;
            }
        if (ok) members.push_back(x);
    }
    Subgroup closed(P.parent(), members, caps);
    if (closed.order() != members.size())
        throw VerifyError("2-Engel set failed to be a subgroup");
    std::vector<Subgroup> z = upper_central_series(P, caps);
    const Subgroup& z2 = z.size() >= 2 ? z[1] : z.back();
    if (!closed.contains_all(z2))
        throw VerifyError("2-Engel subgroup does not contain Z_2");
    return closed;
}

namespace {

int doc_from_series(const Subgroup& S, const Subgroup& gamma1,
                    const std::vector<Subgroup>& gamma, int n,
                    bool* capped, const Caps& caps) {
    auto gamma_i = [&](int i) -> const Subgroup& {
        if (i <= 1) return gamma1;
        return gamma[static_cast<std::size_t>(std::min(i, n) - 2)];
    };
    bool all_trivial = true;
    int c = n;
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            Subgroup b = bracket_normal(gamma_i(i), gamma_i(j), S, caps);
            if (b.order() == 1) continue;
            all_trivial = false;
            // Largest m with b <= gamma_m; every bracket lies in gamma_2.
            int m = 2;
            while (m + 1 <= n && gamma_i(m + 1).contains_all(b)) ++m;
            c = std::min(c, m - i - j);
        }
    if (capped) *capped = all_trivial;
    return c;
}

} // namespace

MaxClassProfile maxclass_profile(const Subgroup& S, const Caps& caps) {
    MaxClassProfile prof;
    prof.p = p_group_prime(S);
    prof.n = log_p(S.order(), prof.p, "maxclass_profile");
    prof.gamma_series = lower_central_series(S, caps);
    prof.group_class = static_cast<int>(prof.gamma_series.size());
    // gamma_series ends with the trivial group, so class = series length.
    if (prof.gamma_series.back().order() != 1)
        throw VerifyError("lower central series did not reach 1");
    prof.z_series = upper_central_series(S, caps);
    prof.is_maximal_class = prof.group_class == prof.n - 1 && prof.n >= 3;
    prof.agemo1 = agemo1(S, prof.p, caps);

    if (!prof.is_maximal_class || prof.n < 4) {
        if (prof.is_maximal_class && prof.n == 3) {
            // Extraspecial case: C_S(Z_2) = C_S(S) has no content; record
            // cz2 = S and leave gamma1 absent.
            prof.cz2 = Subgroup::whole(S.parent(), caps);
        }
        return prof;
    }

    const GroupPtr& G = S.parent();
    auto gamma_j = [&](int j) -> const Subgroup& {
        return prof.gamma_series[
            static_cast<std::size_t>(std::min(j, prof.n) - 2)];
    };
    // gamma_1 = C_S(gamma_2 / gamma_4).
    {
        const Subgroup& top = gamma_j(2);
        const Subgroup& bot = gamma_j(4);
        std::vector<Elt> members;
        for (const Elt& x : S.elements()) {
            bool ok = true;
            for (const Elt& g : top.gens())
                if (!bot.contains(G->comm(x, g))) {
                    ok = false;
                    break;
                }
            if (ok) members.push_back(x);
        }
        prof.gamma1 = Subgroup::from_elements(S.parent(), members, members);
    }
    const Subgroup& z2 =
        prof.z_series.size() >= 2 ? prof.z_series[1] : prof.z_series.back();
    prof.cz2 = centralizer_in(S, z2);
    prof.is_exceptional = !prof.gamma1.same_as(prof.cz2);
    prof.degree_of_commutativity = doc_from_series(
        S, prof.gamma1, prof.gamma_series, prof.n, &prof.doc_capped, caps);
    prof.omega1_gamma1 = omega1(prof.gamma1, prof.p, caps);
    return prof;
}

int degree_of_commutativity(const Subgroup& S, bool* capped,
                            const Caps& caps) {
    MaxClassProfile prof = maxclass_profile(S, caps);
    if (!prof.is_maximal_class || prof.n < 4)
        throw InputError("degree_of_commutativity needs maximal class, "
                         "n >= 4");
    if (capped) *capped = prof.doc_capped;
    return prof.degree_of_commutativity;
}

} // namespace mcf
