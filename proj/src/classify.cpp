#include "mcf/classify.hpp"

#include "mcf/gfp.hpp"
#include "mcf/subgroups.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace mcf {

namespace {

bool is_prime_small(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

bool delta_less(const DeltaElement& a, const DeltaElement& b) {
    return a.r != b.r ? a.r < b.r : a.s < b.s;
}

std::vector<DeltaElement> delta_cyclic(int p, int k, int l, int step) {
    int m = p - 1;
    int g = primitive_root(p);
    int kk = ((k % m) + m) % m;
    int ll = ((l % m) + m) % m;
    std::vector<DeltaElement> out;
    for (int t = 0; t < m; t += step)
        out.push_back({pow_mod(g, t * ll % m, p), pow_mod(g, t * kk % m, p)});
    std::sort(out.begin(), out.end(), delta_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

DeltaSubgroup delta_subgroup(int p, int k, int l) {
    if (!is_prime_small(p) || p < 3) throw InputError("delta_subgroup: p must be an odd prime");
    if (l < 1) throw InputError("delta_subgroup: l must be positive");
    if (std::gcd(std::abs(k), l) != 1)
        throw InputError("delta_subgroup: k and l must be coprime");
    DeltaSubgroup d;
    d.p = p;
    d.k = k;
    d.l = l;
    d.elements = delta_cyclic(p, k, l, 1);
    if (d.elements.size() != static_cast<std::size_t>(p - 1))
        throw VerifyError("delta_subgroup: order is not p-1");
    return d;
}

DeltaSubgroup delta_fraction(const DeltaSubgroup& d, int n) {
    if (n < 1) throw InputError("delta_fraction: index must be positive");
    if (d.elements.empty() || d.elements.size() % n != 0)
        throw InputError("delta_fraction: index does not divide the order");
    DeltaSubgroup out;
    out.p = d.p;
    out.k = d.k;
    out.l = d.l;
    out.elements = delta_cyclic(d.p, d.k, d.l, n);
    if (out.elements.size() * n != d.elements.size())
        throw VerifyError("delta_fraction: wrong subgroup order");
    return out;
}

bool delta_contains(const std::vector<DeltaElement>& set, const DeltaElement& e) {
    return std::binary_search(set.begin(), set.end(), e, delta_less);
}

bool delta_contains_all(const std::vector<DeltaElement>& big,
                        const std::vector<DeltaElement>& small) {
    for (const DeltaElement& e : small)
        if (!delta_contains(big, e)) return false;
    return true;
}

// ---- mu1 ------------------------------------------------------------------

namespace {

Subgroup gamma1_of(const FusionSystem& F, const Caps& caps) {
    MaxClassProfile prof = maxclass_profile(F.sylow(), caps);
    if (!prof.is_maximal_class || prof.n < 4)
        throw InputError("mu1: S must have maximal class and order >= p^4");
    return prof.gamma1;
}

} // namespace

DeltaElement mu1(const FusionSystem& F, const GroupMap& alpha, const Caps& caps) {
    if (!F.realizable_kind())
        throw InputError("mu1: realizable systems only");
    Subgroup g1 = gamma1_of(F, caps);
    if (!alpha.domain().same_as(g1) || !alpha.codomain().same_as(g1))
        throw InputError("mu1: expected an automorphism of gamma_1(S)");
    const Subgroup& S = F.sylow();
    MapGroup autS = F.aut_F(S);
    std::optional<DeltaElement> value;
    for (const GroupMap& beta : autS.maps) {
        if (!beta.fixes_setwise(g1)) continue;
        if (!beta.restricted_to(g1).same_map(alpha)) continue;
        DeltaElement d = mu(S, beta, caps);
        if (!value) {
            value = d;
        } else if (!(*value == d)) {
            throw VerifyError("mu1: two extensions disagree");
        }
    }
    if (!value)
        throw InputError("mu1: alpha has no extension in Aut_F(S)");
    return *value;
}

std::vector<DeltaElement> mu1_image(const FusionSystem& F, const Caps& caps) {
    if (!F.realizable_kind())
        throw InputError("mu1_image: realizable systems only");
    Subgroup g1 = gamma1_of(F, caps);
    const Subgroup& S = F.sylow();
    MapGroup A = F.aut_F(g1);

    std::set<std::string> aut_s_keys;
    std::vector<GroupMap> aut_s_gens;
    for (const Elt& g : S.gens()) {
        GroupMap c = GroupMap::conjugation(g1, g1, g);
        if (aut_s_keys.insert(c.key()).second) aut_s_gens.push_back(c);
    }
    for (const Elt& g : S.elements())
        aut_s_keys.insert(GroupMap::conjugation(g1, g1, g).key());

    std::vector<DeltaElement> image;
    for (const GroupMap& alpha : A.maps) {
        GroupMap ainv = alpha.inverse();
        bool normalizes = true;
        for (const GroupMap& c : aut_s_gens) {
            if (!aut_s_keys.count(ainv.then(c).then(alpha).key())) {
                normalizes = false;
                break;
            }
        }
        if (!normalizes) continue;
        image.push_back(mu1(F, alpha, caps));
    }
    std::sort(image.begin(), image.end(), delta_less);
    image.erase(std::unique(image.begin(), image.end()), image.end());
    return image;
}

// ---- Table lookups --------------------------------------------------------

namespace {

const Json& table_json(const char* file) {
    static std::map<std::string, Json> cache;
    auto it = cache.find(file);
    if (it == cache.end())
        it = cache.emplace(file, load_json_file(data_dir() + "/" + file)).first;
    return it->second;
}

bool prime_cell_admits(const std::string& cell, int p) {
    return cell == "p" || cell == std::to_string(p);
}

bool cell_matches(const std::string& cell, const std::string& query) {
    return cell == query || cell.find(query) != std::string::npos;
}

} // namespace

const std::vector<Table1Row>& table1_rows() {
    static const std::vector<Table1Row> rows = [] {
        std::vector<Table1Row> out;
        for (const Json& r : table_json("table1.json").at("rows"))
            out.push_back({r.at("row").get<int>(), r.at("p").get<std::string>(),
                           r.at("Y").get<std::string>(),
                           r.at("module").get<std::string>(),
                           r.at("mu").get<std::string>(),
                           r.at("pearls").get<std::string>()});
        return out;
    }();
    return rows;
}

const std::vector<Table21Row>& table21_rows() {
    static const std::vector<Table21Row> rows = [] {
        std::vector<Table21Row> out;
        for (const Json& r : table_json("table21.json").at("rows"))
            out.push_back({r.at("id").get<std::string>(),
                           r.at("image").get<std::string>(),
                           r.at("X").get<std::string>(),
                           r.at("m").get<std::string>(),
                           r.at("pearls").get<std::string>()});
        return out;
    }();
    return rows;
}

const std::vector<Table3Row>& table3_rows() {
    static const std::vector<Table3Row> rows = [] {
        std::vector<Table3Row> out;
        for (const Json& r : table_json("table3.json").at("rows"))
            out.push_back({r.at("line").get<std::string>(),
                           r.at("G").get<std::string>(),
                           r.at("p").get<std::string>(),
                           r.at("conditions").get<std::string>(),
                           r.at("rank").get<std::string>(),
                           r.at("e").get<std::string>(),
                           r.at("order").get<std::string>(),
                           r.at("aut").get<std::string>(),
                           r.at("pearls").get<std::string>()});
        return out;
    }();
    return rows;
}

std::optional<Table1Row> table1_lookup(int p, const std::string& y,
                                       const std::string& module,
                                       const std::string& mu) {
    for (const Table1Row& r : table1_rows()) {
        if (!prime_cell_admits(r.p, p)) continue;
        if (!cell_matches(r.y, y)) continue;
        if (!cell_matches(r.module, module)) continue;
        if (!cell_matches(r.mu, mu)) continue;
        return r;
    }
    return std::nullopt;
}

std::vector<Table21Row> table21_constellation(
    const std::vector<DeltaElement>& image, int m, int p,
    std::string* explanation) {
    if (!is_prime_small(p) || p < 3)
        throw InputError("table21_constellation: p must be an odd prime");
    std::vector<DeltaElement> sorted = image;
    std::sort(sorted.begin(), sorted.end(), delta_less);
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    std::size_t full = static_cast<std::size_t>(p - 1) * (p - 1);
    bool is_full = sorted.size() == full;
    bool has_dm1 = delta_contains_all(sorted, delta_subgroup(p, -1).elements);
    bool has_d0 = delta_contains_all(sorted, delta_subgroup(p, 0).elements);

    auto m_matches = [&](const std::string& cell) {
        if (cell == "-") return true;
        if (m < 0) return false;
        int res = m % (p - 1);
        if (cell == "0 mod p-1") return res == 0;
        if (cell == "p-2 mod p-1") return res == (p - 2) % (p - 1);
        throw VerifyError("table21_constellation: unknown m cell " + cell);
    };

    std::vector<Table21Row> out;
    for (const Table21Row& r : table21_rows()) {
        bool image_ok = false;
        if (r.image == "Delta") image_ok = is_full;
        else if (r.image == ">=Delta_-1") image_ok = !is_full && has_dm1;
        else if (r.image == ">=Delta_0") image_ok = !is_full && has_d0;
        else throw VerifyError("table21_constellation: unknown image cell " + r.image);
        if (image_ok && m_matches(r.m)) out.push_back(r);
    }
    if (out.empty() && explanation) {
        if (!is_full && !has_dm1 && !has_d0)
            *explanation = "image contains neither Delta_-1 nor Delta_0";
        else if (m < 0)
            *explanation = "every matching row needs the exponent of gamma_1(S)";
        else
            *explanation = "no row matches the exponent residue " +
                           std::to_string(m % (p - 1)) + " mod " +
                           std::to_string(p - 1);
    }
    return out;
}

std::optional<Table3Row> table3_lookup(const std::string& family, int p) {
    for (const Table3Row& r : table3_rows()) {
        if (!prime_cell_admits(r.p, p)) continue;
        if (!cell_matches(r.g, family)) continue;
        return r;
    }
    return std::nullopt;
}

// ---- Theorem-case dispatch ------------------------------------------------

const char* check_status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        default: return "unverifiable";
    }
}

namespace {

CheckResult check_of(const std::string& assertion, bool ok,
                     const std::string& detail = "") {
    return {assertion, ok ? CheckStatus::Pass : CheckStatus::Fail, detail};
}

CheckResult unverifiable(const std::string& assertion, const std::string& why) {
    return {assertion, CheckStatus::Unverifiable, why};
}

CheckResult check_or_skip(const std::string& assertion, std::uint64_t value,
                          bool ok_when_known, const std::string& detail) {
    if (value == 0)
        return unverifiable(assertion, "value not supplied in the summary");
    return check_of(assertion, ok_when_known, detail);
}

std::uint64_t factorial64(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

// index p in the focal quotient is allowed exactly when n-offset is a
// positive multiple of p-1.
CheckResult hyp_index_check(const FSummary& s, int offset, std::uint64_t op_order) {
    std::string assertion = "[S : hyp(F)] is 1 or p, p exactly at the critical orders";
    if (s.index_s_hyp == 0)
        return unverifiable(assertion, "index not supplied in the summary");
    std::uint64_t p = static_cast<std::uint64_t>(s.p);
    bool critical = s.n > offset && (s.n - offset) % (s.p - 1) == 0;
    (void)op_order;
    bool ok = critical ? (s.index_s_hyp == p || s.index_s_hyp == 1)
                       : s.index_s_hyp == 1;
    if (critical && s.index_s_hyp == p)
        return check_of(assertion, true, "index p at n = j(p-1)+" + std::to_string(offset));
    std::ostringstream d;
    d << "index " << s.index_s_hyp << " at n = " << s.n;
    return check_of(assertion, ok, d.str());
}

bool all_tags(const std::vector<EssentialTag>& tags, EssentialTag want) {
    if (tags.empty()) return false;
    return std::all_of(tags.begin(), tags.end(),
                       [&](EssentialTag t) { return t == want; });
}

} // namespace

TheoremCaseReport theorem_case(const FSummary& s) {
    if (!is_prime_small(s.p) || s.p < 3)
        throw InputError("theorem_case: p must be an odd prime");
    if (s.n < 4)
        throw InputError("theorem_case: |S| must be at least p^4");
    for (EssentialTag t : s.essentials) {
        if (t == EssentialTag::Other)
            throw InputError("theorem_case: unclassified essential subgroup");
        if (t == EssentialTag::QuaternionPearl)
            throw InputError("theorem_case: quaternion pearls occur only at p = 2");
    }
    std::size_t n_ab = std::count(s.essentials.begin(), s.essentials.end(),
                                  EssentialTag::AbelianPearl);
    std::size_t n_ex = std::count(s.essentials.begin(), s.essentials.end(),
                                  EssentialTag::ExtraspecialPearl);
    std::size_t n_g1 = std::count(s.essentials.begin(), s.essentials.end(),
                                  EssentialTag::Gamma1);
    std::size_t n_cz2 = std::count(s.essentials.begin(), s.essentials.end(),
                                   EssentialTag::CZ2);
    if (n_g1 > 1 || n_cz2 > 1)
        throw InputError("theorem_case: gamma_1 and C_S(Z_2(S)) are single classes");

    TheoremCaseReport rep;

    if (s.essentials.empty()) {
        rep.theorem = '-';
        rep.case_path = "no essential classes: F = N_F(S), outside the classification";
        rep.checks.push_back(check_of("F has no essential subgroup", true));
        return rep;
    }

    if (s.exceptional) {
        if (s.p < 5)
            throw InputError("theorem_case: exceptional groups need p >= 5");
        if (s.n < 6 || s.n > s.p + 1)
            throw InputError("theorem_case: exceptional groups have 6 <= n <= p+1");
        rep.theorem = 'B';
        if (s.p == 5 && s.n == 6 && s.op == OpShape::CZ2) {
            rep.case_path = "(ii): p = 5, |S| = 5^6, O_5(F) = C_S(Z_2(S))";
            rep.checks.push_back(check_of(
                "C_S(Z_2(S)) is the unique essential class",
                n_cz2 == 1 && s.essentials.size() == 1));
            if (s.out_s_cyclic < 0 || s.out_s_order == 0)
                rep.checks.push_back(unverifiable("Out_F(S) is cyclic of order 4",
                                                  "Out_F(S) data not supplied"));
            else
                rep.checks.push_back(check_of("Out_F(S) is cyclic of order 4",
                                              s.out_s_cyclic == 1 && s.out_s_order == 4));
            rep.checks.push_back(check_or_skip(
                "Out_F(C_S(Z_2(S))) is SL_2(5)", s.out_cz2_order,
                s.out_cz2_order == 120, "order check only"));
            rep.checks.push_back(unverifiable(
                "S is the designated order-5^6 group and F is the unique such system",
                "needs a small-group library identification"));
            return rep;
        }
        if (s.gamma1 == Gamma1Shape::Extraspecial) {
            rep.case_path = "(i)(a): gamma_1(S) extraspecial";
            rep.checks.push_back(check_of("gamma_1(S) is extraspecial", true));
            std::uint64_t sl2 = static_cast<std::uint64_t>(s.p) *
                                (static_cast<std::uint64_t>(s.p) * s.p - 1);
            rep.checks.push_back(check_or_skip(
                "Out_F(C_S(Z_2(S))) has an SL_2(p) composition factor",
                s.out_cz2_order, s.out_cz2_order % sl2 == 0,
                "divisibility check only"));
            rep.checks.push_back(unverifiable(
                "subcase (alpha)-(epsilon): G_2(p), sporadic ambient, or exotic",
                "needs an ambient-group identification"));
            return rep;
        }
        if (s.p >= 11) {
            rep.case_path = "(i)(b): p >= 11, the order p^(p-1) exceptional group";
            rep.checks.push_back(check_of("|S| = p^(p-1)", s.n == s.p - 1,
                                          "n = " + std::to_string(s.n)));
            rep.checks.push_back(unverifiable("F is exotic",
                                              "exoticity is not machine-checkable here"));
            return rep;
        }
        throw InputError("theorem_case: exceptional summary matches no case");
    }

    if (s.gamma1 == Gamma1Shape::Abelian) {
        rep.theorem = 'A';
        rep.case_path = "gamma_1(S) abelian: tabulated families";
        rep.checks.push_back(check_of(
            "every essential class is a pearl or gamma_1(S)",
            n_ab + n_ex + n_g1 == s.essentials.size()));
        rep.checks.push_back(unverifiable(
            "row identification in the realizable table",
            "needs the Out_F(gamma_1) module data beyond this summary"));
        return rep;
    }

    // gamma_1 non-abelian, non-exceptional: Theorem C territory.
    rep.theorem = 'C';
    if (n_cz2 != 0)
        throw InputError(
            "theorem_case: C_S(Z_2(S)) essential needs the exceptional case");
    if (n_ab != 0 && n_ex != 0)
        throw InputError(
            "theorem_case: abelian and extraspecial pearls cannot coexist here");

    if (n_g1 == 0 && all_tags(s.essentials, EssentialTag::AbelianPearl)) {
        rep.case_path = "(i): abelian pearls only";
        if (s.op == OpShape::Unknown)
            rep.checks.push_back(unverifiable("O_p(F) = 1", "O_p not supplied"));
        else
            rep.checks.push_back(check_of("O_p(F) = 1", s.op == OpShape::Trivial));
        rep.checks.push_back(hyp_index_check(s, 1, 0));
        rep.checks.push_back(unverifiable("O^p(F) is simple and exotic",
                                          "exoticity is not machine-checkable here"));
        return rep;
    }
    if (n_g1 == 0 && all_tags(s.essentials, EssentialTag::ExtraspecialPearl)) {
        if (s.p < 5)
            throw InputError("theorem_case: extraspecial pearls need p >= 5");
        rep.case_path = "(ii): extraspecial pearls only";
        if (s.op == OpShape::Unknown)
            rep.checks.push_back(unverifiable("O_p(F) = Z(S)", "O_p not supplied"));
        else
            rep.checks.push_back(check_of("O_p(F) = Z(S)", s.op == OpShape::Center));
        rep.checks.push_back(hyp_index_check(s, 2, 0));
        rep.checks.push_back(unverifiable("O^p(F/Z(S)) is simple and exotic",
                                          "exoticity is not machine-checkable here"));
        return rep;
    }
    if (n_g1 == 1 && n_ex == 0 && n_ab >= 1) {
        if (s.p < 5)
            throw InputError("theorem_case: case (iii) needs p >= 5");
        rep.case_path = "(iii): abelian pearls together with gamma_1(S)";
        if (s.op == OpShape::Unknown)
            rep.checks.push_back(unverifiable("O_p(F) = 1", "O_p not supplied"));
        else
            rep.checks.push_back(check_of("O_p(F) = 1", s.op == OpShape::Trivial));
        rep.checks.push_back(check_or_skip(
            "[S : hyp(F)] = p (F is not perfect, hyp = P gamma_2)", s.index_s_hyp,
            s.index_s_hyp == static_cast<std::uint64_t>(s.p), ""));
        if (n_ab == 1) {
            bool j_ok = (s.n - 1) % (s.p - 1) == 0 && (s.n - 1) / (s.p - 1) >= 2;
            rep.checks.push_back(check_of(
                "single pearl class forces n = j(p-1)+1 with j >= 2", j_ok,
                "n = " + std::to_string(s.n)));
        }
        std::uint64_t symp = factorial64(s.p);
        std::uint64_t pgl2 = static_cast<std::uint64_t>(s.p) *
                             (static_cast<std::uint64_t>(s.p) * s.p - 1);
        rep.checks.push_back(check_or_skip(
            "Out_F(gamma_1) is Sym(p) or PGL_2(p)", s.out_gamma1_order,
            s.out_gamma1_order == symp || s.out_gamma1_order == pgl2,
            "order check only"));
        rep.checks.push_back(unverifiable(
            "module structure of gamma_1/Z(gamma_1) over Out_F(gamma_1)",
            "needs the representation data beyond this summary"));
        return rep;
    }
    throw InputError("theorem_case: essential pattern matches no case");
}

namespace {

bool is_extraspecial_general(const Subgroup& P, int p) {
    Subgroup z = center_of(P);
    if (z.order() != static_cast<std::uint64_t>(p)) return false;
    Subgroup d = derived_of(P);
    if (!d.same_as(z)) return false;
    Subgroup f = frattini_of(P, p);
    if (!f.same_as(z)) return false;
    Quotient q = quotient(P, z);
    return is_elementary_abelian(Subgroup::whole(q.group), p);
}

std::uint64_t out_order_of(const MapGroup& a, const Subgroup& P) {
    std::uint64_t inn = P.order() / center_of(P).order();
    if (a.order() % inn != 0)
        throw VerifyError("out_order_of: Inn does not divide Aut_F");
    return a.order() / inn;
}

} // namespace

FSummary summarize_fusion(const FusionSystem& F, const Caps& caps) {
    const Subgroup& S = F.sylow();
    MaxClassProfile prof = maxclass_profile(S, caps);
    if (!prof.is_maximal_class || prof.n < 4)
        throw InputError("summarize_fusion: S must have maximal class, order >= p^4");

    FSummary s;
    s.p = prof.p;
    s.n = prof.n;
    s.exceptional = prof.is_exceptional;

    if (prof.gamma1.is_abelian()) s.gamma1 = Gamma1Shape::Abelian;
    else if (is_extraspecial_general(prof.gamma1, prof.p)) s.gamma1 = Gamma1Shape::Extraspecial;
    else s.gamma1 = Gamma1Shape::Other;

    for (const EssentialReport& e : F.essential_subgroups(EssentialMode::TheoremD))
        s.essentials.push_back(e.tag);

    FocalData fd = F.focal_data();
    s.index_s_hyp = fd.index_s_hyp;
    if (fd.op_f.order() == 1) s.op = OpShape::Trivial;
    else if (fd.op_f.same_as(prof.z_series.at(0))) s.op = OpShape::Center;
    else if (fd.op_f.same_as(prof.cz2)) s.op = OpShape::CZ2;
    else s.op = OpShape::Other;

    MapGroup autS = F.aut_F(S);
    s.out_s_order = out_order_of(autS, S);
    {
        std::vector<Elt> inn_gens;
        for (const Elt& g : S.gens()) {
            int idx = autS.index_of_key(GroupMap::conjugation(S, S, g).key());
            if (idx < 0) throw VerifyError("summarize_fusion: inner map missing");
            inn_gens.push_back(Elt{static_cast<std::uint16_t>(idx)});
        }
        Subgroup inn(autS.table, inn_gens, caps);
        Quotient q = quotient(Subgroup::whole(autS.table, caps), inn);
        bool cyclic = false;
        for (const Elt& e : q.group->elements(caps))
            if (q.group->elt_order(e) == q.group->order()) { cyclic = true; break; }
        s.out_s_cyclic = cyclic ? 1 : 0;
    }
    s.out_gamma1_order = out_order_of(F.aut_F(prof.gamma1), prof.gamma1);
    s.out_cz2_order = out_order_of(F.aut_F(prof.cz2), prof.cz2);
    return s;
}

// ---- Monomial / semilinear example family ---------------------------------

namespace {

// Modular polynomial arithmetic over GF(r), vectors low-to-high, reduced mod
// a monic modulus of degree deg.
struct PolyField {
    int r = 0;
    std::vector<int> mod;  // monic, length deg+1

    int deg() const { return static_cast<int>(mod.size()) - 1; }

    std::vector<int> reduce(std::vector<int> a) const {
        int d = deg();
        for (int i = static_cast<int>(a.size()) - 1; i >= d; --i) {
            int c = a[i] % r;
            if (c == 0) continue;
            for (int j = 0; j <= d; ++j)
                a[i - d + j] = ((a[i - d + j] - c * mod[j]) % r + r) % r;
        }
        a.resize(d);
        for (int& x : a) x = ((x % r) + r) % r;
        return a;
    }

    std::vector<int> mul(const std::vector<int>& a, const std::vector<int>& b) const {
        std::vector<int> out(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j)
                out[i + j] = (out[i + j] + a[i] * b[j]) % r;
        }
        return reduce(out);
    }

    std::vector<int> pow(std::vector<int> base, std::uint64_t e) const {
        std::vector<int> acc(deg(), 0);
        acc[0] = 1;
        base = reduce(base);
        while (e) {
            if (e & 1) acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1;
        }
        return acc;
    }

    bool is_one(const std::vector<int>& a) const {
        if (a.empty() || a[0] != 1) return false;
        for (std::size_t i = 1; i < a.size(); ++i)
            if (a[i] != 0) return false;
        return true;
    }
};

std::vector<int> x_poly(int deg_total) {
    std::vector<int> x(deg_total, 0);
    if (deg_total > 1) x[1] = 1;
    return x;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull})
        if (n % d == 0) return n == d;
    auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) {
        return static_cast<std::uint64_t>(
            static_cast<unsigned __int128>(a) * b % m);
    };
    auto powm = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) {
        std::uint64_t acc = 1;
        a %= m;
        while (e) {
            if (e & 1) acc = mulmod(acc, a, m);
            a = mulmod(a, a, m);
            e >>= 1;
        }
        return acc;
    };
    std::uint64_t d = n - 1;
    int s = 0;
    while (d % 2 == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                            23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t v = powm(a, d, n);
        if (v == 1 || v == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            v = mulmod(v, v, n);
            if (v == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n && d < (1u << 20); ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) {
        if (!is_prime_u64(n))
            throw CapError("construct_example_family: cannot factor the unit order");
        out.push_back(n);
    }
    return out;
}

// Lexicographically first monic irreducible degree-n polynomial over GF(r)
// with x a primitive root; prime degree lets the cheap irreducibility test
// work (squarefree with factor degrees dividing n, but not all linear).
std::vector<int> find_primitive_poly(int r, int n, std::uint64_t q) {
    std::vector<std::uint64_t> fac = prime_factors_u64(q - 1);
    std::vector<int> c(n, 0);
    while (true) {
        // next candidate constant-first; skip c0 = 0 (x would divide)
        int i = 0;
        for (; i < n; ++i) {
            if (++c[i] < r) break;
            c[i] = 0;
        }
        if (i == n) throw VerifyError("find_primitive_poly: search exhausted");
        if (c[0] == 0) continue;
        PolyField f;
        f.r = r;
        f.mod = c;
        f.mod.push_back(1);
        std::vector<int> x = x_poly(n);
        if (!f.is_one(f.pow(x, q - 1))) continue;
        // irreducibility: x^(r^n) = x and x^r != x
        std::vector<int> frob = f.pow(x, static_cast<std::uint64_t>(r));
        if (frob == x) continue;
        std::vector<int> y = frob;
        for (int k = 1; k < n; ++k) y = f.pow(y, static_cast<std::uint64_t>(r));
        if (y != x) continue;
        // primitivity of x
        bool primitive = true;
        for (std::uint64_t e : fac) {
            if (f.is_one(f.pow(x, (q - 1) / e))) { primitive = false; break; }
        }
        if (!primitive) continue;
        return f.mod;
    }
}

// A coset of the scalar matrices in the p-part of the semilinear monomial
// group: a rotation, a diagonal exponent vector over Z/t, and a Frobenius
// power. Normalized so the first exponent is zero.
struct SemiElt {
    int rot = 0;
    std::vector<std::uint32_t> e;
    int fr = 0;
};

struct SemiCtx {
    int p = 0;
    std::uint64_t t = 0;           // order of the cyclic entry group
    std::vector<std::uint64_t> fpow;  // frobenius multiplier powers mod t

    void normalize(SemiElt& x) const {
        std::uint32_t base = x.e[0];
        if (base == 0) return;
        for (std::uint32_t& v : x.e)
            v = static_cast<std::uint32_t>((v + t - base) % t);
    }

    SemiElt mul(const SemiElt& a, const SemiElt& b) const {
        SemiElt out;
        out.rot = (a.rot + b.rot) % p;
        out.fr = (a.fr + b.fr) % p;
        out.e.resize(p);
        std::uint64_t f = fpow[a.fr];
        for (int i = 0; i < p; ++i)
            out.e[i] = static_cast<std::uint32_t>(
                (a.e[i] + f * b.e[(i + a.rot) % p]) % t);
        normalize(out);
        return out;
    }

    SemiElt id() const { return {0, std::vector<std::uint32_t>(p, 0), 0}; }

    std::string key(const SemiElt& x) const {
        std::string k;
        k.reserve(2 + 4 * x.e.size());
        k.push_back(static_cast<char>(x.rot));
        k.push_back(static_cast<char>(x.fr));
        for (std::uint32_t v : x.e)
            for (int b = 0; b < 4; ++b)
                k.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
        return k;
    }
};

// Refine the upper central series of a table-backend p-group into a chain
// with order-p central steps and read off a PC presentation along it.
GroupPtr table_to_pc(const GroupPtr& tg, int p, const Caps& caps) {
    Subgroup whole = Subgroup::whole(tg, caps);
    std::vector<Subgroup> ucs = upper_central_series(whole, caps);

    std::vector<Elt> added;
    Subgroup cur(tg, {}, caps);
    std::vector<Subgroup> chain{cur};
    for (const Subgroup& z : ucs) {
        while (cur.order() < z.order()) {
            bool found = false;
            for (const Elt& x : z.elements()) {
                if (cur.contains(x)) continue;
                if (!cur.contains(tg->pow(x, p))) continue;
                std::vector<Elt> gens = cur.gens();
                gens.push_back(x);
                cur = Subgroup(tg, gens, caps);
                chain.push_back(cur);
                added.push_back(x);
                found = true;
                break;
            }
            if (!found)
                throw VerifyError("table_to_pc: no central order-p extension found");
        }
    }
    int m = static_cast<int>(added.size());
    std::vector<Elt> pcgen(m);
    std::vector<Subgroup> tail(m + 1);
    for (int i = 0; i < m; ++i) {
        pcgen[i] = added[m - 1 - i];
        tail[i] = chain[m - i];
    }
    tail[m] = chain[0];

    auto express = [&](const Elt& h, int from) {
        Elt word(m, 0);
        Elt rem = h;
        for (int k = from; k < m; ++k) {
            bool done = false;
            Elt cand = rem;
            for (int a = 0; a < p; ++a) {
                if (tail[k + 1].contains(cand)) {
                    word[k] = static_cast<std::uint16_t>(a);
                    rem = cand;
                    done = true;
                    break;
                }
                cand = tg->mul(tg->inv(pcgen[k]), cand);
            }
            if (!done) throw VerifyError("table_to_pc: element escapes the chain");
        }
        if (rem != tg->identity())
            throw VerifyError("table_to_pc: nontrivial residue after collection");
        return word;
    };

    PcPresentation pres;
    pres.p = p;
    pres.ngens = m;
    for (int i = 0; i < m; ++i) {
        Elt w = express(tg->pow(pcgen[i], p), i + 1);
        if (std::any_of(w.begin(), w.end(), [](std::uint16_t v) { return v != 0; }))
            pres.powers[i] = w;
    }
    for (int j = 1; j < m; ++j)
        for (int i = 0; i < j; ++i) {
            Elt w = express(tg->comm(pcgen[j], pcgen[i]), j + 1);
            if (std::any_of(w.begin(), w.end(), [](std::uint16_t v) { return v != 0; }))
                pres.comms[{j, i}] = w;
        }
    GroupPtr pc = Group::make_pc(pres, caps);
    if (pc->order() != tg->order())
        throw VerifyError("table_to_pc: order mismatch after conversion");

    // The chain expressions define a bijection; spot-check that it is a
    // homomorphism against the original table.
    const std::vector<Elt>& elems = tg->elements(caps);
    std::vector<Elt> image(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) image[i] = express(elems[i], 0);
    auto index_of = [&](const Elt& x) {
        return std::lower_bound(elems.begin(), elems.end(), x) - elems.begin();
    };
    std::size_t n = elems.size();
    if (n <= 1024) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (pc->mul(image[i], image[j]) !=
                    image[index_of(tg->mul(elems[i], elems[j]))])
                    throw VerifyError("table_to_pc: multiplication mismatch");
    } else {
        std::mt19937_64 rng(0x6d6f6e6f6d69616cULL);
        for (int trial = 0; trial < 5000; ++trial) {
            std::size_t i = rng() % n, j = rng() % n;
            if (pc->mul(image[i], image[j]) !=
                image[index_of(tg->mul(elems[i], elems[j]))])
                throw VerifyError("table_to_pc: multiplication mismatch");
        }
    }
    return pc;
}

} // namespace

std::pair<GroupPtr, FamilyCertificate> construct_example_family(
    int p, int r, int a, const Caps& caps) {
    if (!is_prime_small(p) || p < 3)
        throw InputError("construct_example_family: p must be an odd prime");
    if (!is_prime_small(r))
        throw InputError("construct_example_family: r must be prime");
    if (r == p)
        throw InputError("construct_example_family: r must differ from p");
    if (a < 1) throw InputError("construct_example_family: a must be positive");

    unsigned __int128 q0_wide = 1;
    for (int i = 0; i < a; ++i) {
        q0_wide *= r;
        if (q0_wide > (static_cast<unsigned __int128>(1) << 31))
            throw CapError("construct_example_family: r^a too large");
    }
    std::uint64_t q0 = static_cast<std::uint64_t>(q0_wide);
    if ((q0 - 1) % p != 0)
        throw InputError("construct_example_family: p must divide r^a - 1");

    FamilyCertificate cert;
    cert.p = p;
    cert.r = r;
    cert.a = a;
    cert.experimental = (a != 1);
    {
        std::uint64_t m = q0 - 1;
        while (m % p == 0) { m /= p; ++cert.k; }
    }

    unsigned __int128 big_q = 1;
    for (int i = 0; i < p; ++i) {
        big_q *= q0;
        if (big_q > (static_cast<unsigned __int128>(1) << 62))
            throw CapError("construct_example_family: (r^a)^p too large");
    }
    std::uint64_t q = static_cast<std::uint64_t>(big_q);

    std::uint64_t t = 1;
    {
        std::uint64_t m = q - 1;
        while (m % p == 0) { m /= p; t *= p; }
    }
    std::uint64_t expect_t = 1;
    for (int i = 0; i <= cert.k; ++i) expect_t *= p;
    if (t != expect_t)
        throw VerifyError("construct_example_family: p-part of q-1 is not p^(k+1)");
    cert.t_order = t;

    std::uint64_t fmul = q0 % t;
    if (fmul == 1 && t > static_cast<std::uint64_t>(p))
        throw VerifyError("construct_example_family: Frobenius acts trivially on the entry group");
    {
        std::uint64_t acc = 1;
        for (int i = 0; i < p; ++i) acc = acc * fmul % t;
        if (acc != 1)
            throw VerifyError("construct_example_family: Frobenius multiplier has wrong order");
    }

    if (a == 1) {
        // Certify that the entry group really lives in GF(r^p): build the
        // field and an element of the exact order t.
        std::vector<int> mod = find_primitive_poly(r, p, q);
        PolyField f;
        f.r = r;
        f.mod = mod;
        std::vector<int> x = x_poly(p);
        std::vector<int> d = f.pow(x, (q - 1) / t);
        if (!f.is_one(f.pow(d, t)) || f.is_one(f.pow(d, t / p)))
            throw VerifyError("construct_example_family: entry generator order is wrong");
        // Frobenius is entrywise r-th power, so on <d> it multiplies
        // exponents by r; confirm against the multiplier used below.
        if (f.pow(d, static_cast<std::uint64_t>(r)) != f.pow(d, fmul == 0 ? t : fmul))
            throw VerifyError("construct_example_family: Frobenius multiplier mismatch");
        cert.field_poly = mod;
    }

    // Expected order of T_1 modulo scalars: rotations (p) times Frobenius
    // extension (p) times zero-sum-mod-p diagonals up to scalars (t^(p-1)/p).
    unsigned __int128 expected = p;
    for (int i = 0; i < p - 1; ++i) expected *= t;
    if (expected > caps.max_closure || expected > 65535)
        throw CapError("construct_example_family: group too large to enumerate");

    SemiCtx ctx;
    ctx.p = p;
    ctx.t = t;
    ctx.fpow.resize(p);
    ctx.fpow[0] = 1;
    for (int i = 1; i < p; ++i) ctx.fpow[i] = ctx.fpow[i - 1] * fmul % t;

    std::vector<SemiElt> gens;
    {
        SemiElt pi = ctx.id();
        pi.rot = 1;
        gens.push_back(pi);
        SemiElt m1 = ctx.id();
        m1.e[0] = 1;
        m1.e[1] = static_cast<std::uint32_t>(t - 1);
        ctx.normalize(m1);
        gens.push_back(m1);
        SemiElt z = ctx.id();
        z.e[0] = static_cast<std::uint32_t>(p % t);
        ctx.normalize(z);
        gens.push_back(z);
        SemiElt sg = ctx.id();
        sg.e[0] = 1;
        sg.fr = 1;
        ctx.normalize(sg);
        gens.push_back(sg);
    }

    std::map<std::string, SemiElt> seen;
    std::vector<SemiElt> queue;
    {
        SemiElt e = ctx.id();
        seen.emplace(ctx.key(e), e);
        queue.push_back(e);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        SemiElt cur = queue[head];
        for (const SemiElt& g : gens) {
            SemiElt nxt = ctx.mul(cur, g);
            std::string k = ctx.key(nxt);
            if (seen.emplace(k, nxt).second) {
                if (seen.size() > static_cast<std::uint64_t>(expected))
                    throw VerifyError("construct_example_family: closure overshoots");
                queue.push_back(nxt);
            }
        }
    }
    if (seen.size() != static_cast<std::uint64_t>(expected))
        throw VerifyError("construct_example_family: closure has unexpected order");
    cert.group_order = seen.size();

    std::vector<std::string> keys;
    keys.reserve(seen.size());
    for (const auto& [k, v] : seen) keys.push_back(k);
    std::map<std::string, std::uint32_t> index;
    for (std::size_t i = 0; i < keys.size(); ++i) index.emplace(keys[i], i);

    std::size_t n = keys.size();
    std::vector<std::uint32_t> table(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const SemiElt& xi = seen.at(keys[i]);
        for (std::size_t j = 0; j < n; ++j)
            table[i * n + j] = index.at(ctx.key(ctx.mul(xi, seen.at(keys[j]))));
    }
    std::vector<Elt> table_gens;
    for (const SemiElt& g : gens)
        table_gens.push_back(Elt{static_cast<std::uint16_t>(index.at(ctx.key(g)))});
    GroupPtr tg = Group::make_table(std::move(table), n, table_gens);

    {
        SemiElt pi = ctx.id();
        pi.rot = 1;
        std::string pik = ctx.key(pi);
        std::uint64_t count = 0;
        for (const auto& [k, v] : seen) {
            if (v.rot != 0 || v.fr != 0) continue;
            if (ctx.key(ctx.mul(v, pi)) == ctx.key(ctx.mul(pi, v))) ++count;
        }
        cert.pi_diag_centralizer_order = count;
    }

    GroupPtr pc = table_to_pc(tg, p, caps);
    MaxClassProfile prof = maxclass_profile(Subgroup::whole(pc, caps), caps);
    cert.maximal_class = prof.is_maximal_class;
    if (prof.is_maximal_class && prof.n >= 4)
        cert.gamma1_abelian = prof.gamma1.is_abelian();

    return {pc, cert};
}

} // namespace mcf
