#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mcf/corpus.hpp"
#include "mcf/pgroup.hpp"
#include "mcf/scan.hpp"

using namespace mcf;

namespace {

GroupPtr cyclic_pc(int p, int n) {
    // C_{p^n} as a PC group: g_i^p = g_{i+1}.
    PcPresentation pres;
    pres.p = p;
    pres.ngens = n;
    for (int i = 0; i + 1 < n; ++i) {
        Elt w(static_cast<std::size_t>(n), 0);
        w[static_cast<std::size_t>(i + 1)] = 1;
        pres.powers[i] = w;
    }
    return Group::make_pc(pres);
}

GroupPtr elem_abelian_pc(int p, int n) {
    PcPresentation pres;
    pres.p = p;
    pres.ngens = n;
    return Group::make_pc(pres);
}

const std::vector<const char*> kMaxClassNames = {
    "d16", "sd16", "q16", "d32", "c3wrc3", "ext3_1_2_a", "ext3_1_2_b",
    "x27_exp3", "x27_exp9", "x125_exp5"};

bool is_cyclic(const Subgroup& h) {
    return exponent_of(h) == h.order();
}

} // namespace

TEST_CASE("lower central series oracles") {
    // Abelian: series stops immediately.
    GroupPtr ea = corpus_group("ea27");
    auto s1 = lower_central_series(Subgroup::whole(ea));
    REQUIRE(s1.size() == 1);
    CHECK(s1[0].order() == 1);

    // D16: gamma_2 = <r^2> of order 4, gamma_3 = <r^4>, gamma_4 = 1.
    // Oracle: commutator of the reflection and rotation is r^2 directly.
    GroupPtr d16 = corpus_group("d16");
    Elt s{1, 0, 0, 0}, r{0, 1, 0, 0};
    Elt c = d16->comm(r, s);
    Subgroup r2(d16, {c});
    CHECK(r2.order() == 4);
    auto s2 = lower_central_series(Subgroup::whole(d16));
    REQUIRE(s2.size() == 3);
    CHECK(s2[0].same_as(r2));
    CHECK(s2[1].order() == 2);
    CHECK(s2[2].order() == 1);

    // C3 wr C3 (order 81): maximal class forces orders 9, 3, 1 from
    // gamma_2 down.
    GroupPtr w = corpus_group("c3wrc3");
    auto s3 = lower_central_series(Subgroup::whole(w));
    REQUIRE(s3.size() == 3);
    CHECK(s3[0].order() == 9);
    CHECK(s3[1].order() == 3);
    CHECK(s3[2].order() == 1);
}

TEST_CASE("upper central series matches lower one for maximal class") {
    for (const char* name : kMaxClassNames) {
        CAPTURE(name);
        GroupPtr g = corpus_group(name);
        Subgroup whole = Subgroup::whole(g);
        MaxClassProfile prof = maxclass_profile(whole);
        REQUIRE(prof.is_maximal_class);
        // |gamma_j| = p^{n-j} for j >= 2.
        std::uint64_t expect = 1;
        for (int i = 0; i < prof.n - 2; ++i)
            expect *= static_cast<std::uint64_t>(prof.p);
        for (const Subgroup& gj : prof.gamma_series) {
            CHECK(gj.order() == expect);
            expect /= static_cast<std::uint64_t>(prof.p);
        }
        // Z_j(S) = gamma_{n-j}(S) for 1 <= j <= n-2.
        for (int j = 1; j <= prof.n - 2; ++j) {
            const Subgroup& zj = prof.z_series[static_cast<std::size_t>(j - 1)];
            const Subgroup& gnj =
                prof.gamma_series[static_cast<std::size_t>(prof.n - j - 2)];
            CHECK(zj.same_as(gnj));
        }
    }
}

TEST_CASE("maxclass profile oracles") {
    GroupPtr d16 = corpus_group("d16");
    MaxClassProfile pd = maxclass_profile(Subgroup::whole(d16));
    CHECK(pd.is_maximal_class);
    CHECK(pd.n == 4);
    CHECK_FALSE(pd.is_exceptional);
    CHECK(is_cyclic(pd.gamma1));          // <r> of order 8
    CHECK(pd.gamma1.order() == 8);

    GroupPtr w = corpus_group("c3wrc3");
    MaxClassProfile pw = maxclass_profile(Subgroup::whole(w));
    CHECK(pw.is_maximal_class);
    CHECK(pw.n == 4);
    CHECK_FALSE(pw.is_exceptional);
    CHECK(pw.gamma1.order() == 27);
    CHECK(is_elementary_abelian(pw.gamma1, 3));
    // Oracle: the base group of the wreath product, written down directly.
    Subgroup base(w, {Elt{1, 2, 0, 3, 4, 5, 6, 7, 8},
                      Elt{0, 1, 2, 4, 5, 3, 6, 7, 8},
                      Elt{0, 1, 2, 3, 4, 5, 7, 8, 6}});
    CHECK(pw.gamma1.same_as(base));

    MaxClassProfile pe = maxclass_profile(Subgroup::whole(elem_abelian_pc(3, 2)));
    CHECK_FALSE(pe.is_maximal_class);
    CHECK(pe.group_class == 1);
    CHECK(pe.n == 2);

    // Exceptionality implies p >= 5 and p^6 <= |S| <= p^{p+1}; nothing in
    // the corpus is that large, so none may be exceptional.
    for (const char* name : kMaxClassNames)
        CHECK_FALSE(maxclass_profile(Subgroup::whole(corpus_group(name)))
                        .is_exceptional);
}

TEST_CASE("two step centralizers") {
    GroupPtr w = corpus_group("c3wrc3");
    MaxClassProfile pw = maxclass_profile(Subgroup::whole(w));
    auto cs = two_step_centralizers(Subgroup::whole(w));
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].same_as(pw.gamma1));

    GroupPtr d32 = corpus_group("d32");
    auto cs32 = two_step_centralizers(Subgroup::whole(d32));
    REQUIRE(cs32.size() == 2);
    for (const Subgroup& m : cs32) {
        CHECK(m.order() == 16);
        CHECK(is_cyclic(m));
        CHECK(cs32[0].same_as(m));
    }

    // Every member is a maximal subgroup, and non-exceptional groups have
    // exactly one distinct member (it coincides with gamma_1 = C_S(Z_2)).
    for (const char* name : kMaxClassNames) {
        CAPTURE(name);
        GroupPtr g = corpus_group(name);
        Subgroup whole = Subgroup::whole(g);
        MaxClassProfile prof = maxclass_profile(whole);
        if (prof.n < 4) continue;
        auto two = two_step_centralizers(whole);
        std::size_t distinct = 1;
        for (const Subgroup& m : two) {
            CHECK(m.order() * static_cast<std::uint64_t>(prof.p) ==
                  whole.order());
            if (!m.same_as(two[0])) ++distinct;
        }
        CHECK(distinct == 1);
        CHECK(two[0].same_as(prof.gamma1));
    }
}

TEST_CASE("omega and agemo") {
    GroupPtr c4 = cyclic_pc(2, 2);
    Subgroup wc4 = Subgroup::whole(c4);
    CHECK(omega1(wc4, 2).order() == 2);
    CHECK(agemo1(wc4, 2).order() == 2);
    CHECK(omega1(wc4, 2).same_as(agemo1(wc4, 2)));

    GroupPtr ea = corpus_group("ea27");
    Subgroup wea = Subgroup::whole(ea);
    CHECK(omega1(wea, 3).order() == 27);
    CHECK(agemo1(wea, 3).order() == 1);

    // gamma_1 of a Sylow 3-subgroup of Sym(9) is regular, so
    // |P / Omega_1(P)| = |agemo(P)|.
    GroupPtr s9 = corpus_group("sym9");
    Subgroup syl = sylow_p(s9, 3);
    REQUIRE(syl.order() == 81);
    MaxClassProfile prof = maxclass_profile(syl);
    REQUIRE(prof.is_maximal_class);
    Subgroup g1 = prof.gamma1;
    CHECK(is_regular(g1, 3));
    CHECK(g1.order() / omega1(g1, 3).order() == agemo1(g1, 3).order());
}

TEST_CASE("regularity") {
    CHECK(is_regular(Subgroup::whole(corpus_group("ea27")), 3));
    CHECK(is_regular(Subgroup::whole(corpus_group("x27_exp3")), 3));
    // D16 is irregular: (sr)^2 s^-2 r^-2 = r^-2 does not lie in the cubes,
    // er, squares of the derived subgroup of a dihedral 2-generator pair.
    CHECK_FALSE(is_regular(Subgroup::whole(corpus_group("d16")), 2));

    // gamma_1 of every maximal-class corpus group is regular.
    for (const char* name : kMaxClassNames) {
        CAPTURE(name);
        GroupPtr g = corpus_group(name);
        MaxClassProfile prof = maxclass_profile(Subgroup::whole(g));
        if (prof.n < 4) continue;
        CHECK(is_regular(prof.gamma1, prof.p));
    }

    Caps tiny;
    tiny.max_regular = 10;
    CHECK_THROWS_AS(is_regular(Subgroup::whole(corpus_group("d16")), 2, tiny),
                    CapError);
}

TEST_CASE("2-Engel subgroup") {
    // Class <= 2 groups are all of E_2.
    GroupPtr x27 = corpus_group("x27_exp3");
    CHECK(e2_subgroup(Subgroup::whole(x27)).order() == 27);
    GroupPtr ea = corpus_group("ea27");
    CHECK(e2_subgroup(Subgroup::whole(ea)).order() == 27);

    // If a 5-group has E_2(P) = P it must have class <= 2.
    for (const CorpusEntry& e : corpus_entries()) {
        if (e.p != 5) continue;
        GroupPtr g = corpus_group(e.name);
        Subgroup whole = Subgroup::whole(g);
        if (e2_subgroup(whole).order() == whole.order())
            CHECK(lower_central_series(whole).size() <= 2);
    }

    // D16 has class 3, so E_2 is proper; it still contains Z_2 = <r^2>.
    GroupPtr d16 = corpus_group("d16");
    Subgroup e2 = e2_subgroup(Subgroup::whole(d16));
    CHECK(e2.order() < 16);
    CHECK(e2.contains(Elt{0, 0, 1, 0}));
}

TEST_CASE("degree of commutativity") {
    bool capped = false;
    GroupPtr w = corpus_group("c3wrc3");
    CHECK(degree_of_commutativity(Subgroup::whole(w), &capped) == 4);
    CHECK(capped);   // gamma_1 abelian, every bracket trivial

    GroupPtr d16 = corpus_group("d16");
    CHECK(degree_of_commutativity(Subgroup::whole(d16), &capped) == 4);
    CHECK(capped);   // gamma_1 cyclic

    // Positive iff not exceptional.
    for (const char* name : kMaxClassNames) {
        CAPTURE(name);
        GroupPtr g = corpus_group(name);
        Subgroup whole = Subgroup::whole(g);
        MaxClassProfile prof = maxclass_profile(whole);
        if (prof.n < 4) continue;
        CHECK((prof.degree_of_commutativity > 0) == !prof.is_exceptional);
    }

    GroupPtr x27 = corpus_group("x27_exp3");
    CHECK_THROWS_AS(degree_of_commutativity(Subgroup::whole(x27)), InputError);
}

TEST_CASE("normal subgroups of maximal class groups") {
    // Every proper normal subgroup is a gamma_j or a maximal subgroup.
    for (const char* name : {"d16", "d32", "c3wrc3", "ext3_1_2_a",
                             "ext3_1_2_b", "x125_exp5"}) {
        CAPTURE(name);
        GroupPtr g = corpus_group(name);
        Subgroup whole = Subgroup::whole(g);
        MaxClassProfile prof = maxclass_profile(whole);
        auto maxes = maximal_subgroups(whole, prof.p);
        for (const Subgroup& h : all_subgroups(whole)) {
            if (h.order() == 1 || h.order() == whole.order()) continue;
            if (!h.is_normal_in(whole)) continue;
            bool found = false;
            for (const Subgroup& gj : prof.gamma_series)
                if (h.same_as(gj)) found = true;
            for (const Subgroup& m : maxes)
                if (h.same_as(m)) found = true;
            CHECK(found);
        }
    }
}

TEST_CASE("centralizers of outside elements have order p^2") {
    for (const char* name : {"d16", "d32", "c3wrc3", "ext3_1_2_a",
                             "ext3_1_2_b"}) {
        CAPTURE(name);
        GroupPtr g = corpus_group(name);
        Subgroup whole = Subgroup::whole(g);
        MaxClassProfile prof = maxclass_profile(whole);
        std::uint64_t p2 =
            static_cast<std::uint64_t>(prof.p) * static_cast<std::uint64_t>(prof.p);
        for (const Elt& t : whole.elements()) {
            if (prof.gamma1.contains(t) || prof.cz2.contains(t)) continue;
            CHECK(centralizer_in(whole, Subgroup(g, {t})).order() == p2);
        }
    }
}

TEST_CASE("subgroups outside the two special maximals have maximal class") {
    for (const char* name : {"d32", "c3wrc3", "ext3_1_2_a"}) {
        CAPTURE(name);
        GroupPtr g = corpus_group(name);
        Subgroup whole = Subgroup::whole(g);
        MaxClassProfile prof = maxclass_profile(whole);
        for (const Subgroup& t : all_subgroups(whole)) {
            if (t.order() < static_cast<std::uint64_t>(prof.p) *
                                static_cast<std::uint64_t>(prof.p) *
                                static_cast<std::uint64_t>(prof.p))
                continue;
            bool inside = true;
            for (const Elt& x : t.elements())
                if (!prof.gamma1.contains(x) && !prof.cz2.contains(x)) {
                    inside = false;
                    break;
                }
            if (inside) continue;
            MaxClassProfile tp = maxclass_profile(t);
            CHECK(tp.is_maximal_class);
        }
    }
}

TEST_CASE("omega of gamma1 bounds") {
    for (const char* name : kMaxClassNames) {
        CAPTURE(name);
        GroupPtr g = corpus_group(name);
        Subgroup whole = Subgroup::whole(g);
        MaxClassProfile prof = maxclass_profile(whole);
        if (prof.n < 4) continue;
        std::uint64_t pp = 1;
        for (int i = 0; i < prof.p; ++i)
            pp *= static_cast<std::uint64_t>(prof.p);
        CHECK(prof.omega1_gamma1.order() <= pp);
        if (prof.omega1_gamma1.order() == pp)
            CHECK(whole.order() == pp * static_cast<std::uint64_t>(prof.p));
        if (prof.n > prof.p + 1) {
            // Omega_1(gamma_1) = gamma_{n-(p-1)}, exponent p, order p^{p-1}.
            std::uint64_t pp1 = pp / static_cast<std::uint64_t>(prof.p);
            CHECK(prof.omega1_gamma1.order() == pp1);
            CHECK(exponent_of(prof.omega1_gamma1) ==
                  static_cast<std::uint64_t>(prof.p));
            int idx = prof.n - (prof.p - 1);
            REQUIRE(idx >= 2);
            CHECK(prof.omega1_gamma1.same_as(
                prof.gamma_series[static_cast<std::size_t>(idx - 2)]));
        }
    }
}

TEST_CASE("iterated bracket of omega gamma1 vanishes") {
    // [Omega_1(gamma_1), gamma_1; (p+1)/2] = 1 for odd p.
    for (const char* name : kMaxClassNames) {
        GroupPtr g = corpus_group(name);
        Subgroup whole = Subgroup::whole(g);
        MaxClassProfile prof = maxclass_profile(whole);
        if (prof.n < 4 || prof.p == 2) continue;
        CAPTURE(name);
        Subgroup cur = prof.omega1_gamma1;
        int steps = (prof.p + 1) / 2;
        for (int i = 0; i < steps; ++i) {
            std::vector<Elt> comms;
            for (const Elt& x : cur.elements())
                for (const Elt& y : prof.gamma1.elements())
                    comms.push_back(g->comm(x, y));
            cur = Subgroup(g, comms);
        }
        CHECK(cur.order() == 1);
    }
}

TEST_CASE("gamma2 class bound when gamma3 abelian") {
    // If gamma_3 is abelian and |S| < p^{2p+4}, gamma_2 has class <= 2.
    for (const char* name : kMaxClassNames) {
        CAPTURE(name);
        GroupPtr g = corpus_group(name);
        Subgroup whole = Subgroup::whole(g);
        MaxClassProfile prof = maxclass_profile(whole);
        if (prof.gamma_series.size() < 2) continue;
        const Subgroup& g2 = prof.gamma_series[0];
        const Subgroup& g3 = prof.gamma_series[1];
        if (!g3.is_abelian()) continue;
        CHECK(lower_central_series(g2).size() <= 2);
    }
}
