#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mcf/corpus.hpp"
#include "mcf/report.hpp"
#include "mcf/scan.hpp"
#include "mcf/subgroups.hpp"

#include <map>
#include <random>

using namespace mcf;

namespace {

GroupPtr sym(int n) {
    Elt t(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] =
        static_cast<std::uint16_t>(i);
    std::swap(t[0], t[1]);
    Elt c(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        c[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>((i + 1) % n);
    return Group::make_perm(n, {t, c});
}

PcPresentation extraspecial27() {
    PcPresentation pres;
    pres.p = 3;
    pres.ngens = 3;
    pres.comms[{1, 0}] = Elt{0, 0, 1};
    return pres;
}

} // namespace

TEST_CASE("bsgs order and membership") {
    GroupPtr s4 = sym(4);
    CHECK(s4->order() == 24);

    GroupPtr c4 = Group::make_perm(4, {Elt{1, 2, 3, 0}});
    CHECK(c4->order() == 4);
    CHECK(c4->contains(Elt{2, 3, 0, 1}));       // square of the 4-cycle
    CHECK_FALSE(c4->contains(Elt{1, 0, 2, 3}));

    GroupPtr pgl = corpus_group("pgl2_7");
    CHECK(pgl->order() == 336);                 // q(q^2-1) for q = 7
    CHECK(pgl->elements().size() == 336);       // cross-check by enumeration
}

TEST_CASE("bsgs orbit product equals exhaustive count") {
    for (int n : {3, 4, 5, 6, 7}) {
        GroupPtr g = sym(n);
        std::uint64_t fact = 1;
        for (int i = 2; i <= n; ++i) fact *= static_cast<std::uint64_t>(i);
        CHECK(g->order() == fact);
        CHECK(g->elements().size() == fact);
    }
}

TEST_CASE("degree mismatch rejected") {
    CHECK_THROWS_AS(Group::make_perm(3, {Elt{1, 0, 2, 3}}), InputError);
    CHECK_THROWS_AS(Group::make_perm(3, {Elt{0, 0, 1}}), InputError);
}

TEST_CASE("pc collection basics") {
    PcPresentation pres = extraspecial27();
    // g2 g1 -> g1 g2 g3 (letters are 0-based: word g1*g0).
    CHECK(pc_collect(pres, {1, 0}) == Elt{1, 1, 1});
    CHECK(pc_collect(pres, {}) == Elt{0, 0, 0});
    CHECK(pc_collect(pres, {0, 0, 0}) == Elt{0, 0, 0});

    GroupPtr x27 = Group::make_pc(pres);
    CHECK(x27->order() == 27);
    CHECK(exponent_of(Subgroup::whole(x27)) == 3);
}

TEST_CASE("pc collection is compatible with multiplication on random words") {
    GroupPtr q16 = corpus_group("q16");
    const PcPresentation& pres = q16->pc();
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<int> w1, w2;
        for (int i = 0; i < static_cast<int>(rng() % 8); ++i)
            w1.push_back(static_cast<int>(rng() % 4));
        for (int i = 0; i < static_cast<int>(rng() % 8); ++i)
            w2.push_back(static_cast<int>(rng() % 4));
        std::vector<int> cat = w1;
        cat.insert(cat.end(), w2.begin(), w2.end());
        Elt lhs = pc_collect(pres, cat);
        Elt rhs = q16->mul(pc_collect(pres, w1), pc_collect(pres, w2));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("pc backends of the corpus are consistent") {
    for (const char* name : {"d16", "sd16", "q16", "d32", "x27_exp3",
                             "x27_exp9", "x125_exp5", "ea27"}) {
        GroupPtr g = corpus_group(name);
        CHECK_FALSE(g->pc_trusted_unverified());
    }
    // Q16 has a unique involution; D16 has many.
    GroupPtr q16 = corpus_group("q16");
    int inv = 0;
    for (const Elt& x : q16->elements())
        if (x != q16->identity() && q16->elt_order(x) == 2) ++inv;
    CHECK(inv == 1);
    GroupPtr d16 = corpus_group("d16");
    inv = 0;
    for (const Elt& x : d16->elements())
        if (x != d16->identity() && d16->elt_order(x) == 2) ++inv;
    CHECK(inv == 9);
}

TEST_CASE("inconsistent pc presentation fails loudly") {
    PcPresentation pres;
    pres.p = 3;
    pres.ngens = 2;
    // [g1,g0] undefined-free but g1^3 = g... invalid: power word uses g0.
    pres.powers[1] = Elt{1, 0};
    CHECK_THROWS_AS(Group::make_pc(pres), InputError);

    // A presentation violating the overlap conditions: commutator into a
    // generator that does not commute correctly. For ngens 2 with
    // [g1,g0] = g1 the relation word uses g1 itself, which is rejected.
    PcPresentation bad;
    bad.p = 3;
    bad.ngens = 2;
    bad.comms[{1, 0}] = Elt{0, 1};
    CHECK_THROWS_AS(Group::make_pc(bad), InputError);
}

TEST_CASE("subgroup closure and Lagrange") {
    GroupPtr s3 = sym(3);
    Subgroup a3(s3, {Elt{1, 2, 0}});
    CHECK(a3.order() == 3);

    GroupPtr d16 = corpus_group("d16");
    // <r^2> has order 4.
    Subgroup r2(d16, {Elt{0, 0, 1, 0}});
    CHECK(r2.order() == 4);

    GroupPtr c3wr = corpus_group("c3wrc3");
    // Base group of C3 wr C3: three disjoint 3-cycles.
    Subgroup base(c3wr, {Elt{1, 2, 0, 3, 4, 5, 6, 7, 8},
                         Elt{0, 1, 2, 4, 5, 3, 6, 7, 8},
                         Elt{0, 1, 2, 3, 4, 5, 7, 8, 6}});
    CHECK(base.order() == 27);

    Subgroup whole = Subgroup::whole(d16);
    for (const Subgroup& h : all_subgroups(whole))
        CHECK(whole.order() % h.order() == 0);

    CHECK_THROWS_AS(Subgroup(s3, {Elt{1, 0, 2, 3}}), InputError);
}

TEST_CASE("normalizer and centralizer by element scan") {
    GroupPtr s3 = sym(3);
    Subgroup c3(s3, {Elt{1, 2, 0}});
    CHECK(centralizer(s3, c3).same_as(c3));

    GroupPtr s4 = sym(4);
    Subgroup klein(s4, {Elt{1, 0, 3, 2}, Elt{2, 3, 0, 1}});
    CHECK(normalizer(s4, klein).order() == 24);

    GroupPtr pgl = corpus_group("pgl2_7");
    Subgroup syl2 = sylow_p(pgl, 2);
    CHECK(syl2.order() == 16);
    CHECK(normalizer(pgl, syl2).same_as(syl2));   // self-normalizing

    Caps tiny;
    tiny.max_scan = 100;
    CHECK_THROWS_AS(normalizer(pgl, syl2, tiny), CapError);
}

TEST_CASE("sylow subgroups by normalizer climbing") {
    GroupPtr s4 = sym(4);
    Subgroup syl = sylow_p(s4, 2);
    CHECK(syl.order() == 8);
    // Dihedral of order 8: element-order profile 1, 2 x 5, 4 x 2.
    std::map<std::uint64_t, int> profile;
    for (const Elt& x : syl.elements()) ++profile[s4->elt_order(x)];
    CHECK(profile[1] == 1);
    CHECK(profile[2] == 5);
    CHECK(profile[4] == 2);

    GroupPtr s6 = sym(6);
    CHECK(sylow_p(s6, 3).order() == 9);
    CHECK_THROWS_AS(sylow_p(s6, 7), InputError);
}

TEST_CASE("transporter maps") {
    GroupPtr d16 = corpus_group("d16");
    // r^4 is central; s and r s lie in the two non-central Klein classes.
    Subgroup v1(d16, {Elt{0, 0, 0, 1}, Elt{1, 0, 0, 0}});
    Subgroup v2(d16, {Elt{0, 0, 0, 1}, Elt{1, 1, 0, 0}});
    CHECK(v1.order() == 4);
    CHECK(v2.order() == 4);
    CHECK(transporter_maps(d16, v1, v2).empty());

    // Aut_G(Z(S)) for Z = <r^4>: the only automorphism is trivial.
    Subgroup z(d16, {Elt{0, 0, 0, 1}});
    auto maps = transporter_maps(d16, z, z);
    CHECK(maps.size() == 1);

    // A Klein four inside PGL2(7) carries Sym(3) fusion.
    GroupPtr pgl = corpus_group("pgl2_7");
    Subgroup s = sylow_p(pgl, 2);
    bool found_sym3 = false;
    for (const Subgroup& h : all_subgroups(s)) {
        if (h.order() != 4 || !is_elementary_abelian(h, 2)) continue;
        auto tm = transporter_maps(pgl, h, h);
        Subgroup n = normalizer(pgl, h);
        Subgroup c = centralizer(pgl, h);
        CHECK(tm.size() == n.order() / c.order());   // N/C isomorphism
        if (tm.size() == 6) found_sym3 = true;
    }
    CHECK(found_sym3);
}

TEST_CASE("group maps verify multiplicativity") {
    GroupPtr s4 = sym(4);
    Subgroup klein(s4, {Elt{1, 0, 3, 2}, Elt{2, 3, 0, 1}});
    // Swapping the two generators is an automorphism of the Klein four.
    GroupMap swap_map(klein, klein, {Elt{2, 3, 0, 1}, Elt{1, 0, 3, 2}});
    CHECK(swap_map.is_bijective());
    CHECK(swap_map.map_order() == 2);

    // An order-2 generator cannot map to an order-4 element.
    Subgroup c2(s4, {Elt{1, 0, 2, 3}});
    Subgroup c4(s4, {Elt{1, 2, 3, 0}});
    CHECK_THROWS_AS(GroupMap(c2, c4, {Elt{1, 2, 3, 0}}), VerifyError);
}

TEST_CASE("map groups close under composition") {
    GroupPtr s4 = sym(4);
    Subgroup klein(s4, {Elt{1, 0, 3, 2}, Elt{2, 3, 0, 1}});
    auto tm = transporter_maps(s4, klein, klein);
    CHECK(tm.size() == 6);                        // Sym(3) on the Klein four
    MapGroup mg = build_map_group(klein, tm);
    CHECK(mg.order() == 6);
    CHECK(mg.table->order() == 6);
    // Sym(3) has trivial center.
    Subgroup whole = Subgroup::whole(mg.table);
    CHECK(center_of(whole).order() == 1);
}

TEST_CASE("quotient groups") {
    GroupPtr d16 = corpus_group("d16");
    Subgroup whole = Subgroup::whole(d16);
    Subgroup z(d16, {Elt{0, 0, 0, 1}});
    Quotient q = quotient(whole, z);
    CHECK(q.group->order() == 8);
    // D16 / Z(D16) is dihedral of order 8: exponent 4.
    CHECK(exponent_of(Subgroup::whole(q.group)) == 4);
}

TEST_CASE("derived subgroup of large ambient groups") {
    GroupPtr s9 = corpus_group("sym9");
    GroupPtr der = derived_group(s9);
    CHECK(der->order() == 181440);                // Alt(9)
    GroupPtr pgl = corpus_group("pgl2_7");
    CHECK(derived_group(pgl)->order() == 168);    // PSL(2,7)
}

TEST_CASE("scan kernels agree (parallel vs serial reference)") {
    GroupPtr pgl = corpus_group("pgl2_7");
    const auto& els = pgl->elements();
    auto pred = [&](const Elt& g) { return pgl->elt_order(g) == 2; };
    CHECK(scan_filter(els, pred) == scan_filter_serial(els, pred));
}

TEST_CASE("group file parsing errors") {
    CHECK_THROWS_AS(load_group_file("/nonexistent/file.json"), InputError);
    CHECK_THROWS_AS(group_from_json(Json::parse("{\"foo\": 1}")), InputError);
}
