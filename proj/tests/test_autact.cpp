#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mcf/autact.hpp"
#include "mcf/corpus.hpp"
#include "mcf/scan.hpp"

#include <random>

using namespace mcf;

namespace {

GroupPtr elem_abelian_pc(int p, int n) {
    PcPresentation pres;
    pres.p = p;
    pres.ngens = n;
    return Group::make_pc(pres);
}

GroupPtr cyclic_pc(int p) {
    PcPresentation pres;
    pres.p = p;
    pres.ngens = 1;
    return Group::make_pc(pres);
}

bool coprime_to(std::uint64_t n, int p) {
    return n % static_cast<std::uint64_t>(p) != 0;
}

} // namespace

TEST_CASE("brute force automorphism groups") {
    // |Aut(C2 x C2)| = |GL_2(2)| = 6.
    GroupPtr v4 = elem_abelian_pc(2, 2);
    CHECK(aut_group_bruteforce(Subgroup::whole(v4)).size() == 6);

    // |Aut(C3 x C3)| = |GL_2(3)| = (9-1)(9-3) = 48.
    GroupPtr e9 = elem_abelian_pc(3, 2);
    auto aut9 = aut_group_bruteforce(Subgroup::whole(e9));
    CHECK(aut9.size() == 48);

    // Extraspecial 3^{1+2} of exponent 3: |Aut| = |GL_2(3)| * 3^2 = 432.
    GroupPtr x27 = corpus_group("x27_exp3");
    CHECK(aut_group_bruteforce(Subgroup::whole(x27)).size() == 432);

    Caps tiny;
    tiny.max_aut_order = 10;
    CHECK_THROWS_AS(aut_group_bruteforce(Subgroup::whole(x27), tiny),
                    CapError);
}

TEST_CASE("aut group closes under composition and inversion") {
    GroupPtr e9 = elem_abelian_pc(3, 2);
    Subgroup w = Subgroup::whole(e9);
    auto aut = aut_group_bruteforce(w);
    MapGroup mg = build_map_group(w, aut);
    CHECK(mg.order() == aut.size());
    std::mt19937 rng(7);
    for (int t = 0; t < 20; ++t) {
        const GroupMap& f = aut[rng() % aut.size()];
        const GroupMap& g = aut[rng() % aut.size()];
        CHECK(mg.index_of_key(f.then(g).key()) >= 0);
        CHECK(mg.index_of_key(f.inverse().key()) >= 0);
    }
}

TEST_CASE("p prime part") {
    // Aut(C13) is cyclic of order 12; pick a generator.
    GroupPtr c13 = cyclic_pc(13);
    auto aut = aut_group_bruteforce(Subgroup::whole(c13));
    REQUIRE(aut.size() == 12);
    const GroupMap* gen = nullptr;
    for (const GroupMap& f : aut)
        if (f.map_order() == 12) gen = &f;
    REQUIRE(gen != nullptr);
    CHECK(p_prime_part(*gen, 2).map_order() == 3);   // phi^4
    CHECK(p_prime_part(*gen, 3).map_order() == 4);   // phi^3
    CHECK(p_prime_part(*gen, 5).map_order() == 12);  // already coprime

    // phi of order 6, p = 3 -> phi^3 of order 2; order p -> identity.
    for (const GroupMap& f : aut) {
        if (f.map_order() == 6) CHECK(p_prime_part(f, 3).map_order() == 2);
        if (f.map_order() == 2) CHECK(p_prime_part(f, 2).is_identity());
    }
}

TEST_CASE("mu basics") {
    GroupPtr w = corpus_group("c3wrc3");
    Subgroup s = Subgroup::whole(w);
    DeltaElement one = mu(s, GroupMap::identity_map(s));
    CHECK(one == DeltaElement{1, 1});

    // Inner automorphisms map to (1,1).
    for (const Elt& g : {s.elements()[5], s.elements()[40]}) {
        GroupMap inner = GroupMap::conjugation(s, s, g);
        CHECK(mu(s, inner) == DeltaElement{1, 1});
    }

    // p = 2: always (1,1).
    GroupPtr d16 = corpus_group("d16");
    Subgroup sd = Subgroup::whole(d16);
    for (const GroupMap& f : aut_group_bruteforce(sd))
        CHECK(mu(sd, f) == DeltaElement{1, 1});
}

TEST_CASE("mu is a homomorphism") {
    GroupPtr w = corpus_group("c3wrc3");
    Subgroup s = Subgroup::whole(w);
    auto aut = aut_group_bruteforce(s);
    std::mt19937 rng(99);
    for (int t = 0; t < 30; ++t) {
        const GroupMap& f = aut[rng() % aut.size()];
        const GroupMap& g = aut[rng() % aut.size()];
        DeltaElement df = mu(s, f), dg = mu(s, g), dfg = mu(s, f.then(g));
        CHECK(dfg.r == df.r * dg.r % 3);
        CHECK(dfg.s == df.s * dg.s % 3);
    }
}

TEST_CASE("action exponents of the identity") {
    GroupPtr w = corpus_group("c3wrc3");
    Subgroup s = Subgroup::whole(w);
    ActionExponents ae = action_exponents(s, GroupMap::identity_map(s));
    CHECK(ae.a == 1);
    CHECK(ae.b == 1);
    for (int e : ae.e) CHECK(e == 1);
    CHECK_FALSE(ae.exceptional_tail);
}

TEST_CASE("action exponents on a Sylow 3-subgroup of Sym(9)") {
    GroupPtr s9 = corpus_group("sym9");
    Subgroup syl = sylow_p(s9, 3);
    auto aut = aut_group_bruteforce(syl);
    bool found_inverting = false;
    for (const GroupMap& f : aut) {
        if (f.map_order() != 2) continue;
        ActionExponents ae = action_exponents(syl, f);
        // The formula holds (action_exponents verifies internally); if the
        // top of S is inverted, a = -1.
        if (ae.a == 2) found_inverting = true;
        long long pred = 1;
        for (std::size_t i = 0; i + 1 < ae.e.size(); ++i) {
            CHECK(ae.e[i] == static_cast<int>(pred * ae.b % 3));
            pred = pred * ae.a % 3;
        }
    }
    CHECK(found_inverting);
}

TEST_CASE("action exponents verified across the maximal class corpus") {
    for (const char* name : {"d16", "sd16", "q16", "d32", "c3wrc3",
                             "ext3_1_2_a", "ext3_1_2_b"}) {
        CAPTURE(name);
        GroupPtr g = corpus_group(name);
        Subgroup s = Subgroup::whole(g);
        int p = p_group_prime(s);
        int checked = 0;
        for (const GroupMap& f : aut_group_bruteforce(s)) {
            if (!coprime_to(f.map_order(), p)) continue;
            CHECK_NOTHROW(action_exponents(s, f));
            ++checked;
        }
        CHECK(checked >= 1);   // at least the identity is coprime to p
    }
}

TEST_CASE("non p-prime automorphisms are rejected") {
    GroupPtr w = corpus_group("c3wrc3");
    Subgroup s = Subgroup::whole(w);
    GroupMap inner = GroupMap::conjugation(s, s, s.gens()[0]);
    if (inner.map_order() % 3 == 0)
        CHECK_THROWS_AS(action_exponents(s, inner), InputError);
}

TEST_CASE("centralizer congruence") {
    GroupPtr s9 = corpus_group("sym9");
    Subgroup syl = sylow_p(s9, 3);
    auto aut = aut_group_bruteforce(syl);
    int with_top_action = 0;
    for (const GroupMap& f : aut) {
        std::uint64_t o = f.map_order();
        if (o % 3 == 0 || o == 1) continue;
        CongruenceReport rep;
        try {
            rep = verify_centralizer_congruence(syl, f);
        } catch (const InputError&) {
            continue;   // trivial action on S/gamma_1
        }
        ++with_top_action;
        CHECK(rep.m > 1);
        CHECK(rep.violations.empty());
    }
    CHECK(with_top_action > 0);

    // The identity has m = 1 and is rejected.
    CHECK_THROWS_AS(verify_centralizer_congruence(syl,
                                                  GroupMap::identity_map(syl)),
                    InputError);
}

TEST_CASE("p-prime subgroups of Aut embed in Delta") {
    for (const char* name : {"d16", "q16", "d32", "c3wrc3", "ext3_1_2_a",
                             "ext3_1_2_b"}) {
        CAPTURE(name);
        GroupPtr g = corpus_group(name);
        Subgroup s = Subgroup::whole(g);
        int p = p_group_prime(s);
        auto aut = aut_group_bruteforce(s);
        std::vector<const GroupMap*> pprime;
        for (const GroupMap& f : aut)
            if (coprime_to(f.map_order(), p)) pprime.push_back(&f);
        for (const GroupMap* f : pprime)
            for (const GroupMap* h : pprime) {
                MapGroup span = build_map_group(s, {*f, *h});
                if (!coprime_to(span.order(), p)) continue;
                // A p'-subgroup of Aut(S) is abelian and mu embeds it.
                CHECK(f->then(*h).same_map(h->then(*f)));
                if (f->map_order() > 1) {
                    DeltaElement d = mu(s, *f);
                    CHECK((d.r != 1 || d.s != 1));
                }
            }
    }
}

TEST_CASE("nontrivial p-prime automorphisms move the top when gamma1 is "
          "wild") {
    // The hypothesis (gamma_1 neither abelian nor extraspecial) is not met
    // by any built-in corpus group, so this loop documents the check and
    // currently skips everything.
    for (const CorpusEntry& e : corpus_entries()) {
        if (!e.maximal_class_expected) continue;
        GroupPtr g = corpus_group(e.name);
        Subgroup s = Subgroup::whole(g);
        MaxClassProfile prof = maxclass_profile(s);
        if (prof.n < 4) continue;
        if (prof.gamma1.is_abelian()) continue;
        if (is_extraspecial_p3_exp_p(prof.gamma1, prof.p)) continue;
        for (const GroupMap& f : aut_group_bruteforce(s)) {
            if (!coprime_to(f.map_order(), prof.p) || f.map_order() == 1)
                continue;
            CHECK(mu(s, f).r != 1);
        }
    }
}
