// Acceptance gate: ten checks, one line of output each. Any failure makes
// the binary exit nonzero.

#include "mcf/classify.hpp"
#include "mcf/corpus.hpp"
#include "mcf/fusion.hpp"
#include "mcf/gfp.hpp"
#include "mcf/repsl2.hpp"
#include "mcf/scan.hpp"
#include "mcf/subgroups.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace mcf;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void criterion(int num, const std::string& what, double limit_s,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    auto t0 = Clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (limit_s > 0 && secs > limit_s) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over time limit");
    }
    if (!ok) ++g_failures;
    std::printf("[%2d] %s  (%6.2fs)  %s%s%s\n", num, ok ? "PASS" : "FAIL", secs,
                what.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
}

FusionSystem corpus_fusion(const std::string& name) {
    for (const CorpusEntry& e : corpus_entries())
        if (e.name == name && e.fusion_prime > 0) {
            GroupPtr g = corpus_group(name);
            std::uint64_t o = g->order();
            while (o % e.fusion_prime == 0) o /= e.fusion_prime;
            Subgroup s = o == 1 ? Subgroup::whole(g)
                                : sylow_p(g, e.fusion_prime);
            return FusionSystem::realizable(g, s);
        }
    throw InputError("unknown corpus entry " + name);
}

bool expect(bool cond, const std::string& msg, std::string& detail) {
    if (!cond && detail.empty()) detail = msg;
    return cond;
}

} // namespace

int main() {
    criterion(1, "PGL2(7) at p=2: the essential classes are Klein-four pearls with Out = Sym(3)",
              10.0, [](std::string& detail) {
        FusionSystem f = corpus_fusion("pgl2_7");
        bool ok = expect(f.sylow().order() == 16, "Sylow order", detail);
        auto ess = f.essential_subgroups(EssentialMode::Brute);
        ok &= expect(ess.size() == 1, "one essential class expected", detail);
        for (const EssentialReport& e : ess) {
            ok &= expect(e.tag == EssentialTag::AbelianPearl, "pearl tag", detail);
            ok &= expect(e.subgroup.order() == 4 && is_elementary_abelian(e.subgroup, 2),
                         "Klein four", detail);
            ok &= expect(e.out_order == 6 &&
                         !Subgroup::whole(e.out_group).is_abelian(),
                         "Out = Sym(3)", detail);
        }
        MaxClassProfile prof = maxclass_profile(f.sylow());
        ok &= expect(prof.is_maximal_class, "maximal class", detail);
        ok &= expect(prof.gamma1.is_abelian() &&
                     exponent_of(prof.gamma1) == prof.gamma1.order(),
                     "gamma_1 cyclic", detail);
        return ok;
    });

    criterion(2, "Sym(9) and Alt(9) at p=3: every essential is a pearl or an abelian gamma_1",
              120.0, [](std::string& detail) {
        bool ok = true;
        for (const char* name : {"sym9", "alt9"}) {
            FusionSystem f = corpus_fusion(name);
            ok &= expect(f.sylow().order() == 81, "Sylow order 81", detail);
            MaxClassProfile prof = maxclass_profile(f.sylow());
            for (const EssentialReport& e :
                 f.essential_subgroups(EssentialMode::Brute)) {
                bool pearl = e.tag == EssentialTag::AbelianPearl ||
                             e.tag == EssentialTag::ExtraspecialPearl;
                bool is_g1 = e.tag == EssentialTag::Gamma1 &&
                             e.subgroup.same_as(prof.gamma1);
                ok &= expect(pearl || is_g1,
                             std::string(name) + ": essential outside the allowed shapes",
                             detail);
                if (is_g1)
                    ok &= expect(e.subgroup.is_abelian(),
                                 std::string(name) + ": essential gamma_1 not abelian",
                                 detail);
            }
        }
        return ok;
    });

    criterion(3, "tensor, symmetric and exterior square splittings over p in {5,7,11,13}",
              30.0, [](std::string& detail) {
        bool ok = true;
        for (int p : {5, 7, 11, 13}) {
            for (int d = 0; d < p; ++d)
                for (int e = 0; e <= d && d + e <= p - 1; ++e) {
                    Decomposition dec = clebsch_gordan_decompose(p, d, e);
                    ok &= expect(dec.degrees.size() == static_cast<std::size_t>(e) + 1,
                                 "summand count", detail);
                    int total = 0;
                    for (std::size_t i = 0; i < dec.degrees.size(); ++i) {
                        ok &= expect(dec.degrees[i] == d + e - 2 * static_cast<int>(i),
                                     "degree ladder", detail);
                        total += dec.degrees[i] + 1;
                    }
                    ok &= expect(total == (d + 1) * (e + 1), "dimension count", detail);
                }
            for (int d = 1; 2 * d <= p - 1; ++d) {
                SymAltDecomposition sq = lambda2_s2_decompose(p, d);
                int s2 = 0, l2 = 0;
                for (int deg : sq.s2_degrees) {
                    ok &= expect(deg % 4 == (2 * d) % 4, "S^2 degree pattern", detail);
                    s2 += deg + 1;
                }
                for (int deg : sq.lambda2_degrees) {
                    ok &= expect(deg % 4 == (2 * d - 2) % 4, "L^2 degree pattern", detail);
                    l2 += deg + 1;
                }
                ok &= expect(s2 == (d + 1) * (d + 2) / 2, "S^2 dimension", detail);
                ok &= expect(l2 == d * (d + 1) / 2, "L^2 dimension", detail);
            }
        }
        return ok;
    });

    criterion(4, "middle transvectant of x^(p-3) (x) y^(p-3) is a nonzero multiple of (xy)^((p-3)/2)",
              10.0, [](std::string& detail) {
        bool ok = true;
        for (int p : {7, 11}) {
            int d = p - 3, r = (p - 3) / 2;
            std::vector<int> tensor((d + 1) * (d + 1), 0);
            tensor[d] = 1;  // x^d in the left slot, y^d in the right slot
            std::vector<int> out = transvectant(p, d, d, r, tensor);
            ok &= expect(out.size() == static_cast<std::size_t>(2 * d - 2 * r) + 1,
                         "result degree", detail);
            for (std::size_t j = 0; j < out.size(); ++j) {
                if (j == static_cast<std::size_t>(r))
                    ok &= expect(out[j] != 0, "middle coefficient vanished", detail);
                else
                    ok &= expect(out[j] == 0, "stray coefficient", detail);
            }
        }
        return ok;
    });

    criterion(5, "p'-automorphism level exponents follow the geometric law on the corpus",
              120.0, [](std::string& detail) {
        bool ok = true;
        struct Item { std::string name; bool sylow_of_sym9; };
        std::vector<Item> items = {{"d16", false},  {"sd16", false},
                                   {"q16", false},  {"c3wrc3", false},
                                   {"sym9", true},  {"ext3_1_2_a", false},
                                   {"ext3_1_2_b", false}};
        for (const Item& it : items) {
            GroupPtr g = corpus_group(it.name);
            Subgroup s = it.sylow_of_sym9 ? sylow_p(g, 3) : Subgroup::whole(g);
            int p = p_group_prime(s);
            MaxClassProfile prof = maxclass_profile(s);
            ok &= expect(prof.is_maximal_class && prof.n >= 4,
                         it.name + ": expected maximal class", detail);
            int checked = 0;
            for (const GroupMap& phi : aut_group_bruteforce(s)) {
                GroupMap psi = p_prime_part(phi, p);
                if (psi.is_identity()) continue;
                // action_exponents verifies e_i = a^(i-1) b with the
                // exceptional tail rule internally and throws on violation
                ActionExponents e = action_exponents(s, psi);
                ok &= expect(e.e.size() == static_cast<std::size_t>(prof.n) - 1,
                             it.name + ": level count", detail);
                if (!prof.is_exceptional && mu(s, psi).r != 1) {
                    CongruenceReport cr = verify_centralizer_congruence(s, psi);
                    ok &= expect(cr.violations.empty(),
                                 it.name + ": congruence violation", detail);
                }
                ++checked;
            }
            ok &= expect(checked > 0 || p == 2,
                         it.name + ": no p'-automorphisms sampled", detail);
        }
        return ok;
    });

    criterion(6, "focal subgroup equals S meet the ambient derived subgroup on every realizable corpus system",
              120.0, [](std::string& detail) {
        bool ok = true;
        for (const CorpusEntry& entry : corpus_entries()) {
            if (entry.fusion_prime <= 0) continue;
            FusionSystem f = corpus_fusion(entry.name);
            FocalData fd = f.focal_data();
            const Subgroup& s = f.sylow();
            std::uint64_t meet = 0;
            if (f.ambient()->backend() == Backend::Perm) {
                GroupPtr dg = derived_group(f.ambient());
                for (const Elt& x : s.elements())
                    if (dg->contains(x)) ++meet;
            } else {
                Subgroup d = derived_of(Subgroup::whole(f.ambient()));
                for (const Elt& x : s.elements())
                    if (d.contains(x)) ++meet;
            }
            ok &= expect(meet == fd.foc.order(),
                         entry.name + ": focal mismatch", detail);
        }
        return ok;
    });

    criterion(7, "every subgroup class of every realizable corpus system has a fully automized receptive member",
              600.0, [](std::string& detail) {
        bool ok = true;
        for (const CorpusEntry& entry : corpus_entries()) {
            if (entry.fusion_prime <= 0) continue;
            FusionSystem f = corpus_fusion(entry.name);
            const Subgroup& s = f.sylow();
            std::vector<Subgroup> subs = all_subgroups(s);
            auto classes = subgroup_conjugacy_classes(s, subs);
            for (const std::vector<int>& cls : classes) {
                const Subgroup& rep = subs[cls[0]];
                bool found = false;
                for (const Subgroup& q : f.f_class(rep)) {
                    if (f.is_fully_automized(q) && f.is_receptive(q)) {
                        found = true;
                        break;
                    }
                }
                ok &= expect(found, entry.name + ": class of order " +
                                        std::to_string(rep.order()) +
                                        " has no fully automized receptive member",
                             detail);
            }
        }
        return ok;
    });

    criterion(8, "twelve cited table cells reproduced byte-exactly from the data files",
              10.0, [](std::string& detail) {
        bool ok = true;
        auto r6 = table1_lookup(11, "J1", "11^7", "Delta_3");
        ok &= expect(r6 && r6->pearls == "III or IV", "cell 1", detail);
        ok &= expect(r6 && r6->mu == "Delta_3", "cell 2", detail);
        auto r16 = table1_lookup(13, "SL2(p)", "p^(p-1)=V_(p-2)", "{(u^2,u^-1)}");
        ok &= expect(r16 && r16->pearls == "I, III or IV", "cell 3", detail);
        ok &= expect(r16 && r16->mu == "{(u^2,u^-1)}", "cell 4", detail);
        auto r3 = table1_lookup(7, "PSL2(p)", "p^(p-2)=V_(p-3)", "(1/2)Delta_-1");
        ok &= expect(r3 && r3->pearls == "II, III or IV", "cell 5", detail);
        ok &= expect(r3 && r3->mu == "(1/2)Delta_-1", "cell 6", detail);

        std::vector<DeltaElement> full;
        for (int r = 1; r < 5; ++r)
            for (int s = 1; s < 5; ++s) full.push_back({r, s});
        auto c1 = table21_constellation(full, 4, 5);
        ok &= expect(c1.size() == 1 && c1[0].pearls == "Pa^0 u Pe^*", "cell 7", detail);
        auto c3 = table21_constellation(delta_subgroup(5, -1).elements, 3, 5);
        ok &= expect(!c3.empty() && c3[0].id == "III", "cell 8", detail);
        auto c4 = table21_constellation(delta_subgroup(5, 0).elements, -1, 5);
        bool pe0 = false;
        for (const Table21Row& row : c4)
            if (row.id == "IV" && row.pearls == "Pe^0") pe0 = true;
        ok &= expect(pe0, "cell 9", detail);

        auto alt = table3_lookup("Alt(p^2)", 7);
        ok &= expect(alt && alt->pearls == "Pa^0", "cell 10", detail);
        auto psp = table3_lookup("PSp4(p)", 11);
        ok &= expect(psp && psp->pearls == "Pe^0" && psp->rank == "3",
                     "cell 11", detail);
        auto co1 = table3_lookup("Co1", 5);
        ok &= expect(co1 && co1->pearls == "Pe^0 u Pa^*", "cell 12", detail);
        return ok;
    });

    criterion(9, "semilinear monomial family at (3,7,1): maximal class, non-abelian gamma_1, full invariant battery",
              60.0, [](std::string& detail) {
        auto [g, cert] = construct_example_family(3, 7, 1);
        bool ok = expect(cert.maximal_class, "maximal class flag", detail);
        ok &= expect(!cert.gamma1_abelian, "gamma_1 should be non-abelian", detail);
        ok &= expect(cert.group_order == 243 && g->order() == 243, "order 3^5", detail);
        ok &= expect(cert.t_order == 9 && cert.k == 1, "entry group order", detail);
        // the centralizer-of-the-cycle criterion, independent of the profile
        ok &= expect(cert.pi_diag_centralizer_order == 3,
                     "diagonal centralizer of the cycle", detail);
        ok &= expect(!cert.experimental && cert.field_poly.size() == 4,
                     "certified field", detail);

        Subgroup s = Subgroup::whole(g);
        MaxClassProfile prof = maxclass_profile(s);
        ok &= expect(prof.is_maximal_class && prof.n == 5 && prof.group_class == 4,
                     "class n-1", detail);
        ok &= expect(!prof.gamma1.is_abelian(), "gamma_1 non-abelian", detail);
        ok &= expect(center_of(s).order() == 3, "center order p", detail);
        ok &= expect(derived_of(s).same_as(prof.gamma_series.at(0)),
                     "derived = gamma_2", detail);
        std::uint64_t expected = 27;
        for (const Subgroup& gam : prof.gamma_series) {
            ok &= expect(gam.order() == expected, "gamma series orders", detail);
            ok &= expect(gam.is_normal_in(s), "gamma series normality", detail);
            if (expected > 1) expected /= 3;
        }
        for (const Subgroup& c : two_step_centralizers(s))
            ok &= expect(c.order() == 81, "two-step centralizers maximal", detail);
        ok &= expect(e2_subgroup(s).contains_all(prof.z_series.at(1)),
                     "E_2 contains Z_2", detail);
        ok &= expect(prof.degree_of_commutativity >= 0, "degree of commutativity",
                     detail);
        return ok;
    });

    criterion(10, "out-of-acceptance list (not reproducible at desk scale)", 0,
              [](std::string& detail) {
        detail =
            "excluded: small-group library ids 1308, 1321, 1360, 1363, 1374, 1384 "
            "of order 5^7 and the id (5^6, 661) identification (library-dependent); "
            "the 27 exotic fusion systems related to G_2(7) at p = 7; all exoticity "
            "and simplicity adjudications (classification-dependent). These are "
            "covered by the property suites and by the case dispatcher's "
            "unverifiable-with-reason checklists on user-supplied instances.";
        return true;
    });

    std::printf("%s: %d failure(s)\n", g_failures ? "FAIL" : "OK", g_failures);
    return g_failures ? 1 : 0;
}
