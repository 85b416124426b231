#pragma once

#include "mcf/autact.hpp"
#include "mcf/fusion.hpp"
#include "mcf/report.hpp"

#include <optional>

namespace mcf {

// The diagonal subgroup Delta_{k/l} = {(u^l, u^k)} of
// Delta = GF(p)^x x GF(p)^x, for coprime k, l; Delta_i is the case l = 1.
struct DeltaSubgroup {
    int p = 0;
    int k = 0;
    int l = 1;
    std::vector<DeltaElement> elements;  // sorted by (r, s)
};

DeltaSubgroup delta_subgroup(int p, int k, int l = 1);
// The unique index-n subgroup of a cyclic diagonal ("1/n" prefix notation).
DeltaSubgroup delta_fraction(const DeltaSubgroup& d, int n);
bool delta_contains(const std::vector<DeltaElement>& set, const DeltaElement& e);
bool delta_contains_all(const std::vector<DeltaElement>& big,
                        const std::vector<DeltaElement>& small);

// mu-value of an automorphism of gamma_1(S) that normalizes
// Aut_S(gamma_1(S)): found by extending alpha to some beta in Aut_F(S) and
// taking beta's mu-value; every extension is checked to give the same
// answer. Realizable systems only.
DeltaElement mu1(const FusionSystem& F, const GroupMap& alpha,
                 const Caps& caps = {});

// The image under mu1 of N_{Aut_F(gamma_1(S))}(Aut_S(gamma_1(S))), as a
// sorted deduplicated set.
std::vector<DeltaElement> mu1_image(const FusionSystem& F,
                                    const Caps& caps = {});

// ---- Table lookups (data-file backed, byte-exact transcriptions) ----

struct Table1Row {
    int row = 0;
    std::string p, y, module, mu, pearls;
};

struct Table21Row {
    std::string id, image, x, m, pearls;
};

struct Table3Row {
    std::string line, g, p, conditions, rank, e, order, aut, pearls;
};

const std::vector<Table1Row>& table1_rows();
const std::vector<Table21Row>& table21_rows();
const std::vector<Table3Row>& table3_rows();

// First row (in appendix order) whose p-constraint admits p and whose Y, mu
// and module columns match the given descriptors (exactly, or as a
// substring of the stored cell). nullopt on a miss.
std::optional<Table1Row> table1_lookup(int p, const std::string& y,
                                       const std::string& module,
                                       const std::string& mu);

// All constellation rows compatible with the computed mu1-image and
// |gamma_1(S)| = p^m; pass m < 0 for "no exponent constraint". When the
// image contains neither listed diagonal the result is empty and
// *explanation, if given, says why.
std::vector<Table21Row> table21_constellation(
    const std::vector<DeltaElement>& image, int m, int p,
    std::string* explanation = nullptr);

std::optional<Table3Row> table3_lookup(const std::string& family, int p);

// ---- Theorem-case dispatch ----

enum class CheckStatus { Pass, Fail, Unverifiable };
const char* check_status_name(CheckStatus s);

struct CheckResult {
    std::string assertion;
    CheckStatus status = CheckStatus::Unverifiable;
    std::string detail;
};

enum class Gamma1Shape { Abelian, Extraspecial, Other };
enum class OpShape { Unknown, Trivial, Center, CZ2, Other };

// Invariants of a fusion system on a maximal class p-group, as consumed by
// the case dispatch. Zero / negative sentinel values mean "not supplied";
// the corresponding assertions are then reported as unverifiable.
struct FSummary {
    int p = 0;
    int n = 0;  // |S| = p^n
    bool exceptional = false;
    Gamma1Shape gamma1 = Gamma1Shape::Other;
    std::vector<EssentialTag> essentials;  // one tag per essential class
    OpShape op = OpShape::Unknown;
    std::uint64_t index_s_hyp = 0;
    std::uint64_t out_s_order = 0;
    int out_s_cyclic = -1;  // 1 / 0 / -1 unknown
    std::uint64_t out_gamma1_order = 0;
    std::uint64_t out_cz2_order = 0;
};

struct TheoremCaseReport {
    char theorem = '?';
    std::string case_path;
    std::vector<CheckResult> checks;
};

// The unique applicable case of the classification for a consistent
// summary; inconsistent summaries are rejected with InputError. Assertions
// that rest on ambient-group identifications (exoticity, simplicity, small
// group library ids) are always reported as unverifiable with a reason.
TheoremCaseReport theorem_case(const FSummary& s);

// Summary of a computed fusion system, ready for theorem_case.
FSummary summarize_fusion(const FusionSystem& F, const Caps& caps = {});

// ---- Monomial / semilinear example family ----

struct FamilyCertificate {
    int p = 0, r = 0, a = 0;
    int k = 0;                    // p^k exactly divides r^a - 1
    std::uint64_t t_order = 0;    // p-part of (r^a)^p - 1, the entry group
    std::vector<int> field_poly;  // GF(r^p) modulus, low to high, monic
    std::uint64_t group_order = 0;
    std::uint64_t pi_diag_centralizer_order = 0;  // expected p
    bool experimental = false;    // a != 1
    bool maximal_class = false;
    bool gamma1_abelian = true;
};

// The p-group T_1/Z(M) built from the monomial subgroup of GL_p(r^p) with
// entries of p-power order, extended by a diagonal-times-Frobenius
// semilinear element, and converted to a PC presentation by enumeration.
// Requires p | r^a - 1; only a = 1 is certified, other a are experimental.
std::pair<GroupPtr, FamilyCertificate> construct_example_family(
    int p, int r, int a, const Caps& caps = {});

} // namespace mcf
