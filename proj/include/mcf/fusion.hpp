#pragma once

#include "mcf/pgroup.hpp"

#include <memory>
#include <optional>

namespace mcf {

// Classification of an essential subgroup of a maximal class p-group: one of
// the three pearl shapes, one of the two distinguished maximal subgroups, or
// Other (which the maximal-class verifier treats as a violation).
enum class EssentialTag {
    AbelianPearl,
    ExtraspecialPearl,
    QuaternionPearl,
    Gamma1,
    CZ2,
    Other,
};

const char* essential_tag_name(EssentialTag t);

struct EssentialReport {
    Subgroup subgroup;          // S-conjugacy class representative
    EssentialTag tag = EssentialTag::Other;
    std::uint64_t out_order = 0;
    GroupPtr out_group;         // table-backend model of Out_F(E)
    Subgroup embedded_witness;  // strongly p-embedded subgroup of out_group
    int pearl_index = -1;       // i with E conjugate to H_i / B_i, or -1
    std::size_t fclass_size = 0;
    std::size_t sclass_size = 0;
};

struct TheoremDReport {
    bool pass = false;
    std::optional<Subgroup> witness;  // first violating essential, if any
    std::string message;
    std::vector<EssentialReport> essentials;
};

struct FocalData {
    Subgroup foc;
    Subgroup hyp;
    std::uint64_t index_s_hyp = 1;  // [S : hyp], a power of p
    Subgroup op_f;                  // O_p of the fusion system
};

enum class EssentialMode { Brute, TheoremD };

// A saturated fusion system on a p-group S, either realized by an ambient
// finite group with S Sylow (morphisms are conjugation maps, computed by
// ambient element scans and cached per F-conjugacy class), or presented by
// generating automorphism groups on S and a list of essential subgroups.
// Generated systems answer queries only at S and the listed subgroups; the
// closure of an arbitrary subgroup under composition of restrictions is out
// of scope and queries there raise InputError.
class FusionSystem {
public:
    static FusionSystem realizable(GroupPtr G, Subgroup S,
                                   const Caps& caps = {});
    static FusionSystem generated(
        Subgroup S, std::vector<GroupMap> aut_s_gens,
        std::vector<std::pair<Subgroup, std::vector<GroupMap>>> essentials,
        const Caps& caps = {});

    bool realizable_kind() const;
    const Subgroup& sylow() const;
    const GroupPtr& ambient() const;  // realizable kind only
    int prime() const;

    MapGroup aut_F(const Subgroup& P) const;
    // All subgroups of S that are F-conjugate to P (realizable kind).
    std::vector<Subgroup> f_class(const Subgroup& P) const;
    // All morphisms R -> P in F (conjugation maps; realizable kind).
    std::vector<GroupMap> hom_F(const Subgroup& R, const Subgroup& P) const;

    bool is_centric(const Subgroup& P) const;
    bool is_fully_normalized(const Subgroup& P) const;
    bool is_fully_centralized(const Subgroup& P) const;
    bool is_fully_automized(const Subgroup& P) const;
    bool is_receptive(const Subgroup& P) const;
    // P < S, centric, fully normalized, and Out_F(P) has a strongly
    // p-embedded subgroup.
    bool is_essential(const Subgroup& P) const;

    // Essential subgroups up to S-conjugacy. Brute walks the whole subgroup
    // lattice of S; TheoremD (maximal class S only) tests the candidate
    // shapes <x>Z(S), <x>Z_2(S), gamma_1(S) and C_S(Z_2(S)), after cheap
    // stabilized-series and rank pre-filters.
    std::vector<EssentialReport> essential_subgroups(EssentialMode mode) const;

    // Tag plus H_i/B_i index for a known essential subgroup.
    EssentialReport classify_pearl(const Subgroup& E) const;

    FocalData focal_data() const;

    // Generated kind only: drop the S-class of the pearl P from the
    // essential list (the result is again saturated) and spot-check Sylow
    // properties of the remaining automorphism groups.
    FusionSystem prune_pearl_class(const Subgroup& P) const;

    TheoremDReport verify_theorem_D() const;

    // Realizable kind: the generated system on Aut_F(S) and the essential
    // automorphism groups, which recovers F on saturated systems.
    FusionSystem to_generated() const;

    const std::vector<std::pair<Subgroup, std::vector<GroupMap>>>&
    listed_essentials() const;

private:
    struct Impl;
    explicit FusionSystem(std::shared_ptr<Impl> impl);
    std::shared_ptr<Impl> impl_;
};

// A strongly p-embedded subgroup of H, or nullopt. The candidate is the
// setwise stabilizer of the connected component of a Sylow p-subgroup in the
// graph joining Sylows with non-trivial intersection; before returning, the
// defining property (M < H, p divides |M|, |M cap M^h| coprime to p for all
// h outside M) is re-verified element by element. When p does not divide
// |H| the answer is nullopt and *trivial_sylow, if given, is set.
std::optional<Subgroup> has_strongly_p_embedded(const Subgroup& H, int p,
                                                const Caps& caps = {},
                                                bool* trivial_sylow = nullptr);

// [P, N_S(P), N_S(N_S(P)), ...] until the tower stabilizes.
std::vector<Subgroup> normalizer_tower(const Subgroup& S, const Subgroup& P);

} // namespace mcf
