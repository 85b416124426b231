#pragma once

#include "mcf/group.hpp"

#include <optional>

namespace mcf {

// --- small-scale structure helpers (element scans inside one subgroup) ----

Subgroup center_of(const Subgroup& H);
Subgroup derived_of(const Subgroup& H);
// Elements of H centralizing every element of K.
Subgroup centralizer_in(const Subgroup& H, const Subgroup& K);
// Elements of H normalizing K.
Subgroup normalizer_in(const Subgroup& H, const Subgroup& K);
// Intersection of two subgroups of one parent.
Subgroup intersect(const Subgroup& A, const Subgroup& B);
// Join <A, B> inside the common parent.
Subgroup join(const Subgroup& A, const Subgroup& B, const Caps& caps = {});
// Frattini subgroup of a p-group: derived subgroup joined with p-th powers.
Subgroup frattini_of(const Subgroup& P, int p, const Caps& caps = {});

std::uint64_t exponent_of(const Subgroup& H);
bool is_elementary_abelian(const Subgroup& H, int p);
// Extraspecial of order p^3 and exponent p (p odd), or quaternion of order 8.
bool is_extraspecial_p3_exp_p(const Subgroup& H, int p);
bool is_quaternion8(const Subgroup& H);

// A minimal generating sequence of a p-group (lifted from P/Frattini).
std::vector<Elt> minimal_generators(const Subgroup& P, int p,
                                    const Caps& caps = {});

// --- subgroup lattice ------------------------------------------------------

// Every subgroup of S, sorted by (order, canonical key). Errors out when the
// count passes caps.max_subgroup_enum.
std::vector<Subgroup> all_subgroups(const Subgroup& S, const Caps& caps = {});

// Partition of indices into S-conjugacy classes (class members sorted; the
// representative is the first index). `subs` must be the all_subgroups list.
std::vector<std::vector<int>> subgroup_conjugacy_classes(
    const Subgroup& S, const std::vector<Subgroup>& subs);

// Maximal subgroups of a p-group (index p).
std::vector<Subgroup> maximal_subgroups(const Subgroup& S, int p,
                                        const Caps& caps = {});

// --- quotients -------------------------------------------------------------

// H/N as a table-backend group, with the coset index of every H element.
struct Quotient {
    GroupPtr group;                 // order |H|/|N|
    std::vector<int> coset_of;      // aligned with H.elements()
    std::vector<Elt> coset_rep;     // smallest element of each coset
    int coset_index(const Subgroup& H, const Elt& x) const;
};
Quotient quotient(const Subgroup& H, const Subgroup& N);

// --- derived subgroup of a large ambient group -----------------------------

// For permutation groups this builds the commutator subgroup by normal
// closure with BSGS membership, so it works on groups far above the element
// scan cap; other backends fall back to element closure.
GroupPtr derived_group(const GroupPtr& G, const Caps& caps = {});

} // namespace mcf
