#pragma once

#include "mcf/pgroup.hpp"

namespace mcf {

// An element of Delta = GF(p)^x x GF(p)^x: the scalar r on S/gamma_1 and the
// scalar s on Z(S).
struct DeltaElement {
    int r = 1;
    int s = 1;
    bool operator==(const DeltaElement& o) const {
        return r == o.r && s == o.s;
    }
};

// Measured per-level action of a p'-automorphism along the s_i chain:
// e[i-1] is the exponent at level i (s_i phi = s_i^{e_i} mod gamma_{i+1}),
// for 1 <= i <= n-1. The construction also verifies the predictions
// e_i = a^{i-1} b for i <= n-2 and the tail value a^{n-2}b, or a^{n-3}b^2
// when the group is exceptional.
struct ActionExponents {
    int a = 1;
    int b = 1;
    std::vector<int> e;
    bool exceptional_tail = false;
};

struct CongruenceReport {
    int m = 0;                                // order of the S/gamma_1 action
    std::vector<int> scalars;                 // scalar at level i = index + 1
    std::vector<std::pair<int, int>> violations;
};

// Full automorphism group of a small p-group by backtracking over images of
// a minimal generating sequence. Capped by caps.max_aut_order on |P| and
// caps.max_aut_rank on the minimal rank.
std::vector<GroupMap> aut_group_bruteforce(const Subgroup& P,
                                           const Caps& caps = {});

// phi^{p^k} where p^k is the p-part of the order of phi; the result has
// order coprime to p.
GroupMap p_prime_part(const GroupMap& phi, int p);

// The pair (r, s) with x phi gamma_1 = x^r gamma_1 and z phi = z^s on Z(S).
// S must have maximal class and order >= p^4. For p = 2 both components are
// trivially 1.
DeltaElement mu(const Subgroup& S, const GroupMap& phi, const Caps& caps = {});

ActionExponents action_exponents(const Subgroup& S, const GroupMap& phi,
                                 const Caps& caps = {});

// For a non-exceptional S and phi acting with order m != 1 on S/gamma_1:
// whenever two levels carry the same scalar, their indices must agree mod m.
CongruenceReport verify_centralizer_congruence(const Subgroup& S,
                                               const GroupMap& phi,
                                               const Caps& caps = {});

} // namespace mcf
