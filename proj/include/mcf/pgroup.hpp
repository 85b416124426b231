#pragma once

#include "mcf/subgroups.hpp"

namespace mcf {

// Structure profile of a p-group of maximal class (or the report that it is
// not). Series vectors are indexed from the top: gamma_series[0] = gamma_2,
// gamma_series[1] = gamma_3, ... down to the trivial subgroup;
// z_series[0] = Z(S), z_series[1] = Z_2(S), ... up to S itself. gamma1 and
// the fields derived from it are only populated for n >= 4 (gamma1 follows
// the convention C_S(gamma_2/gamma_4), which needs four terms to make sense).
struct MaxClassProfile {
    int p = 0;
    int n = 0;
    int group_class = 0;
    bool is_maximal_class = false;
    std::vector<Subgroup> gamma_series;
    std::vector<Subgroup> z_series;
    Subgroup gamma1;
    Subgroup cz2;
    bool is_exceptional = false;
    int degree_of_commutativity = 0;
    bool doc_capped = false;
    Subgroup omega1_gamma1;
    Subgroup agemo1;
};

// [gamma_2, gamma_3, ...], ending with the trivial subgroup. The group S may
// be any p-group (or in fact any finite group at desk scale).
std::vector<Subgroup> lower_central_series(const Subgroup& S,
                                           const Caps& caps = {});

// [Z(S), Z_2(S), ...], ending with the hypercenter (= S for p-groups).
std::vector<Subgroup> upper_central_series(const Subgroup& S,
                                           const Caps& caps = {});

MaxClassProfile maxclass_profile(const Subgroup& S, const Caps& caps = {});

// C_S(gamma_j / gamma_{j+2}) for 2 <= j <= n-2; requires maximal class and
// n >= 4.
std::vector<Subgroup> two_step_centralizers(const Subgroup& S,
                                            const Caps& caps = {});

Subgroup omega1(const Subgroup& P, int p, const Caps& caps = {});
Subgroup agemo1(const Subgroup& P, int p, const Caps& caps = {});

bool is_regular(const Subgroup& P, int p, const Caps& caps = {});

// E_2(P) = {x : [x,y,y] = 1 for all y}; verified to be a subgroup containing
// Z_2(P) before it is returned.
Subgroup e2_subgroup(const Subgroup& P, const Caps& caps = {});

// Largest c such that [gamma_i, gamma_j] <= gamma_{i+j+c} for all i, j >= 1
// (gamma_1 in the 2-step-centralizer sense). When every bracket is trivial
// the value is capped at n; `capped`, if given, reports that. Requires
// maximal class and n >= 4.
int degree_of_commutativity(const Subgroup& S, bool* capped = nullptr,
                            const Caps& caps = {});

// Smallest prime dividing |P|, with a check that |P| is a power of it.
// Throws InputError otherwise.
int p_group_prime(const Subgroup& P);

} // namespace mcf
