#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mcf/caps.hpp"

namespace mcf {

// An element is a fixed-length vector of small integers whose meaning depends
// on the owning group's backend: point images for permutations, exponent
// vectors for PC groups, a single index for multiplication-table groups.
// Lexicographic comparison of these vectors is the canonical element order
// used for every deterministic iteration in the toolkit.
using Elt = std::vector<std::uint16_t>;

// Power-commutator presentation of a group of order p^n. Generators are
// 0-based; relation words are exponent vectors over the full generator list,
// but a valid presentation only uses generators above the relation's own
// (g_i^p and [g_j,g_i] lie in <g_{j+1},...,g_{n-1}>).
struct PcPresentation {
    int p = 0;
    int ngens = 0;
    std::map<int, Elt> powers;                   // i -> g_i^p, missing = trivial
    std::map<std::pair<int, int>, Elt> comms;    // (j,i), j > i -> [g_j,g_i]
};

class Group;
using GroupPtr = std::shared_ptr<const Group>;

enum class Backend { Perm, Pc, Table };

class Group : public std::enable_shared_from_this<Group> {
public:
    // Permutation group on degree points; builds a base and strong generating
    // set immediately, so order and membership are available afterwards.
    static GroupPtr make_perm(int degree, std::vector<Elt> generators);

    // PC-presented p-group. Consistency of the relations is checked by the
    // standard overlap comparisons; additionally, for small orders the left
    // translation maps are verified to be bijective. Groups above 10^6
    // elements are accepted with a warning flag instead of a full check.
    static GroupPtr make_pc(PcPresentation pres, const Caps& caps = {});

    // Small group given by an explicit n x n multiplication table (row i,
    // column j holds the index of element i * element j). Index 0 need not be
    // the identity; it is located by search.
    static GroupPtr make_table(std::vector<std::uint32_t> table, std::size_t n,
                               std::vector<Elt> generators);

    Backend backend() const { return backend_; }
    int degree() const { return degree_; }                  // Perm only
    const PcPresentation& pc() const { return pres_; }      // Pc only
    const std::vector<Elt>& generators() const { return gens_; }
    bool pc_trusted_unverified() const { return pc_warned_; }

    Elt identity() const;
    Elt mul(const Elt& a, const Elt& b) const;              // a then b
    Elt inv(const Elt& a) const;
    Elt conj(const Elt& a, const Elt& g) const;             // g^-1 a g
    Elt comm(const Elt& a, const Elt& b) const;             // a^-1 b^-1 a b
    Elt pow(const Elt& a, long long e) const;
    std::uint64_t elt_order(const Elt& a) const;

    std::uint64_t order() const;
    bool contains(const Elt& a) const;

    // All elements in canonical (sorted) order; cached after the first call.
    // Errors out instead of materializing more than caps.max_scan elements.
    const std::vector<Elt>& elements(const Caps& caps = {}) const;

private:
    Group() = default;

    struct BsgsLevel {
        int base = 0;
        std::vector<Elt> gens;         // strong generators active at this level
        std::vector<Elt> transversal;  // indexed by point; empty = not in orbit
        std::uint64_t orbit_size = 0;
    };

    void build_bsgs();
    // Reduces g through the stabilizer chain; returns the residue and the
    // first level it could not pass (levels_.size() if fully sifted).
    std::pair<Elt, std::size_t> sift(Elt g) const;

    void check_pc_consistency(const Caps& caps);
    std::uint64_t pc_order() const;

    Backend backend_ = Backend::Perm;
    int degree_ = 0;
    PcPresentation pres_;
    std::vector<Elt> gens_;
    std::vector<BsgsLevel> levels_;
    bool pc_warned_ = false;

    // Table backend storage.
    std::size_t tbl_n_ = 0;
    std::vector<std::uint32_t> tbl_mul_;
    std::vector<std::uint32_t> tbl_inv_;
    std::uint32_t tbl_id_ = 0;

    // Cached full multiplication table for small PC groups (index = mixed
    // radix rank of the exponent vector), and the cached element list.
    mutable std::vector<std::uint32_t> pc_tbl_;
    mutable std::vector<Elt> elements_;
};

// A subgroup handle: parent group, generators, and the cached (sorted)
// element set. All subgroup objects are closed at construction time; desk
// scale keeps that affordable, and membership is then a binary search.
class Subgroup {
public:
    Subgroup() = default;
    Subgroup(GroupPtr parent, std::vector<Elt> gens, const Caps& caps = {});

    // Wraps an element set already known to be closed (identity present,
    // closure under the parent's product is the caller's responsibility).
    static Subgroup from_elements(GroupPtr parent, std::vector<Elt> elems,
                                  std::vector<Elt> gens);
    // The parent group as a subgroup of itself.
    static Subgroup whole(GroupPtr parent, const Caps& caps = {});

    bool valid() const { return parent_ != nullptr; }
    const GroupPtr& parent() const { return parent_; }
    const std::vector<Elt>& gens() const { return gens_; }
    const std::vector<Elt>& elements() const { return *elems_; }
    std::uint64_t order() const { return elems_->size(); }
    bool contains(const Elt& e) const;
    bool contains_all(const Subgroup& other) const;
    bool same_as(const Subgroup& other) const;
    bool is_normal_in(const Subgroup& big) const;
    bool is_abelian() const;
    Subgroup conjugated_by(const Elt& g) const;   // g^-1 H g
    // Canonical byte string of the element set; used as a dedupe/sort key.
    const std::string& key() const;

private:
    GroupPtr parent_;
    std::vector<Elt> gens_;
    std::shared_ptr<const std::vector<Elt>> elems_;
    mutable std::string key_;
};

// A homomorphism between subgroups, stored as the full element-to-image
// table. Construction extends the generator images across the domain's
// Cayley graph and fails loudly if the result is not multiplicative.
class GroupMap {
public:
    GroupMap() = default;
    GroupMap(Subgroup dom, Subgroup cod, std::vector<Elt> gen_images);

    static GroupMap conjugation(const Subgroup& dom, const Subgroup& cod,
                                const Elt& g);
    static GroupMap identity_map(const Subgroup& dom);

    const Subgroup& domain() const { return dom_; }
    const Subgroup& codomain() const { return cod_; }
    // Images aligned with domain().elements().
    const std::vector<Elt>& images() const { return *imgs_; }
    Elt apply(const Elt& x) const;
    bool is_bijective() const;

    GroupMap then(const GroupMap& g) const;      // x -> g(this->apply(x))
    GroupMap inverse() const;                    // bijective maps only
    GroupMap restricted_to(const Subgroup& sub) const;
    bool fixes_setwise(const Subgroup& sub) const;
    bool is_identity() const;
    std::uint64_t map_order() const;             // automorphisms only

    // Canonical byte string of the image list (the domain being understood).
    const std::string& key() const;
    bool same_map(const GroupMap& o) const { return key() == o.key(); }

private:
    Subgroup dom_, cod_;
    std::shared_ptr<const std::vector<Elt>> imgs_;
    mutable std::string key_;
};

// A finite group of maps (for example Aut_F(P)): the maps in canonical order
// plus a parallel table-backend Group for structural computations. Element
// {i} of the table group corresponds to maps[i].
struct MapGroup {
    Subgroup base;
    std::vector<GroupMap> maps;
    GroupPtr table;

    std::uint64_t order() const { return maps.size(); }
    // Index of a map with the given key, or -1.
    int index_of_key(const std::string& k) const;
};

// Builds the map group generated by the given maps (deduplicated, closed
// under composition). All maps must share one domain = codomain base.
MapGroup build_map_group(Subgroup base, std::vector<GroupMap> gens);

// Normal form of an arbitrary word (sequence of generator letters, repeats
// allowed, no inverses needed in a finite p-group) by collection from the
// left. Exposed for direct word experiments; Group::mul goes through this.
Elt pc_collect(const PcPresentation& pres, const std::vector<int>& word);

std::string elt_repr(const Elt& e);

} // namespace mcf
