#pragma once

#include "mcf/group.hpp"

#include <functional>

namespace mcf {

// Exhaustive element scans over an ambient group. These are the only
// routines that touch every element of a potentially large group; they all
// respect caps.max_scan and fail with a "scan-cap" error rather than
// truncating.

// Keeps the elements of `universe` satisfying `pred`, in input order. The
// parallel variant partitions the universe across OpenMP workers; the serial
// variant is the reference implementation kept for testing and benchmarking.
std::vector<Elt> scan_filter(const std::vector<Elt>& universe,
                             const std::function<bool(const Elt&)>& pred);
std::vector<Elt> scan_filter_serial(const std::vector<Elt>& universe,
                                    const std::function<bool(const Elt&)>& pred);

Subgroup normalizer(const GroupPtr& G, const Subgroup& H,
                    const Caps& caps = {});
Subgroup centralizer(const GroupPtr& G, const Subgroup& H,
                     const Caps& caps = {});

// One map per conjugation c_g with P^g <= Q, deduplicated by the images of
// P's generators; deterministic order (sorted by image key).
std::vector<GroupMap> transporter_maps(const GroupPtr& G, const Subgroup& P,
                                       const Subgroup& Q,
                                       const Caps& caps = {});

// A Sylow p-subgroup, grown by normalizer climbing from a p-element.
Subgroup sylow_p(const GroupPtr& G, int p, const Caps& caps = {});

std::uint64_t p_part(std::uint64_t n, int p);

} // namespace mcf
