#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mcf {

// Resource caps for the exhaustive algorithms. Every cap violation raises an
// explicit error; no routine returns a silently truncated answer.
struct Caps {
    // Largest group order allowed for full element scans
    // (normalizer/centralizer/transporter computations).
    std::uint64_t max_scan = 10'000'000;
    // Largest number of subgroups enumerated when walking a subgroup lattice.
    std::uint64_t max_subgroup_enum = 100'000;
    // Largest subgroup order closed by breadth-first multiplication.
    std::uint64_t max_closure = 1'000'000;
    // Pair-enumeration bound for the regularity test.
    std::uint64_t max_regular = 3125;
    // Brute-force automorphism search bounds.
    std::uint64_t max_aut_order = 1024;
    int max_aut_rank = 3;
};

struct McfError : std::runtime_error {
    explicit McfError(const std::string& what) : std::runtime_error(what) {}
};

// Input could not be parsed or violates a precondition.
struct InputError : McfError {
    explicit InputError(const std::string& what) : McfError(what) {}
};

// A configured cap was exceeded; the result was not computed.
struct CapError : McfError {
    explicit CapError(const std::string& what) : McfError(what) {}
};

// A verification step that should be impossible to fail has failed
// (inconsistent presentation, non-multiplicative map, ...).
struct VerifyError : McfError {
    explicit VerifyError(const std::string& what) : McfError(what) {}
};

} // namespace mcf
