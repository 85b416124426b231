#pragma once

#include "mcf/group.hpp"

#include <json.hpp>

#include <string>

namespace mcf {

using Json = nlohmann::ordered_json;

Json load_json_file(const std::string& path);

// Group files: either {"degree": n, "generators": [[...], ...]} or
// {"prime": p, "ngens": n, "powers": {"i": [...]},
//  "commutators": {"j,i": [...]}} with 0-based generator indices and omitted
// relations meaning trivial.
GroupPtr group_from_json(const Json& j, const Caps& caps = {});
GroupPtr load_group_file(const std::string& path, const Caps& caps = {});

// Root of the shipped data files (tables, corpus); the MCF_DATA_DIR
// compile-time default can be overridden with the environment variable of
// the same name.
std::string data_dir();

// Stable hex digest of a byte string (FNV-1a, 128-bit variant); used for
// cache keys and input identification in reports.
std::string digest_bytes(const std::string& bytes);

std::string tool_version();

} // namespace mcf
