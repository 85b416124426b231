#include "mcf/report.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace mcf {

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InputError("JSON parse error in " + path + ": " + e.what());
    }
    return j;
}

namespace {

Elt elt_from_json(const Json& arr) {
    Elt e;
    for (const auto& v : arr) {
        long long x = v.get<long long>();
        if (x < 0 || x > 65535) throw InputError("entry out of range");
        e.push_back(static_cast<std::uint16_t>(x));
    }
    return e;
}

} // namespace

GroupPtr group_from_json(const Json& j, const Caps& caps) {
    if (j.contains("degree")) {
        int degree = j.at("degree").get<int>();
        std::vector<Elt> gens;
        for (const auto& g : j.at("generators")) gens.push_back(elt_from_json(g));
        return Group::make_perm(degree, std::move(gens));
    }
    if (j.contains("prime")) {
        PcPresentation pres;
        pres.p = j.at("prime").get<int>();
        pres.ngens = j.at("ngens").get<int>();
        if (j.contains("powers"))
            for (const auto& [k, v] : j.at("powers").items())
                pres.powers[std::stoi(k)] = elt_from_json(v);
        if (j.contains("commutators"))
            for (const auto& [k, v] : j.at("commutators").items()) {
                auto comma = k.find(',');
                if (comma == std::string::npos)
                    throw InputError("commutator key must be \"j,i\"");
                int jj = std::stoi(k.substr(0, comma));
                int ii = std::stoi(k.substr(comma + 1));
                pres.comms[{jj, ii}] = elt_from_json(v);
            }
        return Group::make_pc(std::move(pres), caps);
    }
    throw InputError(
        "group JSON must contain \"degree\" (permutation) or \"prime\" (PC)");
}

GroupPtr load_group_file(const std::string& path, const Caps& caps) {
    return group_from_json(load_json_file(path), caps);
}

std::string data_dir() {
    if (const char* env = std::getenv("MCF_DATA_DIR")) return env;
    return MCF_DATA_DIR;
}

std::string digest_bytes(const std::string& bytes) {
    // Two FNV-1a passes with different offsets, concatenated to 128 bits.
    auto fnv = [&](std::uint64_t h) {
        for (unsigned char c : bytes) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        return h;
    };
    std::uint64_t a = fnv(0xcbf29ce484222325ULL);
    std::uint64_t b = fnv(0x9e3779b97f4a7c15ULL);
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << a;
    os.width(16);
    os << b;
    return os.str();
}

std::string tool_version() { return "mcf 1.0.0"; }

} // namespace mcf
