// mcf: analyses of maximal class p-groups, their fusion systems, and the
// companion SL2 polynomial modules. Subcommands: analyze, fusion, rep,
// classify, corpus.

#include <CLI11.hpp>

#include "mcf/classify.hpp"
#include "mcf/corpus.hpp"
#include "mcf/fusion.hpp"
#include "mcf/repsl2.hpp"
#include "mcf/report.hpp"
#include "mcf/scan.hpp"
#include "mcf/subgroups.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace mcf;

namespace {

struct GlobalOpts {
    std::uint64_t max_scan = 10'000'000;
    std::uint64_t max_subgroup_enum = 100'000;
    std::string json_path;
    bool strict = false;
    bool no_cache = false;

    Caps caps() const {
        Caps c;
        c.max_scan = max_scan;
        c.max_subgroup_enum = max_subgroup_enum;
        return c;
    }
};

std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Reports are emitted without wall-clock fields so repeated runs are
// byte-identical; timings go to stderr.
void emit(const GlobalOpts& g, const Json& report) {
    std::string text = report.dump(2);
    text.push_back('\n');
    if (g.json_path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::string tmp = g.json_path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write " + tmp);
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
    }
    if (std::rename(tmp.c_str(), g.json_path.c_str()) != 0)
        throw InputError("cannot replace " + g.json_path);
}

std::string cache_dir() {
    const char* d = std::getenv("MCF_CACHE_DIR");
    return d ? std::string(d) : std::string();
}

// Single-writer disk cache for full reports, keyed by the digest of the
// command and its inputs; replacement is write-to-temp plus rename.
bool cache_lookup(const GlobalOpts& g, const std::string& key, Json* out) {
    if (g.no_cache || cache_dir().empty()) return false;
    std::ifstream in(cache_dir() + "/" + key + ".json", std::ios::binary);
    if (!in) return false;
    try {
        *out = Json::parse(in);
        return true;
    } catch (...) {
        return false;
    }
}

void cache_store(const GlobalOpts& g, const std::string& key, const Json& report) {
    if (g.no_cache || cache_dir().empty()) return;
    std::string base = cache_dir() + "/" + key + ".json";
    std::string tmp = base + ".tmp";
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;
    out << report.dump(2) << "\n";
    out.close();
    std::rename(tmp.c_str(), base.c_str());
}

Json orders_of(const std::vector<Subgroup>& subs) {
    Json a = Json::array();
    for (const Subgroup& s : subs) a.push_back(s.order());
    return a;
}

Json profile_json(const MaxClassProfile& prof) {
    Json j;
    j["p"] = prof.p;
    j["n"] = prof.n;
    j["class"] = prof.group_class;
    j["is_maximal_class"] = prof.is_maximal_class;
    if (prof.is_maximal_class) {
        j["exceptional"] = prof.is_exceptional;
        j["gamma_series_orders"] = orders_of(prof.gamma_series);
        j["z_series_orders"] = orders_of(prof.z_series);
        if (prof.n >= 4) {
            j["gamma1_order"] = prof.gamma1.order();
            j["gamma1_abelian"] = prof.gamma1.is_abelian();
            j["cz2_order"] = prof.cz2.order();
            j["degree_of_commutativity"] = prof.degree_of_commutativity;
            j["doc_capped"] = prof.doc_capped;
        }
    }
    return j;
}

// Sections that blow a cap are recorded as capped instead of aborting the
// whole run, unless --strict asks for the hard error.
template <typename Fn>
void guarded_section(const GlobalOpts& g, Json& report, const std::string& name,
                     Fn&& fn) {
    try {
        report[name] = fn();
    } catch (const CapError& e) {
        if (g.strict) throw;
        Json note;
        note["capped"] = true;
        note["error"] = e.what();
        report[name] = note;
    }
}

Json theorem_case_json(const TheoremCaseReport& r) {
    Json j;
    j["theorem"] = std::string(1, r.theorem);
    j["case"] = r.case_path;
    Json checks = Json::array();
    for (const CheckResult& c : r.checks) {
        Json cj;
        cj["assertion"] = c.assertion;
        cj["status"] = check_status_name(c.status);
        if (!c.detail.empty()) cj["detail"] = c.detail;
        checks.push_back(cj);
    }
    j["checks"] = checks;
    return j;
}

Json header_json(const std::string& command, const std::string& input_bytes) {
    Json j;
    j["tool_version"] = tool_version();
    j["command"] = command;
    j["input_digest"] = digest_bytes(input_bytes);
    return j;
}

int run_analyze(const GlobalOpts& g, const std::string& file) {
    std::string bytes = read_file_bytes(file);
    std::string key = digest_bytes("analyze\n" + bytes + tool_version() +
                                   std::to_string(g.max_scan));
    Json report;
    if (!cache_lookup(g, key, &report)) {
        Caps caps = g.caps();
        GroupPtr grp = group_from_json(Json::parse(bytes), caps);
        report = header_json("analyze", bytes);
        report["order"] = grp->order();
        Subgroup whole = Subgroup::whole(grp, caps);
        int p = p_group_prime(whole);
        report["p"] = p;
        MaxClassProfile prof = maxclass_profile(whole, caps);
        report["profile"] = profile_json(prof);
        guarded_section(g, report, "structure", [&] {
            Json s;
            s["center_order"] = center_of(whole).order();
            s["derived_order"] = derived_of(whole).order();
            s["frattini_order"] = frattini_of(whole, p, caps).order();
            s["exponent"] = exponent_of(whole);
            s["omega1_order"] = omega1(whole, p, caps).order();
            s["agemo1_order"] = agemo1(whole, p, caps).order();
            s["regular"] = is_regular(whole, p, caps);
            return s;
        });
        guarded_section(g, report, "automorphisms", [&] {
            std::vector<GroupMap> auts = aut_group_bruteforce(whole, caps);
            Json a;
            a["aut_order"] = auts.size();
            if (prof.is_maximal_class && prof.n >= 4) {
                Json acts = Json::array();
                for (const GroupMap& phi : auts) {
                    GroupMap psi = p_prime_part(phi, p);
                    if (psi.is_identity()) continue;
                    DeltaElement d = mu(whole, psi, caps);
                    ActionExponents e = action_exponents(whole, psi, caps);
                    Json one;
                    one["order"] = psi.map_order();
                    one["mu"] = Json::array({d.r, d.s});
                    one["exponents"] = e.e;
                    one["exceptional_tail"] = e.exceptional_tail;
                    acts.push_back(one);
                }
                a["p_prime_actions"] = acts;
            }
            return a;
        });
        cache_store(g, key, report);
    }
    emit(g, report);
    return 0;
}

Json essentials_json(const std::vector<EssentialReport>& es) {
    Json arr = Json::array();
    for (const EssentialReport& e : es) {
        Json j;
        j["order"] = e.subgroup.order();
        j["tag"] = essential_tag_name(e.tag);
        j["out_order"] = e.out_order;
        j["pearl_index"] = e.pearl_index;
        j["fusion_class_size"] = e.fclass_size;
        j["s_class_size"] = e.sclass_size;
        arr.push_back(j);
    }
    return arr;
}

int run_fusion(const GlobalOpts& g, const std::string& file, int p,
               const std::string& sylow_mode, const std::string& mode) {
    std::string bytes = read_file_bytes(file);
    std::string key = digest_bytes("fusion\n" + bytes + sylow_mode + mode +
                                   std::to_string(p) + tool_version() +
                                   std::to_string(g.max_scan));
    Json report;
    if (!cache_lookup(g, key, &report)) {
        Caps caps = g.caps();
        GroupPtr grp = group_from_json(Json::parse(bytes), caps);
        Subgroup S;
        if (sylow_mode == "gens") {
            // the ambient file's own generators present the p-group itself
            S = Subgroup::whole(grp, caps);
            if (p <= 0) p = p_group_prime(S);
        } else {
            if (p <= 0)
                throw InputError("fusion: --sylow auto needs -p");
            S = sylow_p(grp, p, caps);
        }
        FusionSystem F = FusionSystem::realizable(grp, S, caps);

        report = header_json("fusion", bytes);
        report["ambient_order"] = grp->order();
        report["p"] = F.prime();
        report["sylow_order"] = S.order();
        MaxClassProfile prof = maxclass_profile(S, caps);
        report["profile"] = profile_json(prof);

        guarded_section(g, report, "essentials", [&] {
            EssentialMode m = mode == "theoremD" ? EssentialMode::TheoremD
                                                 : EssentialMode::Brute;
            return essentials_json(F.essential_subgroups(m));
        });
        guarded_section(g, report, "focal", [&] {
            FocalData fd = F.focal_data();
            Json j;
            j["foc_order"] = fd.foc.order();
            j["hyp_order"] = fd.hyp.order();
            j["index_s_hyp"] = fd.index_s_hyp;
            j["op_order"] = fd.op_f.order();
            return j;
        });
        if (prof.is_maximal_class && prof.n >= 4) {
            guarded_section(g, report, "theorem_d", [&] {
                TheoremDReport td = F.verify_theorem_D();
                Json j;
                j["pass"] = td.pass;
                j["message"] = td.message;
                return j;
            });
            if (prof.p >= 3) {
                guarded_section(g, report, "theorem_case", [&] {
                    return theorem_case_json(theorem_case(summarize_fusion(F, caps)));
                });
            }
        }
        cache_store(g, key, report);
    }
    emit(g, report);
    return 0;
}

// token like "x4", "y3" or "x2y1": a monomial in the degree-(a+b) module
std::vector<int> parse_monomial(const std::string& tok, int* degree) {
    int a = 0, b = 0;
    std::size_t i = 0;
    auto take = [&](char var, int* out) {
        if (i < tok.size() && tok[i] == var) {
            ++i;
            std::size_t start = i;
            while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) ++i;
            *out = start == i ? 1 : std::stoi(tok.substr(start, i - start));
        }
    };
    take('x', &a);
    take('y', &b);
    if (i != tok.size() || (a == 0 && b == 0 && tok != "1"))
        throw InputError("rep: cannot parse monomial " + tok);
    *degree = a + b;
    std::vector<int> v(a + b + 1, 0);
    v[b] = 1;  // basis order x^(d-j) y^j
    return v;
}

int run_rep(const GlobalOpts& g, const std::string& sub, int p, int d, int e,
            int r, const std::vector<std::string>& monomials) {
    Json report;
    report["tool_version"] = tool_version();
    report["command"] = "rep " + sub;
    if (sub == "tensor") {
        Decomposition dec = clebsch_gordan_decompose(p, d, e);
        report["p"] = p;
        report["d"] = d;
        report["e"] = e;
        report["summands"] = dec.degrees;
    } else if (sub == "lambda2" || sub == "s2") {
        SymAltDecomposition dec = lambda2_s2_decompose(p, d);
        report["p"] = p;
        report["d"] = d;
        report["summands"] = sub == "s2" ? dec.s2_degrees : dec.lambda2_degrees;
    } else if (sub == "transvect") {
        if (monomials.size() != 2)
            throw InputError("rep transvect: expected two monomials");
        int dd = 0, ee = 0;
        std::vector<int> f = parse_monomial(monomials[0], &dd);
        std::vector<int> h = parse_monomial(monomials[1], &ee);
        std::vector<int> tensor(f.size() * h.size(), 0);
        for (std::size_t i = 0; i < f.size(); ++i)
            for (std::size_t j = 0; j < h.size(); ++j)
                tensor[i * h.size() + j] = f[i] * h[j];
        std::vector<int> out = transvectant(p, dd, ee, r, tensor);
        report["p"] = p;
        report["d"] = dd;
        report["e"] = ee;
        report["r"] = r;
        report["coefficients"] = out;
        report["nonzero"] = std::any_of(out.begin(), out.end(),
                                        [](int c) { return c != 0; });
    } else {
        throw InputError("rep: unknown subcommand " + sub);
    }
    emit(g, report);
    return 0;
}

int run_classify_family(const GlobalOpts& g, int p, int r, int a) {
    auto [grp, cert] = construct_example_family(p, r, a, g.caps());
    Json report;
    report["tool_version"] = tool_version();
    report["command"] = "classify family";
    report["p"] = cert.p;
    report["r"] = cert.r;
    report["a"] = cert.a;
    report["k"] = cert.k;
    report["entry_group_order"] = cert.t_order;
    report["field_poly"] = cert.field_poly;
    report["group_order"] = cert.group_order;
    report["pi_diag_centralizer_order"] = cert.pi_diag_centralizer_order;
    report["experimental"] = cert.experimental;
    report["maximal_class"] = cert.maximal_class;
    report["gamma1_abelian"] = cert.gamma1_abelian;
    emit(g, report);
    return 0;
}

int run_classify_table1(const GlobalOpts& g, int p, const std::string& y,
                        const std::string& module, const std::string& mu_cell) {
    Json report;
    report["tool_version"] = tool_version();
    report["command"] = "classify table1";
    auto row = table1_lookup(p, y, module, mu_cell);
    report["found"] = row.has_value();
    if (row) {
        Json j;
        j["row"] = row->row;
        j["p"] = row->p;
        j["Y"] = row->y;
        j["module"] = row->module;
        j["mu"] = row->mu;
        j["pearls"] = row->pearls;
        report["match"] = j;
    }
    emit(g, report);
    return 0;
}

int run_classify_table3(const GlobalOpts& g, const std::string& family, int p) {
    Json report;
    report["tool_version"] = tool_version();
    report["command"] = "classify table3";
    auto row = table3_lookup(family, p);
    report["found"] = row.has_value();
    if (row) {
        Json j;
        j["line"] = row->line;
        j["G"] = row->g;
        j["p"] = row->p;
        j["conditions"] = row->conditions;
        j["rank"] = row->rank;
        j["e"] = row->e;
        j["order"] = row->order;
        j["aut"] = row->aut;
        j["pearls"] = row->pearls;
        report["match"] = j;
    }
    emit(g, report);
    return 0;
}

int run_classify_table21(const GlobalOpts& g, int p, int m,
                         const std::string& image_name) {
    std::vector<DeltaElement> image;
    if (image_name == "full") {
        for (int r = 1; r < p; ++r)
            for (int s = 1; s < p; ++s) image.push_back({r, s});
    } else if (image_name == "delta-1") {
        image = delta_subgroup(p, -1).elements;
    } else if (image_name == "delta0") {
        image = delta_subgroup(p, 0).elements;
    } else if (image_name == "trivial") {
        image = {{1, 1}};
    } else {
        throw InputError("classify table21: image must be full|delta-1|delta0|trivial");
    }
    Json report;
    report["tool_version"] = tool_version();
    report["command"] = "classify table21";
    std::string why;
    Json rows = Json::array();
    for (const Table21Row& row : table21_constellation(image, m, p, &why)) {
        Json j;
        j["id"] = row.id;
        j["X"] = row.x;
        j["pearls"] = row.pearls;
        rows.push_back(j);
    }
    report["rows"] = rows;
    if (!why.empty()) report["note"] = why;
    emit(g, report);
    return 0;
}

int run_classify_case(const GlobalOpts& g, const std::string& file) {
    Json in = Json::parse(read_file_bytes(file));
    FSummary s;
    s.p = in.at("p").get<int>();
    s.n = in.at("n").get<int>();
    s.exceptional = in.value("exceptional", false);
    std::string g1 = in.value("gamma1", "other");
    s.gamma1 = g1 == "abelian"        ? Gamma1Shape::Abelian
               : g1 == "extraspecial" ? Gamma1Shape::Extraspecial
                                      : Gamma1Shape::Other;
    for (const Json& t : in.value("essentials", Json::array())) {
        std::string name = t.get<std::string>();
        if (name == "abelian-pearl") s.essentials.push_back(EssentialTag::AbelianPearl);
        else if (name == "extraspecial-pearl") s.essentials.push_back(EssentialTag::ExtraspecialPearl);
        else if (name == "quaternion-pearl") s.essentials.push_back(EssentialTag::QuaternionPearl);
        else if (name == "gamma1") s.essentials.push_back(EssentialTag::Gamma1);
        else if (name == "two-step-centralizer") s.essentials.push_back(EssentialTag::CZ2);
        else throw InputError("classify case: unknown essential tag " + name);
    }
    std::string op = in.value("op", "unknown");
    s.op = op == "trivial"  ? OpShape::Trivial
           : op == "center" ? OpShape::Center
           : op == "cz2"    ? OpShape::CZ2
           : op == "other"  ? OpShape::Other
                            : OpShape::Unknown;
    s.index_s_hyp = in.value("index_s_hyp", 0);
    s.out_s_order = in.value("out_s_order", 0);
    s.out_s_cyclic = in.value("out_s_cyclic", -1);
    s.out_gamma1_order = in.value("out_gamma1_order", 0);
    s.out_cz2_order = in.value("out_cz2_order", 0);
    Json report;
    report["tool_version"] = tool_version();
    report["command"] = "classify case";
    report["theorem_case"] = theorem_case_json(theorem_case(s));
    emit(g, report);
    return 0;
}

int run_classify_fusion(const GlobalOpts& g, const std::string& file, int p) {
    std::string bytes = read_file_bytes(file);
    Caps caps = g.caps();
    GroupPtr grp = group_from_json(Json::parse(bytes), caps);
    Subgroup S = p > 0 ? sylow_p(grp, p, caps) : Subgroup::whole(grp, caps);
    FusionSystem F = FusionSystem::realizable(grp, S, caps);
    Json report = header_json("classify fusion", bytes);
    FSummary sum = summarize_fusion(F, caps);
    report["p"] = sum.p;
    report["n"] = sum.n;
    report["exceptional"] = sum.exceptional;
    Json tags = Json::array();
    for (EssentialTag t : sum.essentials) tags.push_back(essential_tag_name(t));
    report["essentials"] = tags;
    report["out_s_order"] = sum.out_s_order;
    report["out_gamma1_order"] = sum.out_gamma1_order;
    report["index_s_hyp"] = sum.index_s_hyp;
    report["theorem_case"] = theorem_case_json(theorem_case(sum));
    std::vector<DeltaElement> img = mu1_image(F, caps);
    Json ij = Json::array();
    for (const DeltaElement& dlt : img) ij.push_back(Json::array({dlt.r, dlt.s}));
    report["mu1_image"] = ij;
    MaxClassProfile prof = maxclass_profile(S, caps);
    int m = 0;
    for (std::uint64_t o = prof.gamma1.order(); o > 1; o /= sum.p) ++m;
    std::string why;
    Json rows = Json::array();
    for (const Table21Row& row : table21_constellation(img, m, sum.p, &why)) {
        Json j;
        j["id"] = row.id;
        j["pearls"] = row.pearls;
        rows.push_back(j);
    }
    report["constellation"] = rows;
    if (!why.empty()) report["constellation_note"] = why;
    emit(g, report);
    return 0;
}

int run_corpus(const GlobalOpts& g, const std::string& only, bool inject_fake) {
    Caps caps = g.caps();
    Json report;
    report["tool_version"] = tool_version();
    report["command"] = "corpus run";
    Json results = Json::array();
    int failures = 0;
    int selected = 0;
    for (const CorpusEntry& entry : corpus_entries()) {
        if (!only.empty() && entry.name != only) continue;
        ++selected;
        Json j;
        j["name"] = entry.name;
        std::vector<std::string> bad;
        try {
            GroupPtr grp = corpus_group(entry.name, caps);
            Subgroup whole = Subgroup::whole(grp, caps);
            if (grp->order() == 0) bad.push_back("empty group");
            bool is_p_group = true;
            {
                std::uint64_t o = grp->order();
                while (o % entry.p == 0) o /= entry.p;
                is_p_group = (o == 1);
            }
            if (is_p_group) {
                MaxClassProfile prof = maxclass_profile(whole, caps);
                if (prof.is_maximal_class != entry.maximal_class_expected)
                    bad.push_back("maximal class flag mismatch");
                if (!center_of(whole).is_abelian()) bad.push_back("center not abelian");
                if (!derived_of(whole).is_normal_in(whole))
                    bad.push_back("derived subgroup not normal");
            } else if (entry.maximal_class_expected) {
                bad.push_back("non-p-group marked maximal class");
            }
            if (entry.fusion_prime > 0) {
                Subgroup S = is_p_group ? whole : sylow_p(grp, entry.fusion_prime, caps);
                FusionSystem F = FusionSystem::realizable(grp, S, caps);
                FocalData fd = F.focal_data();
                // independent oracle: foc = S meet the ambient derived group;
                // the BSGS normal-closure path needs the permutation backend,
                // small PC/table ambients use the element-closure subgroup
                std::uint64_t meet = 0;
                if (grp->backend() == Backend::Perm) {
                    GroupPtr dg = derived_group(grp, caps);
                    for (const Elt& x : S.elements())
                        if (dg->contains(x)) ++meet;
                } else {
                    Subgroup d = derived_of(whole);
                    for (const Elt& x : S.elements())
                        if (d.contains(x)) ++meet;
                }
                if (meet != fd.foc.order())
                    bad.push_back("focal subgroup oracle mismatch");
                if (!fd.op_f.is_normal_in(S)) bad.push_back("O_p not normal");
                if (inject_fake) {
                    // negative control: claim the center is essential and
                    // demand the claim survive the essential test
                    Subgroup fake = center_of(S);
                    if (!F.is_essential(fake))
                        bad.push_back("injected essential claim rejected");
                }
            }
        } catch (const std::exception& e) {
            bad.push_back(std::string("exception: ") + e.what());
        }
        j["pass"] = bad.empty();
        if (!bad.empty()) {
            j["failures"] = bad;
            ++failures;
        }
        results.push_back(j);
    }
    report["selected"] = selected;
    report["failures"] = failures;
    report["results"] = results;
    emit(g, report);
    return failures == 0 ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"maximal class p-group and fusion system toolkit"};
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_option("--max-scan", g.max_scan, "largest group order for element scans");
    app.add_option("--max-subgroup-enum", g.max_subgroup_enum,
                   "largest subgroup lattice walked");
    app.add_option("--json", g.json_path, "write the report to this path");
    app.add_flag("--strict", g.strict, "turn capped sections into hard errors");
    app.add_flag("--no-cache", g.no_cache, "bypass the disk cache");

    std::string file, sylow_mode = "auto", mode = "brute";
    int p = 0, d = 0, e = 0, r = 0;
    std::string rep_sub, y_cell, module_cell, mu_cell, family, only;
    std::vector<std::string> monomials;
    int fam_p = 0, fam_r = 0, fam_a = 1;
    bool inject_fake = false;

    CLI::App* analyze = app.add_subcommand("analyze", "p-group structure report");
    analyze->add_option("file", file, "group JSON file")->required();

    CLI::App* fusion = app.add_subcommand("fusion", "fusion system report");
    fusion->add_option("file", file, "ambient group JSON file")->required();
    fusion->add_option("-p", p, "the prime");
    fusion->add_option("--sylow", sylow_mode, "auto|gens")
        ->check(CLI::IsMember({"auto", "gens"}));
    fusion->add_option("--mode", mode, "brute|theoremD")
        ->check(CLI::IsMember({"brute", "theoremD"}));

    CLI::App* rep = app.add_subcommand("rep", "polynomial module computations");
    rep->add_option("subcommand", rep_sub, "tensor|lambda2|s2|transvect")->required();
    rep->add_option("-p", p, "the prime")->required();
    rep->add_option("-d", d, "first degree");
    rep->add_option("-e", e, "second degree");
    rep->add_option("-r", r, "transvectant index");
    rep->add_option("monomials", monomials, "monomials like x4 y4");

    CLI::App* classify = app.add_subcommand("classify", "classification tables and cases");
    CLI::App* cfam = classify->add_subcommand("family", "monomial/semilinear example family");
    cfam->add_option("-p", fam_p, "the prime")->required();
    cfam->add_option("-r", fam_r, "the entry characteristic")->required();
    cfam->add_option("-a", fam_a, "exponent with p | r^a - 1");
    CLI::App* ct1 = classify->add_subcommand("table1", "row lookup");
    ct1->add_option("-p", p, "the prime")->required();
    ct1->add_option("--y", y_cell, "group cell");
    ct1->add_option("--module", module_cell, "module cell");
    ct1->add_option("--mu", mu_cell, "mu image cell");
    int m21 = -1;
    std::string image_name = "full", summary_file;
    CLI::App* ct21 = classify->add_subcommand("table21", "constellation lookup");
    ct21->add_option("-p", p, "the prime")->required();
    ct21->add_option("--m", m21, "|gamma_1| exponent, -1 for unconstrained");
    ct21->add_option("--image", image_name, "full|delta-1|delta0|trivial");
    CLI::App* ccase = classify->add_subcommand("case", "theorem case for a summary file");
    ccase->add_option("summary", summary_file, "F-summary JSON file")->required();
    CLI::App* ct3 = classify->add_subcommand("table3", "family lookup");
    ct3->add_option("--family", family, "ambient family")->required();
    ct3->add_option("-p", p, "the prime")->required();
    CLI::App* cfu = classify->add_subcommand("fusion", "case dispatch for an ambient group");
    cfu->add_option("file", file, "ambient group JSON file")->required();
    cfu->add_option("-p", p, "the prime");
    classify->require_subcommand(1);

    CLI::App* corpus = app.add_subcommand("corpus", "built-in battery");
    CLI::App* crun = corpus->add_subcommand("run", "run the invariant battery");
    crun->add_option("--only", only, "restrict to one entry");
    crun->add_flag("--inject-fake-essential", inject_fake,
                   "negative control: assert a non-essential subgroup is essential");
    corpus->require_subcommand(1);

    // let the global flags appear after a subcommand name too
    for (CLI::App* sub : {analyze, fusion, rep, classify, corpus, cfam, ct1,
                          ct21, ccase, ct3, cfu, crun})
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) return run_analyze(g, file);
        if (*fusion) return run_fusion(g, file, p, sylow_mode, mode);
        if (*rep) return run_rep(g, rep_sub, p, d, e, r, monomials);
        if (*classify) {
            if (*cfam) return run_classify_family(g, fam_p, fam_r, fam_a);
            if (*ct1) return run_classify_table1(g, p, y_cell, module_cell, mu_cell);
            if (*ct21) return run_classify_table21(g, p, m21, image_name);
            if (*ccase) return run_classify_case(g, summary_file);
            if (*ct3) return run_classify_table3(g, family, p);
            if (*cfu) return run_classify_fusion(g, file, p);
        }
        if (*corpus) return run_corpus(g, only, inject_fake);
    } catch (const CapError& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
