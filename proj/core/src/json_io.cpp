#include "cosetiq/json_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "cosetiq/version.hpp"

namespace cosetiq {

uint64_t fnv1a64(std::string_view data) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string fnv1a64_hex(std::string_view data) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(data);
    return os.str();
}

namespace {

std::string hex_key(uint64_t key) {
    std::ostringstream os;
    os << std::hex << key;
    return os.str();
}


}  // namespace

nlohmann::json decomposition_to_json(const CosetDecomposition& dec) {
    nlohmann::json buckets = nlohmann::json::array();
    for (const auto& b : dec.buckets())
        buckets.push_back({{"label", b.label.text_key()},
                           {"size", b.size.str()},
                           {"rep", hex_key(b.rep_key)}});
    return {{"alpha", dec.alpha()},
            {"n", dec.n()},
            {"q", dec.q()},
            {"buckets", buckets},
            {"total", dec.total().str()}};
}

nlohmann::json structure_to_json(const StructureTable& t) {
    nlohmann::json constants = nlohmann::json::array();
    const size_t N = t.N();
    for (size_t mu = 0; mu < N; ++mu)
        for (size_t nu = 0; nu < N; ++nu)
            for (size_t ka = 0; ka < N; ++ka)
                if (t.at(mu, nu, ka) != 0)
                    constants.push_back({{"mu", mu},
                                         {"nu", nu},
                                         {"kappa", ka},
                                         {"c", rat_str(t.at(mu, nu, ka))}});
    return {{"basis", t.basis},  {"alpha", t.alpha},     {"n", t.n},
            {"q", t.q},          {"labels", t.labels},   {"route", t.route},
            {"constants", constants}};
}

StructureTable structure_from_json(const nlohmann::json& j) {
    StructureTable t;
    t.basis = j.at("basis");
    t.alpha = j.at("alpha");
    t.n = j.at("n");
    t.q = j.at("q");
    t.labels = j.at("labels").get<std::vector<std::string>>();
    t.route = j.value("route", "unknown");
    t.c.assign(t.N() * t.N() * t.N(), Rat(0));
    for (const auto& e : j.at("constants"))
        t.at(e.at("mu"), e.at("nu"), e.at("kappa")) = parse_rat(e.at("c"));
    return t;
}

namespace {

nlohmann::json poly_to_coeffs(const RatPoly& p) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& c : p.coeffs()) a.push_back(rat_str(c));
    return a;
}

RatPoly poly_from_coeffs(const nlohmann::json& a) {
    std::vector<Rat> c;
    for (const auto& s : a) c.push_back(parse_rat(s));
    return RatPoly(std::move(c));
}

}  // namespace

nlohmann::json poly_table_to_json(const PolyTable& t) {
    nlohmann::json constants = nlohmann::json::array();
    const size_t N = t.N();
    for (size_t mu = 0; mu < N; ++mu)
        for (size_t nu = 0; nu < N; ++nu)
            for (size_t ka = 0; ka < N; ++ka)
                if (!t.at(mu, nu, ka).is_zero())
                    constants.push_back({{"mu", mu},
                                         {"nu", nu},
                                         {"kappa", ka},
                                         {"c", poly_to_coeffs(t.at(mu, nu, ka))}});
    return {{"basis", t.basis},
            {"alpha", t.alpha},
            {"q", t.q},
            {"labels", t.labels},
            {"constants", constants}};
}

PolyTable poly_table_from_json(const nlohmann::json& j) {
    PolyTable t;
    t.basis = j.at("basis");
    t.alpha = j.at("alpha");
    t.q = j.at("q");
    t.labels = j.at("labels").get<std::vector<std::string>>();
    t.c.assign(t.N() * t.N() * t.N(), RatPoly());
    for (const auto& e : j.at("constants"))
        t.at(e.at("mu"), e.at("nu"), e.at("kappa")) = poly_from_coeffs(e.at("c"));
    return t;
}

nlohmann::json interpolation_to_json(const InterpolationResult& res,
                                     const std::vector<StructureTable>& samples_for_hash) {
    nlohmann::json j = poly_table_to_json(res.table);
    nlohmann::json provenance = nlohmann::json::array();
    for (const auto& s : samples_for_hash) {
        std::string dump = structure_to_json(s).dump();
        provenance.push_back({{"n", s.n},
                              {"t", int_pow(s.q, s.n).str()},
                              {"route", s.route},
                              {"hash", "fnv64:" + fnv1a64_hex(dump)}});
    }
    j["sample_points"] = provenance;
    j["fit_ns"] = res.sample_ns;
    j["holdout_n"] = res.holdout_n;
    j["holdout_route"] = res.holdout_route;
    j["stabilized"] = res.stabilized;
    j["max_degree"] = res.max_degree;
    if (!res.note.empty()) j["note"] = res.note;
    return j;
}

nlohmann::json relation_report_to_json(const RelationReport& rep) {
    nlohmann::json fams = nlohmann::json::array();
    for (const auto& f : rep.families)
        fams.push_back({{"name", f.name},
                        {"instances", f.instances},
                        {"failures", f.failures},
                        {"notes", f.notes}});
    return {{"alpha", rep.alpha},
            {"n", rep.n},
            {"q", rep.q},
            {"families", fams},
            {"all_pass", rep.all_pass()},
            {"active_families", rep.active_families()},
            {"total_instances", rep.total_instances()}};
}

nlohmann::json m_report_to_json(const MReport& rep) {
    return {{"alpha", rep.alpha},
            {"n", rep.n},
            {"q", rep.q},
            {"multiplicative", rep.multiplicative},
            {"theta_value", rat_str(rep.theta_value)},
            {"coset_size_formula", rat_str(rep.coset_size_formula)},
            {"pr_m_formula", rat_str(rep.pr_m_formula)},
            {"printed_37_formula", rat_str(rep.printed_37_formula)},
            {"matches_coset_size", rep.matches_coset_size},
            {"matches_pr_m", rep.matches_pr_m},
            {"matches_printed_37", rep.matches_printed_37},
            {"discrepancy_note", rep.discrepancy_note}};
}

nlohmann::json filtration_report_to_json(const FiltrationReport& rep) {
    nlohmann::json sig = nlohmann::json::array();
    for (const auto& s : rep.sigma_expected) sig.push_back(s.str());
    return {{"alpha", rep.alpha},
            {"n", rep.n},
            {"q", rep.q},
            {"gr_dims", rep.gr_dims},
            {"sigma_expected", sig},
            {"dims_match", rep.dims_match},
            {"basis_invertible", rep.basis_invertible},
            {"unitriangular", rep.unitriangular},
            {"degree_bound", rep.degree_bound},
            {"independence", {{"instances", rep.indep_instances}, {"failures", rep.indep_failures}}},
            {"restriction", {{"instances", rep.restrict_instances}, {"failures", rep.restrict_failures}}},
            {"l1l2", {{"instances", rep.l1l2_instances}, {"failures", rep.l1l2_failures}}},
            {"vanishing", {{"instances", rep.vanishing_instances}, {"failures", rep.vanishing_failures}}},
            {"pass", rep.pass}};
}

nlohmann::json semisimplicity_to_json(const SemisimplicityReport& rep) {
    nlohmann::json roots = nlohmann::json::array();
    for (const auto& r : rep.exact_roots) roots.push_back(rat_str(r));
    nlohmann::json det = nlohmann::json::array();
    for (const auto& c : rep.gram_det.coeffs()) det.push_back(rat_str(c));
    return {{"alpha", rep.alpha},
            {"q", rep.q},
            {"gram_det_coeffs", det},
            {"gram_det", rep.gram_det.to_string()},
            {"exact_roots", roots},
            {"approx_real_roots", rep.approx_real_roots},
            {"residual_degree", rep.residual_degree},
            {"checked_n", rep.checked_n},
            {"nonvanishing_at_integers", rep.nonvanishing_at_integers},
            {"pass", rep.pass}};
}

void write_artifact(const std::string& path, const std::string& kind,
                    const nlohmann::json& payload) {
    nlohmann::json j;
    j["kind"] = kind;
    j["meta"] = {{"tool", kToolName},
                 {"version", kToolVersion},
                 {"recipes", kRecipeIds},
                 {"payload_hash", "fnv64:" + fnv1a64_hex(payload.dump())}};
    j["payload"] = payload;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write artifact " + path);
    out << j.dump(2) << "\n";
}

ArtifactReadResult read_artifact(const std::string& path, const std::string& kind) {
    ArtifactReadResult res;
    std::ifstream in(path);
    if (!in) return res;
    res.found = true;
    nlohmann::json j;
    try {
        in >> j;
        if (j.value("kind", "") != kind) return res;
        const auto& meta = j.at("meta");
        if (meta.value("version", "") != kToolVersion ||
            meta.value("recipes", "") != kRecipeIds)
            return res;
        std::string want = meta.value("payload_hash", "");
        res.payload = j.at("payload");
        res.hash_ok = want == "fnv64:" + fnv1a64_hex(res.payload.dump());
    } catch (const nlohmann::json::exception&) {
        res.hash_ok = false;
    }
    return res;
}

}  // namespace cosetiq
