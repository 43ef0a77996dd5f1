// cosetiq: exact double-coset convolution algebras for GL(alpha+n, F_q)
// at desk scale, with counting checks, relation verification, and
// structure-constant interpolation in t = q^n.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cosetiq/json_io.hpp"
#include "cosetiq/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cosetiq;

namespace {

struct RunConfig {
    unsigned q = 2, alpha = 1, n = 1;
    std::string basis = "coset";
    uint64_t budget = 20'000'000;
    std::string cache_dir;
    std::string format = "text";
    std::string output;
    unsigned threads = 1;
    bool slow = false;

    Budget budget_opts() const { return Budget{budget}; }
    std::string cache_path(const std::string& stem) const {
        return (fs::path(cache_dir) / (stem + "-v" + kToolVersion + ".json")).string();
    }
};

void emit(const RunConfig& cfg, const std::string& text_summary, const json& payload) {
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!cfg.output.empty()) {
        file.open(cfg.output);
        if (!file) throw std::runtime_error("cannot open output " + cfg.output);
        out = &file;
    }
    if (cfg.format == "json")
        *out << payload.dump(2) << "\n";
    else
        *out << text_summary;
}

json compute_or_cached(const RunConfig& cfg, const std::string& stem, const std::string& kind,
                       const std::function<json()>& compute) {
    fs::create_directories(cfg.cache_dir);
    std::string path = cfg.cache_path(stem);
    auto cached = read_artifact(path, kind);
    if (cached.found && cached.hash_ok) return cached.payload;
    if (cached.found && !cached.hash_ok)
        std::cerr << "warning: cache artifact " << path
                  << " failed its hash check; recomputing\n";
    json payload = compute();
    write_artifact(path, kind, payload);
    return payload;
}

int cmd_counts(const RunConfig& cfg) {
    if (cfg.alpha > cfg.n) throw CLI::ValidationError("counts requires alpha <= n");
    std::ostringstream os, csv;
    bool cv = chu_vandermonde_check(cfg.alpha, cfg.n, cfg.q);
    Int sum = 0;
    os << "q=" << cfg.q << " alpha=" << cfg.alpha << " n=" << cfg.n << "\n";
    os << "rho\tsigma_rho\tkappa_rho\n";
    csv << "rho,sigma_rho,kappa_rho\n";
    json jrows = json::array();
    for (unsigned rho = 0; rho <= cfg.alpha; ++rho) {
        Int s = sigma_rho(cfg.alpha, cfg.q, rho);
        Int k = kappa_rho(cfg.alpha, cfg.n, cfg.q, rho);
        sum += s * k;
        os << rho << "\t" << s.str() << "\t" << k.str() << "\n";
        csv << rho << "," << s.str() << "," << k.str() << "\n";
        jrows.push_back({{"rho", rho}, {"sigma", s.str()}, {"kappa", k.str()}});
    }
    Int h = h_order(cfg.alpha, cfg.n, cfg.q), g = gl_order(cfg.alpha + cfg.n, cfg.q);
    Int pbl = pbl_count(cfg.alpha, cfg.q);
    os << "#PBL(alpha)        = " << pbl.str() << "\n";
    os << "#H(n)              = " << h.str() << "\n";
    os << "#GL(alpha+n)       = " << g.str() << "\n";
    os << "sum sigma*kappa    = " << sum.str() << "  (q-Chu-Vandermonde: "
       << (cv ? "PASS" : "FAIL") << ")\n";
    json payload = {{"q", cfg.q},       {"alpha", cfg.alpha},     {"n", cfg.n},
                    {"rows", jrows},    {"pbl_count", pbl.str()}, {"h_order", h.str()},
                    {"gl_order", g.str()}, {"sum", sum.str()},    {"chu_vandermonde", cv}};
    if (cfg.format == "csv")
        emit(cfg, csv.str(), payload);
    else
        emit(cfg, os.str(), payload);
    return cv ? 0 : 1;
}

int cmd_decompose(const RunConfig& cfg, bool members) {
    std::ostringstream stem;
    stem << "decompose-q" << cfg.q << "-a" << cfg.alpha << "-n" << cfg.n;
    json payload = compute_or_cached(cfg, stem.str(), "decomposition", [&] {
        DecomposeOptions opts;
        opts.keep_members = members;
        opts.budget = cfg.budget_opts();
        opts.threads = cfg.threads;
        CosetDecomposition dec = decompose(cfg.alpha, cfg.n, cfg.q, opts);
        bool size_law = true;
        for (const auto& b : dec.buckets())
            if (b.size != kappa_of_rank(cfg.alpha, cfg.n, cfg.q, b.label.rank()))
                size_law = false;
        json j = decomposition_to_json(dec);
        j["bucket_count_expected"] = pbl_count(cfg.alpha, cfg.q).str();
        j["size_law_pass"] = size_law;
        return j;
    });
    bool pass = payload.value("size_law_pass", false) &&
                std::to_string(payload.at("buckets").size()) ==
                    payload.value("bucket_count_expected", std::string());
    std::ostringstream os;
    os << "decompose q=" << cfg.q << " alpha=" << cfg.alpha << " n=" << cfg.n << ": "
       << payload.at("buckets").size() << " buckets, total " << payload.value("total", "")
       << ", size law " << (payload.value("size_law_pass", false) ? "PASS" : "FAIL") << "\n";
    emit(cfg, os.str(), payload);
    return pass ? 0 : 1;
}

int cmd_structure(const RunConfig& cfg) {
    std::ostringstream stem;
    stem << "structure-q" << cfg.q << "-a" << cfg.alpha << "-n" << cfg.n << "-" << cfg.basis;
    json payload = compute_or_cached(cfg, stem.str(), "structure", [&] {
        StructureTable t = make_sample_table(cfg.alpha, cfg.q, cfg.n, cfg.basis);
        auto assoc = t.check_associativity();
        json j = structure_to_json(t);
        j["associativity_pass"] = assoc.pass;
        j["associativity_quadruples"] = assoc.quadruples;
        return j;
    });
    std::ostringstream os;
    os << "structure q=" << cfg.q << " alpha=" << cfg.alpha << " n=" << cfg.n
       << " basis=" << cfg.basis << ": " << payload.at("labels").size()
       << "-label table (route " << payload.value("route", "?") << "), associativity "
       << (payload.value("associativity_pass", false) ? "PASS" : "FAIL") << "\n";
    emit(cfg, os.str(), payload);
    return payload.value("associativity_pass", false) ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg) {
    std::ostringstream stem;
    stem << "verify-q" << cfg.q << "-a" << cfg.alpha << "-n" << cfg.n;
    json payload = compute_or_cached(cfg, stem.str(), "verify", [&] {
        DecomposeOptions opts;
        opts.keep_members = true;
        opts.budget = cfg.budget_opts();
        opts.threads = cfg.threads;
        AlgebraContext ctx(std::make_shared<const CosetDecomposition>(
            decompose(cfg.alpha, cfg.n, cfg.q, opts)));
        json j;
        j["relations"] = relation_report_to_json(verify_relations(ctx));
        j["m_functional"] = m_report_to_json(m_report(ctx));
        j["filtration"] = filtration_report_to_json(filtration_report(ctx));
        return j;
    });
    const json& rel = payload.at("relations");
    const json& mf = payload.at("m_functional");
    const json& fl = payload.at("filtration");
    bool pass = rel.value("all_pass", false) && mf.value("multiplicative", false) &&
                fl.value("pass", false);
    std::ostringstream os;
    os << "verify q=" << cfg.q << " alpha=" << cfg.alpha << " n=" << cfg.n << ":\n";
    if (rel.value("all_pass", false))
        os << "  all relations PASS (" << rel.value("active_families", 0u)
           << " relation families, " << rel.value("total_instances", 0u) << " instances)\n";
    else {
        os << "  relations FAIL:\n";
        for (const auto& fam : rel.at("families"))
            if (fam.value("failures", 0u) > 0)
                os << "    " << fam.value("name", "") << ": " << fam.value("failures", 0u)
                   << "/" << fam.value("instances", 0u) << " failed\n";
    }
    os << "  M functional: multiplicative " << (mf.value("multiplicative", false) ? "PASS" : "FAIL")
       << "; M(theta(L)) = " << mf.value("theta_value", "") << " matches kappa_1/#H="
       << mf.value("coset_size_formula", "")
       << (mf.value("matches_coset_size", false) ? " (MATCH)" : " (NO MATCH)") << "\n";
    os << "    paper's printed alternatives: pr:M -> " << mf.value("pr_m_formula", "")
       << (mf.value("matches_pr_m", false) ? " (match)" : " (no match)") << ", s3.7 -> "
       << mf.value("printed_37_formula", "")
       << (mf.value("matches_printed_37", false) ? " (match)" : " (no match)") << "\n";
    os << "  filtration: gr dims";
    for (const auto& d : fl.at("gr_dims")) os << " " << d.get<size_t>();
    os << ", basis " << (fl.value("basis_invertible", false) ? "invertible" : "SINGULAR")
       << ", " << (fl.value("unitriangular", false) ? "unitriangular" : "NOT unitriangular")
       << ", checks " << (fl.value("pass", false) ? "PASS" : "FAIL") << "\n";
    emit(cfg, os.str(), payload);
    return pass ? 0 : 1;
}

int cmd_interpolate(const RunConfig& cfg, std::vector<unsigned> sample_ns, unsigned holdout,
                    unsigned max_n) {
    std::ostringstream stem;
    stem << "interpolate-q" << cfg.q << "-a" << cfg.alpha << "-" << cfg.basis;
    if (!sample_ns.empty()) {
        stem << "-s";
        for (unsigned s : sample_ns) stem << s << "_";
        stem << "h" << holdout;
    }
    json payload = compute_or_cached(cfg, stem.str(), "generic", [&] {
        std::vector<StructureTable> samples;
        InterpolationResult res;
        if (!sample_ns.empty()) {
            for (unsigned n : sample_ns)
                samples.push_back(make_sample_table(cfg.alpha, cfg.q, n, cfg.basis));
            samples.push_back(make_sample_table(cfg.alpha, cfg.q, holdout, cfg.basis));
            res = interpolate_tables(samples);
        } else {
            res = interpolate_auto(cfg.alpha, cfg.q, cfg.basis, max_n);
            for (unsigned n : res.sample_ns)
                samples.push_back(make_sample_table(cfg.alpha, cfg.q, n, cfg.basis));
            if (res.stabilized)
                samples.push_back(make_sample_table(cfg.alpha, cfg.q, res.holdout_n, cfg.basis));
        }
        return interpolation_to_json(res, samples);
    });
    PolyTable table = poly_table_from_json(payload);
    std::ostringstream os;
    os << "interpolate q=" << cfg.q << " alpha=" << cfg.alpha << " basis=" << cfg.basis
       << ": " << (payload.value("stabilized", false) ? "stabilized" : "NOT STABILIZED")
       << ", fit n={";
    for (const auto& n : payload.at("fit_ns")) os << n.get<unsigned>() << " ";
    os << "}, held-out n=" << payload.value("holdout_n", 0u) << ", max entry degree "
       << payload.value("max_degree", -1) << "\n";
    // theta(L)^2 row for the first hyperplane idempotent label
    const FieldContext& f = FieldContext::get(cfg.q);
    std::string theta_key =
        PartialBijection::idempotent(all_hyperplanes(f, cfg.alpha).front()).text_key();
    for (size_t i = 0; i < table.labels.size(); ++i) {
        if (table.labels[i] != theta_key) continue;
        os << "  theta(L)^2 row:";
        for (size_t ka = 0; ka < table.N(); ++ka)
            if (!table.at(i, i, ka).is_zero())
                os << "  [" << table.labels[ka] << "] " << table.at(i, i, ka).to_string();
        os << "\n";
    }
    emit(cfg, os.str(), payload);
    return payload.value("stabilized", false) ? 0 : 1;
}

int cmd_semisimple(const RunConfig& cfg, unsigned max_n) {
    std::ostringstream stem;
    stem << "semisimple-q" << cfg.q << "-a" << cfg.alpha;
    json payload = compute_or_cached(cfg, stem.str(), "semisimple", [&] {
        InterpolationResult res = interpolate_auto(cfg.alpha, cfg.q, "pbw", max_n);
        if (!res.stabilized)
            throw std::runtime_error("interpolation did not stabilize; cannot build the "
                                     "generic algebra");
        SemisimplicityReport rep = semisimplicity_locus(res.table, max_n);
        return semisimplicity_to_json(rep);
    });
    std::ostringstream os;
    os << "semisimple q=" << cfg.q << " alpha=" << cfg.alpha << ": det Gram = "
       << payload.value("gram_det", "") << "\n  exact roots (candidate exceptional q^nu):";
    for (const auto& r : payload.at("exact_roots")) os << " " << r.get<std::string>();
    if (payload.value("residual_degree", 0u) > 0) {
        os << "; residual degree " << payload.value("residual_degree", 0u)
           << " with numerically localized real roots:";
        for (const auto& r : payload.at("approx_real_roots")) os << " ~" << r.get<double>();
    }
    os << "\n  nonvanishing at t=q^n for n=" << cfg.alpha << ".."
       << payload.at("checked_n").back().get<unsigned>() << ": "
       << (payload.value("nonvanishing_at_integers", false) ? "PASS" : "FAIL") << "\n";
    emit(cfg, os.str(), payload);
    return payload.value("pass", false) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cosetiq: exact double-coset convolution algebras over GL(alpha+n, F_q)"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    if (const char* env = std::getenv("COSETIQ_CACHE")) cfg.cache_dir = env;
    if (cfg.cache_dir.empty()) cfg.cache_dir = "cosetiq-cache";

    app.add_option("-q,--field", cfg.q, "field size, a prime power <= 64");
    app.add_option("-a,--alpha", cfg.alpha, "alpha (fixed block size)");
    app.add_option("-n", cfg.n, "n (subgroup parameter, alpha <= n)");
    app.add_option("--basis", cfg.basis, "basis for tensors: coset|pbw")
        ->check(CLI::IsMember({"coset", "pbw"}));
    app.add_option("--budget", cfg.budget, "max group elements for enumeration");
    app.add_option("--cache-dir", cfg.cache_dir, "artifact cache directory");
    app.add_option("--format", cfg.format, "output format: text|json|csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("-o,--output", cfg.output, "write output to a file instead of stdout");
    app.add_option("--threads", cfg.threads, "parallelism hint (results are identical)");
    app.add_flag("--slow", cfg.slow, "allow the slow grid points (raises the budget)");

    auto* counts = app.add_subcommand("counts", "sigma/kappa counting formulas and the "
                                                "q-Chu-Vandermonde sum check");
    auto* dec = app.add_subcommand("decompose", "full double-coset decomposition of "
                                                "GL(alpha+n, F_q)");
    bool members = false;
    dec->add_flag("--members", members, "keep member lists (larger cache artifacts)");
    auto* structure = app.add_subcommand("structure", "structure-constant tensor and "
                                                      "associativity check");
    auto* verify = app.add_subcommand("verify", "verify all generator relations, the M "
                                                "functional, and the filtration");
    auto* interp = app.add_subcommand("interpolate", "interpolate structure constants in "
                                                     "t = q^n with held-out validation");
    std::string samples_arg;
    unsigned holdout = 0, max_n = 0;
    interp->add_option("--samples", samples_arg, "comma-separated sample n list");
    interp->add_option("--holdout", holdout, "held-out n validated against the fit");
    interp->add_option("--max-n", max_n, "sample budget for the adaptive protocol");
    auto* semi = app.add_subcommand("semisimple", "trace-form Gram determinant of the "
                                                  "generic algebra and its root report");
    semi->add_option("--max-n", max_n, "sample budget / integer check range");

    CLI11_PARSE(app, argc, argv);
    if (cfg.slow && cfg.budget == 20'000'000) cfg.budget = 30'000'000;

    try {
        if (*counts) return cmd_counts(cfg);
        if (*dec) return cmd_decompose(cfg, members);
        if (*structure) return cmd_structure(cfg);
        if (*verify) return cmd_verify(cfg);
        if (*interp) {
            std::vector<unsigned> sample_ns;
            if (!samples_arg.empty()) {
                std::istringstream ss(samples_arg);
                std::string tok;
                while (std::getline(ss, tok, ',')) sample_ns.push_back(std::stoul(tok));
                if (holdout == 0)
                    throw CLI::ValidationError("--samples requires --holdout");
            }
            if (max_n == 0) max_n = cfg.alpha + 5;
            return cmd_interpolate(cfg, sample_ns, holdout, max_n);
        }
        if (*semi) {
            if (max_n == 0) max_n = cfg.alpha + 5;
            return cmd_semisimple(cfg, max_n);
        }
    } catch (const BudgetError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
