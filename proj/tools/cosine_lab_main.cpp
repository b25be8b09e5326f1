// cosine-lab: verification and reporting CLI for cosine functional equations
// on dense complex matrix algebras.
//
// Exit codes: 0 all good, 1 invariant failure, 2 usage/config error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coslab/errors.hpp"
#include "coslab/json_io.hpp"
#include "coslab/verify.hpp"
#include "coslab/zero_two.hpp"

namespace {

using namespace coslab;

struct GlobalFlags {
    std::string config_path;
    std::uint64_t seed = 20260810ull;
    bool seed_given = false;
    std::string format = "json";
    bool reproducible = false;
    std::vector<std::string> tol_overrides;
};

std::uint64_t env_seed_fallback(std::uint64_t fallback) {
    const char* env = std::getenv("COSINE_LAB_SEED");
    if (env == nullptr || *env == '\0')
        return fallback;
    try {
        return std::stoull(env);
    } catch (const std::exception&) {
        throw config_error("COSINE_LAB_SEED must be an unsigned integer");
    }
}

void apply_tol_overrides(const std::vector<std::string>& overrides,
                         std::map<std::string, double>& out) {
    for (const std::string& item : overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw config_error("--tol expects NAME=VALUE, got '" + item + "'");
        const std::string name = item.substr(0, eq);
        try {
            out[name] = std::stod(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw config_error("--tol " + name + ": value is not a number");
        }
    }
}

VerifyOptions build_verify_options(const GlobalFlags& flags) {
    VerifyOptions opt;
    opt.seed = env_seed_fallback(opt.seed);
    if (!flags.config_path.empty()) {
        std::ifstream in(flags.config_path);
        if (!in)
            throw config_error("cannot open config file: " + flags.config_path);
        json cfg;
        try {
            in >> cfg;
        } catch (const json::exception& e) {
            throw config_error("malformed config file: " + std::string(e.what()));
        }
        if (!cfg.is_object())
            throw config_error("config file must hold a JSON object");
        if (cfg.contains("seed")) {
            if (!cfg["seed"].is_number_unsigned() && !cfg["seed"].is_number_integer())
                throw config_error("config.seed must be an integer");
            opt.seed = cfg["seed"].get<std::uint64_t>();
        }
        if (cfg.contains("tolerances")) {
            if (!cfg["tolerances"].is_object())
                throw config_error("config.tolerances must be an object");
            for (const auto& [name, value] : cfg["tolerances"].items()) {
                if (!value.is_number())
                    throw config_error("config.tolerances." + name + " must be a number");
                opt.tolerance_overrides[name] = value.get<double>();
            }
        }
        if (cfg.contains("families")) {
            if (!cfg["families"].is_array())
                throw config_error("config.families must be an array of paths");
            for (const auto& p : cfg["families"]) {
                if (!p.is_string())
                    throw config_error("config.families entries must be strings");
                const std::string path = p.get<std::string>();
                std::ifstream probe(path);
                if (!probe)
                    throw config_error("config.families: missing family file " + path);
                opt.family_files.push_back(path);
            }
        }
    }
    if (flags.seed_given)
        opt.seed = flags.seed;
    apply_tol_overrides(flags.tol_overrides, opt.tolerance_overrides);
    return opt;
}

int run_verify(const GlobalFlags& flags) {
    const VerifyOptions opt = build_verify_options(flags);
    const ReportFormat format = report_format_from_name(flags.format);
    const std::vector<CheckResult> results = run_verify_suites(opt);
    std::cout << render_verify_report(results, opt, format, flags.reproducible);
    return all_pass(results) ? 0 : 1;
}

int run_classify(const GlobalFlags& flags, const std::string& family_path,
                 const SamplingPlan& plan) {
    const ReportFormat format = report_format_from_name(flags.format);
    const CosineFamily family = load_family_file(family_path);
    const TrichotomyReport report = limsup_estimate(family, plan);
    if (format == ReportFormat::Json) {
        // The canonical document echoes the family it classified.
        json doc = trichotomy_report_to_json(report, flags.reproducible);
        doc["family"] = family_to_json(family);
        std::cout << doc.dump(2) << "\n";
        return 0;
    }
    std::cout << render_trichotomy_report(report, format, flags.reproducible);
    return 0;
}

int run_halve(const GlobalFlags& flags, const std::string& family_path, double t0,
              int steps, double tol) {
    const ReportFormat format = report_format_from_name(flags.format);
    const CosineFamily family = load_family_file(family_path);
    if (!family.supports_real_argument())
        throw config_error("halve: the family must accept real arguments");
    const RefinementTrace trace = dyadic_refine(family, t0, steps, tol);
    std::cout << render_refinement_trace(trace, format, flags.reproducible);
    return 0; // flagged rows are information, not failure
}

int run_converge(const GlobalFlags& flags, int n) {
    const ReportFormat format = report_format_from_name(flags.format);
    if (n < 1 || n > 200)
        throw config_error("converge: --n must lie in [1, 200]");
    const ContractionSequence seq = ContractionSequence::make(n);
    std::cout << render_contraction_table(seq, format, flags.reproducible);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cosine-lab: numerical verification of cosine functional equations"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    GlobalFlags flags;
    app.add_option("--config", flags.config_path, "JSON config file");
    auto* seed_opt = app.add_option("--seed", flags.seed, "seed for randomized suites");
    app.add_option("--format", flags.format, "output format: json|csv|text")
        ->default_val("json");
    app.add_flag("--reproducible", flags.reproducible,
                 "omit timestamps so identical runs emit identical bytes");
    app.add_option("--tol", flags.tol_overrides,
                   "tolerance override NAME=VALUE (repeatable)");

    CLI::App* verify = app.add_subcommand("verify", "run every invariant suite");

    CLI::App* classify =
        app.add_subcommand("classify", "classify a family's limsup branch");
    std::string classify_family;
    SamplingPlan plan;
    classify->add_option("family", classify_family, "family description file")->required();
    classify->add_option("--scales", plan.n_scales, "geometric window count");
    classify->add_option("--t-init", plan.t_init, "largest geometric scale");
    classify->add_option("--convergents", plan.n_convergents,
                         "convergent depth for Hamel families");
    classify->add_option("--multiples", plan.n_multiples,
                         "multiples per convergent point for Hamel families");

    CLI::App* halve = app.add_subcommand("halve", "dyadic half-angle refinement trace");
    std::string halve_family;
    double t0 = 1.0;
    int steps = 10;
    double series_tol = 1e-9;
    halve->add_option("family", halve_family, "family description file")->required();
    halve->add_option("--t0", t0, "starting scale")->default_val(1.0);
    halve->add_option("--steps", steps, "number of halvings")->default_val(10);
    halve->add_option("--series-tol", series_tol, "square-root series tolerance")
        ->default_val(1e-9);

    CLI::App* converge = app.add_subcommand("converge", "contraction envelope table");
    int n_rows = 30;
    converge->add_option("--n", n_rows, "table length")->default_val(30);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e); // --help
            return 0;
        }
        std::cerr << e.what() << "\n";
        return 2;
    }
    flags.seed_given = seed_opt->count() > 0;

    try {
        if (verify->parsed())
            return run_verify(flags);
        if (classify->parsed())
            return run_classify(flags, classify_family, plan);
        if (halve->parsed())
            return run_halve(flags, halve_family, t0, steps, series_tol);
        if (converge->parsed())
            return run_converge(flags, n_rows);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
