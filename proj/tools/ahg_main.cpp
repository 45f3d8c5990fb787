#include "ahg/cli_reporting.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

namespace {

int run_job(const std::string& input_path, const std::string& format,
            const std::string& orientation_override, const std::string& catalog_override,
            bool require_z) {
    std::ifstream in(input_path);
    if (!in) {
        std::cerr << "error: cannot open input file '" << input_path << "'\n";
        return 2;
    }
    nlohmann::json raw;
    try {
        raw = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        std::cerr << "error: invalid JSON: " << e.what() << "\n";
        return 2;
    }

    try {
        ahg::JobConfig cfg = ahg::parse_config(raw);
        if (!orientation_override.empty())
            cfg.orientation = orientation_override == "cw" ? ahg::LoopOrientation::Cw
                                                           : ahg::LoopOrientation::Ccw;
        if (!catalog_override.empty()) cfg.verify_catalog = catalog_override;
        if (require_z && !cfg.z) {
            std::cerr << "error: check-nondegeneracy requires \"z\" in the config (at /z)\n";
            return 2;
        }
        ahg::JobResult result = ahg::run(cfg);
        if (format == "text")
            std::cout << ahg::render_text(result);
        else
            std::cout << ahg::render_json(result).dump(2) << "\n";
        int code = ahg::exit_code_for(result);
        if (code == 2) std::cerr << "error: " << result.validation.message << "\n";
        if (code == 3) std::cerr << "error: oracle verification mismatch\n";
        return code;
    } catch (const ahg::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"monodromy at infinity of confluent A-hypergeometric systems"};
    app.set_version_flag("--version", std::string("ahg ") + ahg::kVersion);
    app.require_subcommand(0, 1);

    std::string input, format = "json", orientation, catalog;

    CLI::App* compute = app.add_subcommand("compute", "evaluate the monodromy formula");
    compute->add_option("--input", input, "job config JSON file")->required();
    compute->add_option("--format", format, "json|text")
        ->check(CLI::IsMember({"json", "text"}));
    compute->add_option("--orientation", orientation, "ccw|cw (overrides the config)")
        ->check(CLI::IsMember({"ccw", "cw"}));

    CLI::App* verify = app.add_subcommand("verify", "compare against the numeric ODE oracle");
    verify->add_option("--input", input, "job config JSON file")->required();
    verify->add_option("--catalog", catalog, "catalog id: power|hermite|kummer_square")
        ->required();
    verify->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));
    verify->add_option("--orientation", orientation, "ccw|cw (overrides the config)")
        ->check(CLI::IsMember({"ccw", "cw"}));

    CLI::App* nondeg =
        app.add_subcommand("check-nondegeneracy", "per-face non-degeneracy of h_z");
    nondeg->add_option("--input", input, "job config JSON file (must contain z)")->required();
    nondeg->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));

    CLI11_PARSE(app, argc, argv);

    if (compute->parsed()) return run_job(input, format, orientation, "", false);
    if (verify->parsed()) return run_job(input, format, orientation, catalog, false);
    if (nondeg->parsed()) return run_job(input, format, orientation, "", true);
    std::cout << app.help();
    return 0;
}
