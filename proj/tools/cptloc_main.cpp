// cptloc: scenario driver for the localization library. Reads a config,
// checks or runs it, writes CSVs plus a manifest, and maps every failure
// class to a fixed exit code (2 parse, 3 validation, 4 numerical, 5 io).

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cpt/config.hpp"
#include "cpt/errors.hpp"
#include "cpt/runner.hpp"
#include "cpt/version.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw cpt::IoError("cannot read config file '" + path + "'");
    std::ostringstream body;
    body << in.rdbuf();
    if (in.bad()) throw cpt::IoError("failed while reading '" + path + "'");
    return body.str();
}

int run(const std::string& subcommand, const std::string& config_path,
        const std::string& out_override, bool check_only, int jobs) {
    cpt::Scenario scenario = cpt::parse_config(read_file(config_path));
    if (cpt::kind_name(scenario.kind) != subcommand)
        throw cpt::ValidationError("config kind '" +
                                   std::string(cpt::kind_name(scenario.kind)) +
                                   "' does not match subcommand '" + subcommand + "'");
    if (!out_override.empty()) scenario.out_prefix = out_override;
    if (check_only) {
        std::cout << "config ok: kind=" << cpt::kind_name(scenario.kind)
                  << " out=" << scenario.out_prefix << "\n";
        return cpt::exit_ok;
    }
    cpt::RunManifest manifest = cpt::run_any(scenario, jobs);
    for (const auto& f : manifest.files) std::cout << "wrote " << f << "\n";
    std::cout << "ok\n";
    return cpt::exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"subwavelength localization scenarios"};
    app.set_version_flag("--version", cpt::version_string);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_override;
    bool check_only = false;
    int jobs = 1;

    const char* names[] = {"profile", "dynamics", "momentum", "multizone", "sweep"};
    for (const char* name : names) {
        CLI::App* sub = app.add_subcommand(name, std::string("run a ") + name + " scenario");
        sub->add_option("--config", config_path, "scenario config file")->required();
        sub->add_option("--out", out_override, "output prefix override");
        sub->add_flag("--check", check_only, "validate the config and exit");
        if (std::string(name) == "sweep")
            sub->add_option("--jobs", jobs, "concurrent sweep members")
                ->check(CLI::Range(1, 64));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cpt::exit_parse;
    }

    try {
        return run(app.get_subcommands().front()->get_name(), config_path, out_override,
                   check_only, jobs);
    } catch (const cpt::ParseError& e) {
        std::cerr << "error (parse) at line " << e.line << ", column " << e.column << ": "
                  << e.what() << "\n";
        return cpt::exit_code_for(e);
    } catch (const cpt::Error& e) {
        std::cerr << "error (" << [&] {
            switch (cpt::exit_code_for(e)) {
                case cpt::exit_parse: return "parse";
                case cpt::exit_validation: return "validation";
                case cpt::exit_io: return "io";
                default: return "numerical";
            }
        }() << "): " << e.what() << "\n";
        return cpt::exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
