// bisim: biphoton waveforms, coincidence histograms and regime reports from
// YAML scenarios or built-in presets.

#include <CLI11.hpp>

#include "bisim/config.hpp"
#include "bisim/errors.hpp"
#include "bisim/scenario.hpp"

#include <iostream>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_numeric = 3;

struct Overrides {
    std::string out_dir;
    std::size_t grid_samples = 0;
    std::string phi_variant;
    bool no_conjugate = false;
    std::vector<std::string> assignments;
    bool print_config = false;
};

void apply(const Overrides& o, bisim::ScenarioConfig& cfg)
{
    for (const std::string& a : o.assignments) {
        bisim::apply_assignment(cfg, a);
    }
    if (!o.out_dir.empty()) {
        cfg.output.directory = o.out_dir;
    }
    if (o.grid_samples != 0) {
        bisim::apply_override(cfg, "grid.samples", std::to_string(o.grid_samples));
    }
    if (!o.phi_variant.empty()) {
        bisim::apply_override(cfg, "model.phi_variant", o.phi_variant);
    }
    if (o.no_conjugate) {
        cfg.model.conjugate_stokes = false;
    }
}

void report_files(const bisim::ScenarioFiles& files)
{
    std::cout << files.waveform.string() << '\n'
              << files.histogram.string() << '\n'
              << files.report.string() << '\n';
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Biphoton waveforms from four-wave mixing in an EIT medium"};
    app.require_subcommand(1);
    app.fallthrough();

    Overrides o;
    app.add_option("--out-dir", o.out_dir, "Directory for output files");
    app.add_option("--grid-samples", o.grid_samples, "Fixed number of spectral samples (power of two)");
    app.add_option("--phi-variant", o.phi_variant, "Phase-matching model")
        ->check(CLI::IsMember({"exact", "lossy", "lossless", "pole", "unity"}));
    app.add_flag("--no-conjugate-stokes", o.no_conjugate,
                 "Use k_s instead of k_s* in the phase mismatch");
    app.add_option("--set", o.assignments, "Override a config entry, e.g. drive.omega_c=12*gamma13");
    app.add_flag("--print-config", o.print_config, "Print the resolved configuration and exit");

    std::string config_path;
    auto* run = app.add_subcommand("run", "Run one scenario from a YAML file");
    run->add_option("config", config_path, "Scenario file")->required();
    auto* sweep = app.add_subcommand("sweep", "Run the sweep described in a YAML file");
    sweep->add_option("config", config_path, "Scenario file")->required();
    std::string preset_name;
    auto* preset = app.add_subcommand("preset", "Run a built-in scenario");
    preset->add_option("name", preset_name, "Preset name")
        ->required()
        ->check(CLI::IsMember({"fig2", "fig3"}));
    preset->add_flag("--sweep", "Run the sweep instead of a single scenario");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    try {
        bisim::ScenarioConfig cfg = preset->parsed() ? bisim::preset(preset_name)
                                                     : bisim::load_config(config_path);
        apply(o, cfg);
        if (o.print_config) {
            std::cout << bisim::emit_config(cfg);
            return exit_ok;
        }
        const bool sweeping = sweep->parsed() || (preset->parsed() && preset->count("--sweep") > 0);
        if (sweeping) {
            std::cout << bisim::run_sweep(cfg).string() << '\n';
        } else {
            report_files(bisim::run_scenario(cfg));
        }
        return exit_ok;
    } catch (const bisim::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return bisim::is_numeric_gate(e.kind()) ? exit_numeric : exit_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
