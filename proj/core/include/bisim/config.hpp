#pragma once

#include "bisim/medium.hpp"
#include "bisim/pipeline.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bisim {

struct HistogramSettings {
    double bin_width = 0.0;  // s; 0 picks tau_e / 20
    double floor = 0.0;      // accidental coincidences per second of delay

    bool operator==(const HistogramSettings&) const = default;
};

struct SweepSpec {
    std::string parameter;  // dotted key, e.g. medium.optical_depth
    std::vector<double> values;

    bool operator==(const SweepSpec&) const = default;
};

struct OutputSettings {
    std::string directory = ".";
    std::string prefix;  // defaults to the scenario name

    bool operator==(const OutputSettings&) const = default;
};

struct ScenarioConfig {
    std::string name = "scenario";
    MediumParams medium;
    DriveParams drive;
    ModelOptions model;
    GridOptions grid;
    HistogramSettings histogram;
    SweepSpec sweep;
    OutputSettings output;

    std::string file_prefix() const { return output.prefix.empty() ? name : output.prefix; }

    bool operator==(const ScenarioConfig&) const = default;
};

// Numeric entries are products and quotients of factors: decimal numbers,
// pi, c, gamma13 (frequency fields only) and the units kHz, MHz, GHz, ns, us,
// nm, mm, cm. Examples: "4.20*gamma13", "2*pi*3*MHz", "2*pi*c/795*nm".
double parse_quantity(std::string_view text, std::optional<double> gamma13,
                      const std::string& field);

ScenarioConfig parse_config(std::string_view yaml_text);
ScenarioConfig load_config(const std::filesystem::path& path);

// Canonical YAML with every frequency in rad/s.
std::string emit_config(const ScenarioConfig& cfg);

// Sets one dotted key, e.g. ("drive.omega_c", "12*gamma13").
void apply_override(ScenarioConfig& cfg, std::string_view key, std::string_view value);

// "key=value" form used by --set.
void apply_assignment(ScenarioConfig& cfg, std::string_view assignment);

std::vector<std::string_view> preset_names();
std::optional<std::string_view> preset_text(std::string_view name);
ScenarioConfig preset(std::string_view name);

}  // namespace bisim
