#pragma once

#include "bisim/biphoton.hpp"
#include "bisim/config.hpp"
#include "bisim/pipeline.hpp"
#include "bisim/regimes.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace bisim {

struct RegimeReport {
    std::string scenario;
    DerivedScales scales;
    Classification classification;
    std::optional<AnalyticForm> oracle;
    std::optional<ComparisonMetrics> comparison;
    double rate_spectral = 0.0;
    double rate_temporal = 0.0;
    double correlation_width = 0.0;
    GridPlan grid;
    ModelOptions model;
    std::vector<std::string> warnings;
};

struct ScenarioResult {
    ScenarioConfig config;
    PipelineResult pipeline;
    CoincidenceHistogram histogram;
    RegimeReport report;
};

ScenarioResult evaluate_scenario(const ScenarioConfig& cfg);

std::string waveform_csv(const ScenarioResult& result);
std::string histogram_csv(const CoincidenceHistogram& histogram);
std::string report_json(const RegimeReport& report);

struct ScenarioFiles {
    std::filesystem::path waveform;
    std::filesystem::path histogram;
    std::filesystem::path report;
};

// Writes <prefix>_waveform.csv, <prefix>_histogram.csv and <prefix>_regime.json
// into cfg.output.directory.
ScenarioFiles run_scenario(const ScenarioConfig& cfg);

struct SweepRow {
    std::optional<double> value;  // empty when the sweep list is empty
    double rate = 0.0;
    RegimeLabel label = RegimeLabel::Mixed;
    double correlation_width = 0.0;
};

struct SweepTable {
    std::string parameter;
    std::vector<SweepRow> rows;
};

// One scenario per sweep value, evaluated concurrently; an empty list runs the
// base scenario once.
SweepTable evaluate_sweep(const ScenarioConfig& cfg);
std::string sweep_csv(const SweepTable& table);

// Writes <prefix>_sweep.csv into cfg.output.directory.
std::filesystem::path run_sweep(const ScenarioConfig& cfg);

}  // namespace bisim
