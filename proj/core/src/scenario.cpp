#include "bisim/scenario.hpp"

#include "bisim/errors.hpp"
#include "bisim/format.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <future>
#include <mutex>
#include <thread>

namespace bisim {

namespace {

void write_file(const std::filesystem::path& path, const std::string& content)
{
    static std::mutex io_mutex;
    std::lock_guard lock(io_mutex);
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ConfigError("output.directory", "cannot write " + path.string());
    }
    out << content;
}

nlohmann::json number_or_null(double x)
{
    return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

}  // namespace

ScenarioResult evaluate_scenario(const ScenarioConfig& cfg)
{
    ScenarioResult r;
    r.config = cfg;
    r.pipeline = run_pipeline(cfg.medium, cfg.drive, cfg.model, cfg.grid);

    RegimeReport& rep = r.report;
    rep.scenario = cfg.name;
    rep.scales = characteristic_scales(cfg.medium, cfg.drive);
    rep.classification = classify(cfg.medium, cfg.drive);
    rep.rate_spectral = r.pipeline.rate_spectral;
    rep.rate_temporal = r.pipeline.rate_temporal;
    rep.correlation_width = correlation_width(r.pipeline.psi);
    rep.grid = r.pipeline.grid;
    rep.model = cfg.model;
    rep.oracle = oracle_for(rep.classification.label);
    if (rep.oracle) {
        const AnalyticWaveform analytic =
            sample_analytic(*rep.oracle, r.pipeline.psi.tau, cfg.medium, cfg.drive);
        rep.comparison = compare(r.pipeline.psi, analytic);
    } else {
        rep.warnings.emplace_back("mixed regime: no analytic oracle applies");
    }
    if (!pump_far_detuned(cfg.drive)) {
        rep.warnings.emplace_back("pump is not far detuned: |Omega_p| > |Delta_p| / 10");
    }
    if (rep.classification.label == RegimeLabel::DampedRabi &&
        !rep.classification.criteria.phase_matching_flat) {
        rep.warnings.emplace_back("phase-matching bandwidth below 4 max(Omega_e, 2 gamma_e)");
    }
    if (!rep.grid.tail_target_met) {
        rep.warnings.emplace_back("spectral tail target not reached within the sample budget");
    }

    const double tau_e = rep.scales.tau_e;
    const double width = cfg.histogram.bin_width > 0.0 ? cfg.histogram.bin_width : tau_e / 20.0;
    const double stop = std::min(rep.grid.delay_half_span, r.pipeline.psi.tau.back());
    HistogramOptions options{cfg.histogram.floor, tau_e};
    r.histogram = coincidence_histogram(r.pipeline.psi, width, -2.0 * tau_e, stop, options);
    if (r.histogram.bin_too_wide) {
        rep.warnings.emplace_back("histogram bin wider than tau_e / 10");
    }
    return r;
}

std::string waveform_csv(const ScenarioResult& result)
{
    const Waveform& psi = result.pipeline.psi;
    const ComplexSpectrum& spec = result.pipeline.kappa_phi;
    std::string out;
    out.reserve(psi.values.size() * 96 + 256);
    out += "# scenario=" + result.config.name;
    out += " samples=" + std::to_string(psi.tau.size);
    out += " tau_start_s=";
    append_number(out, psi.tau.start);
    out += " d_tau_s=";
    append_number(out, psi.tau.step);
    out += " omega_half_span_rad_s=";
    append_number(out, result.pipeline.grid.half_span);
    out += " d_omega_rad_s=";
    append_number(out, spec.omega.step);
    out += " phi_variant=" + std::string(to_string(result.config.model.phi));
    out += " kappa=" + std::string(to_string(result.config.model.kappa));
    out += result.config.model.conjugate_stokes ? " conjugate_stokes=true\n"
                                                : " conjugate_stokes=false\n";
    out += "tau_s,re_psi,im_psi,g2\n";
    for (std::size_t i = 0; i < psi.values.size(); ++i) {
        append_number(out, psi.tau[i]);
        out += ',';
        append_number(out, psi.values[i].real());
        out += ',';
        append_number(out, psi.values[i].imag());
        out += ',';
        append_number(out, std::norm(psi.values[i]));
        out += '\n';
    }
    return out;
}

std::string histogram_csv(const CoincidenceHistogram& histogram)
{
    std::string out = "tau_bin_start_s,rate\n";
    for (std::size_t i = 0; i < histogram.rate.size(); ++i) {
        append_number(out, histogram.bin_edges[i]);
        out += ',';
        append_number(out, histogram.rate[i]);
        out += '\n';
    }
    return out;
}

std::string report_json(const RegimeReport& report)
{
    using nlohmann::ordered_json;
    const DerivedScales& s = report.scales;
    const RegimeCriteria& c = report.classification.criteria;
    ordered_json j;
    j["scenario"] = report.scenario;
    j["label"] = std::string(to_string(report.classification.label));
    j["scales"] = {
        {"rabi_real", s.rabi_real},
        {"omega_e", s.omega_e},
        {"beta_e", s.beta_e},
        {"gamma_e", s.gamma_e},
        {"tau_r", number_or_null(s.tau_r)},
        {"tau_e", s.tau_e},
        {"tau_g", number_or_null(s.tau_g)},
        {"alpha", s.alpha},
        {"v_g", s.v_g},
        {"d_omega_g", s.d_omega_g},
        {"d_omega_tr", s.d_omega_tr},
    };
    j["criteria"] = {
        {"margin", c.margin},
        {"rabi_frequency_real", c.rabi_frequency_real},
        {"critically_damped", c.critically_damped},
        {"rabi_time_exceeds_delay", c.rabi_time_exceeds_delay},
        {"coherence_time_exceeds_delay", c.coherence_time_exceeds_delay},
        {"delay_exceeds_rabi_time", c.delay_exceeds_rabi_time},
        {"transparency_exceeds_phase_matching", c.transparency_exceeds_phase_matching},
        {"transparency_window_exists", c.transparency_window_exists},
        {"phase_matching_flat", c.phase_matching_flat},
        {"transmission", c.transmission},
        {"lossless", c.lossless},
        {"lossy", c.lossy},
    };
    j["rates"] = {{"spectral", report.rate_spectral}, {"temporal", report.rate_temporal}};
    j["correlation_width_s"] = report.correlation_width;
    j["model"] = {
        {"phi_variant", std::string(to_string(report.model.phi))},
        {"kappa", std::string(to_string(report.model.kappa))},
        {"conjugate_stokes", report.model.conjugate_stokes},
    };
    j["grid"] = {
        {"samples", report.grid.samples},
        {"omega_half_span", report.grid.half_span},
        {"delay_half_span", report.grid.delay_half_span},
        {"tail_target_met", report.grid.tail_target_met},
    };
    if (report.oracle && report.comparison) {
        j["comparison"] = {
            {"oracle", std::string(to_string(*report.oracle))},
            {"rms_rel", report.comparison->rms_rel},
            {"peak_shift_s", report.comparison->peak_shift},
            {"support_mismatch", report.comparison->support_mismatch},
        };
    } else {
        j["comparison"] = nullptr;
    }
    j["warnings"] = report.warnings;
    return j.dump(2) + "\n";
}

ScenarioFiles run_scenario(const ScenarioConfig& cfg)
{
    const ScenarioResult result = evaluate_scenario(cfg);
    const std::filesystem::path dir(cfg.output.directory);
    const std::string prefix = cfg.file_prefix();
    ScenarioFiles files{dir / (prefix + "_waveform.csv"), dir / (prefix + "_histogram.csv"),
                        dir / (prefix + "_regime.json")};
    write_file(files.waveform, waveform_csv(result));
    write_file(files.histogram, histogram_csv(result.histogram));
    write_file(files.report, report_json(result.report));
    return files;
}

SweepTable evaluate_sweep(const ScenarioConfig& cfg)
{
    SweepTable table;
    table.parameter = cfg.sweep.parameter;
    const auto summarize = [](const ScenarioConfig& c, std::optional<double> value) {
        const ScenarioResult r = evaluate_scenario(c);
        return SweepRow{value, r.report.rate_temporal, r.report.classification.label,
                        r.report.correlation_width};
    };
    if (cfg.sweep.values.empty()) {
        table.rows.push_back(summarize(cfg, std::nullopt));
        return table;
    }

    std::vector<ScenarioConfig> points;
    points.reserve(cfg.sweep.values.size());
    for (double v : cfg.sweep.values) {
        ScenarioConfig point = cfg;
        point.sweep = {};
        apply_override(point, cfg.sweep.parameter, format_number(v));
        points.push_back(std::move(point));
    }

    table.rows.resize(points.size());
    const std::size_t batch = std::max(1u, std::thread::hardware_concurrency());
    for (std::size_t first = 0; first < points.size(); first += batch) {
        const std::size_t last = std::min(points.size(), first + batch);
        std::vector<std::future<SweepRow>> running;
        for (std::size_t i = first; i < last; ++i) {
            running.push_back(std::async(std::launch::async, summarize, std::cref(points[i]),
                                         std::optional<double>(cfg.sweep.values[i])));
        }
        for (std::size_t i = first; i < last; ++i) {
            table.rows[i] = running[i - first].get();
        }
    }
    return table;
}

std::string sweep_csv(const SweepTable& table)
{
    std::string out = "# parameter=" + (table.parameter.empty() ? std::string("none") : table.parameter) + "\n";
    out += "value,rate,label,correlation_width_s\n";
    for (const SweepRow& row : table.rows) {
        if (row.value) {
            append_number(out, *row.value);
        }
        out += ',';
        append_number(out, row.rate);
        out += ',';
        out += to_string(row.label);
        out += ',';
        append_number(out, row.correlation_width);
        out += '\n';
    }
    return out;
}

std::filesystem::path run_sweep(const ScenarioConfig& cfg)
{
    const SweepTable table = evaluate_sweep(cfg);
    const std::filesystem::path path =
        std::filesystem::path(cfg.output.directory) / (cfg.file_prefix() + "_sweep.csv");
    write_file(path, sweep_csv(table));
    return path;
}

}  // namespace bisim
