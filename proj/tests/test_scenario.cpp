#include "fixtures.hpp"

#include "bisim/config.hpp"
#include "bisim/scenario.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace bisim;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
namespace fs = std::filesystem;

namespace {

class ScratchDir {
public:
    explicit ScratchDir(const std::string& name)
        : path_(fs::temp_directory_path() / ("bisim_" + name))
    {
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~ScratchDir() { fs::remove_all(path_); }
    ScratchDir(const ScratchDir&) = delete;
    ScratchDir& operator=(const ScratchDir&) = delete;

    const fs::path& path() const noexcept { return path_; }

private:
    fs::path path_;
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// g2 column of a waveform CSV.
std::vector<double> g2_column(const std::string& csv)
{
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    std::vector<double> g;
    while (std::getline(in, line)) {
        g.push_back(std::strtod(line.c_str() + line.rfind(',') + 1, nullptr));
    }
    return g;
}

double linear_residual(const std::vector<double>& x, const std::vector<double>& y)
{
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += x[i] * y[i];
        den += x[i] * x[i];
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        worst = std::max(worst, std::abs(y[i] - num / den * x[i]) / y[i]);
    }
    return worst;
}

ScenarioConfig od_sweep(ModelOptions model)
{
    ScenarioConfig cfg = preset("fig3");
    cfg.model = model;
    cfg.sweep = {"medium.optical_depth", {40.0, 80.0, 120.0, 160.0, 200.0}};
    return cfg;
}

int run_cli(const std::string& args)
{
    const std::string cmd = std::string(BISIM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("damped Rabi preset with a strong coupling field", "[scenario]")
{
    ScratchDir dir("rabi");
    ScenarioConfig cfg = preset("fig2");
    apply_override(cfg, "drive.omega_c", "12*gamma13");
    cfg.output.directory = dir.path().string();
    const ScenarioFiles files = run_scenario(cfg);

    CHECK(files.waveform == dir.path() / "fig2_waveform.csv");
    const auto report = nlohmann::json::parse(slurp(files.report));
    CHECK(report["label"] == "DampedRabi");
    CHECK(report["comparison"]["oracle"] == "damped_rabi");
    CHECK(report["comparison"]["rms_rel"].get<double>() < 0.05);

    const std::vector<double> g = g2_column(slurp(files.waveform));
    REQUIRE(g.size() == report["grid"]["samples"].get<std::size_t>());
    int maxima = 0;
    const double peak = *std::max_element(g.begin(), g.end());
    for (std::size_t i = 1; i + 1 < g.size(); ++i) {
        if (g[i] > g[i - 1] && g[i] >= g[i + 1] && g[i] > 1e-4 * peak) {
            ++maxima;
        }
    }
    CHECK(maxima >= 3);
    CHECK(slurp(files.histogram).starts_with("tau_bin_start_s,rate\n"));
}

TEST_CASE("group-delay preset", "[scenario]")
{
    const ScenarioResult r = evaluate_scenario(preset("fig3"));
    CHECK(r.report.classification.label == RegimeLabel::GroupDelayLossless);
    CHECK(r.report.correlation_width > 255e-9);
    CHECK(r.report.correlation_width < 370e-9);
    CHECK_THAT(r.report.rate_spectral, WithinRel(r.report.rate_temporal, 1e-6));
    CHECK(r.report.rate_temporal > 0.0);

    // Loss leaves an exponential tail after the plateau.
    const Waveform& psi = r.pipeline.psi;
    const double tau_g = r.report.scales.tau_g;
    const auto at = [&](double t) {
        return std::norm(psi.values[static_cast<std::size_t>((t - psi.tau.start) / psi.tau.step)]);
    };
    CHECK(at(0.3 * tau_g) > at(0.8 * tau_g));
    CHECK(at(1.5 * tau_g) < 0.1 * at(0.5 * tau_g));
}

TEST_CASE("identical configurations give byte-identical files", "[scenario]")
{
    ScratchDir a("det_a");
    ScratchDir b("det_b");
    ScenarioConfig cfg = preset("fig3");
    cfg.sweep = {"medium.optical_depth", {40.0, 80.0}};
    cfg.output.directory = a.path().string();
    const ScenarioFiles fa = run_scenario(cfg);
    const fs::path sa = run_sweep(cfg);
    cfg.output.directory = b.path().string();
    const ScenarioFiles fb = run_scenario(cfg);
    const fs::path sb = run_sweep(cfg);
    CHECK(slurp(fa.waveform) == slurp(fb.waveform));
    CHECK(slurp(fa.histogram) == slurp(fb.histogram));
    CHECK(slurp(fa.report) == slurp(fb.report));
    CHECK(slurp(sa) == slurp(sb));
    CHECK_FALSE(slurp(sa).empty());
}

TEST_CASE("an empty sweep runs the base scenario once", "[scenario]")
{
    const ScenarioConfig cfg = preset("fig3");
    const SweepTable t = evaluate_sweep(cfg);
    REQUIRE(t.rows.size() == 1);
    CHECK_FALSE(t.rows[0].value.has_value());
    CHECK(sweep_csv(t).starts_with("# parameter=none\nvalue,rate,label,correlation_width_s\n,"));
}

TEST_CASE("a single-value sweep reproduces the scenario", "[scenario]")
{
    ScenarioConfig cfg = preset("fig3");
    cfg.sweep = {"drive.omega_c", {5.0 * cfg.medium.gamma13}};
    const SweepTable t = evaluate_sweep(cfg);

    ScenarioConfig single = preset("fig3");
    apply_override(single, "drive.omega_c", "5*gamma13");
    const ScenarioResult r = evaluate_scenario(single);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0].rate == r.report.rate_temporal);
    CHECK(t.rows[0].label == r.report.classification.label);
    CHECK(t.rows[0].correlation_width == r.report.correlation_width);
}

TEST_CASE("pair rate is linear in optical depth in the group-delay model", "[scenario]")
{
    const ScenarioConfig cfg = od_sweep({PhiVariant::ApproxLossless, KappaModel::Constant, true});
    const SweepTable t = evaluate_sweep(cfg);
    std::vector<double> od;
    std::vector<double> rate;
    for (const SweepRow& row : t.rows) {
        od.push_back(*row.value);
        rate.push_back(row.rate);
    }
    CHECK(linear_residual(od, rate) < 0.02);
}

TEST_CASE("pair rate with the full model over the same sweep", "[scenario]")
{
    // Regression value for the exact phase matching and full coupling spectrum.
    const SweepTable t = evaluate_sweep(od_sweep({}));
    std::vector<double> od;
    std::vector<double> rate;
    for (const SweepRow& row : t.rows) {
        od.push_back(*row.value);
        rate.push_back(row.rate);
    }
    CHECK_THAT(linear_residual(od, rate), WithinAbs(0.1293, 0.005));
}

TEST_CASE("coupling sweep across the dephasing difference flips the label", "[scenario]")
{
    ScenarioConfig cfg = preset("fig2");
    apply_override(cfg, "medium.optical_depth", "0.01");
    const double gap = cfg.medium.gamma13 - cfg.medium.gamma12;
    cfg.sweep = {"drive.omega_c", {0.5 * gap, 0.9 * gap, 1.1 * gap, 2.0 * gap}};
    const SweepTable t = evaluate_sweep(cfg);
    REQUIRE(t.rows.size() == 4);
    CHECK(t.rows[0].label == RegimeLabel::OverdampedRabi);
    CHECK(t.rows[1].label == RegimeLabel::OverdampedRabi);
    CHECK(t.rows[2].label == RegimeLabel::DampedRabi);
    CHECK(t.rows[3].label == RegimeLabel::DampedRabi);
}

TEST_CASE("command-line exit codes", "[scenario][cli]")
{
    ScratchDir dir("cli");
    const std::string out = " --out-dir " + dir.path().string();
    CHECK(run_cli("preset fig3" + out) == 0);
    CHECK(fs::exists(dir.path() / "fig3_regime.json"));
    CHECK(run_cli("preset fig2 --set drive.omega_c=12*gamma13" + out) == 0);
    CHECK(run_cli("preset fig2 --print-config") == 0);

    CHECK(run_cli("preset fig7") == 2);
    CHECK(run_cli("run " + (dir.path() / "missing.yaml").string()) == 2);
    CHECK(run_cli("preset fig3 --set drive.bogus=1") == 2);
    CHECK(run_cli("preset fig3 --phi-variant sloppy") == 2);

    CHECK(run_cli("preset fig3 --grid-samples 64" + out) == 3);
    CHECK(run_cli("preset fig3 --set medium.optical_depth=5000" + out) == 3);

    const fs::path cfg = dir.path() / "sweep.yaml";
    {
        std::ofstream f(cfg);
        f << emit_config(od_sweep({PhiVariant::ApproxLossless, KappaModel::Constant, true}));
    }
    CHECK(run_cli("sweep " + cfg.string() + out) == 0);
    CHECK(fs::exists(dir.path() / "fig3_sweep.csv"));
}
