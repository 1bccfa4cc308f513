#include "bisim/config.hpp"

#include "bisim/errors.hpp"
#include "bisim/format.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace bisim {

namespace {

constexpr std::string_view fig2_preset = R"(# Damped Rabi oscillation: small OD, weak coupling compared with the phase-matching bandwidth.
# The coupling Rabi frequency is a free parameter here; 4 gamma13 is the default.
name: fig2
medium:
  gamma13: 2*pi*3*MHz
  gamma12: 0.6*gamma13
  gamma14: 1*gamma13
  optical_depth: 11
drive:
  omega_c: 4*gamma13
  omega_p: 0.8*gamma13
  delta_p: -7.5*gamma13
model:
  phi_variant: unity
  kappa: full
  conjugate_stokes: true
grid:
  tail_tolerance: 1e-11
)";

constexpr std::string_view fig3_preset = R"(# Group delay regime: OD 53 with a 4.2 gamma13 coupling field.
name: fig3
medium:
  gamma13: 2*pi*3*MHz
  gamma12: 0.02*gamma13
  gamma14: 1*gamma13
  optical_depth: 53
drive:
  omega_c: 4.20*gamma13
  omega_p: 1.16*gamma13
  delta_p: 48.67*gamma13
model:
  phi_variant: exact
  kappa: full
  conjugate_stokes: true
)";

constexpr double default_sigma13 = 1.0e-13;  // m^2
constexpr double default_length = 0.015;     // m
constexpr double anti_stokes_wavelength = 795e-9;
constexpr double stokes_wavelength = 780e-9;

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

double factor_value(std::string_view token, std::optional<double> gamma13, const std::string& field)
{
    std::string t = trim(token);
    double sign = 1.0;
    while (!t.empty() && (t.front() == '-' || t.front() == '+')) {
        if (t.front() == '-') {
            sign = -sign;
        }
        t.erase(0, 1);
    }
    if (t.empty()) {
        throw ConfigError(field, "empty factor");
    }
    if (t == "pi") return sign * pi;
    if (t == "c") return sign * speed_of_light;
    if (t == "kHz") return sign * 1e3;
    if (t == "MHz") return sign * 1e6;
    if (t == "GHz") return sign * 1e9;
    if (t == "ns") return sign * 1e-9;
    if (t == "us") return sign * 1e-6;
    if (t == "nm") return sign * 1e-9;
    if (t == "mm") return sign * 1e-3;
    if (t == "cm") return sign * 1e-2;
    if (t == "gamma13") {
        if (!gamma13) {
            throw ConfigError(field, "gamma13 is not available in this field");
        }
        return sign * *gamma13;
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size()) {
        throw ConfigError(field, "cannot parse '" + t + "' as a number or known symbol");
    }
    return sign * value;
}

// ---- node access -----------------------------------------------------------

// Empty when the parent section or the key is absent.
std::optional<YAML::Node> child(const YAML::Node& parent, const char* key)
{
    if (!parent || !parent.IsMap()) {
        return std::nullopt;
    }
    const YAML::Node node = parent[key];
    if (!node) {
        return std::nullopt;
    }
    return node;
}

std::string join(const std::string& prefix, const std::string& key)
{
    return prefix.empty() ? key : prefix + "." + key;
}

void reject_unknown(const YAML::Node& node, const std::string& path,
                    std::initializer_list<std::string_view> allowed)
{
    if (!node) {
        return;
    }
    if (!node.IsMap()) {
        throw ConfigError(path.empty() ? "<root>" : path, "expected a mapping");
    }
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        bool ok = false;
        for (std::string_view a : allowed) {
            ok = ok || a == key;
        }
        if (!ok) {
            throw ConfigError(join(path, key), "unknown key");
        }
    }
}

std::string scalar_text(const YAML::Node& node, const std::string& path)
{
    if (!node.IsScalar()) {
        throw ConfigError(path, "expected a scalar");
    }
    return node.Scalar();
}

double quantity(const YAML::Node& parent, const std::string& parent_path, const char* key,
                std::optional<double> gamma13, std::optional<double> fallback = std::nullopt)
{
    const std::string path = join(parent_path, key);
    const auto node = child(parent, key);
    if (!node) {
        if (fallback) {
            return *fallback;
        }
        throw ConfigError(path, "missing required value");
    }
    return parse_quantity(scalar_text(*node, path), gamma13, path);
}

bool boolean(const YAML::Node& parent, const std::string& parent_path, const char* key,
             bool fallback)
{
    const std::string path = join(parent_path, key);
    const auto node = child(parent, key);
    if (!node) {
        return fallback;
    }
    const std::string s = scalar_text(*node, path);
    if (s == "true") return true;
    if (s == "false") return false;
    throw ConfigError(path, "expected true or false");
}

std::string text(const YAML::Node& parent, const std::string& parent_path, const char* key,
                 const std::string& fallback)
{
    const auto node = child(parent, key);
    return node ? scalar_text(*node, join(parent_path, key)) : fallback;
}

std::size_t count(const YAML::Node& parent, const std::string& parent_path, const char* key,
                  std::size_t fallback)
{
    const std::string path = join(parent_path, key);
    const auto node = child(parent, key);
    if (!node) {
        return fallback;
    }
    const std::string s = scalar_text(*node, path);
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ConfigError(path, "expected a non-negative integer");
    }
    return value;
}

void require(bool ok, const std::string& path, const char* what)
{
    if (!ok) {
        throw ConfigError(path, what);
    }
}

ScenarioConfig from_node(const YAML::Node& root)
{
    reject_unknown(root, "", {"name", "medium", "drive", "model", "grid", "histogram", "sweep", "output"});
    ScenarioConfig cfg;
    cfg.name = text(root, "", "name", "scenario");
    require(!cfg.name.empty(), "name", "must not be empty");

    const YAML::Node med = root["medium"];
    require(static_cast<bool>(med), "medium", "missing section");
    reject_unknown(med, "medium", {"gamma12", "gamma13", "gamma14", "optical_depth", "density",
                                   "sigma13", "length", "dipole_scale"});
    MediumParams& m = cfg.medium;
    m.gamma13 = quantity(med, "medium", "gamma13", std::nullopt);
    require(m.gamma13 > 0.0, "medium.gamma13", "must be positive");
    const double g13 = m.gamma13;
    m.gamma12 = quantity(med, "medium", "gamma12", g13);
    require(m.gamma12 >= 0.0, "medium.gamma12", "must be non-negative");
    m.gamma14 = quantity(med, "medium", "gamma14", g13, g13);
    require(m.gamma14 > 0.0, "medium.gamma14", "must be positive");
    m.sigma13 = quantity(med, "medium", "sigma13", std::nullopt, default_sigma13);
    require(m.sigma13 > 0.0, "medium.sigma13", "must be positive");
    m.length = quantity(med, "medium", "length", std::nullopt, default_length);
    require(m.length > 0.0, "medium.length", "must be positive");
    m.dipole_scale = quantity(med, "medium", "dipole_scale", std::nullopt, 1.0);
    const bool has_od = static_cast<bool>(med["optical_depth"]);
    const bool has_density = static_cast<bool>(med["density"]);
    require(has_od != has_density, "medium.optical_depth",
            "give exactly one of optical_depth and density");
    if (has_od) {
        const double od = quantity(med, "medium", "optical_depth", std::nullopt);
        require(od > 0.0, "medium.optical_depth", "must be positive");
        m.density = od / (m.sigma13 * m.length);
    } else {
        m.density = quantity(med, "medium", "density", std::nullopt);
        require(m.density > 0.0, "medium.density", "must be positive");
    }

    const YAML::Node drv = root["drive"];
    require(static_cast<bool>(drv), "drive", "missing section");
    reject_unknown(drv, "drive", {"omega_c", "omega_p", "delta_p", "omega_as", "omega_s",
                                  "stokes_transition", "geometry", "degenerate"});
    DriveParams& d = cfg.drive;
    d.omega_c = quantity(drv, "drive", "omega_c", g13);
    require(d.omega_c >= 0.0, "drive.omega_c", "must be non-negative");
    d.omega_p = quantity(drv, "drive", "omega_p", g13);
    require(d.omega_p >= 0.0, "drive.omega_p", "must be non-negative");
    d.delta_p = quantity(drv, "drive", "delta_p", g13);
    d.omega_as = quantity(drv, "drive", "omega_as", g13, two_pi * speed_of_light / anti_stokes_wavelength);
    require(d.omega_as > 0.0, "drive.omega_as", "must be positive");
    d.omega_s = quantity(drv, "drive", "omega_s", g13, two_pi * speed_of_light / stokes_wavelength);
    require(d.omega_s > 0.0, "drive.omega_s", "must be positive");
    d.stokes_transition = quantity(drv, "drive", "stokes_transition", g13, 0.0);
    const std::string geometry = text(drv, "drive", "geometry", "forward");
    require(geometry == "forward" || geometry == "backward", "drive.geometry",
            "expected forward or backward");
    d.geometry = geometry == "forward" ? Geometry::Forward : Geometry::Backward;
    d.degenerate = boolean(drv, "drive", "degenerate", false);

    const YAML::Node mod = root["model"];
    reject_unknown(mod, "model", {"phi_variant", "kappa", "conjugate_stokes"});
    const auto phi = parse_phi_variant(text(mod, "model", "phi_variant", "exact"));
    require(phi.has_value(), "model.phi_variant", "expected exact, lossy, lossless, pole or unity");
    cfg.model.phi = *phi;
    const auto kap = parse_kappa_model(text(mod, "model", "kappa", "full"));
    require(kap.has_value(), "model.kappa", "expected full or constant");
    cfg.model.kappa = *kap;
    cfg.model.conjugate_stokes = boolean(mod, "model", "conjugate_stokes", true);

    const YAML::Node grd = root["grid"];
    reject_unknown(grd, "grid", {"samples", "min_samples", "max_samples", "tail_tolerance"});
    GridOptions& g = cfg.grid;
    g.samples = count(grd, "grid", "samples", 0);
    require(g.samples == 0 || (is_power_of_two(g.samples) && g.samples >= 16), "grid.samples",
            "must be 0 or a power of two >= 16");
    g.min_samples = count(grd, "grid", "min_samples", g.min_samples);
    g.max_samples = count(grd, "grid", "max_samples", g.max_samples);
    require(is_power_of_two(g.min_samples) && g.min_samples >= 16, "grid.min_samples",
            "must be a power of two >= 16");
    require(is_power_of_two(g.max_samples) && g.max_samples >= g.min_samples, "grid.max_samples",
            "must be a power of two >= min_samples");
    g.tail_tolerance = quantity(grd, "grid", "tail_tolerance", std::nullopt, g.tail_tolerance);
    require(g.tail_tolerance > 0.0, "grid.tail_tolerance", "must be positive");

    const YAML::Node his = root["histogram"];
    reject_unknown(his, "histogram", {"bin_width", "floor"});
    cfg.histogram.bin_width = quantity(his, "histogram", "bin_width", std::nullopt, 0.0);
    require(cfg.histogram.bin_width >= 0.0, "histogram.bin_width", "must be non-negative");
    cfg.histogram.floor = quantity(his, "histogram", "floor", std::nullopt, 0.0);
    require(cfg.histogram.floor >= 0.0, "histogram.floor", "must be non-negative");

    const YAML::Node swp = root["sweep"];
    reject_unknown(swp, "sweep", {"parameter", "values"});
    cfg.sweep.parameter = text(swp, "sweep", "parameter", "");
    if (swp && swp["values"]) {
        const YAML::Node values = swp["values"];
        require(values.IsSequence(), "sweep.values", "expected a list");
        require(!cfg.sweep.parameter.empty() || values.size() == 0, "sweep.parameter",
                "required when sweep values are given");
        for (std::size_t i = 0; i < values.size(); ++i) {
            const std::string path = "sweep.values[" + std::to_string(i) + "]";
            cfg.sweep.values.push_back(parse_quantity(scalar_text(values[i], path), g13, path));
        }
    }

    const YAML::Node out = root["output"];
    reject_unknown(out, "output", {"directory", "prefix"});
    cfg.output.directory = text(out, "output", "directory", ".");
    cfg.output.prefix = text(out, "output", "prefix", "");
    return cfg;
}

YAML::Node to_node(const ScenarioConfig& cfg)
{
    const auto num = [](double x) { return format_number(x); };
    YAML::Node root;
    root["name"] = cfg.name;
    YAML::Node med;
    med["gamma13"] = num(cfg.medium.gamma13);
    med["gamma12"] = num(cfg.medium.gamma12);
    med["gamma14"] = num(cfg.medium.gamma14);
    med["density"] = num(cfg.medium.density);
    med["sigma13"] = num(cfg.medium.sigma13);
    med["length"] = num(cfg.medium.length);
    med["dipole_scale"] = num(cfg.medium.dipole_scale);
    root["medium"] = med;
    YAML::Node drv;
    drv["omega_c"] = num(cfg.drive.omega_c);
    drv["omega_p"] = num(cfg.drive.omega_p);
    drv["delta_p"] = num(cfg.drive.delta_p);
    drv["omega_as"] = num(cfg.drive.omega_as);
    drv["omega_s"] = num(cfg.drive.omega_s);
    drv["stokes_transition"] = num(cfg.drive.stokes_transition);
    drv["geometry"] = cfg.drive.geometry == Geometry::Forward ? "forward" : "backward";
    drv["degenerate"] = cfg.drive.degenerate ? "true" : "false";
    root["drive"] = drv;
    YAML::Node mod;
    mod["phi_variant"] = std::string(to_string(cfg.model.phi));
    mod["kappa"] = std::string(to_string(cfg.model.kappa));
    mod["conjugate_stokes"] = cfg.model.conjugate_stokes ? "true" : "false";
    root["model"] = mod;
    YAML::Node grd;
    grd["samples"] = std::to_string(cfg.grid.samples);
    grd["min_samples"] = std::to_string(cfg.grid.min_samples);
    grd["max_samples"] = std::to_string(cfg.grid.max_samples);
    grd["tail_tolerance"] = num(cfg.grid.tail_tolerance);
    root["grid"] = grd;
    YAML::Node his;
    his["bin_width"] = num(cfg.histogram.bin_width);
    his["floor"] = num(cfg.histogram.floor);
    root["histogram"] = his;
    YAML::Node swp;
    swp["parameter"] = cfg.sweep.parameter;
    YAML::Node values(YAML::NodeType::Sequence);
    for (double v : cfg.sweep.values) {
        values.push_back(num(v));
    }
    swp["values"] = values;
    root["sweep"] = swp;
    YAML::Node out;
    out["directory"] = cfg.output.directory;
    out["prefix"] = cfg.output.prefix;
    root["output"] = out;
    return root;
}

YAML::Node load_yaml(std::string_view text)
{
    try {
        return YAML::Load(std::string(text));
    } catch (const YAML::Exception& e) {
        throw ConfigError("<document>", std::string("YAML syntax: ") + e.what());
    }
}

}  // namespace

double parse_quantity(std::string_view text, std::optional<double> gamma13, const std::string& field)
{
    const std::string expr = trim(text);
    if (expr.empty()) {
        throw ConfigError(field, "empty value");
    }
    double value = 1.0;
    char op = '*';
    std::size_t begin = 0;
    for (std::size_t i = 0; i <= expr.size(); ++i) {
        if (i < expr.size() && expr[i] != '*' && expr[i] != '/') {
            continue;
        }
        const double f = factor_value(std::string_view(expr).substr(begin, i - begin), gamma13, field);
        if (op == '*') {
            value *= f;
        } else {
            if (f == 0.0) {
                throw ConfigError(field, "division by zero");
            }
            value /= f;
        }
        if (i < expr.size()) {
            op = expr[i];
        }
        begin = i + 1;
    }
    if (!std::isfinite(value)) {
        throw ConfigError(field, "value is not finite");
    }
    return value;
}

ScenarioConfig parse_config(std::string_view yaml_text)
{
    const YAML::Node root = load_yaml(yaml_text);
    if (!root || root.IsNull()) {
        throw ConfigError("<document>", "empty configuration");
    }
    try {
        return from_node(root);
    } catch (const YAML::Exception& e) {
        throw ConfigError("<document>", e.what());
    }
}

ScenarioConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError(path.string(), "cannot open file");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string emit_config(const ScenarioConfig& cfg)
{
    YAML::Emitter out;
    out << to_node(cfg);
    std::string text = out.c_str();
    text += '\n';
    return text;
}

void apply_override(ScenarioConfig& cfg, std::string_view key, std::string_view value)
{
    YAML::Node root = to_node(cfg);
    const std::string dotted(key);
    std::vector<std::string> parts;
    std::size_t begin = 0;
    for (std::size_t i = 0; i <= dotted.size(); ++i) {
        if (i == dotted.size() || dotted[i] == '.') {
            parts.push_back(dotted.substr(begin, i - begin));
            begin = i + 1;
        }
    }
    if (parts.empty() || parts.size() > 2 || parts.front().empty() || parts.back().empty()) {
        throw ConfigError(dotted, "expected section.key or a top-level key");
    }
    YAML::Node parsed = load_yaml(value);
    if (parts.size() == 1) {
        root[parts[0]] = parsed;
    } else {
        YAML::Node section = root[parts[0]];
        if (parts == std::vector<std::string>{"medium", "optical_depth"}) {
            section.remove("density");
        } else if (parts == std::vector<std::string>{"medium", "density"}) {
            section.remove("optical_depth");
        }
        section[parts[1]] = parsed;
    }
    try {
        cfg = from_node(root);
    } catch (const YAML::Exception& e) {
        throw ConfigError(dotted, e.what());
    }
}

void apply_assignment(ScenarioConfig& cfg, std::string_view assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError(std::string(assignment), "expected key=value");
    }
    apply_override(cfg, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

std::vector<std::string_view> preset_names() { return {"fig2", "fig3"}; }

std::optional<std::string_view> preset_text(std::string_view name)
{
    if (name == "fig2") {
        return fig2_preset;
    }
    if (name == "fig3") {
        return fig3_preset;
    }
    return std::nullopt;
}

ScenarioConfig preset(std::string_view name)
{
    const auto t = preset_text(name);
    if (!t) {
        throw ConfigError("preset", "unknown preset '" + std::string(name) + "'");
    }
    return parse_config(*t);
}

}  // namespace bisim
