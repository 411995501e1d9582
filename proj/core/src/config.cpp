#include "casimir/config.hpp"
#include "casimir/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace casimir::config {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

using Section = std::map<std::string, std::string>;
using IniDoc = std::map<std::string, Section>;

IniDoc parse_ini(std::istream& in, const std::string& origin) {
    IniDoc doc;
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(line_no) +
                                  ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError(origin + ":" + std::to_string(line_no) +
                                  ": empty section name");
            doc[section]; // sections may be present and empty
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(line_no) +
                              ": expected key = value");
        if (section.empty())
            throw ConfigError(origin + ":" + std::to_string(line_no) +
                              ": key outside any section");
        const std::string key = trim(line.substr(0, eq));
        doc[section][key] = trim(line.substr(eq + 1));
    }
    return doc;
}

double to_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' is not a number: '" + v + "'");
    }
}

int to_int(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const int i = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' is not an integer: '" + v + "'");
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config: key '" + key + "' is not a boolean: '" + v + "'");
}

// Pops known keys from a section copy; whatever remains is unknown.
class SectionReader {
public:
    SectionReader(std::string name, Section s) : name_(std::move(name)), kv_(std::move(s)) {}

    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    std::string take(const std::string& key, const std::string& fallback) {
        const auto it = kv_.find(key);
        if (it == kv_.end()) return fallback;
        const std::string v = it->second;
        kv_.erase(it);
        return v;
    }
    double take_double(const std::string& key, double fallback) {
        const auto it = kv_.find(key);
        if (it == kv_.end()) return fallback;
        const double v = to_double(name_ + "." + key, it->second);
        kv_.erase(it);
        return v;
    }
    int take_int(const std::string& key, int fallback) {
        const auto it = kv_.find(key);
        if (it == kv_.end()) return fallback;
        const int v = to_int(name_ + "." + key, it->second);
        kv_.erase(it);
        return v;
    }
    bool take_bool(const std::string& key, bool fallback) {
        const auto it = kv_.find(key);
        if (it == kv_.end()) return fallback;
        const bool v = to_bool(name_ + "." + key, it->second);
        kv_.erase(it);
        return v;
    }
    void finish() const {
        if (!kv_.empty())
            throw ConfigError("config: unknown key '" + kv_.begin()->first +
                              "' in section [" + name_ + "]");
    }

private:
    std::string name_;
    Section kv_;
};

std::vector<OscillatorSpec> parse_oscillators(const std::string& v) {
    std::vector<OscillatorSpec> out;
    for (const std::string& triple : split(v, ';')) {
        std::stringstream ss(triple);
        OscillatorSpec o;
        if (!(ss >> o.strength >> o.energy_ev))
            throw ConfigError("config: oscillator entry needs 'strength energy [damping]': '" +
                              triple + "'");
        if (!(ss >> o.damping_ev)) o.damping_ev = 0.0;
        std::string rest;
        if (ss >> rest)
            throw ConfigError("config: trailing tokens in oscillator entry '" + triple + "'");
        out.push_back(o);
    }
    if (out.empty()) throw ConfigError("config: empty oscillator list");
    return out;
}

void apply_section(RunConfig& cfg, const std::string& name, const Section& body) {
    if (name.rfind("material.", 0) == 0) {
        const std::string mat = name.substr(9);
        if (mat.empty()) throw ConfigError("config: empty material name");
        SectionReader r(name, body);
        MaterialConfig m;
        m.kind = r.take("kind", "vacuum");
        m.wp_ev = r.take_double("wp_ev", 0.0);
        m.gamma_ev = r.take_double("gamma_ev", 0.0);
        if (r.has("oscillators")) m.oscillators = parse_oscillators(r.take("oscillators", ""));
        m.table_file = r.take("file", "");
        r.finish();
        if (m.kind != "vacuum" && m.kind != "drude" && m.kind != "plasma" &&
            m.kind != "oscillator" && m.kind != "tabulated")
            throw ConfigError("config: unknown material kind '" + m.kind + "'");
        cfg.materials[mat] = m;
        return;
    }
    SectionReader r(name, body);
    if (name == "run") {
        cfg.temperature_k = r.take_double("temperature_k", cfg.temperature_k);
        cfg.threads = r.take_int("threads", cfg.threads);
    } else if (name == "geometry") {
        cfg.radius_nm = r.take_double("radius_nm", cfg.radius_nm);
        cfg.a_min_nm = r.take_double("a_min_nm", cfg.a_min_nm);
        cfg.a_max_nm = r.take_double("a_max_nm", cfg.a_max_nm);
        cfg.a_step_nm = r.take_double("a_step_nm", cfg.a_step_nm);
    } else if (name == "graphene") {
        cfg.gap_ev = r.take_double("gap_ev", cfg.gap_ev);
        cfg.vf_ratio = r.take_double("vf_ratio", cfg.vf_ratio);
        const bool has_mu = r.has("mu_ev");
        const bool has_n = r.has("concentration_cm2");
        if (has_mu && has_n)
            throw ConfigError("config: give either graphene.mu_ev or "
                              "graphene.concentration_cm2, not both");
        cfg.mu_ev = r.take_double("mu_ev", cfg.mu_ev);
        if (has_n)
            cfg.mu_ev = graphene::chemical_potential_from_concentration(
                r.take_double("concentration_cm2", 0.0), cfg.vf_ratio);
    } else if (name == "plate") {
        cfg.plate_material = r.take("material", cfg.plate_material);
        cfg.plate_graphene = r.take_bool("graphene", cfg.plate_graphene);
    } else if (name == "sphere") {
        cfg.sphere_material = r.take("material", cfg.sphere_material);
    } else if (name == "policy") {
        cfg.rel_tol = r.take_double("rel_tol", cfg.rel_tol);
        cfg.l_max_cap = r.take_int("l_max_cap", cfg.l_max_cap);
        cfg.quadrature_tol = r.take_double("quadrature_tol", cfg.quadrature_tol);
        const std::string route = r.take("route", "");
        if (!route.empty()) {
            if (route == "approx")
                cfg.route = Route::approx;
            else if (route == "exact")
                cfg.route = Route::exact;
            else if (route == "implicit")
                cfg.route = Route::implicit_zero;
            else
                throw ConfigError("config: unknown route '" + route + "'");
        }
        const std::string te = r.take("te_zero_mode", "");
        if (!te.empty()) {
            if (te == "drude")
                cfg.te_zero_mode = reflection::TeZeroMode::drude;
            else if (te == "plasma")
                cfg.te_zero_mode = reflection::TeZeroMode::plasma;
            else
                throw ConfigError("config: unknown te_zero_mode '" + te + "'");
        }
    } else if (name == "roughness") {
        cfg.rough_sphere_nm = r.take_double("sphere_nm", cfg.rough_sphere_nm);
        cfg.rough_plate_nm = r.take_double("plate_nm", cfg.rough_plate_nm);
    } else if (name == "uncertainty") {
        cfg.budget.mu_err_ev = r.take_double("mu_err_ev", cfg.budget.mu_err_ev);
        cfg.budget.gap_err_ev = r.take_double("gap_err_ev", cfg.budget.gap_err_ev);
        cfg.budget.radius_err_nm = r.take_double("radius_err_nm", cfg.budget.radius_err_nm);
        cfg.budget.optical_rel = r.take_double("optical_rel", cfg.budget.optical_rel);
        cfg.budget.pfa_lower = r.take_bool("pfa_lower", cfg.budget.pfa_lower);
    } else if (name == "calibration") {
        cfg.pll_sigma_rad_s = r.take_double("pll_sigma_rad_s", cfg.pll_sigma_rad_s);
        cfg.err_a_nm = r.take_double("err_a_nm", cfg.err_a_nm);
        cfg.model_free = r.take_bool("model_free", cfg.model_free);
    } else if (name == "output") {
        cfg.output_dir = r.take("dir", cfg.output_dir);
    } else if (name == "regime") {
        const std::string pairs = r.take("pairs", "");
        if (!pairs.empty()) cfg.regime_pairs = split(pairs, ',');
        const std::string fr = r.take("fractions", "");
        if (!fr.empty()) {
            cfg.regime_fractions.clear();
            std::stringstream ss(fr);
            double f;
            while (ss >> f) cfg.regime_fractions.push_back(f);
            if (cfg.regime_fractions.empty())
                throw ConfigError("config: regime.fractions is empty");
        }
    } else {
        throw ConfigError("config: unknown section [" + name + "]");
    }
    r.finish();
}

void validate(const RunConfig& cfg) {
    if (!(cfg.a_min_nm > 0.0) || !(cfg.a_max_nm >= cfg.a_min_nm))
        throw ConfigError("config: need 0 < a_min_nm <= a_max_nm");
    if (!(cfg.a_step_nm > 0.0)) throw ConfigError("config: a_step_nm must be positive");
    if (!(cfg.radius_nm > cfg.a_max_nm))
        throw ConfigError("config: radius_nm must exceed a_max_nm");
    if (!(cfg.temperature_k >= 0.0))
        throw ConfigError("config: temperature_k must be non-negative "
                          "(zero selects the zero-point theory)");
    if (cfg.threads < 0) throw ConfigError("config: threads must be >= 0");
    if (!(cfg.rel_tol > 0.0 && cfg.quadrature_tol > 0.0))
        throw ConfigError("config: tolerances must be positive");
    if (cfg.l_max_cap < 1) throw ConfigError("config: l_max_cap must be >= 1");
    if (!(cfg.gap_ev >= 0.0 && cfg.mu_ev >= 0.0 && cfg.vf_ratio > 0.0))
        throw ConfigError("config: invalid graphene parameters");
    for (double f : cfg.regime_fractions)
        if (!(f > 0.0 && f < 1.0))
            throw ConfigError("config: regime fractions must lie in (0, 1)");
}

std::string dir_of(const std::string& path) {
    const auto slash = path.find_last_of('/');
    return slash == std::string::npos ? std::string(".") : path.substr(0, slash);
}

} // namespace

RunConfig::RunConfig() {
    MaterialConfig au;
    au.kind = "drude";
    au.wp_ev = 9.0;
    au.gamma_ev = 0.035;
    materials["au"] = au;

    MaterialConfig sio2;
    sio2.kind = "oscillator";
    sio2.oscillators = {{1.703, 0.1237, 0.0}, {1.098, 13.38, 0.0}};
    materials["sio2"] = sio2;

    materials["vacuum"] = MaterialConfig{};
}

RunConfig load(const std::string& path, const std::vector<std::string>& overrides) {
    IniDoc doc;
    RunConfig cfg;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw IoError("config: cannot open '" + path + "'");
        doc = parse_ini(in, path);
        cfg.base_dir = dir_of(path);
    }
    for (const std::string& ov : overrides) {
        const auto eq = ov.find('=');
        const auto dot = ov.find_last_of('.', eq == std::string::npos ? ov.size() : eq);
        if (eq == std::string::npos || dot == std::string::npos || dot > eq)
            throw ConfigError("config: override must be section.key=value: '" + ov + "'");
        const std::string section = trim(ov.substr(0, dot));
        const std::string key = trim(ov.substr(dot + 1, eq - dot - 1));
        if (section.empty() || key.empty())
            throw ConfigError("config: override must be section.key=value: '" + ov + "'");
        doc[section][key] = trim(ov.substr(eq + 1));
    }
    for (const auto& [name, body] : doc) apply_section(cfg, name, body);
    validate(cfg);
    return cfg;
}

materials::PermittivityModel make_material(const RunConfig& cfg, const std::string& name) {
    const auto it = cfg.materials.find(name);
    if (it == cfg.materials.end())
        throw ConfigError("config: material '" + name + "' is not defined");
    const MaterialConfig& m = it->second;
    if (m.kind == "vacuum") return materials::PermittivityModel::vacuum();
    if (m.kind == "drude") {
        if (!(m.wp_ev > 0.0) || !(m.gamma_ev > 0.0))
            throw ConfigError("config: drude material '" + name +
                              "' needs wp_ev > 0 and gamma_ev > 0");
        return materials::PermittivityModel::drude(m.wp_ev, m.gamma_ev);
    }
    if (m.kind == "plasma") {
        if (!(m.wp_ev > 0.0))
            throw ConfigError("config: plasma material '" + name + "' needs wp_ev > 0");
        return materials::PermittivityModel::plasma(m.wp_ev);
    }
    if (m.kind == "oscillator") {
        std::vector<materials::Oscillator> osc;
        for (const auto& o : m.oscillators)
            osc.push_back({o.strength, o.energy_ev, o.damping_ev});
        return materials::PermittivityModel::oscillators(osc);
    }
    // tabulated
    const std::string path = m.table_file.empty() || m.table_file.front() == '/'
                                 ? m.table_file
                                 : cfg.base_dir + "/" + m.table_file;
    std::ifstream in(path);
    if (!in) throw IoError("config: cannot open permittivity table '" + path + "'");
    std::vector<std::pair<double, double>> table;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::stringstream ss(line);
        double x, e;
        if (ss >> x >> e) table.emplace_back(x, e);
    }
    return materials::PermittivityModel::tabulated(table);
}

graphene::GrapheneSheet make_sheet(const RunConfig& cfg) {
    return {cfg.gap_ev, cfg.mu_ev, cfg.vf_ratio};
}

reflection::BoundarySpec plate_boundary(const RunConfig& cfg) {
    if (cfg.ideal_metal) return reflection::BoundarySpec::ideal_metal();
    const std::string mat = cfg.freestanding ? "vacuum" : cfg.plate_material;
    if (!cfg.plate_graphene)
        return reflection::BoundarySpec::bare(make_material(cfg, mat));
    return reflection::BoundarySpec::coated(make_material(cfg, mat), make_sheet(cfg));
}

reflection::BoundarySpec sphere_boundary(const RunConfig& cfg) {
    if (cfg.ideal_metal) return reflection::BoundarySpec::ideal_metal();
    return reflection::BoundarySpec::bare(make_material(cfg, cfg.sphere_material));
}

reflection::BoundarySpec make_side(const RunConfig& cfg, const std::string& token) {
    if (token == "ideal") return reflection::BoundarySpec::ideal_metal();
    graphene::GrapheneSheet pristine{0.0, 0.0, cfg.vf_ratio};
    const auto at = token.find('@');
    const std::string head = at == std::string::npos ? token : token.substr(0, at);
    const std::string sub = at == std::string::npos ? "vacuum" : token.substr(at + 1);
    if (head == "graphene")
        return reflection::BoundarySpec::coated(make_material(cfg, sub), make_sheet(cfg));
    if (head == "pristine")
        return reflection::BoundarySpec::coated(make_material(cfg, sub), pristine);
    if (at != std::string::npos)
        throw ConfigError("config: '" + token + "': only graphene@ or pristine@ take a substrate");
    return reflection::BoundarySpec::bare(make_material(cfg, token));
}

lifshitz::SummationPolicy make_policy(const RunConfig& cfg) {
    lifshitz::SummationPolicy p;
    p.rel_tol = cfg.rel_tol;
    p.l_max_cap = cfg.l_max_cap;
    p.quadrature_tol = cfg.quadrature_tol;
    return p;
}

corrections::SystemSpec make_system(const RunConfig& cfg, double a_nm) {
    corrections::SystemSpec s;
    s.geometry = {cfg.radius_nm, a_nm};
    s.plate = plate_boundary(cfg);
    s.sphere = sphere_boundary(cfg);
    s.roughness = {cfg.rough_sphere_nm, cfg.rough_plate_nm};
    s.te_mode = cfg.te_zero_mode;
    return s;
}

graphene::TensorRoute tensor_route(const RunConfig& cfg) {
    switch (cfg.route) {
    case Route::approx:
        return graphene::TensorRoute::thermal_approx;
    case Route::exact:
        return graphene::TensorRoute::thermal_exact;
    case Route::implicit_zero:
        return graphene::TensorRoute::zero_temperature;
    }
    throw ConfigError("config: invalid route");
}

std::vector<double> separation_grid(const RunConfig& cfg) {
    std::vector<double> grid;
    for (double a = cfg.a_min_nm; a <= cfg.a_max_nm + 0.5 * cfg.a_step_nm;
         a += cfg.a_step_nm)
        grid.push_back(std::min(a, cfg.a_max_nm));
    if (!grid.empty() && grid.size() >= 2 &&
        grid[grid.size() - 1] == grid[grid.size() - 2])
        grid.pop_back();
    return grid;
}

} // namespace casimir::config
