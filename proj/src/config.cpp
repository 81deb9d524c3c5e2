#include "hypwidth/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace hypwidth::config {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

void apply_assignment(RunConfig& cfg, const std::string& key, const std::string& value) {
    auto num = [&]() { return std::stod(value); };
    if (key == "command") cfg.command = value;
    else if (key == "surface") cfg.surface = value;
    else if (key == "surface_file") cfg.surface_file = value;
    else if (key == "genus") cfg.genus = std::stoi(value);
    else if (key == "a") cfg.a = num();
    else if (key == "L" || key == "l") cfg.L = num();
    else if (key == "cutoff") cfg.cutoff = num();
    else if (key == "max_word_len") cfg.max_word_len = std::stoi(value);
    else if (key == "resolution") cfg.resolution = num();
    else if (key == "cuffs") {
        std::stringstream ss(value);
        std::string tok;
        for (int k = 0; k < 3; ++k) {
            if (!std::getline(ss, tok, ',')) throw DomainError("cuffs needs three values");
            cfg.cuffs[k] = std::stod(trim(tok));
        }
    } else if (key == "epsilon") cfg.epsilon = num();
    else if (key == "mesh_h") cfg.mesh_h = num();
    else if (key == "path_resolution") cfg.path_resolution = std::stoi(value);
    else if (key == "tol") cfg.tol = num();
    else if (key == "length") cfg.length = num();
    else if (key == "curvature") cfg.curvature = num();
    else if (key == "grid") cfg.grid = std::stoi(value);
    else if (key == "n_eigs") cfg.n_eigs = std::stoi(value);
    else if (key == "t_max") cfg.t_max = num();
    else if (key == "grid_n") cfg.grid_n = std::stoi(value);
    else if (key == "full") cfg.full = (value == "1" || value == "true");
    else if (key == "inject_error") cfg.inject_error = value;
    else if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "out_dir") cfg.out_dir = value;
    else throw DomainError("unknown config key '" + key + "'");
}

RunConfig load_config(std::istream& is) {
    RunConfig cfg;
    std::string content((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    const auto first = content.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && content[first] == '{') {
        const nlohmann::json j = nlohmann::json::parse(content);
        for (const auto& [key, val] : j.items()) {
            if (val.is_string()) apply_assignment(cfg, key, val.get<std::string>());
            else apply_assignment(cfg, key, nlohmann::json(val).dump());
        }
        return cfg;
    }
    std::stringstream ss(content);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DomainError("config line " + std::to_string(lineno) + ": expected key = value");
        try {
            apply_assignment(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const std::exception& e) {
            throw DomainError("config line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cfg;
}

std::string RunConfig::canonical_string() const {
    std::ostringstream os;
    os.precision(17);
    os << "command=" << command << ";surface=" << surface << ";genus=" << genus << ";a=" << a
       << ";L=" << L << ";surface_file=" << surface_file << ";cutoff=" << cutoff
       << ";max_word_len=" << max_word_len << ";resolution=" << resolution << ";cuffs=" << cuffs[0]
       << "," << cuffs[1] << "," << cuffs[2] << ";epsilon=" << epsilon << ";mesh_h=" << mesh_h
       << ";path_resolution=" << path_resolution << ";tol=" << tol << ";length=" << length
       << ";curvature=" << curvature << ";grid=" << grid << ";n_eigs=" << n_eigs
       << ";t_max=" << t_max << ";grid_n=" << grid_n << ";full=" << full
       << ";inject_error=" << inject_error << ";seed=" << seed;
    return os.str();
}

std::uint64_t RunConfig::hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : canonical_string()) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

fuchsian::SurfaceSpec surface_spec_from_stream(std::istream& is) {
    std::string content((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    const auto first = content.find_first_not_of(" \t\r\n");
    fuchsian::SurfaceSpec spec;
    spec.kind = fuchsian::SurfaceSpec::Kind::PantsGlued;
    bool have_kind = false;
    if (first != std::string::npos && content[first] == '{') {
        const nlohmann::json j = nlohmann::json::parse(content);
        const std::string kind = j.value("kind", "pants_glued");
        if (kind == "bolza") return fuchsian::SurfaceSpec::bolza();
        spec.genus = j.at("genus").get<int>();
        spec.num_pants = 2 * spec.genus - 2;
        for (const auto& e : j.at("edges")) {
            fuchsian::SurfaceSpec::Edge ed;
            ed.pants_a = e.at(0).get<int>();
            ed.slot_a = e.at(1).get<int>();
            ed.pants_b = e.at(2).get<int>();
            ed.slot_b = e.at(3).get<int>();
            ed.length = e.at(4).get<double>();
            if (e.size() > 5) ed.twist = e.at(5).get<double>();
            spec.edges.push_back(ed);
        }
        spec.validate();
        return spec;
    }
    std::stringstream ss(content);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DomainError("surface line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "kind") {
            have_kind = true;
            if (value == "bolza") return fuchsian::SurfaceSpec::bolza();
            if (value != "pants_glued")
                throw DomainError("surface kind must be bolza or pants_glued");
        } else if (key == "genus") {
            spec.genus = std::stoi(value);
            spec.num_pants = 2 * spec.genus - 2;
        } else if (key == "edge") {
            std::stringstream ls(value);
            fuchsian::SurfaceSpec::Edge ed;
            if (!(ls >> ed.pants_a >> ed.slot_a >> ed.pants_b >> ed.slot_b >> ed.length))
                throw DomainError("surface line " + std::to_string(lineno) +
                                  ": edge needs pants_a slot_a pants_b slot_b length [twist]");
            ls >> ed.twist;
            spec.edges.push_back(ed);
        } else {
            throw DomainError("surface line " + std::to_string(lineno) + ": unknown key " + key);
        }
    }
    if (!have_kind) throw DomainError("surface file missing 'kind'");
    spec.validate();
    return spec;
}

fuchsian::SurfaceSpec resolve_surface(const RunConfig& cfg) {
    if (cfg.surface == "bolza") return fuchsian::SurfaceSpec::bolza();
    if (cfg.surface == "s_ma") return fuchsian::SurfaceSpec::small_systole_family(cfg.genus, cfg.a);
    if (cfg.surface == "s_l") return fuchsian::SurfaceSpec::three_cuff_family(cfg.L);
    if (cfg.surface.rfind("file:", 0) == 0 || !cfg.surface_file.empty()) {
        const std::string path =
            cfg.surface.rfind("file:", 0) == 0 ? cfg.surface.substr(5) : cfg.surface_file;
        std::ifstream f(path);
        if (!f) throw DomainError("cannot open surface file " + path);
        return surface_spec_from_stream(f);
    }
    throw DomainError("unknown surface '" + cfg.surface + "' (use bolza, s_ma, s_l, file:<path>)");
}

void RecordWriter::put(const std::string& key, const std::string& value) {
    items_.push_back({key, value});
}

void RecordWriter::put(const std::string& key, double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    items_.push_back({key, buf});
}

void RecordWriter::put(const std::string& key, long long value) {
    items_.push_back({key, std::to_string(value)});
}

void RecordWriter::write(std::ostream& os) const {
    for (const auto& [k, v] : items_) os << k << " = " << v << "\n";
}

}  // namespace hypwidth::config
