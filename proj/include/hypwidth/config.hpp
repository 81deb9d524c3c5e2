#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hypwidth/fuchsian.hpp"

namespace hypwidth::config {

// Batch-run configuration: one command plus its numeric knobs. Every output
// record carries the canonical form and its hash, so identical configs give
// byte-identical results.
struct RunConfig {
    std::string command;  // width | spectrum | sweepout | ac-minmax | index | heteroclinic | reproduce
    std::string surface = "s_ma";  // bolza | s_ma | s_l | file:<path>
    int genus = 2;
    double a = 0.5;
    double L = 0.5;
    std::string surface_file;

    double cutoff = 5.0;
    int max_word_len = 40;

    double resolution = 0.02;  // sweepout curve spacing
    double cuffs[3] = {0.5, 0.5, 0.5};

    double epsilon = 0.1;
    double mesh_h = 0.06;
    int path_resolution = 33;
    double tol = 1e-9;

    double length = 2 * 3.14159265358979323846;  // geodesic index length
    double curvature = -1.0;
    int grid = 512;
    int n_eigs = 8;

    double t_max = 15.0;
    int grid_n = 6001;

    bool full = false;
    std::string inject_error;

    std::uint64_t seed = 1;
    std::string out_dir;

    std::string canonical_string() const;
    std::uint64_t hash() const;  // FNV-1a over the canonical string
};

// key = value assignments (used by both the text config format and the CLI).
void apply_assignment(RunConfig& cfg, const std::string& key, const std::string& value);

// Structured text (key = value lines, '#' comments) or JSON (when the first
// non-space character is '{').
RunConfig load_config(std::istream& is);

// Surface description files: either `kind = bolza` or a pants gluing table
// with `edge = pants_a slot_a pants_b slot_b length [twist]` lines.
fuchsian::SurfaceSpec surface_spec_from_stream(std::istream& is);
fuchsian::SurfaceSpec resolve_surface(const RunConfig& cfg);

// Deterministic result records: ordered key = value lines.
class RecordWriter {
  public:
    void put(const std::string& key, const std::string& value);
    void put(const std::string& key, double value);
    void put(const std::string& key, long long value);
    void write(std::ostream& os) const;

  private:
    std::vector<std::pair<std::string, std::string>> items_;
};

}  // namespace hypwidth::config
