#pragma once

// Scenario files: "[section]" headers with "key = value" lines and full-line
// '#' comments. Sections area/epoch/pathloss/generate/stations/ues/obstacles/run
// describe the world; experiment sections (single, confusion_a, confusion_b,
// camera_sweep, tau_sweep, emit_ilp) carry per-experiment overrides and are kept
// verbatim for the experiment drivers. Serialization is canonical, so
// parse(write(s)) reproduces write(s) byte for byte.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mmtrack/world.hpp"

namespace mmtrack {

struct DocSection {
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries;
};

struct GenerateParams {
    int n_mmwave_bs = 2;
    int n_ue = 30;
    int n_obstacles = 3;
    double v_min = 0.0;
    double v_max = 10.0;
    double half_width = 0.5;
    bool uniform_arrivals = false;
};

struct TraceRef {
    std::string path;        // resolved relative to the scenario file
    bool geo = false;        // true: columns are lat/lon, projected about origin
    double lat0 = 0.0;
    double lon0 = 0.0;
    double half_width = 0.5;
};

struct Scenario {
    AreaDims area;
    EpochConfig epoch;
    PathLossModel pl;
    std::optional<GenerateParams> generate;
    std::vector<BaseStation> stations;      // explicit; ids = listing order
    std::vector<UserEquipment> ues;         // explicit; ids = listing order
    std::vector<Obstacle> obstacles;        // explicit linear movers
    std::vector<TraceRef> traces;
    std::uint64_t seed = 0;
    bool handoff_check_feasibility = true;
    std::string base_dir;                   // directory of the source file, for traces
    std::vector<DocSection> experiments;    // experiment sections, order preserved

    const DocSection* experiment(const std::string& name) const;
};

Scenario parse_scenario_text(const std::string& text, const std::string& origin);
Scenario load_scenario(const std::string& path);
std::string write_scenario(const Scenario& s);

// Lookup helpers for experiment sections; errors carry "section.key" context.
double section_double(const DocSection& s, const std::string& key, double fallback);
std::int64_t section_int(const DocSection& s, const std::string& key, std::int64_t fallback);
bool section_bool(const DocSection& s, const std::string& key, bool fallback);
std::vector<double> section_doubles(const DocSection& s, const std::string& key);
bool section_has(const DocSection& s, const std::string& key);

// Applies scenario-level override keys (width, T, n_ue, ...) found in an
// experiment section onto a copy of the base scenario.
Scenario apply_overrides(const Scenario& base, const DocSection& sec);

}  // namespace mmtrack
