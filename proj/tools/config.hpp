#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dgbo/evolve.hpp"
#include "dgbo/grid.hpp"
#include "dgbo/propagator.hpp"
#include "json.hpp"

namespace dgbo::cli {

struct InitConfig {
    std::string type = "gaussian";  // gaussian | random_hs | band_limited | file | zero
    double amplitude = 0.1;          // gaussian peak, or rms for random_hs
    double width = 1.0;
    double s = 0.0;
    std::uint64_t seed = 1;
    int max_mode = 0;                // random_hs: 0 picks the dealias cutoff
    std::vector<int> modes;          // band_limited
    std::vector<double> amplitudes;
    std::string path;                // file: stem of a stored field
};

struct ExperimentConfig {
    Grid grid{256, 50.0};
    EquationParams eq;
    InitConfig init;
    SolverConfig time;
    std::vector<std::string> observers;
    std::string output_dir;
    nlohmann::json raw;  // the merged document, echoed into the manifest
};

// Reads a JSON file ("" gives an empty object).
nlohmann::json load_json(const std::string& path);
// Sets a dotted key such as "grid.n", creating intermediate objects.
void set_path(nlohmann::json& doc, const std::string& dotted, nlohmann::json value);
// Looks up a dotted key, returning fallback when absent.
nlohmann::json get_path(const nlohmann::json& doc, const std::string& dotted, nlohmann::json fallback);

// Validates the document and fills the typed view. Throws std::invalid_argument naming the key.
ExperimentConfig parse_config(const nlohmann::json& doc);

// Initial field described by the init section; t0 is the stored time for file data.
Field make_initial(const ExperimentConfig& cfg, double* t0 = nullptr);

// output_dir from the config, else $DGBO_OUTPUT_DIR, else ./dgbo_out
std::string resolve_output_dir(const ExperimentConfig& cfg);

// "inf" and "infinity" map to +infinity
double parse_real(const std::string& s);
std::vector<double> parse_real_list(const std::string& s);

const std::vector<std::string>& known_observers();

}  // namespace dgbo::cli
