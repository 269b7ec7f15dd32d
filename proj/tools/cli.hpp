#pragma once

// Configuration and command dispatch for the weakkam batch tool.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "weakkam/potential.hpp"
#include "weakkam/quad.hpp"
#include "weakkam/separatrix.hpp"

namespace weakkam::cli {

enum class Command { profile, sweep, flows, separatrix, ndim };

std::optional<Command> parse_command(const std::string& name);
std::string command_name(Command c);

/// Bad input, reported with exit status 2.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    Command command = Command::profile;
    nlohmann::json potential_json;
    Potential potential = Potential::pendulum();
    std::vector<double> k_list;
    /// One of action / energy is needed by profile, sweep, flows and ndim.
    std::optional<double> action, energy;
    std::optional<double> R, R_energy;
    double r = 0.5;
    std::optional<double> t_end;
    double dt = 0.01;
    int grid = 256;
    double phi0 = 0.0;
    int n = 3;
    std::vector<double> extra_actions;
    std::vector<TestFunction> test_functions;
    QuadConfig quad;
    std::filesystem::path out_dir = ".";
    unsigned threads = 1;
};

/// Command-line values; each one set here overrides the config file.
struct Overrides {
    std::optional<std::string> command;
    std::optional<std::string> config;
    std::vector<double> k;
    std::optional<double> action, energy, R, R_energy, r, t_end, dt, phi0, rel_tol, abs_tol;
    std::optional<int> grid, n, max_subdivisions;
    std::optional<std::string> out;
};

/// Merges the JSON text with the overrides and validates the result. Errors
/// name the line of the offending key.
RunConfig build_config(const std::string& json_text, const Overrides& ov);

/// Reads WEAKKAM_THREADS and caps it by the hardware concurrency.
unsigned thread_cap();

/// Runs the command and writes its files under out_dir.
void run(const RunConfig& cfg);

/// Full entry point; returns the process exit status.
int main(int argc, char** argv);

}  // namespace weakkam::cli
