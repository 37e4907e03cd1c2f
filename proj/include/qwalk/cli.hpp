#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace qwalk::cli {

inline constexpr const char* kEngineVersion = "qwalk 1.0.0";

enum ExitCode : int { Ok = 0, EngineError = 1, UsageError = 2 };

/// Every numeric knob a command may read. Unused fields keep their defaults.
struct RunParameters {
    int order = 1;
    int order_y = 10;
    int nodes = 160;
    int nodes_y = 0; ///< 0: same as nodes
    int lambda = 16;
    std::vector<int> lambdas{16, 4, 3, 2, 1};
    int m = 16;
    double dx = 2.0;
    double time = 15.0;
    double quantum_time = 15.0;
    double gamma = 1.0;
    std::string boundary = "periodic";
    std::string n_range = "50:250:50";
    int repeats = 5;
    std::uint64_t seed = 0;
    bool stub_engines = false;
};

void to_json(nlohmann::json& j, const RunParameters& p);
void from_json(const nlohmann::json& j, RunParameters& p);

struct RunManifest {
    std::string command;
    RunParameters parameters;
    std::string engine_version = kEngineVersion;
    std::string timestamp;
};

void to_json(nlohmann::json& j, const RunManifest& m);
void from_json(const nlohmann::json& j, RunManifest& m);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

/// Parses "lo:hi:step" (inclusive). Throws std::invalid_argument.
std::vector<int> parse_range(const std::string& spec);

/// Writes through a temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

/// Runs one command against already-validated parameters, writing into out_dir.
/// Throws qwalk::Error on engine failure and std::invalid_argument on bad parameters.
void execute(const std::string& command, const RunParameters& params, const std::filesystem::path& out_dir,
             std::ostream& log);

/// Entry point shared by the executable and the tests; args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qwalk::cli
