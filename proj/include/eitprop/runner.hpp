#ifndef EITPROP_RUNNER_HPP
#define EITPROP_RUNNER_HPP

#include <cstdint>
#include <filesystem>
#include <string>

#include "eitprop/config.hpp"

namespace eitprop {

/// Command implementations behind the CLI. Every function is deterministic
/// for a fixed config (and seed, where one applies) and returns the JSON
/// summary it also writes to <out_dir>/summary.json (or report.json).
std::string run_velocities(const RunConfig& config, const std::filesystem::path& out_dir);
std::string run_propagate(const RunConfig& config, const std::filesystem::path& out_dir);
std::string run_intensity(const RunConfig& config, const std::filesystem::path& out_dir);
std::string run_memory(const RunConfig& config, std::uint64_t value,
                       const std::filesystem::path& out_dir);
std::string run_verify(const RunConfig& config, unsigned seed,
                       const std::filesystem::path& out_dir);

}  // namespace eitprop

#endif
