#pragma once

#include <filesystem>

#include "weaklab/config.hpp"

namespace weaklab {

// Exit codes shared with CI: 0 ok, 1 violation/tolerance breach,
// 2 config error, 3 work-guard refusal, 4 budget refusal.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitGuard = 3;
inline constexpr int kExitBudget = 4;

int cmd_constants(const RunConfig& config,
                  const std::filesystem::path& out_dir);
int cmd_verify(const RunConfig& config, const std::filesystem::path& out_dir);
int cmd_sweep(const RunConfig& config, const std::filesystem::path& out_dir);
int cmd_search(const RunConfig& config, const std::filesystem::path& out_dir);
int cmd_oracle_check(const RunConfig& config,
                     const std::filesystem::path& out_dir);

/// Full argv entry point (subcommand dispatch, exception-to-exit mapping).
int run_cli(int argc, const char* const* argv);

} // namespace weaklab
