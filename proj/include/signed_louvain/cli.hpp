#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "signed_louvain/engines.hpp"

namespace signed_louvain::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kUsage = 2;

/// Maps an engine name or alias to its configuration:
/// classic/L, relaxed/RL, signed/SLd = hop(1,2), signed-ext/SLe = hop(2,2).
/// Throws std::invalid_argument for unknown names.
EngineConfig engine_from_name(std::string_view name);

/// Runs the `signed-louvain` command line. `args` excludes the program name.
/// Tables go to `out` unless `--out` is given; the run report and
/// diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace signed_louvain::cli
