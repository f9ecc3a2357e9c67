#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "wblab/config.hpp"

namespace wblab {

const std::vector<std::string>& subcommands();

/// Runs one subcommand and writes its outputs under cfg.out. Returns 0 when every declared
/// assertion passes, 1 when one fails (reports are still written), 2 on a usage, config or I/O error.
int run(const std::string& subcommand, const RunConfig& cfg, std::ostream& log);

/// Resolves a constants path: as given, else relative to the source tree.
std::string resolve_constants_path(const std::string& path);

}  // namespace wblab
