#pragma once

#include <map>
#include <string>
#include <vector>

namespace symcover {

struct CommandResult {
  /// 0 on success, 1 on domain errors, 2 on usage errors.
  int exit_code = 0;
  std::string out;
  std::string err;
  bool cache_hit = false;
};

using Environment = std::map<std::string, std::string>;

/// Runs one symcover command. `args` excludes the program name. The cache
/// root comes from --cache-dir, else SYMCOVER_CACHE in `env`; with neither,
/// nothing is cached.
CommandResult run_command(const std::vector<std::string>& args, const Environment& env = {});

}  // namespace symcover
