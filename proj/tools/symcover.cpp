#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "symcover/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  symcover::Environment env;
  if (const char* cache = std::getenv("SYMCOVER_CACHE")) env["SYMCOVER_CACHE"] = cache;
  const auto result = symcover::run_command(args, env);
  std::cout << result.out;
  std::cerr << result.err;
  if (result.cache_hit) std::cerr << "served from cache\n";
  return result.exit_code;
}
