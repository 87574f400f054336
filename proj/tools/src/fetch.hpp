#pragma once

#include <string>

namespace graphlift::cli {

struct FetchArgs {
  std::string name;
  std::string url_override;
  std::string cache_override;
  bool list = false;
  bool force = false;
};

/// Download a named dataset into the cache (checksum-verified, trust on
/// first use) or list the registry. Returns a process exit code.
int run_fetch(const FetchArgs& args);

}  // namespace graphlift::cli
