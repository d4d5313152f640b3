#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace conewalk::cli {

/// Exit codes: 0 ok, 1 runtime error (JSON on err), 2 usage error.
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// --threads wins, then CONEWALK_THREADS, then the core count.
unsigned resolve_threads(std::optional<unsigned> flag);

/// Named end-to-end scenarios; returns false for an unknown name.
bool run_demo(const std::string& name, unsigned threads, std::ostream& out);
std::vector<std::string> demo_names();

}  // namespace conewalk::cli
