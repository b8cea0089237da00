#pragma once

// Runs the CLI binary and captures stdout and the exit status.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace cli {

struct Run {
  int code = -1;
  std::string out;
};

inline std::string binary() { return LINDBLAD_CLI_PATH; }
inline std::string sample(const std::string& name) { return std::string(LINDBLAD_SAMPLES_DIR) + "/" + name; }

inline Run run(const std::string& args) {
  Run r;
  const std::string cmd = "'" + binary() + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace cli
