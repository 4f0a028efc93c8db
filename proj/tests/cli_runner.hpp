#pragma once

// Runs the command-line tool from the tests directory and captures stdout.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace cartan::testgen {

struct CliResult {
  std::string out;
  int status = -1;
};

inline CliResult run_cli(const std::string& args) {
  std::string cmd = std::string("cd '") + CARTAN_TEST_DIR + "' && '" + CARTAN_CLI + "' " + args + " 2>/dev/null";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// (golden file, CLI arguments) pairs from golden/MANIFEST.
inline std::vector<std::pair<std::string, std::string>> golden_manifest() {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(read_file(std::string(CARTAN_TEST_DIR) + "/golden/MANIFEST"));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto space = line.find(' ');
    out.emplace_back(line.substr(0, space), line.substr(space + 1));
  }
  return out;
}

}  // namespace cartan::testgen
