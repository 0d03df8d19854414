#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace zsfast::cli {

struct RunConfig {
  std::string command;
  std::string signal;
  std::string scheme = "rk4";
  long long nseg = 0;  // 0: take it from the signal spec
  int nu = 0;          // 0: smallest multiple fitting every requested scheme
  long long nprime = 0;
  int kappa = 0;  // 0: take it from the signal spec
  std::string out;
  std::string format = "json";
  int threads = 0;
  int hs = 6;
  std::vector<std::string> schemes;
  long long t0 = 0;
  bool allow_rational = false;
};

nlohmann::json config_json(const RunConfig& c);

int cmd_continuous(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_discrete(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_periodic(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_bench(const RunConfig& c, std::ostream& out, std::ostream& err);

// Parses argv, dispatches, and maps library errors onto exit codes
// (0 ok, 2 usage or configuration, 3 numeric failure).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zsfast::cli
