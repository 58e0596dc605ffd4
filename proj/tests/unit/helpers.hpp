#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "relim/text_format.hpp"

namespace testing {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline std::string golden(const std::string& name) {
  return read_file(std::string(RELIM_GOLDEN_DIR) + "/" + name);
}

inline relim::Problem P(const std::string& text) { return relim::parse_problem(text); }

inline relim::CondensedConfig C(const std::string& text) { return relim::parse_config(text); }

}  // namespace testing
