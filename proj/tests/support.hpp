#pragma once

#include <chrono>
#include <filesystem>
#include <string>

#include "amlgen/config.hpp"

namespace testing {

inline amlgen::GraphConfig small_graph(std::int64_t individuals = 300, unsigned months = 3,
                                       std::uint64_t seed = 7) {
  using namespace std::chrono;
  amlgen::GraphConfig g = amlgen::default_graph_config();
  g.master_seed = seed;
  g.individual_count = individuals;
  g.simulation_start = amlgen::Date{sys_days{year{2025} / 1 / 1}};
  const year_month_day last = sys_days{year{2025} / static_cast<int>(months + 1) / 1} - days{1};
  g.simulation_end = amlgen::Date{sys_days{last}};
  return g;
}

inline amlgen::PatternConfig patterns(std::int64_t each) {
  amlgen::PatternConfig p;
  p.overseas_transfers.instance_count = each;
  p.rapid_movement.instance_count = each;
  p.front_business.instance_count = each;
  p.synchronised.instance_count = each;
  p.u_turn.instance_count = each;
  return p;
}

inline std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("amlgen_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testing
