#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lipkit/certify.hpp"

namespace lipkit {

/// Table printed by a demo plus a certificate for the property it shows.
struct DemoResult {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  Certificate certificate;
  std::vector<std::string> notes;
};

std::vector<std::string> demo_names();

/// sin-inv-t, cusp-curve, reciprocal-staircase or dowker-step.
DemoResult run_demo(std::string_view name);

}  // namespace lipkit
