#pragma once

#include <functional>
#include <string>

#include "uasc/grid.hpp"
#include "uasc/wkb.hpp"

namespace uasc {

struct InitialData {
  std::string id;
  std::function<double(double)> A0;
  std::function<double(double)> S0;
};

/// Built-in data sets: "paper" (A0 = sin x, S0 = sin(x)/2) and "zero".
InitialData make_initial_data(const std::string& id);

wkb::State initial_wkb_state(const InitialData& d, const Grid& g);

}  // namespace uasc
