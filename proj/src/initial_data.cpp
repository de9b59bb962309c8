#include "uasc/initial_data.hpp"

#include <cmath>

namespace uasc {

InitialData make_initial_data(const std::string& id) {
  if (id == "paper")
    return InitialData{
        id, [](double x) { return std::sin(x); },
        [](double x) { return 0.5 * std::sin(x); }};
  if (id == "zero")
    return InitialData{id, [](double) { return 0.0; },
                       [](double) { return 0.0; }};
  throw UsageError("unknown initial data id: " + id);
}

wkb::State initial_wkb_state(const InitialData& d, const Grid& g) {
  ComplexField s = ComplexField::sampled(g, [&](double x) {
    return cplx(d.S0(x), 0.0);
  });
  ComplexField a = ComplexField::sampled(g, [&](double x) {
    return cplx(d.A0(x), 0.0);
  });
  return wkb::make_state(std::move(s), std::move(a));
}

}  // namespace uasc
