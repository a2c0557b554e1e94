#include "tdoa/localization.hpp"

namespace tdoa {

std::string_view to_string(Method m) {
  return m == Method::FiveSensor ? "five-sensor" : "four-sensor";
}

std::string_view to_string(AmbiguityResolution r) {
  switch (r) {
    case AmbiguityResolution::NotApplicable: return "not-applicable";
    case AmbiguityResolution::SingleRoot: return "single-root";
    case AmbiguityResolution::Residual: return "residual";
  }
  return "unknown";
}

}  // namespace tdoa
