#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace uwdc {

enum class Errc {
  out_of_domain,
  domain_mismatch,
  empty_input,
  not_unit,
  degenerate_segment,
  not_simple,
  not_closed,
  not_convex,
  invalid_region,
  invalid_nesting,
  degenerate_contact,
  touching_halfplane,
  not_boundary_point,
  bad_bounds,
  window_too_small,
  singular_calibration,
  schema,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace uwdc
