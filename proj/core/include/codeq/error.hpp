#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace codeq {

enum class Errc {
  invalid_bounds,
  invalid_size,
  dimension_mismatch,
  unevaluated_population,
  invalid_u,
  index_out_of_range,
  invalid_budget,
  population_too_small,
  length_mismatch,
  empty_dataset,
  io_error,
  parse_error,
  schema_mismatch,
  invalid_count,
  label_out_of_range,
  dataset_error,
  config_error,
  empty_sample,
  insufficient_runs,
  invalid_argument,
};

std::string_view to_string(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above so
// callers (and tests) can branch on the kind rather than the message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace codeq
