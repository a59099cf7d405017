#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace seqderiv {

enum class ErrorKind {
  invalid_set,
  empty_set,
  index,
  domain,
  param,
  invalid_map,
  insufficient_data,
  bracket,
  search_failure,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; `kind()` carries the category so
// callers (the CLI in particular) can map failures to structured records.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace seqderiv
