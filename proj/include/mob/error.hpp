#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace mob {

enum class ErrorKind {
  lexical,
  syntax,
  undeclared_symbol,
  not_affine,
  empty_multinomial,
  unsupported,
  structural_divergence,
  over_determined,
  unknown_parameter,
  bad_value,
  unresolvable_target,
  pole,
  domain,
  numeric,
};

const char* to_string(ErrorKind kind);

// Structured error carrying the module that raised it and, for text input,
// the 0-based character offset.
class Error : public std::runtime_error {
 public:
  Error(std::string module, ErrorKind kind, const std::string& message,
        std::optional<std::size_t> position = std::nullopt);

  const std::string& module() const { return module_; }
  ErrorKind kind() const { return kind_; }
  std::optional<std::size_t> position() const { return position_; }

 private:
  std::string module_;
  ErrorKind kind_;
  std::optional<std::size_t> position_;
};

}  // namespace mob
