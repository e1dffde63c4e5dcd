#include "mob/error.hpp"

namespace mob {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::lexical: return "lexical";
    case ErrorKind::syntax: return "syntax";
    case ErrorKind::undeclared_symbol: return "undeclared-symbol";
    case ErrorKind::not_affine: return "not-affine";
    case ErrorKind::empty_multinomial: return "empty-multinomial";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::structural_divergence: return "structural-divergence";
    case ErrorKind::over_determined: return "over-determined";
    case ErrorKind::unknown_parameter: return "unknown-parameter";
    case ErrorKind::bad_value: return "bad-value";
    case ErrorKind::unresolvable_target: return "unresolvable-target";
    case ErrorKind::pole: return "pole";
    case ErrorKind::domain: return "domain";
    case ErrorKind::numeric: return "numeric";
  }
  return "unknown";
}

namespace {

std::string compose(const std::string& module, ErrorKind kind, const std::string& message,
                    std::optional<std::size_t> position) {
  std::string out = module + ": " + to_string(kind) + ": " + message;
  if (position) out += " (at offset " + std::to_string(*position) + ")";
  return out;
}

}  // namespace

Error::Error(std::string module, ErrorKind kind, const std::string& message,
             std::optional<std::size_t> position)
    : std::runtime_error(compose(module, kind, message, position)),
      module_(std::move(module)),
      kind_(kind),
      position_(position) {}

}  // namespace mob
