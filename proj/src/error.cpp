#include "seagrass/error.hpp"

#include <utility>

namespace seagrass {

namespace {

std::string join(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& line : lines) {
    if (!out.empty()) out += "\n";
    out += line;
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error(join(violations)), violations_(std::move(violations)) {}

}  // namespace seagrass
