#pragma once

#include <stdexcept>
#include <string>

namespace qtiming {

/// Scenario/configuration errors. `where` carries a "file:line" or "section.key"
/// location when one is known, so front ends can emit precise diagnostics.
class config_error : public std::runtime_error {
  public:
    explicit config_error(const std::string& message, std::string where = {})
        : std::runtime_error(where.empty() ? message : where + ": " + message),
          where_(std::move(where)) {}

    const std::string& where() const noexcept { return where_; }

  private:
    std::string where_;
};

}  // namespace qtiming
