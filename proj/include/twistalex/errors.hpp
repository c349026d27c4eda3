#pragma once

#include <stdexcept>
#include <string>

namespace twistalex {

// A configured cap (time, degree, group order) was hit.
class ResourceLimit : public std::runtime_error {
 public:
  explicit ResourceLimit(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace twistalex
