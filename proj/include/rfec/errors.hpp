#pragma once

#include <stdexcept>
#include <string>

namespace rfec {

// Thrown when an exact/exhaustive routine is asked for an instance larger
// than it is designed to enumerate.
class resource_limit_error : public std::runtime_error {
public:
    explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rfec
