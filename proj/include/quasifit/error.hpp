#pragma once

#include <stdexcept>
#include <string>

namespace quasifit {

/// Raised for every contract violation in the library (bad input data,
/// out-of-range parameters, unfittable windows). The message is a single
/// line suitable for printing as a CLI diagnostic.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace quasifit
