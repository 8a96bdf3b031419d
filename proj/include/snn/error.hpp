#pragma once

#include <stdexcept>

namespace snn {

class SnnError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace snn
