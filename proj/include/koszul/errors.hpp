#pragma once

#include <stdexcept>
#include <string>

namespace koszul {

// Modulus not prime or outside the supported range.
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or mismatched input (shapes, indices, ideal mismatch).
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A requested degree or cell lies outside the precomputed range.
class range_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A cell would exceed the configured size cap.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Broken internal invariant (e.g. a face present without its subfaces).
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace koszul
