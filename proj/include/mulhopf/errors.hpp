#pragma once

#include <stdexcept>
#include <string>

namespace mulhopf {

// Malformed input: foreign basis indices, dimension mismatches, bad spec files.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The declared window is too small to decide a statement (no decomposition,
// underdetermined system). This is operational, never a mathematical failure.
class WindowInsufficient : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A Sweedler slice Δ(a)(1⊗b) or (b⊗1)Δ(a) is not in the image of ι.
class SliceUndefined : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mulhopf
