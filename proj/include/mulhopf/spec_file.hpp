#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "mulhopf/gallery.hpp"

namespace mulhopf {

/// Parse error carrying the 1-based line it refers to.
class SpecError : public InputError {
 public:
  SpecError(int line, const std::string& message)
      : InputError("line " + std::to_string(line) + ": " + message), line(line) {}
  int line;
};

struct SpecFile {
  GalleryEntry bundle;
  std::optional<int> window;
  std::optional<int> expansion;
};

/// Line-oriented spec grammar:
///   field Q | field Fp <p>
///   basis <sym>... | oracle <name> [<param>]
///   mul <i> <j> = <element>
///   unit = <element>
///   delta <i> (<j>,<k>) = <element of A⊗A>      Δ̃(e_i)▷(e_j⊗e_k)
///   epsilon <i> = <scalar>
///   antipode <i> = <element>                   S(e_i) = ι(element)
///   window <n> | expansion <n>
/// Missing table entries are zero. '#' starts a comment.
SpecFile parse_spec(std::string_view text, std::string name = "spec");

/// "gallery:NAME" or a path to a spec file.
SpecFile load_spec(const std::string& source);

}  // namespace mulhopf
