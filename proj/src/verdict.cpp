#include "mulhopf/verdict.hpp"

#include <algorithm>

namespace mulhopf {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::proven:
      return "proven";
    case Status::holds_on_window:
      return "holds_on_window";
    case Status::failed:
      return "failed";
  }
  return "unknown";
}

Verdict combine(const std::vector<Verdict>& parts) {
  Verdict out;
  std::vector<std::string> windows;
  for (const auto& p : parts) {
    if (p.status == Status::failed) return p;
    if (p.status == Status::holds_on_window) out.status = Status::holds_on_window;
    if (std::find(windows.begin(), windows.end(), p.window) == windows.end()) {
      windows.push_back(p.window);
    }
  }
  for (std::size_t i = 0; i < windows.size(); ++i) {
    if (i) out.window += "; ";
    out.window += windows[i];
  }
  return out;
}

}  // namespace mulhopf
