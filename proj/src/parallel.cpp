#include "mulhopf/parallel.hpp"

#include <cstdlib>
#include <string>

namespace mulhopf {

namespace {

unsigned initial_jobs() {
  if (const char* env = std::getenv("MULHOPF_JOBS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  return 1;
}

std::atomic<unsigned>& jobs_setting() {
  static std::atomic<unsigned> jobs{initial_jobs()};
  return jobs;
}

}  // namespace

unsigned default_jobs() { return jobs_setting().load(); }

void set_default_jobs(unsigned jobs) { jobs_setting().store(jobs == 0 ? 1 : jobs); }

}  // namespace mulhopf
