#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mulhopf/parallel.hpp"
#include "mulhopf/pipeline.hpp"

using namespace mulhopf;

namespace {

constexpr int exit_input_error = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read spec file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string stem_of(std::string path) {
  if (auto slash = path.find_last_of('/'); slash != std::string::npos) path = path.substr(slash + 1);
  if (auto dot = path.find_last_of('.'); dot != std::string::npos && dot > 0) path = path.substr(0, dot);
  return path;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify and synthesize multiplier bialgebra and multiplier Hopf algebra structure"};
  app.set_version_flag("--version", std::string(tool_version));

  std::string command, source, report = "text";
  std::optional<int> window, expansion;
  RunOptions options;
  unsigned jobs = default_jobs();
  bool list = false;

  app.add_flag("--list-gallery", list, "List gallery entries and exit");
  app.add_option("command", command, "check-algebra | check-bialgebra | check-hopf | check-comodule | "
                                     "synthesize-counit | synthesize-antipode | classify")
      ->check(CLI::IsMember(commands()));
  app.add_option("spec", source, "gallery:NAME or a spec file");
  app.add_option("--window", window, "Window radius for oracle algebras")->check(CLI::Range(0, 64));
  app.add_option("--expansion", expansion, "Enlargement factor for span searches")->check(CLI::Range(1, 8));
  app.add_option("--report", report, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", options.seed, "Seed for the randomized convolution probes");
  app.add_option("--probes", options.probes, "Number of seeded convolution probes")->check(CLI::Range(0, 10000));
  app.add_option("--jobs", jobs, "Worker threads (default MULHOPF_JOBS or 1)")->check(CLI::Range(1u, 256u));
  app.add_flag("--timing", options.timing, "Record per-entry timings (reports are then not reproducible)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_input_error;
  }

  if (list) {
    for (const auto& n : gallery_names()) std::cout << "gallery:" << n << "\n";
    return 0;
  }
  if (command.empty() || source.empty()) {
    std::cerr << "expected a command and a spec (see --help)\n";
    return exit_input_error;
  }

  set_default_jobs(jobs);
  options.window = window;
  options.expansion = expansion;
  try {
    const bool from_gallery = source.starts_with("gallery:");
    const std::string digest_source = from_gallery ? source : read_file(source);
    const SpecFile spec = from_gallery ? load_spec(source) : parse_spec(digest_source, stem_of(source));
    const Report r = run(command, spec, source, digest_source, options);
    std::cout << (report == "json" ? to_json(r) : to_text(r));
    return exit_code(r);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return exit_input_error;
  }
}
