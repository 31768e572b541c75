#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mulhopf/pipeline.hpp"

using namespace mulhopf;

namespace {

std::string read_data(const std::string& name) {
  std::ifstream in(std::string(MULHOPF_TEST_DATA) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Report run_gallery(const std::string& command, const std::string& name, RunOptions options = {}) {
  const std::string source = "gallery:" + name;
  return run(command, load_spec(source), source, source, options);
}

const ReportEntry& find_entry(const Report& r, const std::string& axiom) {
  for (const auto& e : r.entries) {
    if (e.axiom == axiom) return e;
  }
  throw std::out_of_range(axiom);
}

}  // namespace

TEST_CASE("spec files") {
  auto s = parse_spec(read_data("kfun_z2.spec"), "kfun_z2");
  CHECK(s.bundle.algebra.domain().basis().size() == 2);
  CHECK(s.bundle.delta.has_value());
  CHECK(s.bundle.counit.has_value());
  CHECK(s.bundle.antipode.has_value());

  auto o = parse_spec(read_data("kfin_z.spec"), "kfin_z");
  CHECK_FALSE(o.bundle.algebra.is_finite());
  CHECK(o.window == 4);

  try {
    parse_spec(read_data("undeclared.spec"));
    FAIL("undeclared symbol accepted");
  } catch (const SpecError& e) {
    CHECK(e.line == 3);
    CHECK(std::string(e.what()).find("d9") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_spec("field Q\nbasis a\nmul a a = a\nfrobnicate\n"), SpecError);
  CHECK_THROWS_AS(parse_spec("field F4\nbasis a\n"), InputError);
  CHECK_THROWS_AS(parse_spec("field Q\nbasis a b\nmul a a = a\nunit = a\n"), SpecError);
  CHECK_THROWS_AS(load_spec("gallery:no_such_thing"), InputError);
}

TEST_CASE("axiom anchors are unique") {
  std::set<std::string> ids, anchors;
  for (const auto& [id, anchor] : axiom_anchors()) {
    CHECK(ids.insert(id).second);
    CHECK(anchors.insert(anchor).second);
    CHECK_FALSE(anchor.empty());
  }
}

TEST_CASE("every report entry carries a known anchor") {
  std::set<std::string> known;
  for (const auto& [id, anchor] : axiom_anchors()) known.insert(anchor);
  for (const auto& command : commands()) {
    CAPTURE(command);
    auto r = run_gallery(command, "kfun_cyclic(2)");
    CHECK_FALSE(r.entries.empty());
    for (const auto& e : r.entries) CHECK(known.count(e.anchor) == 1);
  }
}

TEST_CASE("json reports are deterministic") {
  RunOptions o;
  o.window = 2;
  const auto a = to_json(run_gallery("check-hopf", "kfin_Z", o));
  const auto b = to_json(run_gallery("check-hopf", "kfin_Z", o));
  CHECK(a == b);
  auto j = nlohmann::json::parse(a);
  CHECK(j["tool"] == "mulhopf");
  CHECK(j["exit_code"] == 0);
  CHECK(j["parameters"]["window"] == 2);
  CHECK(j["input_digest"].get<std::string>().starts_with("fnv1a64:"));
  for (const auto& e : j["entries"]) CHECK(e["timing_ms"].is_null());
}

TEST_CASE("fnv1a64 reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("exit codes") {
  CHECK(exit_code(run_gallery("check-hopf", "kfun_cyclic(3)")) == 0);
  auto rowalg = run_gallery("check-algebra", "rowalg2");
  CHECK(exit_code(rowalg) == 1);
  CHECK(find_entry(rowalg, "algebra.nondegenerate").status == EntryStatus::failed);
  auto nand = run_gallery("check-bialgebra", "kfun2_nand");
  CHECK(exit_code(nand) == 1);
  CHECK(find_entry(nand, "bialgebra.coassociativity").witness.size() == 3);
  auto proj = run_gallery("synthesize-counit", "kfin_Z_proj");
  CHECK(exit_code(proj) == 1);

  Report insufficient;
  insufficient.entries.push_back({"a", "x", EntryStatus::window_insufficient, "", {}, "", {}});
  CHECK(exit_code(insufficient) == 2);
  insufficient.entries.push_back({"b", "y", EntryStatus::failed, "", {}, "", {}});
  CHECK(exit_code(insufficient) == 1);
}

TEST_CASE("classification ladder") {
  CHECK(*run_gallery("classify", "kfun_cyclic(3)").classification == "multiplier Hopf algebra (proven; finite)");
  RunOptions o;
  o.window = 2;
  CHECK(*run_gallery("classify", "kfin_Z", o).classification == "multiplier Hopf algebra (holds_on_window 2)");
  CHECK(run_gallery("classify", "kfin_N", o).classification->starts_with("multiplier bialgebra"));
  CHECK(run_gallery("classify", "rowalg2").classification->starts_with("associative algebra"));
  CHECK(run_gallery("classify", "kfun2_nand").classification->starts_with("non-degenerate idempotent algebra"));
}

TEST_CASE("spec file run matches the gallery") {
  const std::string text = read_data("kfun_z2.spec");
  auto r = run("check-hopf", parse_spec(text, "kfun_z2"), "kfun_z2.spec", text, {});
  CHECK(exit_code(r) == 0);
  for (const auto& e : r.entries) CHECK(e.status == EntryStatus::proven);
  CHECK(r.digest == fnv1a64(text));
}
