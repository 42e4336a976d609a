#include "doctest.h"

#include <fstream>
#include <sstream>

#include "hdlab/cli.hpp"
#include "hdlab/error.hpp"

using namespace hdlab::cli;
using hdlab::Error;
using hdlab::ErrorCode;

namespace {

std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(HDLAB_FIXTURES) + "/" + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Error code and message of a failing parse.
std::pair<ErrorCode, std::string> parse_failure(const std::string& text) {
  try {
    parse_workspace(text);
  } catch (const Error& e) {
    return {e.code(), e.what()};
  }
  return {ErrorCode::Unsolvable, "parsed"};
}

}  // namespace

TEST_CASE("minimal workspace") {
  const auto ws = parse_workspace("hdlab-workspace 1\nobject X {\"factors\":[2,3]}\n");
  CHECK(ws.objects.size() == 1);
  CHECK(ws.objects.at("X").moduli().size() == 1);
  CHECK(ws.tasks.empty());
  CHECK(run_tasks(ws).empty());
  CHECK(reports_json({}) == "[]\n");
}

TEST_CASE("parse errors carry positions") {
  auto [code, what] = parse_failure("");
  CHECK(code == ErrorCode::ParseError);
  std::tie(code, what) = parse_failure("hdlab-workspace 2\n");
  CHECK(code == ErrorCode::ParseError);
  CHECK(what.find("line 1, column 17") != std::string::npos);
  std::tie(code, what) = parse_failure("hdlab-workspace 1\n\nobject X {\"factors\":[2,}\n");
  CHECK(code == ErrorCode::ParseError);
  CHECK(what.find("line 3, column 24") != std::string::npos);
  std::tie(code, what) = parse_failure("hdlab-workspace 1\n  widget X {}\n");
  CHECK(code == ErrorCode::ParseError);
  CHECK(what.find("line 2, column 3") != std::string::npos);
  std::tie(code, what) = parse_failure("hdlab-workspace 1\nobject 9X {\"factors\":[2]}\n");
  CHECK(code == ErrorCode::ParseError);
  CHECK(what.find("column 8") != std::string::npos);
  std::tie(code, what) = parse_failure("hdlab-workspace 1\nobject X [2]\n");
  CHECK(code == ErrorCode::ParseError);
  std::tie(code, what) = parse_failure("hdlab-workspace 1\ntask t hom X Y degree=1 Z\n");
  CHECK(code == ErrorCode::ParseError);
}

TEST_CASE("validation errors") {
  auto [code, what] = parse_failure("hdlab-workspace 1\nobject X {\"factors\":[2]}\nobject X {\"factors\":[3]}\n");
  CHECK(code == ErrorCode::ValidationError);
  CHECK(what.find("duplicate name 'X'") != std::string::npos);
  std::tie(code, what) = parse_failure(
      "hdlab-workspace 1\nobject M {\"ring\":\"R\",\"dims\":[1,0]}\nring R {\"kind\":\"a2\",\"p\":2}\n");
  CHECK(code == ErrorCode::ValidationError);
  CHECK(what.find("forward reference to 'R'") != std::string::npos);
  std::tie(code, what) = parse_failure("hdlab-workspace 1\ntask t hom X Y\nobject X {\"factors\":[2]}\n");
  CHECK(code == ErrorCode::ValidationError);
  CHECK(what.find("forward reference") != std::string::npos);
  std::tie(code, what) = parse_failure("hdlab-workspace 1\ntask t compute hom X Y\n");
  CHECK(code == ErrorCode::ValidationError);
  CHECK(what.find("undeclared name 'X'") != std::string::npos);
  std::tie(code, what) = parse_failure("hdlab-workspace 1\ngroup G {\"kind\":\"table\",\"table\":[[0,1],[0,1]]}\n");
  CHECK(code == ErrorCode::ValidationError);
  CHECK(what.find("bad group table") != std::string::npos);
  std::tie(code, what) = parse_failure("hdlab-workspace 1\nobject X {\"factors\":[2]}\ntask t compute ext X\n");
  CHECK(code == ErrorCode::ValidationError);
  std::tie(code, what) = parse_failure("hdlab-workspace 1\ntask t verify everything\n");
  CHECK(code == ErrorCode::ValidationError);
  std::tie(code, what) = parse_failure("hdlab-workspace 1\ntask t verify a2\ntask t verify a2\n");
  CHECK(code == ErrorCode::ValidationError);
  std::tie(code, what) = parse_failure(
      "hdlab-workspace 1\nobject X {\"factors\":[2]}\nobject Y {\"factors\":[4]}\n"
      "morphism f {\"source\":\"X\",\"target\":\"Y\",\"matrix\":[[1]]}\n");
  CHECK(code == ErrorCode::ValidationError);
}

TEST_CASE("group ring objects") {
  const auto ws = parse_workspace(
      "hdlab-workspace 1\n"
      "group G {\"kind\":\"cyclic\",\"n\":2}\n"
      "group K {\"kind\":\"product\",\"factors\":[\"G\",\"G\"]}\n"
      "ring ZG {\"kind\":\"group_ring\",\"group\":\"G\"}\n"
      "object T {\"ring\":\"ZG\",\"factors\":[3]}\n"
      "object Sgn {\"ring\":\"ZG\",\"factors\":[3],\"action\":{\"1\":[[2]]}}\n"
      "task e compute ext Sgn T degree=2\n"
      "task cd verify lem-cd groups=G,K ells=3 bound=2\n");
  CHECK(ws.groups.at("K").order() == 4);
  const auto reports = run_tasks(ws);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].status == Status::Pass);
  CHECK(reports[1].status == Status::Pass);
  CHECK(reports[1].result.at("entries").size() == 2);
}

TEST_CASE("the quiver fixture runs end to end") {
  const auto ws = parse_workspace(read_fixture("a2.hdlab"));
  CHECK(ws.objects.size() == 4);
  CHECK(ws.morphisms.size() == 1);
  const auto reports = run_tasks(ws);
  REQUIRE(reports.size() == ws.tasks.size());
  CHECK(exit_status(reports) == 0);
  CHECK(reports[0].result.at("invariants") == Json::array({2}));
  CHECK(reports[1].result.at("invariants").empty());
  const auto& quiver = reports.back().result.at("fields").at(0);
  CHECK(quiver.at("hd_a") == 1);
  CHECK(quiver.at("hd_b") == 0);
  CHECK(quiver.at("hd_quotient") == 0);
  CHECK(quiver.at("strict") == true);
  CHECK(quiver.at("lifting") == true);
}

TEST_CASE("tasks by example") {
  const auto ws = parse_workspace(
      "hdlab-workspace 1\nobject X {\"factors\":[2,4]}\nobject Y {\"factors\":[12]}\n"
      "task h hom X Y\ntask k verify ext2-k field=F_4 N=16\n");
  const auto reports = run_tasks(ws);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].command == "compute hom X Y");
  CHECK(reports[0].result.at("invariants") == Json::array({2, 4}));
  const auto& f4 = reports[1].result.at("fields").at(0);
  CHECK(f4.at("F_minus_id").at("dimension_over_k") == 1);
  CHECK(f4.at("F_minus_id").at("truncation") == 16);
  CHECK(reports[1].provenance.at("truncation") == 16);
}

TEST_CASE("a failing task leaves the others alone") {
  const auto ws = parse_workspace(
      "hdlab-workspace 1\nobject X {\"factors\":[2]}\n"
      "task a compute hom X X\ntask b verify a2 field=F_5\ntask c compute ext X X degree=1\n"
      "task d verify thm-hd S=4\n");
  const auto reports = run_tasks(ws);
  REQUIRE(reports.size() == 4);
  CHECK(reports[0].status == Status::Pass);
  CHECK(reports[1].status == Status::Error);
  CHECK(!reports[1].error.empty());
  CHECK(reports[2].status == Status::Pass);
  CHECK(reports[3].status == Status::Error);
  CHECK(exit_status(reports) == 1);
  CHECK(reports_text(reports).find("[error] b") != std::string::npos);
}

TEST_CASE("formatting is canonical and stable") {
  const std::string text =
      "# comment\n\nhdlab-workspace   1\nobject  X   {\"factors\": [2, 4]}\n"
      "serre B {\"predicate\":\"s_torsion:{2}\"}\n"
      "task   t1   compute ext X X   seed=3 degree=2\n";
  const auto ws = parse_workspace(text);
  const std::string once = format_workspace(ws);
  CHECK(once ==
        "hdlab-workspace 1\nobject X {\"factors\":[2,4]}\nserre B {\"predicate\":\"s_torsion:{2}\"}\n"
        "task t1 compute ext X X degree=2 seed=3\n");
  CHECK(format_workspace(parse_workspace(once)) == once);
  const auto fixture = parse_workspace(read_fixture("a2.hdlab"));
  CHECK(format_workspace(parse_workspace(format_workspace(fixture))) == format_workspace(fixture));
}

TEST_CASE("reports round-trip and repeat") {
  const auto ws = parse_workspace(read_fixture("finab.hdlab"));
  RunOptions opts;
  opts.seed = 5;
  const auto first = run_tasks(ws, opts);
  const auto second = run_tasks(ws, opts);
  CHECK(reports_json(first) == reports_json(second));
  CHECK(exit_status(first) == 0);
  for (const auto& r : first) {
    const Json j = r.to_json(true);
    const Report back = Report::from_json(Json::parse(j.dump()));
    CHECK(back.to_json(true) == j);
    CHECK(back.result == r.result);
    CHECK(r.provenance.at("seed") == 5);
  }
  CHECK(reports_json(first).find("wall_time_s") == std::string::npos);
  CHECK(reports_json(first, true).find("wall_time_s") != std::string::npos);
}

TEST_CASE("run options and task options") {
  const auto ws = parse_workspace(
      "hdlab-workspace 1\ntask a verify thm-hd S=3 max_order=12\ntask b verify thm-hd S=3 max_order=12 bound=2\n");
  RunOptions opts;
  opts.bound = 4;
  const auto reports = run_tasks(ws, opts);
  CHECK(reports[0].provenance.at("bound") == 4);
  CHECK(reports[1].provenance.at("bound") == 2);
  CHECK(reports[0].status == Status::Pass);
  CHECK(reports[0].result.at("ambient").at("exact") == true);
}
