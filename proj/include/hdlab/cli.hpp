#pragma once

// Workspace files and the task runner behind the command-line driver.
//
// A workspace is line oriented. The first non-comment line is
// "hdlab-workspace 1"; every other line is a comment (#), blank, or one of
//
//   ring <name> <json>      {"kind":"integers"} | {"kind":"a2","p":2} | {"kind":"group_ring","group":"G"}
//   group <name> <json>     {"kind":"cyclic","n":3} | {"kind":"s3"} | {"kind":"table","table":[[...]]}
//                           | {"kind":"product","factors":["A","B"]}
//   object <name> <json>    {"factors":[2,4]} over Z, or {"ring":"R",...} with "factors" and an optional
//                           "action" {"<element>":matrix} over a group ring, or "dims":[v1,v2] and "edge" over A2
//   morphism <name> <json>  {"source":"X","target":"Y","matrix":[[...]]}
//   serre <name> <json>     {"predicate":"zero" | "etale_like" | "s_torsion:{2,3}" | "span:{X,Y}"}
//   task <id> <command> [key=value ...]
//
// Names are declared once, before use.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hdlab/hd_lab.hpp"
#include "json.hpp"

namespace hdlab::cli {

using Json = nlohmann::json;

enum class DeclKind { Ring, Group, Object, Morphism, Serre };

struct Declaration {
  DeclKind kind = DeclKind::Object;
  std::string name;
  Json payload;
  std::size_t line = 0;
};

struct Task {
  std::string id;
  std::vector<std::string> words;              // e.g. compute hom X Y
  std::map<std::string, std::string> options;  // key=value
  std::size_t line = 0;

  std::string command() const;  // words and options in canonical order
};

struct WorkspaceFile {
  int version = 1;
  std::vector<Declaration> declarations;
  std::vector<Task> tasks;

  std::map<std::string, modcat::RingPtr> rings;
  std::map<std::string, modcat::FiniteGroup> groups;
  std::map<std::string, modcat::Module> objects;
  std::map<std::string, modcat::Morphism> morphisms;
  std::map<std::string, serre::SerrePredicate> predicates;
};

// Throws ParseError ("line L, column C: ...") or ValidationError.
WorkspaceFile parse_workspace(const std::string& text);
// A task line body "<command> [key=value ...]"; throws ParseError.
Task parse_task(const std::string& id, const std::string& body, std::size_t line = 0);
// Canonical text of a workspace: compact JSON with sorted keys, single spaces.
std::string format_workspace(const WorkspaceFile& ws);

struct RunOptions {
  std::uint64_t seed = 0;
  // Unset: each command's default (bound 3, or 4 for lem-cd; truncation 16).
  std::optional<std::size_t> bound, truncation;
  bool timing = false;  // include wall time in reports
};

enum class Status { Pass, Fail, Error };

struct Report {
  std::string id;
  std::string command;
  Json inputs;
  Status status = Status::Pass;
  Json result;
  Json provenance;
  std::string error;
  double seconds = 0;
  std::vector<std::string> summary;  // lines of the human-readable table

  Json to_json(bool timing) const;
  static Report from_json(const Json& j);
};

Report run_task(const WorkspaceFile& ws, const Task& task, const RunOptions& options);
// One report per task in declaration order; a failing task never stops the others.
std::vector<Report> run_tasks(const WorkspaceFile& ws, const RunOptions& options = {});

std::string reports_json(const std::vector<Report>& reports, bool timing = false);
std::string reports_text(const std::vector<Report>& reports, bool timing = false);
// 0 when every task passes, 1 otherwise.
int exit_status(const std::vector<Report>& reports);

const char* status_name(Status s);

}  // namespace hdlab::cli
