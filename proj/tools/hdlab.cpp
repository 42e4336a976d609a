#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hdlab/hdlab.h"

namespace {

constexpr int kUsageError = 2;

struct Flags {
  uint64_t seed = 0;
  long bound = -1;
  long truncation = -1;
  bool json = false;
  bool timing = false;
};

struct Args {
  std::string file;
  std::string kind;
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> options;  // task key=value
};

bool read_file(const std::string& path, std::string& out) {
  std::ostringstream s;
  if (path == "-") {
    s << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) return false;
    s << in.rdbuf();
  }
  out = s.str();
  return true;
}

// The workspace named on the command line, or an empty one.
hdlab_workspace* load(const std::string& path) {
  std::string text = "hdlab-workspace 1\n";
  if (!path.empty() && !read_file(path, text)) {
    std::cerr << "hdlab: cannot read " << path << "\n";
    return nullptr;
  }
  hdlab_workspace* ws = nullptr;
  if (hdlab_workspace_parse(text.c_str(), &ws) != HDLAB_OK) {
    std::cerr << "hdlab: " << (path.empty() ? "<empty>" : path) << ": " << hdlab_last_error() << "\n";
    return nullptr;
  }
  return ws;
}

int run(hdlab_workspace* ws, const Flags& flags) {
  hdlab_run_options opts{flags.seed, flags.bound, flags.truncation};
  hdlab_reports* reports = nullptr;
  if (hdlab_run(ws, &opts, &reports) != HDLAB_OK) {
    std::cerr << "hdlab: " << hdlab_last_error() << "\n";
    hdlab_workspace_free(ws);
    return kUsageError;
  }
  char* out = nullptr;
  const hdlab_status s = flags.json ? hdlab_reports_json(reports, flags.timing, &out)
                                    : hdlab_reports_text(reports, flags.timing, &out);
  if (s == HDLAB_OK) std::fputs(out, stdout);
  hdlab_string_free(out);
  const int code = hdlab_reports_exit_status(reports);
  hdlab_reports_free(reports);
  hdlab_workspace_free(ws);
  return code;
}

int add_task(hdlab_workspace* ws, const std::string& id, const std::string& command) {
  if (hdlab_workspace_add_task(ws, id.c_str(), command.c_str()) == HDLAB_OK) return 0;
  std::cerr << "hdlab: " << hdlab_last_error() << "\n";
  hdlab_workspace_free(ws);
  return kUsageError;
}

// Task options each verify suite reads.
const std::map<std::string, std::set<std::string>> kRelevant{
    {"a2", {"field"}},
    {"thm-hd", {"S", "max_order", "count", "objects"}},
    {"lem-cd", {"groups", "ells"}},
    {"ext2-k", {"field"}},
    {"lifting", {"S", "max_order", "count", "objects", "per_object"}},
};

std::string task_command(const std::string& head, const Args& a, const std::set<std::string>* relevant = nullptr) {
  std::string cmd = head;
  for (const auto& n : a.names) cmd += " " + n;
  for (const auto& [k, v] : a.options)
    if (!v.empty() && (!relevant || relevant->count(k))) cmd += " " + k + "=" + v;
  return cmd;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded homological dimension lab"};
  app.require_subcommand(1);
  Flags flags;
  app.add_option("--seed", flags.seed, "Seed for sampled inputs");
  app.add_option("--bound", flags.bound, "Ext degree bound");
  app.add_option("--truncation", flags.truncation, "Truncation degree N for k[F]");
  app.add_flag("--json", flags.json, "Machine-readable JSON reports");
  app.add_flag("--timing", flags.timing, "Include wall times");
  app.fallthrough();

  Args args;
  std::string degree, primes, field, max_order, count, objects, groups, ells, per_object;

  auto* run_cmd = app.add_subcommand("run", "Run every task of a workspace");
  run_cmd->add_option("file", args.file, "Workspace file, - for stdin")->required();

  auto* compute = app.add_subcommand("compute", "Compute a group attached to workspace objects");
  compute->add_option("kind", args.kind, "hom | ext | tpair | qhom | lochom | locext")
      ->required()
      ->check(CLI::IsMember({"hom", "ext", "tpair", "qhom", "lochom", "locext"}));
  compute->add_option("file", args.file, "Workspace file")->required();
  compute->add_option("names", args.names, "Object and predicate names")->required();
  compute->add_option("--degree", degree, "Ext degree");
  compute->add_option("-S,--primes", primes, "Prime set, e.g. 2,3");

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("kind", args.kind, "a2 | thm-hd | lem-cd | ext2-k | lifting | all")
      ->required()
      ->check(CLI::IsMember({"a2", "thm-hd", "lem-cd", "ext2-k", "lifting", "all"}));
  verify->add_option("file", args.file, "Workspace declaring objects or groups");
  verify->add_option("--field", field, "Field label, e.g. F_4");
  verify->add_option("-S,--primes", primes, "Prime set, e.g. 2,3");
  verify->add_option("--max-order", max_order, "Sample every finite abelian group up to this order");
  verify->add_option("--count", count, "Seeded subsample size");
  verify->add_option("--objects", objects, "Comma separated object names from the workspace");
  verify->add_option("--groups", groups, "Comma separated group names from the workspace");
  verify->add_option("--ells", ells, "Primes l for lem-cd");
  verify->add_option("--per-object", per_object, "Epimorphisms checked per sample object");

  auto* fmt = app.add_subcommand("fmt", "Print a workspace in canonical form");
  fmt->add_option("file", args.file, "Workspace file, - for stdin")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  if (run_cmd->parsed()) {
    hdlab_workspace* ws = load(args.file);
    return ws ? run(ws, flags) : kUsageError;
  }

  if (fmt->parsed()) {
    hdlab_workspace* ws = load(args.file);
    if (!ws) return kUsageError;
    char* out = nullptr;
    hdlab_workspace_format(ws, &out);
    std::fputs(out, stdout);
    hdlab_string_free(out);
    hdlab_workspace_free(ws);
    return 0;
  }

  if (compute->parsed()) {
    hdlab_workspace* ws = load(args.file);
    if (!ws) return kUsageError;
    args.options = {{"degree", degree}, {"S", primes}};
    if (int rc = add_task(ws, "cli", task_command("compute " + args.kind, args))) return rc;
    return run(ws, flags);
  }

  hdlab_workspace* ws = load(args.file);
  if (!ws) return kUsageError;
  args.options = {{"field", field},     {"S", primes},     {"max_order", max_order}, {"count", count},
                  {"objects", objects}, {"groups", groups}, {"ells", ells},          {"per_object", per_object}};
  const std::vector<std::string> kinds =
      args.kind == "all" ? std::vector<std::string>{"a2", "thm-hd", "lem-cd", "ext2-k", "lifting"}
                         : std::vector<std::string>{args.kind};
  for (const auto& k : kinds)
    if (int rc = add_task(ws, k, task_command("verify " + k, args, &kRelevant.at(k)))) return rc;
  return run(ws, flags);
}
