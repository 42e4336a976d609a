#include "hdlab/hdlab.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "hdlab/cli.hpp"
#include "hdlab/error.hpp"

struct hdlab_workspace {
  hdlab::cli::WorkspaceFile file;
};

struct hdlab_reports {
  std::vector<hdlab::cli::Report> reports;
};

struct hdlab_module {
  hdlab::modcat::Module module;
};

static_assert(HDLAB_ERR_UNSOLVABLE == static_cast<int>(hdlab::ErrorCode::Unsolvable));
static_assert(HDLAB_ERR_PARSE == static_cast<int>(hdlab::ErrorCode::ParseError));
static_assert(HDLAB_ERR_INVALID_ARGUMENT == static_cast<int>(hdlab::ErrorCode::InvalidArgument));

namespace {

thread_local std::string last_error;

hdlab_status fail(hdlab_status s, const std::string& what) {
  last_error = what;
  return s;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class F>
hdlab_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const hdlab::Error& e) {
    return fail(static_cast<hdlab_status>(e.code()), e.what());
  } catch (const std::exception& e) {
    return fail(HDLAB_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(HDLAB_ERR_INTERNAL, "unknown error");
  }
}

hdlab_status null_argument(const char* name) { return fail(HDLAB_ERR_NULL_ARGUMENT, std::string(name) + " is null"); }

std::string invariants_json(const hdlab::linalg::IntVec& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].get_str();
  return out + "]";
}

}  // namespace

extern "C" {

HDLAB_API const char* hdlab_version(void) { return "1.0.0"; }

HDLAB_API const char* hdlab_status_name(hdlab_status status) {
  switch (status) {
    case HDLAB_OK: return "Ok";
    case HDLAB_ERR_NULL_ARGUMENT: return "NullArgument";
    case HDLAB_ERR_INTERNAL: return "Internal";
    default:
      if (status >= HDLAB_ERR_UNSOLVABLE && status <= HDLAB_ERR_INVALID_ARGUMENT)
        return hdlab::error_code_name(static_cast<hdlab::ErrorCode>(status));
      return "Unknown";
  }
}

HDLAB_API const char* hdlab_last_error(void) { return last_error.c_str(); }

HDLAB_API void hdlab_string_free(char* s) { std::free(s); }

HDLAB_API hdlab_status hdlab_workspace_parse(const char* text, hdlab_workspace** out) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    *out = new hdlab_workspace{hdlab::cli::parse_workspace(text)};
    return HDLAB_OK;
  });
}

HDLAB_API hdlab_status hdlab_workspace_add_task(hdlab_workspace* ws, const char* id, const char* command) {
  if (!ws) return null_argument("ws");
  if (!id || !command) return null_argument("task");
  return guarded([&] {
    const std::string text =
        hdlab::cli::format_workspace(ws->file) + "task " + std::string(id) + " " + std::string(command) + "\n";
    ws->file = hdlab::cli::parse_workspace(text);
    return HDLAB_OK;
  });
}

HDLAB_API hdlab_status hdlab_workspace_format(const hdlab_workspace* ws, char** out) {
  if (!ws) return null_argument("ws");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = copy_string(hdlab::cli::format_workspace(ws->file));
    return HDLAB_OK;
  });
}

HDLAB_API size_t hdlab_workspace_task_count(const hdlab_workspace* ws) { return ws ? ws->file.tasks.size() : 0; }

HDLAB_API void hdlab_workspace_free(hdlab_workspace* ws) { delete ws; }

HDLAB_API hdlab_status hdlab_run(const hdlab_workspace* ws, const hdlab_run_options* options, hdlab_reports** out) {
  if (!ws) return null_argument("ws");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    hdlab::cli::RunOptions run;
    if (options) {
      run.seed = options->seed;
      if (options->bound >= 0) run.bound = static_cast<std::size_t>(options->bound);
      if (options->truncation >= 0) run.truncation = static_cast<std::size_t>(options->truncation);
    }
    *out = new hdlab_reports{hdlab::cli::run_tasks(ws->file, run)};
    return HDLAB_OK;
  });
}

HDLAB_API size_t hdlab_reports_count(const hdlab_reports* reports) { return reports ? reports->reports.size() : 0; }

HDLAB_API hdlab_status hdlab_reports_json(const hdlab_reports* reports, int timing, char** out) {
  if (!reports) return null_argument("reports");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = copy_string(hdlab::cli::reports_json(reports->reports, timing != 0));
    return HDLAB_OK;
  });
}

HDLAB_API hdlab_status hdlab_reports_text(const hdlab_reports* reports, int timing, char** out) {
  if (!reports) return null_argument("reports");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = copy_string(hdlab::cli::reports_text(reports->reports, timing != 0));
    return HDLAB_OK;
  });
}

HDLAB_API int hdlab_reports_exit_status(const hdlab_reports* reports) {
  return reports ? hdlab::cli::exit_status(reports->reports) : 1;
}

HDLAB_API void hdlab_reports_free(hdlab_reports* reports) { delete reports; }

HDLAB_API hdlab_status hdlab_module_finab(const long* factors, size_t count, hdlab_module** out) {
  if (!factors && count > 0) return null_argument("factors");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    hdlab::linalg::IntVec f;
    for (size_t i = 0; i < count; ++i) f.emplace_back(factors[i]);
    *out = new hdlab_module{hdlab::modcat::make_finab(f)};
    return HDLAB_OK;
  });
}

HDLAB_API hdlab_status hdlab_module_quiver(unsigned p, size_t v1, size_t v2, const long* edge, hdlab_module** out) {
  if (!edge && v1 * v2 > 0) return null_argument("edge");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    std::vector<std::vector<long>> rows;
    if (v1 > 0 && v2 > 0)
      for (size_t i = 0; i < v2; ++i) rows.emplace_back(edge + i * v1, edge + (i + 1) * v1);
    *out = new hdlab_module{hdlab::modcat::make_quiver_rep(p, v1, v2, rows)};
    return HDLAB_OK;
  });
}

HDLAB_API hdlab_status hdlab_module_describe(const hdlab_module* m, char** out) {
  if (!m) return null_argument("m");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = copy_string(m->module.describe());
    return HDLAB_OK;
  });
}

HDLAB_API void hdlab_module_free(hdlab_module* m) { delete m; }

HDLAB_API hdlab_status hdlab_hom_invariants(const hdlab_module* x, const hdlab_module* y, char** out) {
  if (!x || !y) return null_argument("module");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = copy_string(invariants_json(hdlab::modcat::hom_group(x->module, y->module).invariants));
    return HDLAB_OK;
  });
}

HDLAB_API hdlab_status hdlab_ext_invariants(size_t degree, const hdlab_module* x, const hdlab_module* y, char** out) {
  if (!x || !y) return null_argument("module");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = copy_string(invariants_json(hdlab::modcat::ext_group(degree, x->module, y->module).invariants));
    return HDLAB_OK;
  });
}

HDLAB_API hdlab_status hdlab_coker_F_minus_id(const char* field, size_t truncation, size_t* dimension_over_k) {
  if (!field) return null_argument("field");
  if (!dimension_over_k) return null_argument("dimension_over_k");
  return guarded([&] {
    *dimension_over_k =
        hdlab::dieudonne::coker_F_minus_id(hdlab::linalg::FiniteField::parse(field), truncation).dimension_over_k;
    return HDLAB_OK;
  });
}

}  // extern "C"
