#include <chrono>
#include <sstream>

#include "hdlab/cli.hpp"
#include "hdlab/error.hpp"
#include "internal.hpp"

namespace hdlab::cli {

using linalg::Int;
using linalg::IntMatrix;
using linalg::IntVec;
using modcat::Module;

Int json_int(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw Error(ErrorCode::InvalidArgument, "expected an integer, got " + j.dump());
}

IntVec json_int_vec(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidArgument, "expected an array of integers, got " + j.dump());
  IntVec out;
  for (const auto& x : j) out.push_back(json_int(x));
  return out;
}

IntMatrix json_matrix(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidArgument, "expected a matrix (array of rows)");
  if (j.empty()) return IntMatrix();
  const std::size_t cols = j.front().size();
  IntMatrix m(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw Error(ErrorCode::DimMismatch, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = json_int(j[i][c]);
  }
  return m;
}

Json int_json(const Int& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

Json vec_json(const IntVec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(int_json(x));
  return out;
}

Json matrix_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vec_json(m.row(i)));
  return out;
}

std::vector<std::string> split_list(const std::string& s) {
  std::string t = s;
  if (!t.empty() && t.front() == '{') t.erase(t.begin());
  if (!t.empty() && t.back() == '}') t.pop_back();
  std::vector<std::string> out;
  std::stringstream in(t);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto a = item.find_first_not_of(" \t"), b = item.find_last_not_of(" \t");
    if (a != std::string::npos) out.push_back(item.substr(a, b - a + 1));
  }
  return out;
}

std::set<long> parse_primes(const std::vector<std::string>& items) {
  std::set<long> out;
  for (const auto& s : items) {
    if (s == "none") continue;
    std::size_t used = 0;
    long p = 0;
    try {
      p = std::stol(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || !linalg::is_prime(p)) throw Error(ErrorCode::InvalidArgument, "'" + s + "' is not a prime");
    out.insert(p);
  }
  return out;
}

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Error: return "error";
  }
  return "?";
}

namespace {

Status status_from(const std::string& s) {
  if (s == "pass") return Status::Pass;
  if (s == "fail") return Status::Fail;
  return Status::Error;
}

std::string group_string(const IntVec& inv) { return inv.empty() ? "0" : linalg::invariants_to_string(inv); }

Json primes_json(const std::set<long>& s) {
  Json out = Json::array();
  for (long p : s) out.push_back(p);
  return out;
}

Json hd_json(const lab::HdReport& r) {
  Json nonzero = Json::array();
  for (const auto& e : r.table) {
    if (e.is_zero()) continue;
    nonzero.push_back({{"source", e.source},
                       {"target", e.target},
                       {"degree", e.degree},
                       {"invariants", vec_json(e.invariants)},
                       {"witness", vec_json(e.witness)},
                       {"verified", e.verified}});
  }
  return {{"category", r.category},
          {"sample", r.sample},
          {"seed", r.seed},
          {"bound", r.bound},
          {"max_degree", r.max_degree},
          {"estimate", r.estimate()},
          {"exact", r.exact},
          {"verdict", r.verdict},
          {"witnesses_verified", r.witnesses_verified},
          {"pairs", r.objects.size() * r.objects.size()},
          {"nonzero", nonzero}};
}

std::string hd_line(const std::string& side, const lab::HdReport& r) {
  return side + ": " + r.verdict + " [" + std::to_string(r.objects.size()) + " objects, " +
         (r.witnesses_verified ? "witnesses verified" : "WITNESS CHECK FAILED") + "]";
}

Json cokernel_json(const dieudonne::CokernelReport& c) {
  Json table = Json::array();
  for (const auto& s : c.section_table) table.push_back({{"degree", s.degree}, {"basis", s.basis}, {"value", s.value}});
  return {{"field", c.field},
          {"p", c.p},
          {"d", c.d},
          {"truncation", c.truncation},
          {"domain_dimension", c.domain_dimension},
          {"codomain_dimension", c.codomain_dimension},
          {"rank", c.rank},
          {"dimension", c.dimension},
          {"dimension_over_k", c.dimension_over_k},
          {"stable", c.stable},
          {"representative", c.representative.to_string()},
          {"section_vanishes_on_image", c.section_vanishes_on_image},
          {"section_rank", c.section_rank},
          {"section_table", table}};
}

// Task context: options resolved against the run options.
class Context {
 public:
  Context(const WorkspaceFile& ws, const Task& task, const RunOptions& run) : ws_(ws), task_(task), run_(run) {}

  const Task& task() const { return task_; }

  bool has(const std::string& key) const { return task_.options.count(key) > 0; }

  std::string text(const std::string& key, const std::string& fallback) const {
    auto it = task_.options.find(key);
    return it == task_.options.end() ? fallback : it->second;
  }

  std::size_t number(const std::string& key, std::size_t fallback) const {
    auto it = task_.options.find(key);
    if (it == task_.options.end()) return fallback;
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(it->second, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != it->second.size()) throw Error(ErrorCode::InvalidArgument, key + " must be a non-negative integer");
    return v;
  }

  std::uint64_t seed() const { return number("seed", run_.seed); }
  std::size_t bound(std::size_t fallback) const { return number("bound", run_.bound.value_or(fallback)); }
  std::size_t truncation() const { return number("N", number("truncation", run_.truncation.value_or(16))); }

  const Module& object(const std::string& name) const { return ws_.objects.at(name); }
  const serre::SerrePredicate& predicate(const std::string& name) const { return ws_.predicates.at(name); }

  std::set<long> primes(const std::string& fallback) const { return parse_primes(split_list(text("S", fallback))); }

  // objects=... names, or the finite abelian groups up to max_order (count of them, seeded)
  std::vector<Module> samples(long default_order) const {
    if (has("objects")) {
      std::vector<Module> out;
      for (const auto& name : split_list(text("objects", ""))) out.push_back(object(name));
      return out;
    }
    return lab::finab_sample(static_cast<long>(number("max_order", static_cast<std::size_t>(default_order))),
                             number("count", 0), seed());
  }

  std::vector<modcat::FiniteGroup> groups() const {
    if (!has("groups")) return lab::standard_groups();
    std::vector<modcat::FiniteGroup> out;
    for (const auto& name : split_list(text("groups", ""))) out.push_back(ws_.groups.at(name));
    return out;
  }

  Json provenance(std::optional<std::size_t> bound, std::optional<std::size_t> truncation) const {
    Json p = {{"seed", seed()}};
    p["bound"] = bound ? Json(*bound) : Json(nullptr);
    p["truncation"] = truncation ? Json(*truncation) : Json(nullptr);
    return p;
  }

 private:
  const WorkspaceFile& ws_;
  const Task& task_;
  const RunOptions& run_;
};

void run_compute(const Context& c, Report& r) {
  const auto& w = c.task().words;
  const std::string& what = w[1];
  const Module& x = c.object(w[2]);
  r.provenance = c.provenance(std::nullopt, std::nullopt);
  if (what == "tpair") {
    const auto t = serre::torsion_pair(x, c.predicate(w[3]));
    r.result = {{"sub", t.sub.describe()},
                {"sub_moduli", vec_json(t.sub.moduli())},
                {"quotient", t.quotient.describe()},
                {"quotient_moduli", vec_json(t.quotient.moduli())},
                {"inclusion", matrix_json(t.inclusion.matrix())},
                {"projection", matrix_json(t.projection.matrix())}};
    r.summary.push_back("X^B = " + t.sub.describe() + ", X_B = " + t.quotient.describe());
    return;
  }
  const Module& y = c.object(w[3]);
  if (what == "hom") {
    const auto h = modcat::hom_group(x, y);
    Json gens = Json::array();
    for (const auto& g : h.generators) gens.push_back(matrix_json(g.matrix()));
    r.result = {{"invariants", vec_json(h.invariants)}, {"order", int_json(h.order())}, {"generators", gens}};
    r.summary.push_back("Hom = " + group_string(h.invariants) + " (order " + h.order().get_str() + ")");
  } else if (what == "ext") {
    const std::size_t d = c.number("degree", 1);
    const auto e = modcat::ext_group(d, x, y);
    Json reps = Json::array();
    for (const auto& v : e.representatives) reps.push_back(vec_json(v));
    r.result = {{"degree", d}, {"invariants", vec_json(e.invariants)}, {"order", int_json(e.order())},
                {"representatives", reps}};
    r.summary.push_back("Ext^" + std::to_string(d) + " = " + group_string(e.invariants) + " (order " +
                        e.order().get_str() + ")");
  } else if (what == "qhom") {
    const auto q = serre::q_hom(x, y, c.predicate(w[4]));
    r.result = {{"invariants", vec_json(q.invariants)},
                {"order", int_json(q.order())},
                {"reduced_target", q.reduced.object.describe()},
                {"witness_order", int_json(modcat::subobject_order(y, q.witness))}};
    r.summary.push_back("Hom in the quotient = " + group_string(q.invariants) + " (order " + q.order().get_str() + ")");
  } else if (what == "lochom") {
    const auto s = c.primes("2");
    const auto l = serre::localized_hom(x, y, s);
    const auto q = serre::q_hom(x, y, serre::SerrePredicate::s_torsion(s));
    const bool iso = serre::is_group_isomorphism(serre::localization_comparison(l, q), l.invariants, q.invariants);
    r.result = {{"S", primes_json(s)},
                {"invariants", vec_json(l.invariants)},
                {"order", int_json(l.order())},
                {"hom_invariants", vec_json(l.hom.invariants)},
                {"quotient_invariants", vec_json(q.invariants)},
                {"isomorphic_to_quotient_hom", iso}};
    r.summary.push_back("S'-part of Hom = " + group_string(l.invariants) + (iso ? ", matches" : ", DOES NOT match") +
                        " the quotient Hom " + group_string(q.invariants));
    if (!iso) r.status = Status::Fail;
  } else if (what == "locext") {
    const auto s = c.primes("2");
    const std::size_t d = c.number("degree", 1);
    const auto res = modcat::free_resolution(x, d + 1);
    const auto l = serre::localized_ext(d, res, y, s);
    const auto q = serre::q_ext(d, res, y, serre::SerrePredicate::s_torsion(s));
    const bool iso = serre::is_group_isomorphism(serre::localization_comparison(l, q), l.invariants, q.ext.invariants);
    r.result = {{"S", primes_json(s)},
                {"degree", d},
                {"invariants", vec_json(l.invariants)},
                {"order", int_json(l.order())},
                {"ext_invariants", vec_json(l.ext.invariants)},
                {"quotient_invariants", vec_json(q.ext.invariants)},
                {"isomorphic_to_quotient_ext", iso}};
    r.summary.push_back("S'-part of Ext^" + std::to_string(d) + " = " + group_string(l.invariants) +
                        (iso ? ", matches" : ", DOES NOT match") + " the quotient Ext " +
                        group_string(q.ext.invariants));
    if (!iso) r.status = Status::Fail;
  }
}

Json quiver_json(const lab::QuiverReport& q) {
  return {{"field", "F_" + std::to_string(q.p)},
          {"s2_projective", q.s2_projective},
          {"s1_not_projective", q.s1_not_projective},
          {"ext1_s1_s2_order", int_json(q.ext1_s1_s2_order)},
          {"b_serre", q.b_serre},
          {"b_semisimple", q.b_semisimple},
          {"quotient_semisimple", q.quotient_semisimple},
          {"lifting", q.lifting},
          {"hd_a", q.inequality.lhs},
          {"hd_b", q.inequality.sub.estimate()},
          {"hd_quotient", q.inequality.quotient.estimate()},
          {"strict", q.inequality.strict},
          {"ambient", hd_json(q.inequality.ambient)},
          {"sub", hd_json(q.inequality.sub)},
          {"quotient", hd_json(q.inequality.quotient)},
          {"pass", q.pass}};
}

void run_verify(const Context& c, Report& r) {
  const std::string& what = c.task().words[1];
  bool pass = true;
  if (what == "a2") {
    std::vector<unsigned> fields{2, 3};
    if (c.has("field")) {
      const auto f = linalg::FiniteField::parse(c.text("field", ""));
      fields = {f->characteristic()};
      if (f->degree() != 1) throw Error(ErrorCode::InvalidArgument, "the quiver example runs over F_2 or F_3");
    }
    Json out = Json::array();
    for (unsigned p : fields) {
      const auto q = lab::verify_quiver_example(p, c.seed());
      out.push_back(quiver_json(q));
      pass = pass && q.pass;
      r.summary.push_back("F_" + std::to_string(p) + ": hd(A) = " + std::to_string(q.inequality.lhs) +
                          ", hd(B) = " + std::to_string(q.inequality.sub.estimate()) + ", hd(A/B) = " +
                          std::to_string(q.inequality.quotient.estimate()) + ", lifting " +
                          (q.lifting ? "verified" : "FAILED") + (q.inequality.strict ? ", strict" : ", not strict") +
                          (q.pass ? "" : "  <-- FAIL"));
    }
    r.result = {{"fields", out}};
    r.provenance = c.provenance(3, std::nullopt);
  } else if (what == "thm-hd") {
    const std::size_t bound = c.bound(3);
    const auto s = c.primes("2");
    const auto t = lab::verify_thm_hd(s, c.samples(24), bound, c.seed());
    pass = t.equal && t.ambient.witnesses_verified && t.torsion.witnesses_verified && t.quotient.witnesses_verified;
    r.result = {{"S", primes_json(s)},
                {"ambient", hd_json(t.ambient)},
                {"torsion", hd_json(t.torsion)},
                {"quotient", hd_json(t.quotient)},
                {"lhs", t.lhs},
                {"rhs", t.rhs},
                {"equal", t.equal},
                {"pass", pass}};
    r.summary.push_back(hd_line("hd(A)", t.ambient));
    r.summary.push_back(hd_line("hd(A_S)", t.torsion));
    r.summary.push_back(hd_line("hd(A/A_S)", t.quotient));
    r.summary.push_back(std::to_string(t.lhs) + (t.equal ? " = " : " != ") + "max(" +
                        std::to_string(t.torsion.estimate()) + ", " + std::to_string(t.quotient.estimate()) + ")");
    r.provenance = c.provenance(bound, std::nullopt);
  } else if (what == "lem-cd") {
    const std::size_t bound = c.bound(4);
    std::vector<long> ells;
    for (long p : parse_primes(split_list(c.text("ells", "2,3")))) ells.push_back(p);
    const auto cd = lab::verify_lem_cd(c.groups(), ells, bound);
    Json entries = Json::array();
    for (const auto& e : cd.entries) {
      entries.push_back({{"group", e.group},
                         {"order", e.order},
                         {"ell", e.ell},
                         {"coprime", e.coprime},
                         {"nonvanishing", e.nonvanishing},
                         {"max_degree", e.max_degree},
                         {"spectral_bound_holds", e.spectral_bound_holds},
                         {"cd_vanishing", e.cd_vanishing},
                         {"sample_size", e.sample_size},
                         {"pass", e.pass}});
      std::string degrees;
      for (std::size_t d = 0; d < e.nonvanishing.size(); ++d)
        if (e.nonvanishing[d]) degrees += (degrees.empty() ? "" : ",") + std::to_string(d);
      r.summary.push_back(e.group + " l=" + std::to_string(e.ell) + (e.coprime ? " coprime" : " divides") +
                          ": Ext nonzero in degrees {" + degrees + "}, max " + std::to_string(e.max_degree) +
                          (e.pass ? "" : "  <-- FAIL"));
    }
    pass = cd.pass;
    r.result = {{"entries", entries}, {"pass", pass}};
    r.provenance = c.provenance(bound, std::nullopt);
  } else if (what == "ext2-k") {
    std::vector<std::string> fields{"F_2", "F_3", "F_4", "F_9"};
    if (c.has("field")) fields = {c.text("field", "")};
    const std::size_t n = c.truncation();
    Json out = Json::array();
    for (const auto& label : fields) {
      const auto e = lab::verify_ext2_k(linalg::FiniteField::parse(label), n);
      out.push_back({{"field", e.minus_id.field},
                     {"F_minus_id", cokernel_json(e.minus_id)},
                     {"F", cokernel_json(e.frobenius)},
                     {"pass", e.pass}});
      pass = pass && e.pass;
      r.summary.push_back(e.minus_id.field + " N=" + std::to_string(n) + ": dim_k coker(F-1) = " +
                          std::to_string(e.minus_id.dimension_over_k) + ", dim_k coker(F) = " +
                          std::to_string(e.frobenius.dimension_over_k) + ", class of " +
                          e.minus_id.representative.to_string() + (e.pass ? "" : "  <-- FAIL"));
    }
    r.result = {{"fields", out}, {"pass", pass}};
    r.provenance = c.provenance(std::nullopt, n);
  } else if (what == "lifting") {
    const auto s = c.primes("2");
    const auto l = lab::verify_lifting(s, c.samples(24), c.number("per_object", 4), c.seed());
    Json cases = Json::array();
    for (const auto& k : l.cases)
      cases.push_back({{"source", k.source},
                       {"target", k.target},
                       {"n", int_json(k.n)},
                       {"method", k.method},
                       {"certified", k.certified}});
    pass = l.pass;
    std::size_t ok = 0;
    for (const auto& k : l.cases) ok += k.certified;
    r.result = {{"S", primes_json(s)}, {"cases", cases}, {"pass", pass}};
    r.summary.push_back(std::to_string(ok) + " of " + std::to_string(l.cases.size()) +
                        " epimorphisms onto S-torsion objects certified by ker(n_X)");
    r.provenance = c.provenance(std::nullopt, std::nullopt);
  }
  r.status = pass ? Status::Pass : Status::Fail;
}

}  // namespace

Json Report::to_json(bool timing) const {
  Json j = {{"id", id},
            {"command", command},
            {"inputs", inputs},
            {"status", status_name(status)},
            {"result", result},
            {"provenance", provenance}};
  if (status == Status::Error) j["error"] = error;
  if (timing) j["wall_time_s"] = seconds;
  return j;
}

Report Report::from_json(const Json& j) {
  Report r;
  r.id = j.at("id").get<std::string>();
  r.command = j.at("command").get<std::string>();
  r.inputs = j.at("inputs");
  r.status = status_from(j.at("status").get<std::string>());
  r.result = j.at("result");
  r.provenance = j.at("provenance");
  r.error = j.value("error", "");
  r.seconds = j.value("wall_time_s", 0.0);
  return r;
}

Report run_task(const WorkspaceFile& ws, const Task& task, const RunOptions& options) {
  Report r;
  r.id = task.id;
  r.command = task.command();
  r.result = Json::object();
  r.provenance = {{"seed", options.seed}};
  Json objects = Json::object();
  for (const auto& w : task.words)
    if (auto it = ws.objects.find(w); it != ws.objects.end()) objects[w] = it->second.describe();
  if (auto it = task.options.find("objects"); it != task.options.end())
    for (const auto& name : split_list(it->second))
      if (auto o = ws.objects.find(name); o != ws.objects.end()) objects[name] = o->second.describe();
  r.inputs = {{"words", task.words}, {"options", task.options}, {"objects", objects}};
  const auto start = std::chrono::steady_clock::now();
  try {
    const Context c(ws, task, options);
    if (task.words.size() < 2) throw Error(ErrorCode::InvalidArgument, "incomplete command");
    if (task.words[0] == "compute")
      run_compute(c, r);
    else if (task.words[0] == "verify")
      run_verify(c, r);
    else
      throw Error(ErrorCode::InvalidArgument, "unknown command '" + task.words[0] + "'");
  } catch (const std::exception& e) {
    r.status = Status::Error;
    r.error = e.what();
    r.result = Json::object();
    r.summary = {std::string("error: ") + e.what()};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<Report> run_tasks(const WorkspaceFile& ws, const RunOptions& options) {
  std::vector<Report> out;
  for (const auto& t : ws.tasks) out.push_back(run_task(ws, t, options));
  return out;
}

std::string reports_json(const std::vector<Report>& reports, bool timing) {
  Json all = Json::array();
  for (const auto& r : reports) all.push_back(r.to_json(timing));
  return all.dump(2) + "\n";
}

std::string reports_text(const std::vector<Report>& reports, bool timing) {
  std::ostringstream out;
  for (const auto& r : reports) {
    out << "[" << status_name(r.status) << "] " << r.id << ": " << r.command;
    if (timing) out << "  (" << r.seconds << " s)";
    out << "\n";
    for (const auto& s : r.summary) out << "    " << s << "\n";
  }
  return out.str();
}

int exit_status(const std::vector<Report>& reports) {
  for (const auto& r : reports)
    if (r.status != Status::Pass) return 1;
  return 0;
}

}  // namespace hdlab::cli
