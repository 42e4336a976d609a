#include <regex>
#include <set>
#include <sstream>

#include "hdlab/cli.hpp"
#include "hdlab/error.hpp"
#include "internal.hpp"

namespace hdlab::cli {

using linalg::Int;
using linalg::IntMatrix;
using linalg::IntVec;
using modcat::BaseRing;
using modcat::FiniteGroup;
using modcat::Module;

namespace {

[[noreturn]] void parse_error(std::size_t line, std::size_t col, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
}

[[noreturn]] void validation_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ValidationError, "line " + std::to_string(line) + ": " + what);
}

const std::map<std::string, DeclKind> kDirectives{{"ring", DeclKind::Ring},
                                                  {"group", DeclKind::Group},
                                                  {"object", DeclKind::Object},
                                                  {"morphism", DeclKind::Morphism},
                                                  {"serre", DeclKind::Serre}};

const char* directive_name(DeclKind k) {
  switch (k) {
    case DeclKind::Ring: return "ring";
    case DeclKind::Group: return "group";
    case DeclKind::Object: return "object";
    case DeclKind::Morphism: return "morphism";
    case DeclKind::Serre: return "serre";
  }
  return "?";
}

bool valid_name(const std::string& s) {
  static const std::regex re(R"(^[A-Za-z_][A-Za-z0-9_']*$)");
  return std::regex_match(s, re);
}

// Next whitespace-delimited token starting at pos; pos moves past it.
std::string next_token(const std::string& line, std::size_t& pos) {
  while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
  const std::size_t start = pos;
  while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
  return line.substr(start, pos - start);
}

std::size_t skip_space(const std::string& line, std::size_t pos) {
  while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
  return pos;
}

// Resolution of names against what has been declared so far.
class Resolver {
 public:
  Resolver(WorkspaceFile& ws, const std::map<std::string, std::size_t>& all_names) : ws_(ws), all_(all_names) {}

  void declare(const Declaration& d) {
    try {
      switch (d.kind) {
        case DeclKind::Ring: ws_.rings[d.name] = ring_literal(d); break;
        case DeclKind::Group: ws_.groups[d.name] = group_literal(d); break;
        case DeclKind::Object: ws_.objects[d.name] = object_literal(d); break;
        case DeclKind::Morphism: ws_.morphisms.emplace(d.name, morphism_literal(d)); break;
        case DeclKind::Serre: ws_.predicates[d.name] = serre_literal(d); break;
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ValidationError) throw;
      validation_error(d.line, std::string(directive_name(d.kind)) + " " + d.name + ": " + e.what());
    } catch (const Json::exception& e) {
      validation_error(d.line, std::string(directive_name(d.kind)) + " " + d.name + ": " + e.what());
    }
    declared_.insert(d.name);
  }

  void check_reference(const std::string& name, std::size_t line) const {
    if (declared_.count(name)) return;
    if (all_.count(name)) validation_error(line, "forward reference to '" + name + "'");
    validation_error(line, "undeclared name '" + name + "'");
  }

  const Module& object(const std::string& name, std::size_t line) const {
    check_reference(name, line);
    auto it = ws_.objects.find(name);
    if (it == ws_.objects.end()) validation_error(line, "'" + name + "' is not an object");
    return it->second;
  }

  const serre::SerrePredicate& predicate(const std::string& name, std::size_t line) const {
    check_reference(name, line);
    auto it = ws_.predicates.find(name);
    if (it == ws_.predicates.end()) validation_error(line, "'" + name + "' is not a serre predicate");
    return it->second;
  }

  const FiniteGroup& group(const std::string& name, std::size_t line) const {
    check_reference(name, line);
    auto it = ws_.groups.find(name);
    if (it == ws_.groups.end()) validation_error(line, "'" + name + "' is not a group");
    return it->second;
  }

  modcat::RingPtr ring(const std::string& name, std::size_t line) const {
    check_reference(name, line);
    auto it = ws_.rings.find(name);
    if (it == ws_.rings.end()) validation_error(line, "'" + name + "' is not a ring");
    return it->second;
  }

 private:
  modcat::RingPtr ring_literal(const Declaration& d) {
    const std::string kind = d.payload.at("kind").get<std::string>();
    if (kind == "integers") return BaseRing::integers();
    if (kind == "a2") return BaseRing::path_algebra_a2(d.payload.at("p").get<unsigned>());
    if (kind == "group_ring") return BaseRing::group_ring(group(d.payload.at("group").get<std::string>(), d.line));
    validation_error(d.line, "unknown ring kind '" + kind + "'");
  }

  FiniteGroup group_literal(const Declaration& d) {
    const std::string kind = d.payload.at("kind").get<std::string>();
    if (kind == "cyclic") return FiniteGroup::cyclic(d.payload.at("n").get<int>());
    if (kind == "s3") return FiniteGroup::symmetric3();
    if (kind == "trivial") return FiniteGroup();
    if (kind == "table") {
      try {
        return FiniteGroup::from_table(d.payload.at("table").get<std::vector<std::vector<int>>>(), d.name);
      } catch (const Error& e) {
        validation_error(d.line, "bad group table for " + d.name + ": " + e.what());
      }
    }
    if (kind == "product") {
      const auto names = d.payload.at("factors").get<std::vector<std::string>>();
      if (names.empty()) return FiniteGroup();
      FiniteGroup g = group(names.front(), d.line);
      for (std::size_t i = 1; i < names.size(); ++i) g = FiniteGroup::product(g, group(names[i], d.line));
      return g;
    }
    validation_error(d.line, "unknown group kind '" + kind + "'");
  }

  Module object_literal(const Declaration& d) {
    const Json& p = d.payload;
    const modcat::RingPtr r = p.contains("ring") ? ring(p.at("ring").get<std::string>(), d.line) : BaseRing::integers();
    switch (r->kind()) {
      case modcat::RingKind::Integers: return modcat::make_finab(r, json_int_vec(p.at("factors")));
      case modcat::RingKind::GroupRing: {
        const IntVec factors = json_int_vec(p.at("factors"));
        if (!p.contains("action")) return modcat::make_finab(r, factors);
        std::map<int, IntMatrix> action;
        for (const auto& [key, m] : p.at("action").items()) action[std::stoi(key)] = json_matrix(m);
        return modcat::make_gamma_module(r, factors, action);
      }
      case modcat::RingKind::PathAlgebraA2: {
        const auto dims = p.at("dims").get<std::vector<std::size_t>>();
        if (dims.size() != 2) validation_error(d.line, "dims must be [v1, v2]");
        const auto edge = p.value("edge", std::vector<std::vector<long>>{});
        return modcat::make_quiver_rep(static_cast<unsigned>(r->characteristic()), dims[0], dims[1], edge);
      }
    }
    validation_error(d.line, "unsupported ring");
  }

  modcat::Morphism morphism_literal(const Declaration& d) {
    const Module& s = object(d.payload.at("source").get<std::string>(), d.line);
    const Module& t = object(d.payload.at("target").get<std::string>(), d.line);
    IntMatrix m = json_matrix(d.payload.at("matrix"));
    if (m.rows() == 0 && m.cols() == 0) m = IntMatrix(t.scalar_rank(), s.scalar_rank());
    return modcat::Morphism(s, t, m);
  }

  serre::SerrePredicate serre_literal(const Declaration& d) {
    const std::string text = d.payload.at("predicate").get<std::string>();
    static const std::regex braces(R"(^(s_torsion|span):\{([^}]*)\}$)");
    if (text == "zero") return serre::SerrePredicate::zero();
    if (text == "all") return serre::SerrePredicate::all();
    if (text == "etale_like") return serre::SerrePredicate::etale_like();
    std::smatch m;
    if (!std::regex_match(text, m, braces)) validation_error(d.line, "unknown predicate '" + text + "'");
    const auto items = split_list(m[2]);
    if (m[1] == "s_torsion") return serre::SerrePredicate::s_torsion(parse_primes(items));
    std::vector<Module> gens;
    for (const auto& name : items) gens.push_back(object(name, d.line));
    return serre::SerrePredicate::span(gens);
  }

  WorkspaceFile& ws_;
  const std::map<std::string, std::size_t>& all_;
  std::set<std::string> declared_;
};

struct CommandShape {
  std::size_t objects;  // leading object names after the command words
  bool predicate;       // then one serre predicate
  std::size_t words;    // command words (compute hom = 2)
};

// compute commands and their reference layout
const std::map<std::string, CommandShape> kCompute{{"hom", {2, false, 2}},    {"ext", {2, false, 2}},
                                                   {"tpair", {1, true, 2}},   {"qhom", {2, true, 2}},
                                                   {"lochom", {2, false, 2}}, {"locext", {2, false, 2}}};
const std::set<std::string> kVerify{"a2", "thm-hd", "lem-cd", "ext2-k", "lifting"};

void validate_task(const Task& t, const Resolver& r) {
  if (t.words.empty()) parse_error(t.line, 1, "empty task " + t.id);
  if (t.words[0] == "compute") {
    if (t.words.size() < 2 || !kCompute.count(t.words[1])) validation_error(t.line, "unknown compute command in " + t.id);
    const auto& shape = kCompute.at(t.words[1]);
    const std::size_t want = shape.words + shape.objects + (shape.predicate ? 1 : 0);
    if (t.words.size() != want)
      validation_error(t.line, "task " + t.id + ": compute " + t.words[1] + " takes " +
                                   std::to_string(want - shape.words) + " names");
    for (std::size_t i = 0; i < shape.objects; ++i) r.object(t.words[shape.words + i], t.line);
    if (shape.predicate) r.predicate(t.words.back(), t.line);
  } else if (t.words[0] == "verify") {
    if (t.words.size() != 2 || !kVerify.count(t.words[1])) validation_error(t.line, "unknown verify command in " + t.id);
  } else {
    validation_error(t.line, "unknown command '" + t.words[0] + "' in task " + t.id);
  }
  if (auto it = t.options.find("objects"); it != t.options.end())
    for (const auto& name : split_list(it->second)) r.object(name, t.line);
  if (auto it = t.options.find("groups"); it != t.options.end())
    for (const auto& name : split_list(it->second)) r.group(name, t.line);
  if (auto it = t.options.find("B"); it != t.options.end()) r.predicate(it->second, t.line);
}

}  // namespace

std::string Task::command() const {
  std::string out;
  for (const auto& w : words) out += (out.empty() ? "" : " ") + w;
  for (const auto& [k, v] : options) out += " " + k + "=" + v;
  return out;
}

Task parse_task(const std::string& id, const std::string& body, std::size_t line) {
  Task t;
  t.id = id;
  t.line = line;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t col = skip_space(body, pos) + 1;
    const std::string tok = next_token(body, pos);
    if (tok.empty()) break;
    if (auto eq = tok.find('='); eq != std::string::npos) {
      const std::string key = tok.substr(0, eq), value = tok.substr(eq + 1);
      if (key.empty() || value.empty()) parse_error(line, col, "malformed option '" + tok + "'");
      if (!t.options.emplace(key, value).second) parse_error(line, col, "repeated option '" + key + "'");
    } else {
      if (!t.options.empty()) parse_error(line, col, "'" + tok + "' after options");
      t.words.push_back(tok);
    }
  }
  // shorthand: "hom X Y" is "compute hom X Y"
  if (!t.words.empty() && kCompute.count(t.words[0])) t.words.insert(t.words.begin(), "compute");
  return t;
}

WorkspaceFile parse_workspace(const std::string& text) {
  WorkspaceFile ws;
  std::vector<std::pair<std::size_t, std::string>> lines;
  {
    std::istringstream in(text);
    std::string l;
    std::size_t n = 0;
    while (std::getline(in, l)) {
      ++n;
      if (!l.empty() && l.back() == '\r') l.pop_back();
      const std::size_t s = skip_space(l, 0);
      if (s == l.size() || l[s] == '#') continue;
      lines.emplace_back(n, l);
    }
  }
  if (lines.empty()) parse_error(1, 1, "missing header 'hdlab-workspace 1'");
  {
    const auto& [n, l] = lines.front();
    std::size_t pos = 0;
    const std::size_t col = skip_space(l, 0) + 1;
    if (next_token(l, pos) != "hdlab-workspace") parse_error(n, col, "expected header 'hdlab-workspace 1'");
    const std::size_t vcol = skip_space(l, pos) + 1;
    const std::string v = next_token(l, pos);
    if (v != "1") parse_error(n, vcol, "unsupported format version '" + v + "'");
    if (skip_space(l, pos) != l.size()) parse_error(n, skip_space(l, pos) + 1, "trailing text after the header");
  }

  // first pass: syntax and the set of names
  std::map<std::string, std::size_t> names;
  std::vector<std::pair<bool, std::size_t>> order;  // (is task, index)
  std::set<std::string> task_ids;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [n, l] = lines[i];
    std::size_t pos = 0;
    const std::size_t dcol = skip_space(l, 0) + 1;
    const std::string word = next_token(l, pos);
    const std::size_t ncol = skip_space(l, pos) + 1;
    const std::string name = next_token(l, pos);
    if (word == "task") {
      if (name.empty()) parse_error(n, ncol, "task without an id");
      if (!task_ids.insert(name).second) validation_error(n, "duplicate task id '" + name + "'");
      ws.tasks.push_back(parse_task(name, l.substr(pos), n));
      order.emplace_back(true, ws.tasks.size() - 1);
      continue;
    }
    auto kind = kDirectives.find(word);
    if (kind == kDirectives.end()) parse_error(n, dcol, "unknown directive '" + word + "'");
    if (name.empty()) parse_error(n, ncol, "missing name");
    if (!valid_name(name)) parse_error(n, ncol, "invalid name '" + name + "'");
    if (auto it = names.find(name); it != names.end())
      validation_error(n, "duplicate name '" + name + "' (first declared on line " + std::to_string(it->second) + ")");
    names[name] = n;
    const std::size_t jstart = skip_space(l, pos);
    if (jstart == l.size()) parse_error(n, jstart + 1, "missing JSON payload");
    Declaration d;
    d.kind = kind->second;
    d.name = name;
    d.line = n;
    try {
      d.payload = Json::parse(l.substr(jstart));
    } catch (const Json::parse_error& e) {
      parse_error(n, jstart + (e.byte == 0 ? 1 : e.byte), std::string("bad JSON payload: ") + e.what());
    }
    if (!d.payload.is_object()) parse_error(n, jstart + 1, "payload must be a JSON object");
    ws.declarations.push_back(std::move(d));
    order.emplace_back(false, ws.declarations.size() - 1);
  }

  // second pass: build everything in declaration order
  Resolver resolver(ws, names);
  for (const auto& [is_task, idx] : order) {
    if (is_task)
      validate_task(ws.tasks[idx], resolver);
    else
      resolver.declare(ws.declarations[idx]);
  }
  return ws;
}

std::string format_workspace(const WorkspaceFile& ws) {
  std::ostringstream out;
  out << "hdlab-workspace " << ws.version << "\n";
  for (const auto& d : ws.declarations) out << directive_name(d.kind) << " " << d.name << " " << d.payload.dump() << "\n";
  for (const auto& t : ws.tasks) out << "task " << t.id << " " << t.command() << "\n";
  return out.str();
}

}  // namespace hdlab::cli
