#include "tileforge/io/json.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace tileforge {

namespace {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

Json elements(const std::vector<GroupElement>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x);
  return a;
}

std::vector<GroupElement> elements_from(const Json& j) {
  std::vector<GroupElement> out;
  for (const auto& x : j) out.push_back(x.get<GroupElement>());
  return out;
}

Json factor_json(const Factor& f) {
  if (const auto* l = std::get_if<ListFactor>(&f))
    return {{"list", {{"coords", l->coords}, {"allowed", l->allowed}}}};
  const auto& b = std::get<FiberFactor>(f);
  return {{"fiber", {{"coords", b.coords}, {"coeffs", b.coeffs}, {"modulus", b.modulus}, {"targets", b.targets}}}};
}

Factor factor_from(const Json& j) {
  if (j.contains("list")) {
    const auto& l = j.at("list");
    return ListFactor{l.at("coords").get<std::vector<std::size_t>>(),
                      l.at("allowed").get<std::vector<std::vector<std::int64_t>>>()};
  }
  const auto& b = j.at("fiber");
  return FiberFactor{b.at("coords").get<std::vector<std::size_t>>(), b.at("coeffs").get<std::vector<std::int64_t>>(),
                     b.at("modulus").get<std::int64_t>(), b.at("targets").get<std::vector<std::int64_t>>()};
}

bool flat(const Json& j) {
  if (!j.is_structured()) return true;
  if (j.is_object()) return false;
  for (const auto& x : j)
    if (x.is_object() || (x.is_array() && !std::all_of(x.begin(), x.end(), [](const Json& y) { return y.is_primitive(); })))
      return false;
  return true;
}

void write(std::string& out, const Json& j, int depth) {
  if (flat(j)) {
    out += j.dump();
    return;
  }
  const std::string pad(2 * (depth + 1), ' ');
  const bool obj = j.is_object();
  out += obj ? "{\n" : "[\n";
  bool first = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!first) out += ",\n";
    first = false;
    out += pad;
    if (obj) out += Json(it.key()).dump() + ": ";
    write(out, *it, depth + 1);
  }
  out += "\n" + std::string(2 * depth, ' ') + (obj ? "}" : "]");
}

}  // namespace

std::string to_text(const Json& doc) {
  std::string out;
  write(out, doc, 0);
  return out + "\n";
}

Json envelope(const std::string& kind, Json payload) {
  return {{"schema_version", kSchemaVersion}, {"kind", kind}, {"payload", std::move(payload)}};
}

std::string kind_of(const Json& doc) {
  if (!doc.is_object() || !doc.contains("schema_version") || !doc.contains("kind") || !doc.contains("payload"))
    throw ParseError("not a tileforge document (need schema_version, kind, payload)");
  if (doc["schema_version"] != kSchemaVersion)
    throw ParseError("unsupported schema_version " + doc["schema_version"].dump());
  if (!doc["kind"].is_string()) throw ParseError("kind must be a string");
  return doc["kind"].get<std::string>();
}

const Json& payload_of(const Json& doc, const std::string& kind) {
  const auto k = kind_of(doc);
  if (k != kind) throw ParseError("expected a '" + kind + "' document, got '" + k + "'");
  return doc["payload"];
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_json(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
}

Json group_json(const ExplicitGroup& g) { return {{"free", g.free_rank()}, {"moduli", g.moduli()}}; }

ExplicitGroup group_from(const Json& j) {
  return guarded("group", [&] {
    return ExplicitGroup(j.at("free").get<int>(), j.at("moduli").get<std::vector<std::int64_t>>());
  });
}

Json elements_json(const FiniteSet& s) { return elements(s.elements()); }

FiniteSet set_from(const ExplicitGroup& g, const Json& j) {
  return guarded("set", [&] { return FiniteSet(g, elements_from(j)); });
}

Json periodic_json(const PeriodicSet& s) { return {{"periods", s.periods()}, {"reps", elements_json(s.reps())}}; }

PeriodicSet periodic_from(const ExplicitGroup& g, const Json& j) {
  return guarded("periodic set", [&] {
    auto p = j.at("periods").get<std::vector<std::int64_t>>();
    auto reps = set_from(g.torus(p), j.at("reps"));
    return PeriodicSet(g, std::move(p), std::move(reps));
  });
}

Json structured_json(const StructuredSet& s) {
  Json boxes = Json::array();
  for (const auto& b : s.boxes()) {
    Json fs = Json::array();
    for (const auto& f : b.factors) fs.push_back(factor_json(f));
    boxes.push_back(std::move(fs));
  }
  return boxes;
}

StructuredSet structured_from(const ExplicitGroup& g, const Json& j) {
  return guarded("structured set", [&] {
    std::vector<Box> boxes;
    for (const auto& b : j) {
      Box box;
      for (const auto& f : b) box.factors.push_back(factor_from(f));
      boxes.push_back(std::move(box));
    }
    return StructuredSet(g, std::move(boxes));
  });
}

Json tileset_json(const std::vector<FiniteSet>& tiles) {
  Json t = Json::array();
  for (const auto& f : tiles) t.push_back(elements_json(f));
  return {{"tiles", t}};
}

std::vector<FiniteSet> tileset_from(const Json& payload) {
  return guarded("tileset", [&] {
    const auto z2 = ExplicitGroup::lattice(2);
    std::vector<FiniteSet> out;
    for (const auto& t : payload.at("tiles")) {
      auto s = set_from(z2, t);
      if (s.empty()) throw EmptyTile("tile " + std::to_string(out.size()));
      out.push_back(std::move(s));
    }
    return out;
  });
}

Json tiling_json(const TilingSystem& s) {
  Json eqs = Json::array();
  for (const auto& e : s.equations) {
    Json tiles = Json::array();
    for (const auto& f : e.tiles) tiles.push_back(elements_json(f));
    eqs.push_back({{"tiles", tiles}, {"target", periodic_json(e.target)}});
  }
  return {{"group", group_json(s.group)}, {"equations", eqs}};
}

TilingSystem tiling_from(const Json& payload) {
  return guarded("tiling system", [&] {
    TilingSystem s;
    s.group = group_from(payload.at("group"));
    for (const auto& e : payload.at("equations")) {
      TilingEquation eq;
      for (const auto& t : e.at("tiles")) eq.tiles.push_back(set_from(s.group, t));
      eq.target = periodic_from(s.group, e.at("target"));
      s.equations.push_back(std::move(eq));
    }
    s.validate();
    return s;
  });
}

Json boolean_json(const BooleanLocalSystem& s) {
  return {{"D", s.D}, {"shifts", elements(s.shifts)}, {"omega", s.omega}};
}

BooleanLocalSystem boolean_from(const Json& p) {
  return guarded("boolean system", [&] {
    BooleanLocalSystem s{p.at("D").get<int>(), elements_from(p.at("shifts")),
                         p.at("omega").get<std::vector<std::uint64_t>>()};
    s.validate();
    return s;
  });
}

Json linear_json(const LinearBooleanSystem& s) {
  return {{"D", s.D}, {"D0", s.D0}, {"coeffs", {s.coeffs[0], s.coeffs[1]}}, {"shifts", elements(s.shifts)}};
}

LinearBooleanSystem linear_from(const Json& p) {
  return guarded("linear system", [&] {
    LinearBooleanSystem s;
    s.D = p.at("D").get<int>();
    s.D0 = p.at("D0").get<int>();
    const auto& c = p.at("coeffs");
    if (c.size() != 2) throw ParseError("coeffs needs two row families");
    for (int j = 0; j < 2; ++j) s.coeffs[j] = c[j].get<std::vector<std::vector<std::int64_t>>>();
    s.shifts = elements_from(p.at("shifts"));
    s.validate();
    return s;
  });
}

Json hamming_json(const HammingSystem& s) {
  Json eqs = Json::array();
  for (const auto& e : s.equations)
    eqs.push_back({{"h1", e.h1},
                   {"h2", e.h2},
                   {"F1", structured_json(e.F1)},
                   {"F2", structured_json(e.F2)},
                   {"E", structured_json(e.E)}});
  return {{"N", s.N}, {"D", s.D}, {"rank", s.rank}, {"equations", eqs}};
}

HammingSystem hamming_from(const Json& p) {
  return guarded("hamming system", [&] {
    HammingSystem s;
    s.N = p.at("N").get<std::int64_t>();
    s.D = p.at("D").get<int>();
    s.rank = p.at("rank").get<int>();
    const auto g = s.cube_group();
    for (const auto& e : p.at("equations"))
      s.equations.push_back({e.at("h1").get<GroupElement>(), e.at("h2").get<GroupElement>(),
                             structured_from(g, e.at("F1")), structured_from(g, e.at("F2")),
                             structured_from(g, e.at("E"))});
    s.validate();
    return s;
  });
}

Json functional_json(const FunctionalSystem& s) {
  Json eqs = Json::array();
  for (const auto& e : s.equations) {
    Json H = Json::array(), F = Json::array();
    for (const auto& h : e.H) H.push_back(elements(h));
    for (const auto& f : e.F) F.push_back(structured_json(f));
    eqs.push_back({{"H", H}, {"F", F}, {"E", structured_json(e.E)}});
  }
  return {{"domain", group_json(s.domain)}, {"codomain", group_json(s.codomain)}, {"J", s.J}, {"equations", eqs}};
}

FunctionalSystem functional_from(const Json& p) {
  return guarded("functional system", [&] {
    FunctionalSystem s;
    s.domain = group_from(p.at("domain"));
    s.codomain = group_from(p.at("codomain"));
    s.J = p.at("J").get<std::size_t>();
    for (const auto& e : p.at("equations")) {
      FunctionalEquation eq;
      for (const auto& h : e.at("H")) eq.H.push_back(elements_from(h));
      for (const auto& f : e.at("F")) eq.F.push_back(structured_from(s.codomain, f));
      eq.E = structured_from(s.codomain, e.at("E"));
      s.equations.push_back(std::move(eq));
    }
    s.validate();
    return s;
  });
}

Json assignment_json(const Assignment& a) {
  Json sets = Json::array();
  for (const auto& s : a.sets) sets.push_back(elements_json(s));
  return sets;
}

Assignment assignment_from(const ExplicitGroup& g, const Json& j) {
  return guarded("assignment", [&] {
    Assignment a;
    for (const auto& s : j) a.sets.push_back(set_from(g, s));
    return a;
  });
}

Json trace_json(const std::vector<StageReport>& stages) {
  Json out = Json::array();
  for (const auto& s : stages) {
    Json sizes = Json::array();
    for (const auto& t : s.tile_sizes) sizes.push_back(t.str());
    Json params = Json::object();
    for (const auto& [k, v] : s.params) params[k] = v;
    out.push_back({{"stage", s.stage},
                   {"functions", s.functions.str()},
                   {"constraints", s.constraints.str()},
                   {"codomain", s.codomain.str()},
                   {"tile_sizes", sizes},
                   {"params", params}});
  }
  return {{"stages", out}};
}

Json cover_stats_json(const std::vector<CoverStats>& stats) {
  Json fams = Json::array();
  std::uint64_t violations = 0;
  for (const auto& s : stats) {
    Json w = Json::array();
    for (const auto& x : s.witnesses) w.push_back({{"element", x.element}, {"count", x.count}, {"in_target", x.in_target}});
    fams.push_back({{"family", s.family},
                    {"samples", s.samples},
                    {"in_target", s.in_target},
                    {"violations", s.violations},
                    {"witnesses", w}});
    violations += s.violations;
  }
  return {{"ok", violations == 0}, {"violations", violations}, {"families", fams}};
}

Json periodic_assignment_json(const PeriodicAssignment& p) {
  Json sets = Json::array();
  for (const auto& s : p.sets) sets.push_back(periodic_json(s));
  return {{"period", p.period}, {"start", p.start}, {"sets", sets}};
}

TilingSystem instance_from(const Json& doc) {
  const auto k = kind_of(doc);
  if (k == kind::kTiling) return tiling_from(doc["payload"]);
  if (k == kind::kTileset) {
    const auto z2 = ExplicitGroup::lattice(2);
    return TilingSystem{z2, {{tileset_from(doc["payload"]), PeriodicSet::full(z2)}}};
  }
  throw ParseError("expected a 'tiling' or 'tileset' document, got '" + k + "'");
}

Json var_map_json(const CnfInstance& cnf) {
  Json vars = Json::array();
  for (std::size_t v = 0; v < cnf.var_map.size(); ++v)
    vars.push_back({{"var", v + 1}, {"tile", cnf.var_map[v].tile}, {"position", cnf.var_map[v].position}});
  return {{"num_vars", cnf.num_vars},
          {"placement_vars", cnf.var_map.size()},
          {"auxiliary_vars", cnf.num_vars - static_cast<int>(cnf.var_map.size())},
          {"group", group_json(cnf.placement_group)},
          {"placements", vars}};
}

}  // namespace tileforge
