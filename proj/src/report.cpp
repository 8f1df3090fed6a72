#include "shadowlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace shadowlab {

namespace {

Json masks_json(const MaskList& masks) {
  Json a = Json::array();
  for (auto m : masks) a.push_back(m);
  return a;
}

void write(const Json& j, int indent, int depth, std::string& out) {
  const auto pad = [&](int d) {
    if (indent >= 0) {
      out.push_back('\n');
      out.append(static_cast<std::size_t>(indent * d), ' ');
    }
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out.push_back('{');
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out.push_back(',');
        first = false;
        pad(depth + 1);
        out += Json(it.key()).dump();
        out += indent >= 0 ? ": " : ":";
        write(it.value(), indent, depth + 1, out);
      }
      pad(depth);
      out.push_back('}');
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); });
      out.push_back('[');
      bool first = true;
      for (const auto& x : j) {
        if (!first) out += flat && indent >= 0 ? ", " : ",";
        first = false;
        if (!flat) pad(depth + 1);
        write(x, indent, depth + 1, out);
      }
      if (!flat) pad(depth);
      out.push_back(']');
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::string out;
  write(j, indent, 0, out);
  return out;
}

Json to_json(const VertexSet& s) {
  Json a = Json::array();
  s.for_each([&](Vertex v) { a.push_back(v); });
  return a;
}

Json to_json(const Hypergraph& h) {
  Json edges = Json::array();
  for (const auto& e : h.edges()) edges.push_back(to_json(e));
  return Json{{"r", h.r()}, {"n", h.n()}, {"size", h.size()}, {"edges", edges}};
}

Json to_json(const Rational& q) {
  return Json{{"num", q.numerator()}, {"den", q.denominator()}, {"value", boost::rational_cast<double>(q)}};
}

Json to_json(const ZValue& z) {
  return Json{{"ell", z.ell}, {"z", to_json(z.z)}, {"witness", to_json(z.witness)}, {"clamped", z.clamped}};
}

Json to_json(const Witness& w) {
  Json j;
  j["kind"] = w.kind == Witness::Kind::cancellative_triple ? "cancellative_triple" : "covered_clique";
  Json edges = Json::array();
  for (const auto& e : w.edges) edges.push_back(to_json(e));
  j["edges"] = edges;
  if (w.kind == Witness::Kind::covered_clique) {
    j["core"] = to_json(w.core);
    Json cov = Json::array();
    for (const auto& c : w.covering) cov.push_back(Json{{"pair", {c.u, c.v}}, {"edge", to_json(c.edge)}});
    j["covering"] = cov;
  }
  j["describe"] = w.describe();
  return j;
}

Json to_json(const BoundReport& b) {
  return Json{{"kind", b.kind},   {"shadow_size", b.shadow_size}, {"x", b.x},         {"bound", b.bound},
              {"actual", b.actual}, {"slack", b.slack},           {"tight", b.tight}};
}

Json to_json(const InequalityReport& rep) {
  Json items = Json::array();
  for (const auto& i : rep.items) items.push_back(Json{{"id", i.id}, {"lhs", i.lhs}, {"rhs", i.rhs}, {"holds", i.holds}});
  return Json{{"all_hold", rep.all_hold()}, {"items", items}};
}

Json to_json(const EnumStats& s) {
  return Json{{"n", s.n},
              {"r", s.r},
              {"family", s.family.name()},
              {"engine", engine_name(s.engine)},
              {"searched", s.searched},
              {"classes", s.classes},
              {"nodes", s.nodes},
              {"max_edges", s.max_edges}};
}

Json to_json(const ExtremalResult& e) {
  Json forms = Json::array();
  for (const auto& f : e.extremal_graphs) forms.push_back(f.to_string());
  return Json{{"n", e.n},
              {"r", e.r},
              {"family", e.family.name()},
              {"max_edges", e.max_edges},
              {"extremal_graphs", forms},
              {"unique", e.unique()},
              {"count_searched", e.count_searched}};
}

Json to_json(const BoundSweepReport& b) {
  Json j{{"n", b.n},
         {"r", b.r},
         {"family", b.family.name()},
         {"bound_kind", bound_kind_name(b.kind)},
         {"engine", engine_name(b.engine)},
         {"checked", b.checked},
         {"violations", b.violations},
         {"tight", b.tight},
         {"min_slack", b.min_slack},
         {"min_slack_graph", masks_json(b.min_slack_graph)}};
  if (b.kind == BoundKind::expansion) j["ell"] = b.ell;
  j["first_violation"] = b.first_violation ? masks_json(*b.first_violation) : Json(nullptr);
  return j;
}

Json to_json(const PartitionFit& f) {
  Json parts = Json::array();
  for (const auto& p : f.parts) parts.push_back(to_json(p));
  return Json{{"ell", f.ell},         {"cap", f.cap},      {"chosen", to_json(f.chosen)}, {"parts", parts},
              {"removed", f.removed}, {"optimal", f.optimal}};
}

Json to_json(const CoreExtraction& c) {
  Json g = Json::array();
  for (const auto& s : c.g) g.push_back(to_json(s));
  Json j{{"family", c.family},
         {"ell", c.ell},
         {"eps", c.eps},
         {"tau", c.tau},
         {"shadow_size", c.shadow_size},
         {"g_size", c.g.size()},
         {"g_fraction", c.g_fraction},
         {"g", g},
         {"u", to_json(c.u)},
         {"u_size", c.u_size},
         {"h_u_edges", c.h_u_edges},
         {"h_u_shadow", c.h_u_shadow},
         {"min_degree_u", c.min_degree_u},
         {"max_degree", c.max_degree},
         {"flags", to_json(c.flags)}};
  if (c.z) j["z"] = to_json(*c.z);
  if (c.family == "cancellative") {
    j["eps1_stated"] = c.eps1_stated;
    j["eps1_invoked"] = c.eps1_invoked;
  }
  return j;
}

Json to_json(const StabilityCertificate& c) {
  return Json{{"family", c.family},
              {"ell", c.ell},
              {"eps", c.eps},
              {"delta", c.delta},
              {"bound", to_json(c.bound)},
              {"hypothesis_floor", c.hypothesis_floor},
              {"hypothesis_met", c.hypothesis_met},
              {"core", to_json(c.core)},
              {"fit", to_json(c.fit)},
              {"allowance", c.allowance},
              {"conclusion_holds", c.conclusion_holds},
              {"status", c.status}};
}

}  // namespace shadowlab
