#include "shadowlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "shadowlab/errors.hpp"
#include "shadowlab/forbidden.hpp"

namespace shadowlab {

namespace {

double tolerance_for(double magnitude) { return kBoundTolerance * std::max(1.0, std::abs(magnitude)); }

Inequality make(std::string id, double lhs, double rhs) {
  return {std::move(id), lhs, rhs, lhs <= rhs + tolerance_for(rhs)};
}

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return real_binomial(static_cast<double>(n), k);
}

void finish(BoundReport& rep) {
  rep.slack = rep.bound - static_cast<double>(rep.actual);
  rep.tight = std::abs(rep.slack) <= tolerance_for(rep.bound);
}

// |d L(v)|. For r = 2 the link is a 1-graph whose shadow is {empty set}.
std::int64_t link_shadow_size(const Hypergraph& h, Vertex v, std::int64_t degree) {
  if (degree == 0) return 0;
  if (h.r() == 2) return 1;
  return static_cast<std::int64_t>(shadow_size(link(h, v)));
}

}  // namespace

bool InequalityReport::all_hold() const {
  return std::all_of(items.begin(), items.end(), [](const Inequality& i) { return i.holds; });
}

const Inequality& InequalityReport::at(const std::string& id) const {
  for (const auto& i : items)
    if (i.id == id) return i;
  throw ParameterError("no inequality " + id);
}

double real_binomial(double x, int k) {
  if (k < 0) return 0.0;
  double num = 1.0;
  for (int j = 0; j < k; ++j) num *= (x - j) / (j + 1);
  return num;
}

double solve_binomial_x(double s, int k) {
  if (k < 1) throw DomainError("solve_binomial_x needs k >= 1");
  if (!(s >= 1.0)) throw DomainError("solve_binomial_x needs s >= 1");
  // C(., k) is increasing on [k-1, inf) and equals 1 at k.
  double lo = k;
  double hi = k + 1.0;
  while (real_binomial(hi, k) < s) {
    lo = hi;
    hi *= 2.0;
  }
  for (int iter = 0; iter < 4096 && hi - lo > 1e-12; ++iter) {
    const double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) break;
    if (real_binomial(mid, k) < s)
      lo = mid;
    else
      hi = mid;
  }
  return std::abs(real_binomial(lo, k) - s) <= std::abs(real_binomial(hi, k) - s) ? lo : hi;
}

BoundReport kk_bound(const Hypergraph& h) {
  if (h.r() < 2) throw ParameterError("kk_bound needs r >= 2");
  BoundReport rep;
  rep.kind = "kruskal-katona";
  rep.shadow_size = static_cast<std::int64_t>(shadow_size(h));
  if (rep.shadow_size < 1) throw EmptyInputError("kk_bound: empty shadow");
  rep.x = solve_binomial_x(static_cast<double>(rep.shadow_size), h.r() - 1);
  rep.bound = real_binomial(rep.x, h.r());
  rep.actual = static_cast<std::int64_t>(h.size());
  finish(rep);
  return rep;
}

BoundValue cancellative_bound(double shadow_size, int r) {
  if (r < 2) throw DomainError("cancellative_bound needs r >= 2");
  if (!(shadow_size > 0)) throw DomainError("cancellative_bound needs a positive shadow size");
  const double e = 1.0 / (r - 1);
  return {std::pow(std::pow(r, r - 2) * shadow_size, e), std::pow(shadow_size / r, r * e)};
}

BoundValue expansion_bound(double shadow_size, int ell, int r) {
  if (r < 2 || ell < r) throw DomainError("expansion_bound needs ell >= r >= 2");
  if (!(shadow_size > 0)) throw DomainError("expansion_bound needs a positive shadow size");
  const double x = ell * std::pow(shadow_size / binom(ell, r - 1), 1.0 / (r - 1));
  return {x, binom(ell, r) * std::pow(x / ell, r)};
}

BoundReport cancellative_report(const Hypergraph& h) {
  BoundReport rep;
  rep.kind = "cancellative";
  rep.shadow_size = static_cast<std::int64_t>(shadow_size(h));
  if (rep.shadow_size < 1) throw EmptyInputError("cancellative bound: empty shadow");
  const auto b = cancellative_bound(static_cast<double>(rep.shadow_size), h.r());
  rep.x = b.x;
  rep.bound = b.bound;
  rep.actual = static_cast<std::int64_t>(h.size());
  finish(rep);
  return rep;
}

BoundReport expansion_report(const Hypergraph& h, int ell) {
  BoundReport rep;
  rep.kind = "expansion";
  rep.shadow_size = static_cast<std::int64_t>(shadow_size(h));
  if (rep.shadow_size < 1) throw EmptyInputError("expansion bound: empty shadow");
  const auto b = expansion_bound(static_cast<double>(rep.shadow_size), ell, h.r());
  rep.x = b.x;
  rep.bound = b.bound;
  rep.actual = static_cast<std::int64_t>(h.size());
  finish(rep);
  return rep;
}

InequalityReport lemma8_check(const Hypergraph& h) {
  require_free(h, Family::cancellative(), "lemma8_check");
  const auto adj = pair_adjacency(h);
  std::vector<Hypergraph> links;
  links.reserve(static_cast<std::size_t>(h.n()));
  for (Vertex v = 0; v < h.n(); ++v) links.push_back(link(h, v));

  std::int64_t bad_pairs = 0;
  for (Vertex u = 0; u < h.n(); ++u)
    adj[static_cast<std::size_t>(u)].for_each([&](Vertex v) {
      if (v <= u) return;
      const auto lu = links[static_cast<std::size_t>(u)].edges();
      const auto lv = links[static_cast<std::size_t>(v)].edges();
      std::vector<Edge> common;
      std::set_intersection(lu.begin(), lu.end(), lv.begin(), lv.end(), std::back_inserter(common));
      if (!common.empty()) ++bad_pairs;
    });

  const auto deg = degrees(h);
  std::int64_t max_sigma = 0;
  for (const auto& s : maximal_two_covered_sets(h)) max_sigma = std::max(max_sigma, sigma(deg, s));

  InequalityReport rep;
  rep.items.push_back(make("L8.links", static_cast<double>(bad_pairs), 0.0));
  rep.items.push_back(make("L8.sigma", static_cast<double>(max_sigma), static_cast<double>(shadow_size(h))));
  return rep;
}

InequalityReport lemma9_check(const Hypergraph& h) {
  if (h.r() < 2) throw ParameterError("lemma9_check needs r >= 2");
  if (h.empty()) throw EmptyInputError("lemma9_check of an edgeless hypergraph");
  require_free(h, Family::cancellative(), "lemma9_check");

  const int r = h.r();
  const auto sh = shadow(h);
  const double s = static_cast<double>(sh.size());
  const auto st = sigma_hat(h);
  const double sh_hat = static_cast<double>(st.sigma_hat);
  const double root = 1.0 / (r - 1);
  const double coef = std::pow(s, (r - 2) * root) / (r * std::pow(r - 1, root));
  const double size = static_cast<double>(h.size());

  auto rhs = [&](double inner) { return coef * std::pow(std::max(0.0, inner), root); };

  double spread = 0.0;
  st.argmax_edge.for_each([&](Vertex v) {
    const double d = static_cast<double>(st.degrees[static_cast<std::size_t>(v)]);
    spread += d * (sh_hat - d);
  });

  // Links of the vertices of E, and shadow sets outside all of them.
  std::vector<Edge> in_links;
  double link_sigma = 0.0;
  st.argmax_edge.for_each([&](Vertex v) {
    const auto lv = link(h, v);
    for (const auto& a : lv.edges()) {
      link_sigma += static_cast<double>(sigma(st.degrees, a));
      in_links.push_back(a);
    }
  });
  std::sort(in_links.begin(), in_links.end());
  double outside_sigma = 0.0;
  for (const auto& a : sh.edges())
    if (!std::binary_search(in_links.begin(), in_links.end(), a))
      outside_sigma += static_cast<double>(sigma(st.degrees, a));

  double weighted = 0.0;
  for (Vertex v = 0; v < h.n(); ++v) {
    const auto d = st.degrees[static_cast<std::size_t>(v)];
    if (d == 0) continue;
    weighted += std::pow(static_cast<double>(d), root) * static_cast<double>(link_shadow_size(h, v, d));
  }
  weighted /= r * (r - 1);

  InequalityReport rep;
  rep.items.push_back(make("L9.1", size, rhs((s - sh_hat / r) * sh_hat)));
  rep.items.push_back(make("L9.2", size, rhs(spread + (s - sh_hat) * sh_hat)));
  rep.items.push_back(make("L9.3", size, rhs(link_sigma + outside_sigma)));
  rep.items.push_back(make("L9.4", weighted, std::pow(s / r, r * root)));
  return rep;
}

InequalityReport lemma10_check(const Hypergraph& h) {
  require_free(h, Family::cancellative(), "lemma10_check");
  std::int64_t offending = 0;
  if (h.r() >= 2) {
    for (Vertex v = 0; v < h.n(); ++v) {
      VertexSet single(h.n());
      single.insert(v);
      const auto nv = neighborhood(h, single);
      const auto lv = link(h, v);
      for (const auto& a : lv.edges())
        if (neighborhood(h, a).intersects(nv)) ++offending;
    }
  }
  InequalityReport rep;
  rep.items.push_back(make("L10", static_cast<double>(offending), 0.0));
  return rep;
}

InequalityReport clique_sigma_check(const Hypergraph& h, int ell) {
  require_free(h, Family::expansion(ell), "clique_sigma_check");
  const auto deg = degrees(h);
  std::int64_t max_sigma = 0;
  clique_set(h, ell).for_each([&](const VertexSet& s) { max_sigma = std::max(max_sigma, sigma(deg, s)); });
  InequalityReport rep;
  rep.items.push_back(make("K.sigma", static_cast<double>(max_sigma),
                           static_cast<double>(ell - h.r() + 1) * static_cast<double>(shadow_size(h))));
  return rep;
}

CliqueSumResult lemma14_check(const Hypergraph& h, int ell) {
  if (h.r() < 2) throw ParameterError("lemma14_check needs r >= 2");
  if (h.empty()) throw EmptyInputError("lemma14_check of an edgeless hypergraph");
  require_free(h, Family::expansion(ell), "lemma14_check");

  const int r = h.r();
  CliqueSumResult out;
  out.z = z_value(h, ell);
  const auto sh = shadow(h);
  const auto deg = degrees(h);
  const double s = static_cast<double>(sh.size());
  double sum_sigma = 0.0;
  for (const auto& e : sh.edges()) sum_sigma += static_cast<double>(sigma(deg, e));

  const double root = 1.0 / (r - 1);
  const double frac = (r - 2) * root;
  const double coef = std::pow(binom(ell - 1, r - 1), frac) / (r * binom(ell - 1, r - 2)) * std::pow(r - 1, frac);
  const double rhs1 = coef * std::pow(s, frac) * std::pow(sum_sigma, root);

  const double z = boost::rational_cast<double>(out.z.z);
  const double head = static_cast<double>(ell - r + 1);
  const double r0 = static_cast<double>(out.z.witness.size());
  const double gap = head * s - z * ell;
  const double rhs2 = head * (s - 2 * z) * s + z * z * ell - gap * gap / r0;

  out.report.items.push_back(make("L14.1", static_cast<double>(h.size()), rhs1));
  out.report.items.push_back(make("L14.2", sum_sigma, rhs2));
  return out;
}

ConcentrationResult concentration_bound(std::span<const double> values, double delta1, double delta2) {
  if (values.empty()) throw EmptyInputError("concentration_bound of an empty value list");
  if (!(delta1 > 0) || !(delta2 > 0)) throw DomainError("concentration_bound needs delta1, delta2 > 0");
  ConcentrationResult out;
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  const double top = *std::max_element(values.begin(), values.end());
  if (top > out.mean + delta2 + tolerance_for(out.mean + delta2) * 1e-3)
    throw PreconditionError("concentration_bound: max value exceeds mean + delta2");
  out.small_set_size = static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(), [&](double f) { return f <= out.mean - delta1; }));
  out.bound = delta2 / (delta1 + delta2) * static_cast<double>(values.size());
  out.holds = static_cast<double>(out.small_set_size) <= out.bound + tolerance_for(out.bound);
  return out;
}

}  // namespace shadowlab
