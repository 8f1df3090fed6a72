#include "shadowlab/stability.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include "shadowlab/errors.hpp"
#include "shadowlab/rng.hpp"

namespace shadowlab {

std::string fit_mode_name(FitMode m) {
  switch (m) {
    case FitMode::automatic:
      return "auto";
    case FitMode::exact:
      return "exact";
    case FitMode::heuristic:
      return "heuristic";
  }
  return "?";
}

std::size_t count_removed(const Hypergraph& h, const std::vector<int>& part_of) {
  std::size_t removed = 0;
  for (const auto& e : h.edges()) {
    std::uint64_t used = 0;
    bool alive = true;
    e.for_each([&](Vertex v) {
      const int p = part_of[static_cast<std::size_t>(v)];
      if (p < 0 || (used >> p) & 1)
        alive = false;
      else
        used |= std::uint64_t{1} << p;
    });
    if (!alive) ++removed;
  }
  return removed;
}

namespace {

// Vertices with positive degree and, for each, the edges through it.
struct Incidence {
  std::vector<Vertex> active;
  std::vector<std::vector<std::size_t>> edges_of;  // indexed by vertex
  std::vector<std::int64_t> degree;
};

Incidence incidence(const Hypergraph& h) {
  Incidence inc;
  inc.edges_of.assign(static_cast<std::size_t>(h.n()), {});
  inc.degree.assign(static_cast<std::size_t>(h.n()), 0);
  for (std::size_t i = 0; i < h.size(); ++i)
    h.edge(i).for_each([&](Vertex v) {
      inc.edges_of[static_cast<std::size_t>(v)].push_back(i);
      ++inc.degree[static_cast<std::size_t>(v)];
    });
  for (Vertex v = 0; v < h.n(); ++v)
    if (inc.degree[static_cast<std::size_t>(v)] > 0) inc.active.push_back(v);
  return inc;
}

void fill_parts(PartitionFit& fit, int n) {
  fit.chosen = VertexSet(n);
  fit.parts.assign(static_cast<std::size_t>(fit.ell), VertexSet(n));
  for (Vertex v = 0; v < n; ++v) {
    const int p = fit.part_of[static_cast<std::size_t>(v)];
    if (p < 0) continue;
    fit.chosen.insert(v);
    fit.parts[static_cast<std::size_t>(p)].insert(v);
  }
}

constexpr int kExcluded = -1;

class BranchAndBound {
 public:
  BranchAndBound(const Hypergraph& h, const Incidence& inc, int ell, int cap)
      : inc_(inc), ell_(ell), cap_(cap) {
    label_.assign(static_cast<std::size_t>(h.n()), kExcluded);
    used_.assign(h.size(), 0);
    dead_.assign(h.size(), 0);
  }

  // Applies a label to active vertex number i; returns false if the cap forbids it.
  bool assign(std::size_t i, int c) {
    const Vertex v = inc_.active[i];
    if (c != kExcluded) {
      if (included_ == cap_) return false;
      ++included_;
      max_part_ = std::max(max_part_, c);
    }
    label_[static_cast<std::size_t>(v)] = c;
    history_.push_back(undo_.size());
    for (auto e : inc_.edges_of[static_cast<std::size_t>(v)]) {
      if (dead_[e]) continue;
      if (c == kExcluded || (used_[e] >> c) & 1) {
        dead_[e] = 1;
        ++dead_count_;
        undo_.push_back({e, true, 0});
      } else {
        used_[e] |= std::uint64_t{1} << c;
        undo_.push_back({e, false, c});
      }
    }
    return true;
  }

  void unassign(std::size_t i) {
    const Vertex v = inc_.active[i];
    const std::size_t mark = history_.back();
    history_.pop_back();
    while (undo_.size() > mark) {
      const auto u = undo_.back();
      undo_.pop_back();
      if (u.killed) {
        dead_[u.edge] = 0;
        --dead_count_;
      } else {
        used_[u.edge] &= ~(std::uint64_t{1} << u.part);
      }
    }
    if (label_[static_cast<std::size_t>(v)] != kExcluded) --included_;
    label_[static_cast<std::size_t>(v)] = kExcluded;
    recompute_max_part(i);
  }

  // Labels allowed for active vertex i, in search order.
  std::vector<int> choices() const {
    std::vector<int> out;
    if (included_ < cap_)
      for (int c = 0; c <= std::min(max_part_ + 1, ell_ - 1); ++c) out.push_back(c);
    out.push_back(kExcluded);
    return out;
  }

  void search(std::size_t i, const std::atomic<std::size_t>& shared_best) {
    ++nodes_;
    if (dead_count_ >= best_ || dead_count_ > shared_best.load(std::memory_order_relaxed)) return;
    if (i == inc_.active.size()) {
      best_ = dead_count_;
      best_label_ = label_;
      return;
    }
    for (int c : choices()) {
      if (!assign(i, c)) continue;
      search(i + 1, shared_best);
      unassign(i);
    }
  }

  std::size_t best() const { return best_; }
  const std::vector<int>& best_label() const { return best_label_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  struct Undo {
    std::size_t edge;
    bool killed;
    int part;
  };

  void recompute_max_part(std::size_t upto) {
    max_part_ = -1;
    for (std::size_t j = 0; j < upto; ++j)
      max_part_ = std::max(max_part_, label_[static_cast<std::size_t>(inc_.active[j])]);
  }

  const Incidence& inc_;
  int ell_;
  int cap_;
  int included_ = 0;
  int max_part_ = -1;
  std::size_t dead_count_ = 0;
  std::vector<int> label_;
  std::vector<std::uint64_t> used_;
  std::vector<char> dead_;
  std::vector<Undo> undo_;
  std::vector<std::size_t> history_;
  std::size_t best_ = std::numeric_limits<std::size_t>::max();
  std::vector<int> best_label_;
  std::uint64_t nodes_ = 0;
};

// Root prefixes: every search-order labeling of the first `depth` active vertices.
void collect_prefixes(BranchAndBound& bb, std::size_t i, std::size_t depth, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out) {
  if (i == depth) {
    out.push_back(cur);
    return;
  }
  for (int c : bb.choices()) {
    if (!bb.assign(i, c)) continue;
    cur.push_back(c);
    collect_prefixes(bb, i + 1, depth, cur, out);
    cur.pop_back();
    bb.unassign(i);
  }
}

PartitionFit exact_fit(const Hypergraph& h, const Incidence& inc, int ell, int cap, bool parallel) {
  const std::size_t k = inc.active.size();
  const std::size_t depth = std::min<std::size_t>(k, 6);
  std::vector<std::vector<int>> prefixes;
  {
    BranchAndBound root(h, inc, ell, cap);
    std::vector<int> cur;
    collect_prefixes(root, 0, depth, cur, prefixes);
  }
  std::atomic<std::size_t> shared_best{h.size()};
  std::vector<std::size_t> value(prefixes.size(), std::numeric_limits<std::size_t>::max());
  std::vector<std::vector<int>> labels(prefixes.size());
  std::vector<std::uint64_t> nodes(prefixes.size(), 0);
  const auto count = static_cast<std::int64_t>(prefixes.size());
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (std::int64_t p = 0; p < count; ++p) {
    const auto idx = static_cast<std::size_t>(p);
    BranchAndBound bb(h, inc, ell, cap);
    for (std::size_t i = 0; i < depth; ++i) bb.assign(i, prefixes[idx][i]);
    bb.search(depth, shared_best);
    nodes[idx] = bb.nodes();
    if (bb.best_label().empty()) continue;
    value[idx] = bb.best();
    labels[idx] = bb.best_label();
    std::size_t cur = shared_best.load();
    while (bb.best() < cur && !shared_best.compare_exchange_weak(cur, bb.best())) {
    }
  }
  PartitionFit fit;
  fit.ell = ell;
  fit.cap = cap;
  fit.optimal = true;
  std::size_t pick = prefixes.size();
  for (std::size_t i = 0; i < prefixes.size(); ++i) {
    fit.nodes += nodes[i];
    if (!labels[i].empty() && (pick == prefixes.size() || value[i] < value[pick])) pick = i;
  }
  fit.part_of = labels[pick];
  fit.removed = value[pick];
  fill_parts(fit, h.n());
  return fit;
}

// Change in removed edges if v moves to label c.
std::int64_t move_delta(const Hypergraph& h, const Incidence& inc, std::vector<int>& label, Vertex v, int c) {
  auto alive = [&](std::size_t e) {
    std::uint64_t used = 0;
    bool ok = true;
    h.edge(e).for_each([&](Vertex w) {
      const int p = label[static_cast<std::size_t>(w)];
      if (p < 0 || (used >> p) & 1)
        ok = false;
      else
        used |= std::uint64_t{1} << p;
    });
    return ok;
  };
  const auto& es = inc.edges_of[static_cast<std::size_t>(v)];
  std::int64_t before = 0;
  for (auto e : es) before += alive(e) ? 0 : 1;
  const int old = label[static_cast<std::size_t>(v)];
  label[static_cast<std::size_t>(v)] = c;
  std::int64_t after = 0;
  for (auto e : es) after += alive(e) ? 0 : 1;
  label[static_cast<std::size_t>(v)] = old;
  return after - before;
}

PartitionFit heuristic_fit(const Hypergraph& h, const Incidence& inc, int ell, int cap, const FitOptions& opts) {
  PartitionFit best;
  best.ell = ell;
  best.cap = cap;
  best.removed = std::numeric_limits<std::size_t>::max();
  const int restarts = std::max(1, opts.restarts);
  for (int t = 0; t < restarts; ++t) {
    Xorshift64Star rng(opts.seed + static_cast<std::uint64_t>(t));
    std::vector<Vertex> order = inc.active;
    if (t > 0) rng.shuffle(order);
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
      return inc.degree[static_cast<std::size_t>(a)] > inc.degree[static_cast<std::size_t>(b)];
    });
    if (order.size() > static_cast<std::size_t>(cap)) order.resize(static_cast<std::size_t>(cap));
    if (t > 0) rng.shuffle(order);

    std::vector<int> label(static_cast<std::size_t>(h.n()), kExcluded);
    for (Vertex v : order) {
      std::int64_t best_delta = std::numeric_limits<std::int64_t>::max();
      std::vector<int> ties;
      for (int c = 0; c < ell; ++c) {
        const auto d = move_delta(h, inc, label, v, c);
        if (d < best_delta) {
          best_delta = d;
          ties.assign(1, c);
        } else if (d == best_delta) {
          ties.push_back(c);
        }
      }
      label[static_cast<std::size_t>(v)] = t == 0 ? ties.front() : ties[rng.below(ties.size())];
    }

    int included = static_cast<int>(order.size());
    for (bool improved = true; improved;) {
      improved = false;
      for (Vertex v : inc.active) {
        const int old = label[static_cast<std::size_t>(v)];
        int pick = old;
        std::int64_t best_delta = 0;
        for (int c = kExcluded; c < ell; ++c) {
          if (c == old) continue;
          if (old == kExcluded && included >= cap) continue;
          const auto d = move_delta(h, inc, label, v, c);
          if (d < best_delta) {
            best_delta = d;
            pick = c;
          }
        }
        if (pick != old) {
          if (old == kExcluded) ++included;
          if (pick == kExcluded) --included;
          label[static_cast<std::size_t>(v)] = pick;
          improved = true;
        }
      }
    }
    const auto removed = count_removed(h, label);
    if (removed < best.removed) {
      best.removed = removed;
      best.part_of = label;
    }
  }
  best.optimal = false;
  fill_parts(best, h.n());
  return best;
}

}  // namespace

PartitionFit partition_fit(const Hypergraph& h, int ell, int cap, const FitOptions& opts) {
  if (ell < 1 || ell > 64) throw ParameterError("partition_fit needs 1 <= ell <= 64");
  if (cap < 0) throw ParameterError("partition_fit needs cap >= 0");
  const auto inc = incidence(h);
  const double states = std::pow(static_cast<double>(ell), static_cast<double>(inc.active.size()));
  const bool fits = states <= opts.exact_state_budget;
  FitMode mode = opts.mode;
  if (mode == FitMode::automatic) mode = fits ? FitMode::exact : FitMode::heuristic;
  if (mode == FitMode::exact && !fits)
    throw ResourceError("partition_fit exact search needs ell^n <= " + std::to_string(opts.exact_state_budget) +
                        " states; n = " + std::to_string(inc.active.size()) + " non-isolated vertices");
  return mode == FitMode::exact ? exact_fit(h, inc, ell, cap, opts.parallel) : heuristic_fit(h, inc, ell, cap, opts);
}

// --- core extraction --------------------------------------------------------

namespace {

bool at_least(double lhs, double rhs) { return lhs >= rhs - kBoundTolerance * std::max(1.0, std::abs(rhs)); }
bool at_most(double lhs, double rhs) { return lhs <= rhs + kBoundTolerance * std::max(1.0, std::abs(rhs)); }

Inequality lower(const std::string& id, double lhs, double rhs) { return {id, lhs, rhs, at_least(lhs, rhs)}; }
Inequality upper(const std::string& id, double lhs, double rhs) { return {id, lhs, rhs, at_most(lhs, rhs)}; }

double choose(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must lie in (0, 1)");
}

}  // namespace

CoreExtraction core_for_threshold(const Hypergraph& h, double tau) {
  if (h.r() < 2) throw ParameterError("core extraction needs r >= 2");
  CoreExtraction core;
  core.tau = tau;
  const auto deg = degrees(h);
  const auto sh = shadow(h);
  core.shadow_size = sh.size();
  core.u = VertexSet(h.n());
  for (const auto& s : sh.edges())
    if (at_least(static_cast<double>(sigma(deg, s)), tau)) {
      core.g.push_back(s);
      core.u |= s;
    }
  core.g_fraction = core.shadow_size == 0 ? 0.0 : static_cast<double>(core.g.size()) / core.shadow_size;
  core.u_size = static_cast<std::size_t>(core.u.size());
  const auto hu = h.induced(core.u);
  core.h_u_edges = hu.size();
  core.h_u_shadow = shadow_size(hu);
  bool first = true;
  core.u.for_each([&](Vertex v) {
    const auto d = deg[static_cast<std::size_t>(v)];
    core.min_degree_u = first ? d : std::min(core.min_degree_u, d);
    first = false;
  });
  for (auto d : deg) core.max_degree = std::max(core.max_degree, d);
  return core;
}

CoreExtraction core_extract_cancellative(const Hypergraph& h, double eps) {
  check_eps(eps);
  require_free(h, Family::cancellative(), "core_extract_cancellative");
  const int r = h.r();
  const double s = static_cast<double>(shadow_size(h));
  const double rt = std::sqrt(eps);
  auto core = core_for_threshold(h, (static_cast<double>(r - 1) / r - 2.0 * r * rt) * s);
  core.family = "cancellative";
  core.ell = r;
  core.eps = eps;
  const double scale = std::pow(r, static_cast<double>(r - 2) / (r - 1)) * std::pow(s, 1.0 / (r - 1));
  const double r2 = static_cast<double>(r) * r;
  const double r4 = r2 * r2;
  auto& f = core.flags.items;
  f.push_back(lower("min_degree", static_cast<double>(core.min_degree_u), (1.0 / r - 3.0 * r2 * rt) * s));
  f.push_back(upper("u_upper", static_cast<double>(core.u_size), (1.0 + 6.0 * r2 * r * rt) * scale));
  f.push_back(lower("u_lower", static_cast<double>(core.u_size), (1.0 - 35.0 * r4 * rt) * scale));
  f.push_back(lower("h_u_floor", static_cast<double>(core.h_u_edges),
                    (1.0 - 33.0 * r4 * rt) * std::pow(s / r, static_cast<double>(r) / (r - 1))));
  f.push_back(lower("g_size", static_cast<double>(core.g.size()), (1.0 - 8.0 * r2 * rt) * s));
  f.push_back(upper("max_degree", static_cast<double>(core.max_degree), (1.0 / r + 3.0 * r * rt) * s));
  core.eps1_stated = 35.0 * r4 * rt;
  core.eps1_invoked = 40.0 * std::pow(r, 2.0 * r) * rt;
  return core;
}

CoreExtraction core_extract_expansion(const Hypergraph& h, int ell, double eps) {
  check_eps(eps);
  if (ell < h.r()) throw ParameterError("core_extract_expansion needs ell >= r");
  require_free(h, Family::expansion(ell), "core_extract_expansion");
  const int r = h.r();
  const double s = static_cast<double>(shadow_size(h));
  const double q = std::pow(eps, 0.25);
  const double rt = std::sqrt(eps);
  const double base = static_cast<double>(ell - r + 1) / ell * s;
  auto core = core_for_threshold(h, (1.0 - q) * (r - 1) * base);
  core.family = "expansion";
  core.ell = ell;
  core.eps = eps;
  const double ratio = s / choose(ell, r - 1);
  const double l2 = static_cast<double>(ell) * ell;
  auto& f = core.flags.items;
  f.push_back(lower("min_degree", static_cast<double>(core.min_degree_u), (1.0 - 2.0 * q) * base));
  f.push_back(upper("u_upper", static_cast<double>(core.u_size),
                    (1.0 + 4.0 * q) * ell * std::pow(ratio, 1.0 / (r - 1))));
  const double power = std::pow(ratio, static_cast<double>(r) / (r - 1));
  f.push_back(lower("h_u_floor_stated", static_cast<double>(core.h_u_edges),
                    (1.0 - 9.0 * std::pow(ell, 2.0 * r) * r * q) * power));
  f.push_back(lower("h_u_floor_derived", static_cast<double>(core.h_u_edges),
                    (1.0 - 9.0 * l2 * ell * r * r * q) * choose(ell, r) * power));
  f.push_back(lower("g_size", static_cast<double>(core.g.size()), (1.0 - l2 * r * q) * s));
  if (!h.empty() && ell >= 2) {
    core.z = z_value(h, ell);
    const double z = boost::rational_cast<double>(core.z->z);
    f.push_back(lower("z_lower", z, (1.0 - ell * r * rt) * base));
    f.push_back(upper("z_upper", z, (1.0 + ell * r * rt) * base));
  }
  return core;
}

StabilityCertificate stability_certificate(const Hypergraph& h, const Family& family, double eps, double delta,
                                           const FitOptions& opts) {
  check_eps(eps);
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  if (family.kind == Family::Kind::none) throw ParameterError("stability_certificate needs a forbidden family");
  require_free(h, family, "stability_certificate");
  StabilityCertificate cert;
  cert.family = family.name();
  cert.eps = eps;
  cert.delta = delta;
  const int r = h.r();
  if (family.kind == Family::Kind::cancellative) {
    cert.ell = r;
    cert.bound = cancellative_report(h);
    cert.core = core_extract_cancellative(h, eps);
  } else {
    cert.ell = family.ell;
    cert.bound = expansion_report(h, family.ell);
    cert.core = core_extract_expansion(h, family.ell, eps);
  }
  cert.hypothesis_floor = (1.0 - eps) * cert.bound.bound;
  cert.hypothesis_met = at_least(static_cast<double>(cert.bound.actual), cert.hypothesis_floor);
  const int cap = static_cast<int>(std::ceil(cert.bound.x - kBoundTolerance * std::max(1.0, cert.bound.x)));
  cert.fit = partition_fit(h, cert.ell, cap, opts);
  cert.allowance = delta * std::pow(cert.bound.x, r);
  cert.conclusion_holds = at_most(static_cast<double>(cert.fit.removed), cert.allowance);
  if (!cert.hypothesis_met)
    cert.status = "hypothesis-not-met";
  else
    cert.status = cert.conclusion_holds ? "certified" : "not-certified";
  return cert;
}

}  // namespace shadowlab
