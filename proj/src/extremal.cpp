#include "shadowlab/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "mask_ops.hpp"
#include "shadowlab/bounds.hpp"

namespace shadowlab {

namespace {

constexpr std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return c;
}

MaskList r_set_masks(int n, int r) {
  MaskList out;
  if (r < 0 || r > n) return out;
  if (r == 0) return {0};
  if (r == 64) return {~std::uint64_t{0}};
  // Gosper's hack walks equal-popcount masks in increasing order.
  std::uint64_t m = bit(r) - 1;
  const std::uint64_t last = m << (n - r);
  while (true) {
    out.push_back(m);
    if (m == last) break;
    const std::uint64_t low = m & (~m + 1);
    const std::uint64_t ripple = m + low;
    m = ripple | (((m ^ ripple) >> 2) / low);
  }
  return out;
}

// Permutation descent shared by canonical_form (labels restricted to
// the nonincreasing-degree order) and the orderly canonicity test (all labels).
class Relabeler {
 public:
  Relabeler(int n, const MaskList& masks, bool by_degree) : n_(n), by_degree_(by_degree) {
    incident_.assign(static_cast<std::size_t>(n), {});
    degree_.assign(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < masks.size(); ++i)
      detail::for_each_bit(masks[i], [&](int v) {
        incident_[static_cast<std::size_t>(v)].push_back(i);
        ++degree_[static_cast<std::size_t>(v)];
      });
    position_degree_ = degree_;
    std::sort(position_degree_.begin(), position_degree_.end(), std::greater<>());
    label_.assign(static_cast<std::size_t>(n), -1);
    missing_.assign(masks.size(), 0);
    for (std::size_t i = 0; i < masks.size(); ++i) missing_[i] = std::popcount(masks[i]);
    image_.assign(masks.size(), 0);
  }

  MaskList minimum() {
    have_best_ = false;
    descend(0);
    return best_;
  }

  bool is_minimal(const MaskList& sorted) {
    best_ = sorted;
    have_best_ = true;
    minimal_ = true;
    check_only_ = true;
    descend(0);
    return minimal_;
  }

 private:
  int compare(int k) const {
    if (!have_best_) return -1;
    const std::uint64_t bound = k + 1 >= 64 ? ~std::uint64_t{0} : bit(k + 1);
    const auto q = static_cast<std::size_t>(std::lower_bound(best_.begin(), best_.end(), bound) - best_.begin());
    const std::size_t p = prefix_.size();
    for (std::size_t i = 0; i < std::min(p, q); ++i) {
      if (prefix_[i] < best_[i]) return -1;
      if (prefix_[i] > best_[i]) return 1;
    }
    if (p < q) return 1;
    if (p > q) return -1;
    return 0;
  }

  void descend(int k) {
    if (k == n_) {
      if (!check_only_ && compare(n_ - 1) < 0) {
        best_ = prefix_;
        have_best_ = true;
      }
      return;
    }
    bool isolated_tried = false;
    for (int v = 0; v < n_; ++v) {
      const auto vi = static_cast<std::size_t>(v);
      if (label_[vi] >= 0) continue;
      if (by_degree_ && degree_[vi] != position_degree_[static_cast<std::size_t>(k)]) continue;
      // Isolated vertices are interchangeable.
      if (degree_[vi] == 0) {
        if (isolated_tried) continue;
        isolated_tried = true;
      }
      label_[vi] = k;
      const std::size_t old = prefix_.size();
      for (auto e : incident_[vi]) {
        image_[e] |= bit(k);
        if (--missing_[e] == 0) prefix_.push_back(image_[e]);
      }
      std::sort(prefix_.begin() + static_cast<std::ptrdiff_t>(old), prefix_.end());
      const int c = compare(k);
      if (check_only_ && c < 0) minimal_ = false;
      if (c <= 0 && minimal_) descend(k + 1);
      prefix_.resize(old);
      for (auto e : incident_[vi]) {
        image_[e] &= ~bit(k);
        ++missing_[e];
      }
      label_[vi] = -1;
      if (!minimal_) return;
    }
  }

  int n_;
  bool by_degree_;
  bool check_only_ = false;
  bool minimal_ = true;
  bool have_best_ = false;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<int> degree_;
  std::vector<int> position_degree_;
  std::vector<int> label_;
  std::vector<int> missing_;
  std::vector<std::uint64_t> image_;
  MaskList prefix_;
  MaskList best_;
};

void check_mask_input(int n, int r, const MaskList& masks) {
  if (n < 0 || n > 64) throw ResourceError("mask algorithms support at most 64 vertices");
  const std::uint64_t outside = n == 64 ? 0 : ~(bit(n) - 1);
  for (auto m : masks) {
    if (std::popcount(m) != r) throw ParameterError("edge mask with wrong popcount");
    if (m & outside) throw ParameterError("edge mask uses a vertex >= n");
  }
}

}  // namespace

Hypergraph CanonicalForm::graph() const { return from_masks(r, n, masks); }

std::string CanonicalForm::to_string() const {
  std::ostringstream os;
  os << n << ' ' << r << std::hex;
  for (auto m : masks) os << ' ' << m;
  return os.str();
}

CanonicalForm CanonicalForm::parse(const std::string& line) {
  std::istringstream is(line);
  CanonicalForm f;
  if (!(is >> f.n >> f.r)) throw ParseError(1, 1, "canonical form needs 'n r' header");
  is >> std::hex;
  std::uint64_t m = 0;
  while (is >> m) f.masks.push_back(m);
  if (!is.eof()) throw ParseError(1, static_cast<int>(line.size()), "bad mask in canonical form");
  check_mask_input(f.n, f.r, f.masks);
  if (!std::is_sorted(f.masks.begin(), f.masks.end())) throw ParseError(1, 1, "canonical masks must be sorted");
  return f;
}

std::strong_ordering operator<=>(const CanonicalForm& a, const CanonicalForm& b) {
  if (auto c = a.n <=> b.n; c != 0) return c;
  if (auto c = a.r <=> b.r; c != 0) return c;
  if (auto c = a.masks.size() <=> b.masks.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.masks.begin(), a.masks.end(), b.masks.begin(), b.masks.end());
}

CanonicalForm canonical_form(int n, int r, const MaskList& masks, int cap) {
  if (n > cap) throw ResourceError("canonical_form: n = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  check_mask_input(n, r, masks);
  MaskList sorted = masks;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ParameterError("canonical_form: repeated edge");
  CanonicalForm f{n, r, {}};
  if (sorted.empty()) return f;
  Relabeler rl(n, sorted, true);
  f.masks = rl.minimum();
  return f;
}

CanonicalForm canonical_form(const Hypergraph& h, int cap) {
  if (h.n() > cap)
    throw ResourceError("canonical_form: n = " + std::to_string(h.n()) + " exceeds cap " + std::to_string(cap));
  return canonical_form(h.n(), h.r(), to_masks(h), cap);
}

bool is_orderly_canonical(int n, const MaskList& sorted_masks) {
  if (sorted_masks.empty()) return true;
  Relabeler rl(n, sorted_masks, false);
  return rl.is_minimal(sorted_masks);
}

std::string engine_name(Engine e) {
  switch (e) {
    case Engine::automatic:
      return "auto";
    case Engine::naive:
      return "naive";
    case Engine::orderly:
      return "orderly";
  }
  return "?";
}

Engine resolve_engine(int n, int r, const EnumOptions& opts) {
  if (r < 1) throw ParameterError("uniformity must be >= 1");
  if (n < 0) throw ParameterError("vertex count must be >= 0");
  if (n > 64) throw ResourceError("enumeration supports at most 64 vertices");
  const std::uint64_t sets = binomial(n, r);
  const bool naive_ok = sets <= static_cast<std::uint64_t>(opts.naive_max_sets);
  const bool orderly_ok = n <= opts.orderly_max_vertices;
  switch (opts.engine) {
    case Engine::naive:
      if (!naive_ok)
        throw ResourceError("naive sweep over 2^" + std::to_string(sets) + " subsets exceeds the budget 2^" +
                            std::to_string(opts.naive_max_sets));
      return Engine::naive;
    case Engine::orderly:
      if (!orderly_ok)
        throw ResourceError("orderly generation limited to n <= " + std::to_string(opts.orderly_max_vertices));
      return Engine::orderly;
    case Engine::automatic:
      if (naive_ok) return Engine::naive;
      if (orderly_ok) return Engine::orderly;
      throw ResourceError("n = " + std::to_string(n) + ", r = " + std::to_string(r) +
                          " is outside both enumeration budgets");
  }
  return Engine::naive;
}

// --- labeled sweep ----------------------------------------------------------

namespace {

struct SerialSweep {
  const MaskList& sets;
  FreenessTracker& tracker;
  const std::function<void(const MaskList&)>& visit;
  std::uint64_t budget;
  EnumStats& stats;

  void run(std::size_t i) {
    ++stats.nodes;
    if (budget != 0 && stats.nodes > budget) throw BudgetExceeded("labeled sweep exceeded the node budget", stats);
    if (i == sets.size()) {
      ++stats.searched;
      stats.max_edges = std::max(stats.max_edges, tracker.edges().size());
      visit(tracker.edges());
      return;
    }
    run(i + 1);
    if (tracker.can_add(sets[i])) {
      tracker.push(sets[i]);
      run(i + 1);
      tracker.pop();
    }
  }
};

}  // namespace

EnumStats sweep_labeled(int n, int r, const Family& family, const std::function<void(const MaskList&)>& visit,
                        const EnumOptions& opts) {
  EnumOptions naive = opts;
  naive.engine = Engine::naive;
  resolve_engine(n, r, naive);
  const auto sets = r_set_masks(n, r);
  FreenessTracker tracker(n, r, family);
  EnumStats stats;
  stats.n = n;
  stats.r = r;
  stats.family = family;
  stats.engine = Engine::naive;
  SerialSweep{sets, tracker, visit, opts.node_budget, stats}.run(0);
  return stats;
}

namespace detail {

SweepPlan plan_sweep(int n, int r, const EnumOptions& opts) {
  EnumOptions naive = opts;
  naive.engine = Engine::naive;
  resolve_engine(n, r, naive);
  SweepPlan plan;
  plan.sets = r_set_masks(n, r);
  plan.split = std::min<std::size_t>(plan.sets.size(), 10);
  plan.items = std::uint64_t{1} << plan.split;
  return plan;
}

namespace {

struct SubtreeSweep {
  const MaskList& sets;
  FreenessTracker& tracker;
  const std::function<void(const MaskList&)>& visit;
  std::uint64_t& leaves;
  SweepControl& ctl;

  void run(std::size_t i) {
    if (ctl.stop.load(std::memory_order_relaxed)) return;
    const auto count = ctl.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (ctl.budget != 0 && count > ctl.budget) {
      ctl.stop.store(true);
      return;
    }
    if (i == sets.size()) {
      ++leaves;
      visit(tracker.edges());
      return;
    }
    run(i + 1);
    if (tracker.can_add(sets[i])) {
      tracker.push(sets[i]);
      run(i + 1);
      tracker.pop();
    }
  }
};

}  // namespace

void sweep_subtree(int n, int r, const Family& family, const SweepPlan& plan, std::uint64_t prefix,
                   const std::function<void(const MaskList&)>& visit, std::uint64_t& leaves, SweepControl& ctl) {
  FreenessTracker tracker(n, r, family);
  for (std::size_t i = 0; i < plan.split; ++i) {
    if (!((prefix >> (plan.split - 1 - i)) & 1)) continue;
    if (!tracker.can_add(plan.sets[i])) return;
    tracker.push(plan.sets[i]);
  }
  SubtreeSweep{plan.sets, tracker, visit, leaves, ctl}.run(plan.split);
}

}  // namespace detail

// --- orderly generation -----------------------------------------------------

namespace {

struct Orderly {
  const MaskList& sets;
  FreenessTracker& tracker;
  int n;
  const std::function<void(const MaskList&)>& visit;
  std::uint64_t budget;
  EnumStats& stats;

  void run() {
    ++stats.classes;
    ++stats.searched;
    stats.max_edges = std::max(stats.max_edges, tracker.edges().size());
    visit(tracker.edges());
    const auto& cur = tracker.edges();
    const std::uint64_t last = cur.empty() ? 0 : cur.back();
    auto it = cur.empty() ? sets.begin() : std::upper_bound(sets.begin(), sets.end(), last);
    for (; it != sets.end(); ++it) {
      ++stats.nodes;
      if (budget != 0 && stats.nodes > budget) throw BudgetExceeded("orderly generation exceeded the node budget", stats);
      if (!tracker.can_add(*it)) continue;
      tracker.push(*it);
      if (is_orderly_canonical(n, tracker.edges())) run();
      tracker.pop();
    }
  }
};

}  // namespace

EnumStats orderly_generate(int n, int r, const Family& family, const std::function<void(const MaskList&)>& visit,
                           const EnumOptions& opts) {
  EnumOptions o = opts;
  o.engine = Engine::orderly;
  resolve_engine(n, r, o);
  const auto sets = r_set_masks(n, r);
  FreenessTracker tracker(n, r, family);
  EnumStats stats;
  stats.n = n;
  stats.r = r;
  stats.family = family;
  stats.engine = Engine::orderly;
  Orderly{sets, tracker, n, visit, opts.node_budget, stats}.run();
  return stats;
}

namespace {

// Canonical children of a canonical list: append a larger free r-set and
// keep the result if it is still canonical.
std::vector<MaskList> orderly_children(const MaskList& parent, const MaskList& sets, int n, int r,
                                       const Family& family) {
  FreenessTracker tracker(n, r, family);
  for (auto e : parent) tracker.push(e);
  std::vector<MaskList> out;
  auto it = parent.empty() ? sets.begin() : std::upper_bound(sets.begin(), sets.end(), parent.back());
  for (; it != sets.end(); ++it) {
    if (!tracker.can_add(*it)) continue;
    tracker.push(*it);
    if (is_orderly_canonical(n, tracker.edges())) out.push_back(tracker.edges());
    tracker.pop();
  }
  return out;
}

// Parallel orderly generation: the tree is expanded level by level until the
// frontier is wide enough, then each frontier subtree is one work item.
// Classes are collected and sorted afterwards.
std::vector<CanonicalForm> orderly_classes(int n, int r, const Family& family, const EnumOptions& opts,
                                           EnumStats& stats) {
  EnumOptions o = opts;
  o.engine = Engine::orderly;
  resolve_engine(n, r, o);
  const auto sets = r_set_masks(n, r);

  stats = EnumStats{};
  stats.n = n;
  stats.r = r;
  stats.family = family;
  stats.engine = Engine::orderly;

  std::vector<CanonicalForm> out;
  std::vector<MaskList> frontier{MaskList{}};
  const std::size_t wide = 64;
  for (int depth = 0; depth < 4 && !frontier.empty() && frontier.size() < wide; ++depth) {
    std::vector<MaskList> next;
    for (const auto& g : frontier) {
      out.push_back(canonical_form(n, r, g, 64));
      ++stats.classes;
      stats.max_edges = std::max(stats.max_edges, g.size());
      const std::size_t start = g.empty() ? 0 : static_cast<std::size_t>(std::upper_bound(sets.begin(), sets.end(), g.back()) - sets.begin());
      stats.nodes += sets.size() - start;
      for (auto& c : orderly_children(g, sets, n, r, family)) next.push_back(std::move(c));
    }
    frontier = std::move(next);
  }

  std::vector<std::vector<CanonicalForm>> found(frontier.size());
  std::vector<EnumStats> part(frontier.size());
  std::vector<int> exceeded(frontier.size(), 0);
  const auto count = static_cast<std::int64_t>(frontier.size());
#pragma omp parallel for schedule(dynamic, 1) if (opts.parallel)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    FreenessTracker tracker(n, r, family);
    for (auto e : frontier[idx]) tracker.push(e);
    std::function<void(const MaskList&)> collect = [&](const MaskList& m) {
      found[idx].push_back(canonical_form(n, r, m, 64));
    };
    try {
      Orderly{sets, tracker, n, collect, opts.node_budget, part[idx]}.run();
    } catch (const BudgetExceeded&) {
      exceeded[idx] = 1;
    }
  }
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    stats.classes += part[i].classes;
    stats.nodes += part[i].nodes;
    stats.max_edges = std::max(stats.max_edges, part[i].max_edges);
    out.insert(out.end(), found[i].begin(), found[i].end());
  }
  stats.searched = stats.classes;
  const bool over = std::any_of(exceeded.begin(), exceeded.end(), [](int x) { return x != 0; });
  if (over || (opts.node_budget != 0 && stats.nodes > opts.node_budget))
    throw BudgetExceeded("orderly generation exceeded the node budget", stats);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CanonicalForm> naive_classes(int n, int r, const Family& family, const EnumOptions& opts,
                                         EnumStats& stats) {
  using Acc = std::vector<CanonicalForm>;
  auto out = sweep_labeled_reduce<Acc>(
      n, r, family, Acc{}, [&](Acc& acc, const MaskList& m) { acc.push_back(canonical_form(n, r, m, 64)); },
      [](Acc& into, Acc&& from) { into.insert(into.end(), from.begin(), from.end()); }, &stats, opts);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  stats.classes = out.size();
  for (const auto& f : out) stats.max_edges = std::max(stats.max_edges, f.masks.size());
  return out;
}

}  // namespace

std::vector<CanonicalForm> free_classes(int n, int r, const Family& family, const EnumOptions& opts,
                                        EnumStats* stats) {
  EnumStats local;
  std::vector<CanonicalForm> out = resolve_engine(n, r, opts) == Engine::naive
                                       ? naive_classes(n, r, family, opts, local)
                                       : orderly_classes(n, r, family, opts, local);
  if (stats) *stats = local;
  return out;
}

EnumStats enumerate_free(int n, int r, const Family& family, const std::function<void(const Hypergraph&)>& visit,
                         const EnumOptions& opts) {
  EnumStats stats;
  const auto classes = free_classes(n, r, family, opts, &stats);
  for (const auto& c : classes) visit(c.graph());
  return stats;
}

ExtremalResult extremal_search(int n, int r, const Family& family, const EnumOptions& opts) {
  ExtremalResult res;
  res.n = n;
  res.r = r;
  res.family = family;
  if (resolve_engine(n, r, opts) == Engine::naive) {
    struct Acc {
      std::size_t best = 0;
      std::vector<CanonicalForm> forms;
    };
    EnumStats stats;
    auto acc = sweep_labeled_reduce<Acc>(
        n, r, family, Acc{},
        [&](Acc& a, const MaskList& m) {
          if (m.size() < a.best) return;
          if (m.size() > a.best) {
            a.best = m.size();
            a.forms.clear();
          }
          a.forms.push_back(canonical_form(n, r, m, 64));
        },
        [](Acc& into, Acc&& from) {
          if (from.best > into.best) {
            into = std::move(from);
          } else if (from.best == into.best) {
            into.forms.insert(into.forms.end(), from.forms.begin(), from.forms.end());
          }
        },
        &stats, opts);
    std::sort(acc.forms.begin(), acc.forms.end());
    acc.forms.erase(std::unique(acc.forms.begin(), acc.forms.end()), acc.forms.end());
    res.max_edges = acc.best;
    res.extremal_graphs = std::move(acc.forms);
    res.count_searched = stats.searched;
  } else {
    EnumStats stats;
    const auto classes = orderly_classes(n, r, family, opts, stats);
    for (const auto& c : classes) res.max_edges = std::max(res.max_edges, c.masks.size());
    for (const auto& c : classes)
      if (c.masks.size() == res.max_edges) res.extremal_graphs.push_back(c);
    res.count_searched = stats.searched;
  }
  return res;
}

std::string bound_kind_name(BoundKind k) {
  switch (k) {
    case BoundKind::kruskal_katona:
      return "kruskal-katona";
    case BoundKind::cancellative:
      return "cancellative";
    case BoundKind::expansion:
      return "expansion";
  }
  return "?";
}

std::size_t mask_shadow_size(const MaskList& masks) {
  MaskList sub;
  for (auto e : masks) {
    if (std::popcount(e) < 2) continue;
    detail::for_each_bit(e, [&](int v) { sub.push_back(e & ~bit(v)); });
  }
  std::sort(sub.begin(), sub.end());
  return static_cast<std::size_t>(std::unique(sub.begin(), sub.end()) - sub.begin());
}

BoundSweepReport verify_bound_over_enumeration(int n, int r, const Family& family, BoundKind kind, int ell,
                                               const EnumOptions& opts) {
  if (r < 2) throw ParameterError("bound sweeps need r >= 2");
  if (kind == BoundKind::expansion && ell < r) throw ParameterError("expansion bound needs ell >= r");
  BoundSweepReport rep;
  rep.n = n;
  rep.r = r;
  rep.family = family;
  rep.kind = kind;
  rep.ell = ell;
  rep.engine = resolve_engine(n, r, opts);

  // Bound depends on the shadow size only.
  const auto max_shadow = static_cast<std::size_t>(binomial(n, r - 1));
  std::vector<double> bound_of(max_shadow + 1, 0.0);
  for (std::size_t s = 1; s <= max_shadow; ++s) {
    const auto sd = static_cast<double>(s);
    switch (kind) {
      case BoundKind::kruskal_katona:
        bound_of[s] = real_binomial(solve_binomial_x(sd, r - 1), r);
        break;
      case BoundKind::cancellative:
        bound_of[s] = cancellative_bound(sd, r).bound;
        break;
      case BoundKind::expansion:
        bound_of[s] = expansion_bound(sd, ell, r).bound;
        break;
    }
  }

  struct Acc {
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;
    std::uint64_t tight = 0;
    bool have = false;
    double min_slack = 0.0;
    MaskList min_graph;
    std::optional<MaskList> first_violation;

    void fold(const MaskList& m, double slack, double tol) {
      ++checked;
      if (slack < -tol) {
        ++violations;
        if (!first_violation) first_violation = m;
      }
      if (std::abs(slack) <= tol) ++tight;
      if (!have || slack < min_slack) {
        have = true;
        min_slack = slack;
        min_graph = m;
      }
    }
    void merge(Acc&& o) {
      checked += o.checked;
      violations += o.violations;
      tight += o.tight;
      if (!first_violation && o.first_violation) first_violation = std::move(o.first_violation);
      if (o.have && (!have || o.min_slack < min_slack)) {
        have = true;
        min_slack = o.min_slack;
        min_graph = std::move(o.min_graph);
      }
    }
  };
  auto evaluate = [&](Acc& a, const MaskList& m) {
    const auto s = mask_shadow_size(m);
    if (s == 0) return;
    const double b = bound_of[s];
    a.fold(m, b - static_cast<double>(m.size()), kBoundTolerance * std::max(1.0, std::abs(b)));
  };

  Acc acc;
  if (rep.engine == Engine::naive) {
    acc = sweep_labeled_reduce<Acc>(
        n, r, family, Acc{}, evaluate, [](Acc& into, Acc&& from) { into.merge(std::move(from)); }, nullptr, opts);
  } else {
    EnumStats stats;
    for (const auto& c : orderly_classes(n, r, family, opts, stats)) evaluate(acc, c.masks);
  }
  rep.checked = acc.checked;
  rep.violations = acc.violations;
  rep.tight = acc.tight;
  rep.min_slack = acc.min_slack;
  rep.min_slack_graph = std::move(acc.min_graph);
  rep.first_violation = std::move(acc.first_violation);
  return rep;
}

// --- on-disk class cache ----------------------------------------------------

std::filesystem::path class_cache_path(const std::filesystem::path& dir, int n, int r, const Family& family,
                                       Engine engine) {
  std::string fam = family.name();
  std::replace(fam.begin(), fam.end(), '(', '-');
  fam.erase(std::remove(fam.begin(), fam.end(), ')'), fam.end());
  return dir / ("classes-n" + std::to_string(n) + "-r" + std::to_string(r) + "-" + fam + "-" + engine_name(engine) +
                "-v" + std::to_string(kCacheVersion) + ".txt");
}

void save_class_cache(const std::filesystem::path& file, const std::vector<CanonicalForm>& forms) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw ResourceError("cannot write cache file " + tmp);
    for (const auto& f : forms) out << f.to_string() << '\n';
    if (!out) throw ResourceError("write failed for cache file " + tmp);
  }
  std::filesystem::rename(tmp, file);
}

std::vector<CanonicalForm> load_class_cache(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ResourceError("cannot read cache file " + file.string());
  std::vector<CanonicalForm> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(CanonicalForm::parse(line));
    } catch (const Error& e) {
      throw ParseError(lineno, 1, std::string("cache entry: ") + e.what());
    }
  }
  if (!std::is_sorted(out.begin(), out.end())) throw ParseError(lineno, 1, "cache entries are not sorted");
  return out;
}

std::vector<CanonicalForm> cached_free_classes(const std::filesystem::path& dir, int n, int r, const Family& family,
                                               const EnumOptions& opts) {
  const auto file = class_cache_path(dir, n, r, family, resolve_engine(n, r, opts));
  if (std::filesystem::exists(file)) return load_class_cache(file);
  auto forms = free_classes(n, r, family, opts);
  save_class_cache(file, forms);
  return forms;
}

}  // namespace shadowlab
