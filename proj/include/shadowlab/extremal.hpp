#pragma once

#include <atomic>
#include <bit>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "shadowlab/errors.hpp"
#include "shadowlab/forbidden.hpp"
#include "shadowlab/hypergraph.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace shadowlab {

/// Edges as 64-bit vertex masks. Numeric order of masks of equal popcount is
/// colex order of the sets.
using MaskList = std::vector<std::uint64_t>;

/// Isomorphism-class label: the sorted edge-mask sequence that is minimal
/// over all vertex relabelings which list vertices by nonincreasing degree.
struct CanonicalForm {
  int n = 0;
  int r = 0;
  MaskList masks;

  Hypergraph graph() const;
  /// "n r m1 m2 ..." with masks in lowercase hex.
  std::string to_string() const;
  static CanonicalForm parse(const std::string& line);

  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
  friend std::strong_ordering operator<=>(const CanonicalForm& a, const CanonicalForm& b);
};

inline constexpr int kDefaultCanonicalCap = 12;

CanonicalForm canonical_form(const Hypergraph& h, int cap = kDefaultCanonicalCap);
CanonicalForm canonical_form(int n, int r, const MaskList& masks, int cap = kDefaultCanonicalCap);

/// True iff the sorted mask list is minimal over every vertex permutation
/// (no degree restriction). This is the acceptance test of orderly generation.
bool is_orderly_canonical(int n, const MaskList& sorted_masks);

enum class Engine { automatic, naive, orderly };
std::string engine_name(Engine e);

struct EnumOptions {
  Engine engine = Engine::automatic;
  /// Naive sweeps need C(n, r) <= this.
  int naive_max_sets = 24;
  int orderly_max_vertices = 8;
  /// Search-tree nodes before ResourceError; 0 = unlimited.
  std::uint64_t node_budget = 0;
  bool parallel = true;
};

struct EnumStats {
  int n = 0;
  int r = 0;
  Family family;
  Engine engine = Engine::naive;
  /// Free labeled graphs seen (naive) or classes generated (orderly).
  std::uint64_t searched = 0;
  std::uint64_t classes = 0;
  std::uint64_t nodes = 0;
  std::size_t max_edges = 0;
};

/// ResourceError that carries the statistics gathered before the budget ran out.
class BudgetExceeded : public ResourceError {
 public:
  BudgetExceeded(const std::string& what, EnumStats partial) : ResourceError(what), partial_(partial) {}
  const EnumStats& partial() const noexcept { return partial_; }

 private:
  EnumStats partial_;
};

/// Picks the engine `automatic` resolves to and validates budgets.
Engine resolve_engine(int n, int r, const EnumOptions& opts);

// --- labeled sweep ----------------------------------------------------------

/// Serial reference: visits every free labeled r-graph on 0..n-1 (as a mask
/// list in increasing mask order), exclusion branch first.
EnumStats sweep_labeled(int n, int r, const Family& family, const std::function<void(const MaskList&)>& visit,
                        const EnumOptions& opts = {});

namespace detail {

struct SweepPlan {
  MaskList sets;             // all r-sets, increasing mask order
  std::size_t split = 0;     // decisions fixed per work item
  std::uint64_t items = 0;   // 2^split
};

struct SweepControl {
  std::atomic<std::uint64_t> nodes{0};
  std::uint64_t budget = 0;
  std::atomic<bool> stop{false};
};

SweepPlan plan_sweep(int n, int r, const EnumOptions& opts);

/// Runs the subtree of work item `prefix`: bit (split-1-i) of prefix is the
/// decision on sets[i]. Visits leaves in serial-sweep order.
void sweep_subtree(int n, int r, const Family& family, const SweepPlan& plan, std::uint64_t prefix,
                   const std::function<void(const MaskList&)>& visit, std::uint64_t& leaves, SweepControl& ctl);

}  // namespace detail

/// Parallel labeled sweep with deterministic reduction. `visit(acc, masks)`
/// folds one graph into a per-work-item accumulator; accumulators are merged
/// with `merge(into, from)` in the order the serial sweep visits them.
/// Throws BudgetExceeded when opts.node_budget runs out.
template <class Acc, class Visit, class Merge>
Acc sweep_labeled_reduce(int n, int r, const Family& family, Acc init, Visit visit, Merge merge,
                         EnumStats* stats = nullptr, const EnumOptions& opts = {}) {
  const auto plan = detail::plan_sweep(n, r, opts);
  const auto items = static_cast<std::int64_t>(plan.items);
  std::vector<Acc> partial(plan.items, init);
  std::vector<std::uint64_t> leaves(plan.items, 0);
  detail::SweepControl ctl;
  ctl.budget = opts.node_budget;
  const bool parallel = opts.parallel;
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (std::int64_t i = 0; i < items; ++i) {
    auto& acc = partial[static_cast<std::size_t>(i)];
    detail::sweep_subtree(
        n, r, family, plan, static_cast<std::uint64_t>(i), [&](const MaskList& m) { visit(acc, m); },
        leaves[static_cast<std::size_t>(i)], ctl);
  }
  EnumStats st;
  st.n = n;
  st.r = r;
  st.family = family;
  st.engine = Engine::naive;
  st.nodes = ctl.nodes.load();
  for (auto l : leaves) st.searched += l;
  if (ctl.stop.load()) throw BudgetExceeded("labeled sweep exceeded the node budget", st);
  Acc total = std::move(init);
  for (auto& p : partial) merge(total, std::move(p));
  if (stats) *stats = st;
  return total;
}

// --- isomorph-free enumeration ---------------------------------------------

/// Every free isomorphism class, sorted by canonical form.
std::vector<CanonicalForm> free_classes(int n, int r, const Family& family, const EnumOptions& opts = {},
                                        EnumStats* stats = nullptr);

/// Orderly generation, serial, in generation (preorder) order; each class
/// reported by its orderly-canonical mask list.
EnumStats orderly_generate(int n, int r, const Family& family, const std::function<void(const MaskList&)>& visit,
                           const EnumOptions& opts = {});

/// Visits one representative per free isomorphism class, in canonical-form
/// order, whichever engine runs.
EnumStats enumerate_free(int n, int r, const Family& family, const std::function<void(const Hypergraph&)>& visit,
                         const EnumOptions& opts = {});

struct ExtremalResult {
  int n = 0;
  int r = 0;
  Family family;
  std::size_t max_edges = 0;
  std::vector<CanonicalForm> extremal_graphs;
  std::uint64_t count_searched = 0;
  bool unique() const { return extremal_graphs.size() == 1; }
};

ExtremalResult extremal_search(int n, int r, const Family& family, const EnumOptions& opts = {});

enum class BoundKind { kruskal_katona, cancellative, expansion };
std::string bound_kind_name(BoundKind k);

struct BoundSweepReport {
  int n = 0;
  int r = 0;
  Family family;
  BoundKind kind = BoundKind::kruskal_katona;
  int ell = 0;
  Engine engine = Engine::naive;
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::uint64_t tight = 0;
  double min_slack = 0.0;
  /// First graph (sweep order) attaining min_slack.
  MaskList min_slack_graph;
  std::optional<MaskList> first_violation;
};

/// Evaluates the named bound on every free graph with a nonempty shadow.
/// `ell` is used by BoundKind::expansion.
BoundSweepReport verify_bound_over_enumeration(int n, int r, const Family& family, BoundKind kind, int ell = 0,
                                               const EnumOptions& opts = {});

// --- on-disk class cache ----------------------------------------------------

inline constexpr int kCacheVersion = 1;

std::filesystem::path class_cache_path(const std::filesystem::path& dir, int n, int r, const Family& family,
                                       Engine engine);
void save_class_cache(const std::filesystem::path& file, const std::vector<CanonicalForm>& forms);
std::vector<CanonicalForm> load_class_cache(const std::filesystem::path& file);
/// Loads from the cache when present, otherwise enumerates and writes it.
std::vector<CanonicalForm> cached_free_classes(const std::filesystem::path& dir, int n, int r, const Family& family,
                                               const EnumOptions& opts = {});

/// Shadow size straight from masks.
std::size_t mask_shadow_size(const MaskList& masks);

}  // namespace shadowlab
