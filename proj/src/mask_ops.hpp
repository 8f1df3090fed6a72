#pragma once

// Uniform helpers so kernels can run on 64-bit masks (n <= 64) or VertexSet.

#include <bit>
#include <cstdint>

#include "shadowlab/vertex_set.hpp"

namespace shadowlab::detail {

inline bool subset(std::uint64_t a, std::uint64_t b) noexcept { return (a & ~b) == 0; }
inline bool subset(const VertexSet& a, const VertexSet& b) noexcept { return a.is_subset_of(b); }

inline int count(std::uint64_t a) noexcept { return std::popcount(a); }
inline int count(const VertexSet& a) noexcept { return a.size(); }

inline bool none(std::uint64_t a) noexcept { return a == 0; }
inline bool none(const VertexSet& a) noexcept { return a.empty(); }

inline int lowest(std::uint64_t a) noexcept { return a ? std::countr_zero(a) : -1; }
inline int lowest(const VertexSet& a) noexcept { return a.min(); }

inline std::uint64_t with(std::uint64_t a, int v) noexcept { return a | (std::uint64_t{1} << v); }
inline VertexSet with(VertexSet a, int v) {
  a.insert(v);
  return a;
}

/// Members strictly greater than w.
inline std::uint64_t above(std::uint64_t a, int w) noexcept {
  return w >= 63 ? 0 : (a & (~std::uint64_t{0} << (w + 1)));
}
inline VertexSet above(const VertexSet& a, int w) {
  VertexSet out = a;
  for (int v = 0; v <= w && v <= a.max(); ++v) out.erase(v);
  return out;
}

template <class F>
void for_each_bit(std::uint64_t a, F&& f) {
  while (a) {
    f(std::countr_zero(a));
    a &= a - 1;
  }
}
template <class F>
void for_each_bit(const VertexSet& a, F&& f) {
  a.for_each(f);
}

inline std::uint64_t to_mask(const VertexSet& s) noexcept { return s.low_word(); }

}  // namespace shadowlab::detail
