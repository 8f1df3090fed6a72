#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace shadowlab {

using Vertex = int;

/// Dense bit-indexed subset of 0..n-1. Two words are stored inline, so every
/// set over a ground set of at most 128 vertices lives without allocation;
/// larger ground sets spill to the heap transparently.
///
/// Sets over different ground-set sizes compare and combine as if the shorter
/// one were zero extended.
class VertexSet {
 public:
  using Word = std::uint64_t;
  static constexpr int kWordBits = 64;

  VertexSet() = default;
  explicit VertexSet(int universe) : words_(words_for(universe), 0) {}
  VertexSet(int universe, std::initializer_list<Vertex> members);

  template <class Range>
  static VertexSet from_range(int universe, const Range& members) {
    VertexSet s(universe);
    for (Vertex v : members) s.insert(v);
    return s;
  }

  /// The set {0, ..., n-1}.
  static VertexSet full(int n);

  void insert(Vertex v);
  void erase(Vertex v);
  bool contains(Vertex v) const noexcept {
    const auto w = static_cast<std::size_t>(v) / kWordBits;
    return w < words_.size() && ((words_[w] >> (static_cast<unsigned>(v) % kWordBits)) & 1U);
  }

  int size() const noexcept;
  bool empty() const noexcept;
  /// Smallest member, or -1 when empty.
  Vertex min() const noexcept;
  /// Largest member, or -1 when empty.
  Vertex max() const noexcept;

  std::vector<Vertex> elements() const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits) {
        const int b = std::countr_zero(bits);
        f(static_cast<Vertex>(w * kWordBits + b));
        bits &= bits - 1;
      }
    }
  }

  bool is_subset_of(const VertexSet& other) const noexcept;
  bool intersects(const VertexSet& other) const noexcept;

  VertexSet& operator|=(const VertexSet& o);
  VertexSet& operator&=(const VertexSet& o);
  VertexSet& operator^=(const VertexSet& o);
  VertexSet& operator-=(const VertexSet& o);

  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator^(VertexSet a, const VertexSet& b) { return a ^= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

  friend bool operator==(const VertexSet& a, const VertexSet& b) noexcept;
  /// Lexicographic order of the ascending member sequences.
  friend std::strong_ordering operator<=>(const VertexSet& a, const VertexSet& b) noexcept;

  /// Low 64 bits; exact whenever every member is < 64.
  Word low_word() const noexcept { return words_.empty() ? 0 : words_[0]; }
  std::size_t word_count() const noexcept { return words_.size(); }
  Word word(std::size_t i) const noexcept { return i < words_.size() ? words_[i] : 0; }

  std::size_t hash() const noexcept;
  /// "{0,2,5}"
  std::string to_string() const;

 private:
  static std::size_t words_for(int universe) {
    return universe <= 0 ? 0 : (static_cast<std::size_t>(universe) + kWordBits - 1) / kWordBits;
  }
  void grow_to(std::size_t nwords) {
    if (words_.size() < nwords) words_.resize(nwords, 0);
  }
  void trim() noexcept {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
  }

  boost::container::small_vector<Word, 2> words_;
};

struct VertexSetHash {
  std::size_t operator()(const VertexSet& s) const noexcept { return s.hash(); }
};

}  // namespace shadowlab
