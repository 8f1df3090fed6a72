#include "shadowlab/vertex_set.hpp"

#include <algorithm>
#include <functional>

#include "shadowlab/errors.hpp"

namespace shadowlab {

VertexSet::VertexSet(int universe, std::initializer_list<Vertex> members) : VertexSet(universe) {
  for (Vertex v : members) insert(v);
}

VertexSet VertexSet::full(int n) {
  VertexSet s(n);
  for (std::size_t w = 0; w < s.words_.size(); ++w) {
    const int remaining = n - static_cast<int>(w) * kWordBits;
    s.words_[w] = remaining >= kWordBits ? ~Word{0} : ((Word{1} << remaining) - 1);
  }
  return s;
}

void VertexSet::insert(Vertex v) {
  if (v < 0) throw ParameterError("negative vertex " + std::to_string(v));
  const auto w = static_cast<std::size_t>(v) / kWordBits;
  grow_to(w + 1);
  words_[w] |= Word{1} << (static_cast<unsigned>(v) % kWordBits);
}

void VertexSet::erase(Vertex v) {
  if (v < 0) return;
  const auto w = static_cast<std::size_t>(v) / kWordBits;
  if (w < words_.size()) words_[w] &= ~(Word{1} << (static_cast<unsigned>(v) % kWordBits));
}

int VertexSet::size() const noexcept {
  int c = 0;
  for (Word w : words_) c += std::popcount(w);
  return c;
}

bool VertexSet::empty() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

Vertex VertexSet::min() const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w]) return static_cast<Vertex>(w * kWordBits + std::countr_zero(words_[w]));
  return -1;
}

Vertex VertexSet::max() const noexcept {
  for (std::size_t w = words_.size(); w-- > 0;)
    if (words_[w])
      return static_cast<Vertex>(w * kWordBits + (kWordBits - 1 - std::countl_zero(words_[w])));
  return -1;
}

std::vector<Vertex> VertexSet::elements() const {
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(size()));
  for_each([&](Vertex v) { out.push_back(v); });
  return out;
}

bool VertexSet::is_subset_of(const VertexSet& other) const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w] & ~other.word(w)) return false;
  return true;
}

bool VertexSet::intersects(const VertexSet& other) const noexcept {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t w = 0; w < n; ++w)
    if (words_[w] & other.words_[w]) return true;
  return false;
}

VertexSet& VertexSet::operator|=(const VertexSet& o) {
  grow_to(o.words_.size());
  for (std::size_t w = 0; w < o.words_.size(); ++w) words_[w] |= o.words_[w];
  return *this;
}

VertexSet& VertexSet::operator&=(const VertexSet& o) {
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.word(w);
  return *this;
}

VertexSet& VertexSet::operator^=(const VertexSet& o) {
  grow_to(o.words_.size());
  for (std::size_t w = 0; w < o.words_.size(); ++w) words_[w] ^= o.words_[w];
  return *this;
}

VertexSet& VertexSet::operator-=(const VertexSet& o) {
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~o.word(w);
  return *this;
}

bool operator==(const VertexSet& a, const VertexSet& b) noexcept {
  const std::size_t n = std::max(a.words_.size(), b.words_.size());
  for (std::size_t w = 0; w < n; ++w)
    if (a.word(w) != b.word(w)) return false;
  return true;
}

std::strong_ordering operator<=>(const VertexSet& a, const VertexSet& b) noexcept {
  // The first member of the symmetric difference decides, unless the other
  // set has run out of members by then (it is then a proper prefix).
  const std::size_t n = std::max(a.words_.size(), b.words_.size());
  for (std::size_t w = 0; w < n; ++w) {
    const VertexSet::Word diff = a.word(w) ^ b.word(w);
    if (!diff) continue;
    const int bit = std::countr_zero(diff);
    const bool in_a = (a.word(w) >> bit) & 1U;
    const VertexSet& other = in_a ? b : a;
    const VertexSet::Word above = bit == 63 ? 0 : (~VertexSet::Word{0} << (bit + 1));
    bool other_continues = (other.word(w) & above) != 0;
    for (std::size_t k = w + 1; !other_continues && k < n; ++k) other_continues = other.word(k) != 0;
    const bool a_less = in_a == other_continues;
    return a_less ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::size_t VertexSet::hash() const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  std::size_t last = words_.size();
  while (last > 0 && words_[last - 1] == 0) --last;
  for (std::size_t w = 0; w < last; ++w)
    h ^= std::hash<Word>{}(words_[w]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::string VertexSet::to_string() const {
  std::string s = "{";
  bool first = true;
  for_each([&](Vertex v) {
    if (!first) s += ',';
    s += std::to_string(v);
    first = false;
  });
  s += '}';
  return s;
}

}  // namespace shadowlab
