#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ua {

using Element = std::uint32_t;
using Tuple = std::vector<Element>;
using ElementPair = std::pair<Element, Element>;

/// An equivalence relation on {0..n-1}, stored as the array of least block
/// representatives. Two partitions are equal iff their arrays are equal, and
/// the array order is the canonical ordering of partitions.
class Partition {
 public:
  Partition() = default;

  static Partition identity(std::size_t n);
  static Partition universal(std::size_t n);
  /// Kernel of a map: x ~ y iff map[x] == map[y].
  static Partition kernel(std::span<const Element> map);
  /// Finest partition containing the given pairs.
  static Partition generated(std::size_t n, std::span<const ElementPair> pairs);
  static Partition from_blocks(std::size_t n, const std::vector<std::vector<Element>>& blocks);
  /// Throws unless `reps` is already a canonical representative array.
  static Partition from_representatives(std::vector<Element> reps);

  std::size_t size() const { return rep_.size(); }
  Element rep(Element x) const { return rep_[x]; }
  const std::vector<Element>& representatives() const { return rep_; }
  bool related(Element a, Element b) const { return rep_[a] == rep_[b]; }
  /// Componentwise relatedness of two equal-length tuples.
  bool related(std::span<const Element> a, std::span<const Element> b) const;

  std::size_t block_count() const;
  /// Blocks in increasing order of their least element.
  std::vector<std::vector<Element>> blocks() const;
  /// Position of x's block in `blocks()`.
  std::vector<Element> block_index() const;

  bool is_identity() const;
  bool is_universal() const;
  /// this ⊆ other as relations.
  bool refines(const Partition& other) const;

  Partition meet(const Partition& other) const;
  Partition join(const Partition& other) const;

  /// `{0,2,4},{1,3,5}`
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  explicit Partition(std::vector<Element> reps) : rep_(std::move(reps)) {}

  std::vector<Element> rep_;
};

/// Union-find over {0..n-1} that keeps the least element as root.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n);

  Element find(Element x);
  /// Returns false if already in one set.
  bool unite(Element a, Element b);
  Partition partition();

 private:
  std::vector<Element> parent_;
};

/// Every partition of {0..n-1}, by restricted growth strings.
std::vector<Partition> all_partitions(std::size_t n);

}  // namespace ua
