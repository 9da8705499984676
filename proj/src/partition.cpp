#include "ua/partition.hpp"

#include <algorithm>

#include "ua/error.hpp"

namespace ua {

DisjointSets::DisjointSets(std::size_t n) : parent_(n) {
  for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<Element>(i);
}

Element DisjointSets::find(Element x) {
  Element root = x;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[x] != root) {
    Element next = parent_[x];
    parent_[x] = root;
    x = next;
  }
  return root;
}

bool DisjointSets::unite(Element a, Element b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (a < b)
    parent_[b] = a;
  else
    parent_[a] = b;
  return true;
}

Partition DisjointSets::partition() {
  std::vector<Element> reps(parent_.size());
  for (std::size_t i = 0; i < parent_.size(); ++i) reps[i] = find(static_cast<Element>(i));
  return Partition::from_representatives(std::move(reps));
}

Partition Partition::identity(std::size_t n) {
  std::vector<Element> reps(n);
  for (std::size_t i = 0; i < n; ++i) reps[i] = static_cast<Element>(i);
  return Partition(std::move(reps));
}

Partition Partition::universal(std::size_t n) { return Partition(std::vector<Element>(n, 0)); }

Partition Partition::kernel(std::span<const Element> map) {
  std::vector<Element> reps(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    reps[i] = static_cast<Element>(i);
    for (std::size_t j = 0; j < i; ++j) {
      if (map[j] == map[i]) {
        reps[i] = reps[j];
        break;
      }
    }
  }
  return Partition(std::move(reps));
}

Partition Partition::generated(std::size_t n, std::span<const ElementPair> pairs) {
  DisjointSets sets(n);
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n) throw PreconditionError("pair element out of range");
    sets.unite(a, b);
  }
  return sets.partition();
}

Partition Partition::from_blocks(std::size_t n, const std::vector<std::vector<Element>>& blocks) {
  DisjointSets sets(n);
  std::vector<bool> seen(n, false);
  for (const auto& block : blocks) {
    for (Element x : block) {
      if (x >= n) throw PreconditionError("block element out of range");
      if (seen[x]) throw PreconditionError("element " + std::to_string(x) + " in two blocks");
      seen[x] = true;
      sets.unite(block.front(), x);
    }
  }
  return sets.partition();
}

Partition Partition::from_representatives(std::vector<Element> reps) {
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (reps[i] > i || reps[reps[i]] != reps[i])
      throw PreconditionError("not a canonical representative array");
  }
  return Partition(std::move(reps));
}

bool Partition::related(std::span<const Element> a, std::span<const Element> b) const {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!related(a[i], b[i])) return false;
  return true;
}

std::size_t Partition::block_count() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < rep_.size(); ++i)
    if (rep_[i] == i) ++count;
  return count;
}

std::vector<std::vector<Element>> Partition::blocks() const {
  std::vector<std::vector<Element>> out;
  auto index = block_index();
  out.resize(block_count());
  for (std::size_t i = 0; i < rep_.size(); ++i) out[index[i]].push_back(static_cast<Element>(i));
  return out;
}

std::vector<Element> Partition::block_index() const {
  std::vector<Element> index(rep_.size());
  Element next = 0;
  for (std::size_t i = 0; i < rep_.size(); ++i) index[i] = rep_[i] == i ? next++ : index[rep_[i]];
  return index;
}

bool Partition::is_identity() const {
  for (std::size_t i = 0; i < rep_.size(); ++i)
    if (rep_[i] != i) return false;
  return true;
}

bool Partition::is_universal() const {
  return std::all_of(rep_.begin(), rep_.end(), [](Element r) { return r == 0; });
}

bool Partition::refines(const Partition& other) const {
  if (size() != other.size()) return false;
  for (std::size_t i = 0; i < rep_.size(); ++i)
    if (!other.related(static_cast<Element>(i), rep_[i])) return false;
  return true;
}

Partition Partition::meet(const Partition& other) const {
  if (size() != other.size()) throw PreconditionError("meet of partitions of different sizes");
  std::vector<Element> reps(size());
  for (std::size_t i = 0; i < size(); ++i) {
    reps[i] = static_cast<Element>(i);
    for (std::size_t j = 0; j < i; ++j) {
      if (rep_[j] == rep_[i] && other.rep_[j] == other.rep_[i]) {
        reps[i] = reps[j];
        break;
      }
    }
  }
  return Partition(std::move(reps));
}

Partition Partition::join(const Partition& other) const {
  if (size() != other.size()) throw PreconditionError("join of partitions of different sizes");
  DisjointSets sets(size());
  for (std::size_t i = 0; i < size(); ++i) {
    sets.unite(static_cast<Element>(i), rep_[i]);
    sets.unite(static_cast<Element>(i), other.rep_[i]);
  }
  return sets.partition();
}

std::string Partition::to_string() const {
  std::string out;
  for (const auto& block : blocks()) {
    if (!out.empty()) out += ",";
    out += "{";
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(block[i]);
    }
    out += "}";
  }
  return out;
}

std::vector<Partition> all_partitions(std::size_t n) {
  std::vector<Partition> out;
  if (n == 0) return out;
  std::vector<Element> growth(n, 0), peak(n, 0);  // peak[i] = max of growth[0..i]
  for (;;) {
    std::vector<Element> first(n, 0), reps(n, 0);
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      if (!seen[growth[i]]) {
        seen[growth[i]] = true;
        first[growth[i]] = static_cast<Element>(i);
      }
      reps[i] = first[growth[i]];
    }
    out.push_back(Partition::from_representatives(std::move(reps)));
    std::size_t i = n - 1;
    while (i > 0 && growth[i] > peak[i - 1]) --i;
    if (i == 0) break;
    ++growth[i];
    peak[i] = std::max(peak[i - 1], growth[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      growth[j] = 0;
      peak[j] = peak[i];
    }
  }
  return out;
}

}  // namespace ua
