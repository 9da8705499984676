#pragma once

#include <string>
#include <vector>

namespace ua {

/// One named verdict with the finite witness that explains it.
struct CheckRecord {
  std::string name;
  bool passed = false;
  std::string witness;
};

struct CheckReport {
  std::vector<CheckRecord> records;

  void add(std::string name, bool passed, std::string witness = {}) {
    records.push_back({std::move(name), passed, std::move(witness)});
  }
  void append(const CheckReport& other) {
    records.insert(records.end(), other.records.begin(), other.records.end());
  }
  bool passed() const {
    for (const auto& r : records)
      if (!r.passed) return false;
    return true;
  }
  const CheckRecord* find(const std::string& name) const {
    for (const auto& r : records)
      if (r.name == name) return &r;
    return nullptr;
  }
};

}  // namespace ua
