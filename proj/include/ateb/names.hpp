#pragma once

#include <algorithm>
#include <initializer_list>
#include <string>
#include <vector>

namespace ateb {

using Name = std::string;

// Small sorted set of variable names.
class NameSet {
 public:
  NameSet() = default;
  NameSet(std::initializer_list<Name> xs) : v_(xs) { normalize(); }
  explicit NameSet(std::vector<Name> xs) : v_(std::move(xs)) { normalize(); }

  bool empty() const { return v_.empty(); }
  std::size_t size() const { return v_.size(); }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }
  const std::vector<Name>& items() const { return v_; }

  bool contains(const Name& x) const {
    return std::binary_search(v_.begin(), v_.end(), x);
  }
  void insert(const Name& x) {
    auto it = std::lower_bound(v_.begin(), v_.end(), x);
    if (it == v_.end() || *it != x) v_.insert(it, x);
  }
  void erase(const Name& x) {
    auto it = std::lower_bound(v_.begin(), v_.end(), x);
    if (it != v_.end() && *it == x) v_.erase(it);
  }

  NameSet unite(const NameSet& o) const {
    NameSet r;
    std::set_union(v_.begin(), v_.end(), o.v_.begin(), o.v_.end(),
                   std::back_inserter(r.v_));
    return r;
  }
  NameSet minus(const NameSet& o) const {
    NameSet r;
    std::set_difference(v_.begin(), v_.end(), o.v_.begin(), o.v_.end(),
                        std::back_inserter(r.v_));
    return r;
  }
  NameSet intersect(const NameSet& o) const {
    NameSet r;
    std::set_intersection(v_.begin(), v_.end(), o.v_.begin(), o.v_.end(),
                          std::back_inserter(r.v_));
    return r;
  }
  NameSet with(const Name& x) const {
    NameSet r = *this;
    r.insert(x);
    return r;
  }
  NameSet without(const Name& x) const {
    NameSet r = *this;
    r.erase(x);
    return r;
  }
  bool subset_of(const NameSet& o) const {
    return std::includes(o.v_.begin(), o.v_.end(), v_.begin(), v_.end());
  }

  friend bool operator==(const NameSet&, const NameSet&) = default;
  friend auto operator<=>(const NameSet&, const NameSet&) = default;

 private:
  void normalize() {
    std::sort(v_.begin(), v_.end());
    v_.erase(std::unique(v_.begin(), v_.end()), v_.end());
  }
  std::vector<Name> v_;
};

// base1, base2, ... : the first candidate not in `used`.  Trailing digits of
// base are stripped first so repeated renaming does not grow names.
Name fresh_name(const Name& base, const NameSet& used);

// All subsets of a pool, in a fixed order (by bitmask).
std::vector<NameSet> subsets_of(const std::vector<Name>& pool);

}  // namespace ateb
