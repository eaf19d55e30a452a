#include "ateb/names.hpp"

#include <cctype>

namespace ateb {

Name fresh_name(const Name& base, const NameSet& used) {
  Name stem = base;
  while (stem.size() > 1 && std::isdigit(static_cast<unsigned char>(stem.back())))
    stem.pop_back();
  for (unsigned k = 1;; ++k) {
    Name cand = stem + std::to_string(k);
    if (!used.contains(cand)) return cand;
  }
}

std::vector<NameSet> subsets_of(const std::vector<Name>& pool) {
  std::vector<NameSet> out;
  for (unsigned mask = 0; mask < (1u << pool.size()); ++mask) {
    NameSet s;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (mask & (1u << i)) s.insert(pool[i]);
    out.push_back(s);
  }
  return out;
}

}  // namespace ateb
