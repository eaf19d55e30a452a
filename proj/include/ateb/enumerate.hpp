#pragma once

#include <functional>
#include <vector>

#include "ateb/tree.hpp"
#include "ateb/types.hpp"

namespace ateb {

// Runs gen(k, pools, emit) for k = 1..max_size.  Terms of size below
// max_size are kept in pools (gen builds bigger terms from them); terms of
// the largest size are streamed straight to visit.
template <class T, class Gen>
void enumerate_sized(int max_size, Gen&& gen, const std::function<void(const T&)>& visit) {
  std::vector<std::vector<T>> pools(static_cast<std::size_t>(max_size) + 1);
  for (int k = 1; k <= max_size; ++k) {
    if (k < max_size) {
      auto& pk = pools[static_cast<std::size_t>(k)];
      gen(k, pools, [&](const T& t) { pk.push_back(t); });
      for (const auto& t : pk) visit(t);
    } else {
      gen(k, pools, [&](const T& t) { visit(t); });
    }
  }
}

// Pairs of sizes (a, b) with a + b == total, a, b >= 1.
template <class F>
void split2(int total, F&& f) {
  for (int a = 1; a < total; ++a) f(a, total - a);
}

namespace detail {

template <class K>
std::vector<Tree<K>> annotated_variants(const Tree<K>& t, const std::function<bool(K)>& is_binder) {
  std::vector<Tree<K>> acc{t};
  for (std::size_t i = 0; i < t.arity(); ++i) {
    auto kv = annotated_variants(t.kid(i), is_binder);
    std::vector<Tree<K>> next;
    next.reserve(acc.size() * kv.size());
    for (const auto& a : acc)
      for (const auto& k : kv) next.push_back(a.with_kid(i, k));
    acc = std::move(next);
  }
  if (!is_binder(t.kind())) return acc;
  std::vector<Tree<K>> out;
  out.reserve(acc.size() * sample_types().size());
  for (const auto& a : acc)
    for (const auto& ty : sample_types()) {
      auto f = a.fields();
      f.annot = ty;
      out.push_back(a.with_fields(f));
    }
  return out;
}

}  // namespace detail

// Every annotation of the binders of t drawn from sample_types().
template <class K>
void annotate_binders(const Tree<K>& t, const std::function<bool(K)>& is_binder,
                      const std::function<void(const Tree<K>&)>& visit) {
  for (const auto& v : detail::annotated_variants(t, is_binder)) visit(v);
}

}  // namespace ateb
