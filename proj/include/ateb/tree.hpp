#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ateb/names.hpp"
#include "ateb/types.hpp"

namespace ateb {

using Path = std::vector<std::uint8_t>;

std::string path_to_string(const Path& p);

// Immutable syntax node shared by every calculus.  Each calculus picks its
// own Kind enum and uses the payload fields it needs: `num` for De Bruijn
// indices (and sort tags), `name` for variables and binders, `annot` for
// binder types, `set_a`/`set_b` for weakening sets.
template <class Kind>
class Tree {
 public:
  struct Fields {
    std::uint32_t num = 0;
    Name name;
    Type annot;
    NameSet set_a;
    NameSet set_b;
  };

  Tree() = default;

  static Tree make(Kind k, Fields f, std::vector<Tree> kids = {}) {
    auto r = std::make_shared<Rep>();
    r->kind = k;
    r->f = std::move(f);
    r->kids = std::move(kids);
    std::size_t sz = 1;
    std::size_t h = std::hash<int>()(static_cast<int>(k)) * 1000003u ^ r->f.num;
    h = h * 31 + std::hash<std::string>()(r->f.name);
    for (const auto& x : r->f.set_a) h = h * 131 + std::hash<std::string>()(x);
    for (const auto& x : r->f.set_b) h = h * 137 + std::hash<std::string>()(x);
    for (const auto& c : r->kids) {
      sz += c.size();
      h = h * 1000003u + c.hash();
    }
    r->size = sz;
    r->hash = h;
    Tree t;
    t.rep_ = std::move(r);
    return t;
  }

  explicit operator bool() const { return rep_ != nullptr; }
  Kind kind() const { return rep_->kind; }
  std::uint32_t num() const { return rep_->f.num; }
  const Name& name() const { return rep_->f.name; }
  const Type& annot() const { return rep_->f.annot; }
  const NameSet& set_a() const { return rep_->f.set_a; }
  const NameSet& set_b() const { return rep_->f.set_b; }
  const Fields& fields() const { return rep_->f; }
  std::span<const Tree> kids() const { return rep_->kids; }
  const Tree& kid(std::size_t i) const { return rep_->kids[i]; }
  std::size_t arity() const { return rep_->kids.size(); }
  // Number of nodes, counting substitution nodes.
  std::size_t size() const { return rep_->size; }
  // Structural hash, ignoring annotations.
  std::size_t hash() const { return rep_->hash; }
  const void* identity() const { return rep_.get(); }

  Tree with_kid(std::size_t i, Tree k) const {
    std::vector<Tree> ks = rep_->kids;
    ks[i] = std::move(k);
    return make(rep_->kind, rep_->f, std::move(ks));
  }
  Tree with_fields(Fields f) const { return make(rep_->kind, std::move(f), rep_->kids); }

  // Syntactic equality, annotations included.
  friend bool operator==(const Tree& a, const Tree& b) {
    if (a.rep_ == b.rep_) return true;
    if (!a.rep_ || !b.rep_) return false;
    if (a.rep_->hash != b.rep_->hash || a.rep_->size != b.rep_->size) return false;
    const auto& x = *a.rep_;
    const auto& y = *b.rep_;
    if (x.kind != y.kind || x.f.num != y.f.num || x.f.name != y.f.name ||
        x.f.annot != y.f.annot || x.f.set_a != y.f.set_a || x.f.set_b != y.f.set_b ||
        x.kids.size() != y.kids.size())
      return false;
    for (std::size_t i = 0; i < x.kids.size(); ++i)
      if (!(x.kids[i] == y.kids[i])) return false;
    return true;
  }

 private:
  struct Rep {
    Kind kind{};
    Fields f;
    std::vector<Tree> kids;
    std::size_t size = 1;
    std::size_t hash = 0;
  };
  std::shared_ptr<const Rep> rep_;
};

template <class Kind>
const Tree<Kind>& subterm_at(const Tree<Kind>& t, const Path& p) {
  const Tree<Kind>* cur = &t;
  for (auto i : p) cur = &cur->kid(i);
  return *cur;
}

template <class Kind>
Tree<Kind> replace_at(const Tree<Kind>& t, const Path& p, const Tree<Kind>& s,
                      std::size_t depth = 0) {
  if (depth == p.size()) return s;
  return t.with_kid(p[depth], replace_at(t.kid(p[depth]), p, s, depth + 1));
}

template <class Kind>
bool has_kind(const Tree<Kind>& t, const std::function<bool(Kind)>& pred) {
  if (pred(t.kind())) return true;
  for (const auto& k : t.kids())
    if (has_kind(k, pred)) return true;
  return false;
}

template <class Kind>
std::size_t count_kind(const Tree<Kind>& t, const std::function<bool(Kind)>& pred) {
  std::size_t n = pred(t.kind()) ? 1 : 0;
  for (const auto& k : t.kids()) n += count_kind(k, pred);
  return n;
}

// Every name mentioned anywhere in the tree (binders, variables, sets).
template <class Kind>
void collect_names(const Tree<Kind>& t, NameSet& out) {
  if (!t.name().empty()) out.insert(t.name());
  for (const auto& x : t.set_a()) out.insert(x);
  for (const auto& x : t.set_b()) out.insert(x);
  for (const auto& k : t.kids()) collect_names(k, out);
}

template <class Kind>
NameSet all_names(const Tree<Kind>& t) {
  NameSet out;
  collect_names(t, out);
  return out;
}

}  // namespace ateb
