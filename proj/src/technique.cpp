#include "ateb/technique.hpp"

#include <algorithm>

namespace ateb::technique {

namespace {
constexpr std::size_t kWitnesses = 5;
}

std::string Record::line() const {
  std::string s = (ok ? "ok   " : "FAIL ") + term;
  for (const auto& [name, verdict] : checks) s += "  " + name + "=" + verdict;
  return s;
}

void Report::add(Record r) {
  ++terms;
  if (!r.ok) {
    ++failures;
    if (failed.size() < kWitnesses) failed.push_back(r);
  }
  if (keep_all) all.push_back(std::move(r));
}

void Report::count(const std::string& name, std::size_t n) {
  auto it = std::find_if(counters.begin(), counters.end(),
                         [&](const auto& c) { return c.first == name; });
  if (it == counters.end())
    counters.emplace_back(name, n);
  else
    it->second += n;
}

std::size_t Report::counter(const std::string& name) const {
  for (const auto& [k, v] : counters)
    if (k == name) return v;
  return 0;
}

void Report::merge(const Report& o) {
  terms += o.terms;
  failures += o.failures;
  for (const auto& r : o.failed)
    if (failed.size() < kWitnesses) failed.push_back(r);
  all.insert(all.end(), o.all.begin(), o.all.end());
  for (const auto& [k, v] : o.counters) count(k, v);
}

std::string Report::summary() const {
  std::string s = pipeline + ": " + std::to_string(terms) + " terms, " +
                  std::to_string(failures) + " failures";
  for (const auto& [k, v] : counters) s += ", " + std::to_string(v) + " " + k;
  return s;
}

}  // namespace ateb::technique
