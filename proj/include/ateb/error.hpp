#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace ateb {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : std::runtime_error(msg + " at " + std::to_string(line) + ":" +
                           std::to_string(column)),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Raised when an operation is applied outside its domain (e.g. a
// re-indexing function on a term that still carries a lift).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class FuelExhausted : public std::runtime_error {
 public:
  explicit FuelExhausted(const std::string& what, long fuel)
      : std::runtime_error(what), fuel_(fuel) {}
  long fuel() const { return fuel_; }

 private:
  long fuel_;
};

enum class TypeErrorKind { Unbound, Mismatch, Unannotated, SideCondition, Shape };

struct TypeError {
  TypeErrorKind kind = TypeErrorKind::Mismatch;
  std::string message;
};

// Either a value or a type error.  Type errors are expected outcomes when
// enumerating candidate terms, so they are not thrown.
template <class T>
class Checked {
 public:
  Checked(T value) : v_(std::move(value)) {}  // NOLINT
  Checked(TypeError err) : v_(std::move(err)) {}  // NOLINT

  bool ok() const { return v_.index() == 0; }
  explicit operator bool() const { return ok(); }
  const T& value() const { return std::get<0>(v_); }
  T& value() { return std::get<0>(v_); }
  const T& operator*() const { return value(); }
  const T* operator->() const { return &value(); }
  const TypeError& error() const { return std::get<1>(v_); }

 private:
  std::variant<T, TypeError> v_;
};

inline TypeError type_error(TypeErrorKind k, std::string msg) {
  return TypeError{k, std::move(msg)};
}

}  // namespace ateb
