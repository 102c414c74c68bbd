#pragma once

// The pipeline expression language: a stream source followed by transform
// stages, applied left to right.
//
//   pipeline := term ("|" term)*
//   term     := IDENT ("(" args ")")?
//   args     := arg ("," arg)*
//   arg      := NUMBER | tuple
//   tuple    := "(" NUMBER ("," NUMBER)* ")"
//
// Whitespace is insignificant; decimals use ".". "a | b | c" builds c(b(a)).
//
// Sources: const, rational, uniform, iid, canonicalpt, osc, beta.
// Stages: id, swap2, rev3, shift, prepend, transpose, invert, inc, seven,
// canonical.
//
// Parsing is a hand-written recursive descent (the grammar is LL(1)) with
// exact byte offsets in errors. Name and arity problems are reported at
// resolution, as ResolveError, never as syntax errors.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sadic/stream.hpp"

namespace sadic {

/// A numeric literal. Whether it is an integer is lexical ("3" vs "3.0");
/// resolution uses it to type-check arguments.
class Number {
 public:
  static Number integer(std::int64_t v) { return Number(true, v, double(v)); }
  static Number decimal(double v) { return Number(false, 0, v); }

  bool is_integer() const noexcept { return integral_; }
  std::int64_t as_integer() const {
    if (!integral_) throw std::logic_error("decimal literal used as integer");
    return int_;
  }
  double as_double() const noexcept { return value_; }

  friend bool operator==(const Number& a, const Number& b) {
    if (a.integral_ != b.integral_) return false;
    return a.integral_ ? a.int_ == b.int_ : a.value_ == b.value_;
  }

 private:
  Number(bool integral, std::int64_t i, double v)
      : integral_(integral), int_(i), value_(v) {}
  bool integral_;
  std::int64_t int_;
  double value_;
};

using Tuple = std::vector<Number>;
using Arg = std::variant<Number, Tuple>;

struct Term {
  std::string name;
  std::vector<Arg> args;
  std::size_t offset = 0;  // byte offset in the source text, for diagnostics

  friend bool operator==(const Term& a, const Term& b) {
    return a.name == b.name && a.args == b.args;  // offsets don't matter
  }
};

struct PipelineExpr {
  std::vector<Term> terms;  // terms[0] is the source

  friend bool operator==(const PipelineExpr& a, const PipelineExpr& b) {
    return a.terms == b.terms;
  }
};

/// Syntax error: where it happened, what was expected, what was found.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, std::string expected, std::string found);

  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  std::size_t offset_;
  std::string expected_;
  std::string found_;
};

/// Name, arity, or argument-type error raised while turning an expression
/// into a runnable stream.
class ResolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses the text or throws ParseError.
PipelineExpr parse(std::string_view text);

/// Canonical pretty-printed form; parse(to_text(e)) == e.
std::string to_text(const PipelineExpr& expr);

struct ResolveOptions {
  /// Replaces the seed argument of pseudorandom sources when set.
  std::optional<std::uint64_t> seed_override;
};

/// Builds the runnable stream: the source, with every stage applied in
/// order. Throws ResolveError for unknown names, arity, or argument types;
/// stage construction and application errors propagate unchanged.
DigitStream resolve(const PipelineExpr& expr, const ResolveOptions& options = {});

/// Convenience: parse then resolve.
DigitStream run_pipeline(std::string_view text, const ResolveOptions& options = {});

}  // namespace sadic
