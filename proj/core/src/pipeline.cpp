#include "sadic/pipeline.hpp"

#include <cctype>
#include <charconv>
#include <utility>

#include "sadic/generators.hpp"
#include "sadic/rational.hpp"
#include "sadic/transforms.hpp"

namespace sadic {

namespace {

std::string describe_position(std::string_view text, std::size_t pos) {
  if (pos >= text.size()) return "end of input";
  return "'" + std::string(1, text[pos]) + "'";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  PipelineExpr parse_pipeline() {
    PipelineExpr expr;
    expr.terms.push_back(parse_term());
    skip_ws();
    while (pos_ < text_.size()) {
      if (text_[pos_] != '|') {
        throw ParseError(pos_, "'|' or end of input",
                         describe_position(text_, pos_));
      }
      ++pos_;
      expr.terms.push_back(parse_term());
      skip_ws();
    }
    return expr;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c));
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  Term parse_term() {
    skip_ws();
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) {
      throw ParseError(pos_, "a name", describe_position(text_, pos_));
    }
    Term term;
    term.offset = pos_;
    const std::size_t begin = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    term.name = std::string(text_.substr(begin, pos_ - begin));

    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      term.args.push_back(parse_arg());
      skip_ws();
      while (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        term.args.push_back(parse_arg());
        skip_ws();
      }
      expect(')');
    }
    return term;
  }

  Arg parse_arg() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') return parse_tuple();
    return parse_number();
  }

  Tuple parse_tuple() {
    expect('(');
    Tuple tuple;
    tuple.push_back(parse_number());
    skip_ws();
    while (pos_ < text_.size() && text_[pos_] == ',') {
      ++pos_;
      tuple.push_back(parse_number());
      skip_ws();
    }
    expect(')');
    return tuple;
  }

  Number parse_number() {
    skip_ws();
    const std::size_t begin = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    const std::size_t digits_begin = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (pos_ == digits_begin) {
      throw ParseError(pos_, "a number", describe_position(text_, pos_));
    }
    bool integral = true;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      integral = false;
      ++pos_;
      const std::size_t frac_begin = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      if (pos_ == frac_begin) {
        throw ParseError(pos_, "digits after '.'",
                         describe_position(text_, pos_));
      }
    }
    const std::string_view token = text_.substr(begin, pos_ - begin);
    if (integral) {
      std::int64_t value = 0;
      const auto [ptr, ec] =
          std::from_chars(token.begin(), token.end(), value);
      if (ec != std::errc{} || ptr != token.end()) {
        throw ParseError(begin, "an integer in 64-bit range",
                         "'" + std::string(token) + "'");
      }
      return Number::integer(value);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.begin(), token.end(), value);
    if (ec != std::errc{} || ptr != token.end()) {
      throw ParseError(begin, "a representable decimal",
                       "'" + std::string(token) + "'");
    }
    return Number::decimal(value);
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      throw ParseError(pos_, std::string("'") + c + "'",
                       describe_position(text_, pos_));
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void print_number(std::string& out, const Number& n) {
  char buf[32];
  if (n.is_integer()) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), n.as_integer());
    out.append(buf, ptr);
    return;
  }
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), n.as_double());
  std::string_view printed(buf, ptr);
  out.append(printed);
  // Keep decimal literals lexically decimal so the round trip is stable.
  if (printed.find('.') == std::string_view::npos &&
      printed.find('e') == std::string_view::npos &&
      printed.find("inf") == std::string_view::npos &&
      printed.find("nan") == std::string_view::npos) {
    out += ".0";
  }
}

// --- resolution ------------------------------------------------------------

[[noreturn]] void fail(const Term& term, const std::string& what) {
  throw ResolveError("term '" + term.name + "' at offset " +
                     std::to_string(term.offset) + ": " + what);
}

void need_arity(const Term& term, std::size_t min, std::size_t max) {
  if (term.args.size() < min || term.args.size() > max) {
    if (min == max) {
      fail(term, "expects " + std::to_string(min) + " argument(s), got " +
                     std::to_string(term.args.size()));
    }
    fail(term, "expects between " + std::to_string(min) + " and " +
                   std::to_string(max) + " arguments, got " +
                   std::to_string(term.args.size()));
  }
}

const Number& need_number(const Term& term, std::size_t i) {
  if (const auto* n = std::get_if<Number>(&term.args[i])) return *n;
  fail(term, "argument " + std::to_string(i + 1) + " must be a number");
}

std::int64_t need_integer(const Term& term, std::size_t i) {
  const Number& n = need_number(term, i);
  if (!n.is_integer()) {
    fail(term, "argument " + std::to_string(i + 1) + " must be an integer");
  }
  return n.as_integer();
}

std::int64_t need_nonnegative(const Term& term, std::size_t i) {
  const std::int64_t v = need_integer(term, i);
  if (v < 0) {
    fail(term, "argument " + std::to_string(i + 1) + " must be >= 0");
  }
  return v;
}

double need_real(const Term& term, std::size_t i) {
  return need_number(term, i).as_double();
}

FrequencyVector need_frequencies(const Term& term, std::size_t i) {
  const auto* tuple = std::get_if<Tuple>(&term.args[i]);
  if (!tuple) {
    fail(term, "argument " + std::to_string(i + 1) +
                   " must be a tuple of frequencies");
  }
  std::vector<double> tau;
  tau.reserve(tuple->size());
  for (const Number& n : *tuple) tau.push_back(n.as_double());
  return FrequencyVector(std::move(tau));
}

std::uint64_t seed_argument(const Term& term, std::size_t i,
                            const ResolveOptions& options) {
  if (options.seed_override) return *options.seed_override;
  return static_cast<std::uint64_t>(need_nonnegative(term, i));
}

Alphabet radix_argument(const Term& term, std::size_t i) {
  const std::int64_t s = need_integer(term, i);
  if (s < static_cast<std::int64_t>(kMinRadix) ||
      s > static_cast<std::int64_t>(kMaxRadix)) {
    fail(term, "radix must be in [" + std::to_string(kMinRadix) + ", " +
                   std::to_string(kMaxRadix) + "]");
  }
  return Alphabet(static_cast<std::uint32_t>(s));
}

DigitStream build_source(const Term& term, const ResolveOptions& options) {
  if (term.name == "const") {
    need_arity(term, 1, 2);
    const std::int64_t digit = need_nonnegative(term, 0);
    const Alphabet a =
        term.args.size() == 2 ? radix_argument(term, 1) : Alphabet::ternary();
    return constant_stream(a, static_cast<std::uint32_t>(digit));
  }
  if (term.name == "rational") {
    need_arity(term, 2, 3);
    const std::int64_t p = need_nonnegative(term, 0);
    const std::int64_t q = need_nonnegative(term, 1);
    const Alphabet a =
        term.args.size() == 3 ? radix_argument(term, 2) : Alphabet::ternary();
    return expand_rational(Rational(static_cast<std::uint64_t>(p),
                                    static_cast<std::uint64_t>(q)),
                           a);
  }
  if (term.name == "uniform") {
    need_arity(term, 2, 2);
    return uniform_stream(radix_argument(term, 0),
                          seed_argument(term, 1, options));
  }
  if (term.name == "iid") {
    need_arity(term, 2, 2);
    return iid_stream(need_frequencies(term, 0),
                      seed_argument(term, 1, options));
  }
  if (term.name == "canonicalpt") {
    need_arity(term, 1, 2);
    const WeightKind weight = term.args.size() == 2
                                  ? WeightKind::power(need_real(term, 1))
                                  : WeightKind::linear();
    return canonical_be_point(need_frequencies(term, 0), weight);
  }
  if (term.name == "osc") {
    need_arity(term, 1, 1);
    return oscillating_stream(need_real(term, 0));
  }
  if (term.name == "beta") {
    need_arity(term, 0, 0);
    return beta_stream();
  }
  fail(term, "unknown source");
}

Transform build_stage(const Term& term) {
  if (term.name == "id") {
    need_arity(term, 0, 0);
    return identity();
  }
  if (term.name == "swap2") {
    need_arity(term, 0, 0);
    return pair_swap();
  }
  if (term.name == "rev3") {
    need_arity(term, 0, 0);
    return triple_reverse();
  }
  if (term.name == "shift") {
    need_arity(term, 0, 0);
    return shift();
  }
  if (term.name == "prepend") {
    need_arity(term, 1, 1);
    return prepend(static_cast<std::uint32_t>(need_nonnegative(term, 0)));
  }
  if (term.name == "transpose") {
    need_arity(term, 1, 1);
    return transpose_at(need_integer(term, 0));
  }
  if (term.name == "invert") {
    need_arity(term, 0, 0);
    return inverter();
  }
  if (term.name == "inc") {
    need_arity(term, 1, 1);
    return mod_increment(need_integer(term, 0));
  }
  if (term.name == "seven") {
    need_arity(term, 0, 0);
    return seven_replacement();
  }
  if (term.name == "canonical") {
    need_arity(term, 0, 1);
    const WeightKind weight = term.args.size() == 1
                                  ? WeightKind::power(need_real(term, 0))
                                  : WeightKind::linear();
    return be_canonicalizer(weight);
  }
  fail(term, "unknown stage");
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::string expected,
                       std::string found)
    : std::runtime_error("parse error at offset " + std::to_string(offset) +
                         ": expected " + expected + ", found " + found),
      offset_(offset),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

PipelineExpr parse(std::string_view text) {
  return Parser(text).parse_pipeline();
}

std::string to_text(const PipelineExpr& expr) {
  std::string out;
  for (std::size_t t = 0; t < expr.terms.size(); ++t) {
    if (t) out += " | ";
    const Term& term = expr.terms[t];
    out += term.name;
    if (term.args.empty()) continue;
    out += '(';
    for (std::size_t i = 0; i < term.args.size(); ++i) {
      if (i) out += ", ";
      if (const auto* n = std::get_if<Number>(&term.args[i])) {
        print_number(out, *n);
      } else {
        const auto& tuple = std::get<Tuple>(term.args[i]);
        out += '(';
        for (std::size_t k = 0; k < tuple.size(); ++k) {
          if (k) out += ", ";
          print_number(out, tuple[k]);
        }
        out += ')';
      }
    }
    out += ')';
  }
  return out;
}

DigitStream resolve(const PipelineExpr& expr, const ResolveOptions& options) {
  if (expr.terms.empty()) throw ResolveError("pipeline has no source term");
  DigitStream stream = build_source(expr.terms.front(), options);
  for (std::size_t t = 1; t < expr.terms.size(); ++t) {
    stream = build_stage(expr.terms[t]).apply(stream);
  }
  return stream;
}

DigitStream run_pipeline(std::string_view text, const ResolveOptions& options) {
  return resolve(parse(text), options);
}

}  // namespace sadic
