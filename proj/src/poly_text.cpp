#include <cctype>
#include <sstream>

#include "qhc/errors.hpp"
#include "qhc/poly.hpp"

namespace qhc {

std::string format(const MultiPoly& p) {
  if (p.is_zero()) return "0";
  const VarTable& t = *p.context();
  std::ostringstream out;
  bool first = true;
  for (const auto& term : p.terms()) {
    Rational c = term.coeff;
    bool neg = sgn(c) < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) out << '-';
    } else {
      out << (neg ? " - " : " + ");
    }
    first = false;

    std::vector<std::string> factors;
    for (std::size_t v = 0; v < term.exps.size(); ++v) {
      int e = term.exps[v];
      if (e == 0) continue;
      factors.push_back(e == 1 ? t[v].name : t[v].name + "^" + std::to_string(e));
    }
    bool unit = c == 1;
    if (!unit || factors.empty()) {
      out << c.get_str();
      if (!factors.empty()) out << '*';
    }
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) out << '*';
      out << factors[i];
    }
  }
  return out.str();
}

namespace {

class Parser {
 public:
  Parser(const VarTablePtr& ctx, std::string_view s) : ctx_(ctx), s_(s) {}

  MultiPoly parse() {
    MultiPoly p = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError(what + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MultiPoly sum() {
    MultiPoly acc(ctx_);
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    for (;;) {
      MultiPoly t = product();
      if (neg) acc -= t;
      else acc += t;
      if (eat('+')) neg = false;
      else if (eat('-')) neg = true;
      else break;
    }
    return acc;
  }

  MultiPoly product() {
    MultiPoly acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }

  int exponent() {
    skip();
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = s_[pos_++] == '-';
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected exponent");
    int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
    return neg ? -e : e;
  }

  MultiPoly factor() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly inner = sum();
      if (!eat(')')) fail("expected ')'");
      if (eat('^')) {
        int e = exponent();
        if (e < 0) fail("negative power of a parenthesised expression");
        inner = inner.pow(static_cast<unsigned>(e));
      }
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/'))
        ++pos_;
      Rational r;
      if (r.set_str(std::string(s_.substr(start, pos_ - start)), 10) != 0) fail("bad number");
      if (r.get_den() == 0) fail("zero denominator");
      r.canonicalize();
      return MultiPoly::constant(ctx_, r);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size()) {
        char d = s_[pos_];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_') {
          ++pos_;
        } else if (d == '[') {
          while (pos_ < s_.size() && s_[pos_] != ']') ++pos_;
          if (pos_ == s_.size()) fail("unterminated '['");
          ++pos_;
        } else {
          break;
        }
      }
      std::string name(s_.substr(start, pos_ - start));
      auto idx = ctx_->find(name);
      if (!idx) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      int e = 1;
      if (eat('^')) e = exponent();
      try {
        return MultiPoly::var(ctx_, *idx, e);
      } catch (const LaurentError& err) {
        fail(err.what());
      }
    }
    fail("unexpected character");
  }

  VarTablePtr ctx_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(const VarTablePtr& ctx, std::string_view text) { return Parser(ctx, text).parse(); }

}  // namespace qhc
