#pragma once

#include <cartan/errors.hpp>
#include <cartan/form.hpp>

#include <cctype>
#include <string>
#include <string_view>

namespace cartan {

namespace detail {

class FormParser {
 public:
  FormParser(int dimension, std::string_view text) : dim_(dimension), text_(text) {}

  Form parse() {
    skip_ws();
    if (at_end()) throw ParseError(pos_, "empty form");
    if (peek() == '0' && rest_is_blank(pos_ + 1)) return Form();

    Form out;
    int sign = 1;
    if (peek() == '-' || peek() == '+') {
      sign = peek() == '-' ? -1 : 1;
      ++pos_;
      skip_ws();
    }
    out += term() * sign;
    for (;;) {
      skip_ws();
      if (at_end()) break;
      char c = peek();
      if (c != '+' && c != '-') throw ParseError(pos_, std::string("expected '+' or '-', found '") + c + "'");
      ++pos_;
      skip_ws();
      out += term() * (c == '-' ? -1 : 1);
    }
    return out;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool rest_is_blank(std::size_t from) const {
    for (std::size_t k = from; k < text_.size(); ++k)
      if (!std::isspace(static_cast<unsigned char>(text_[k]))) return false;
    return true;
  }

  std::string digits() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  // term := coeff ['*' mono] | mono
  Form term() {
    if (at_end()) throw ParseError(pos_, "expected a term");
    if (peek() == 'e') return monomial(GaussRat(1));
    std::size_t start = pos_;
    std::string lead = digits();
    if (lead.empty()) throw ParseError(pos_, std::string("unexpected character '") + peek() + "'");

    bool is_coeff = false;
    Rational coeff(lead);
    if (!at_end() && peek() == '/') {
      ++pos_;
      std::size_t den_pos = pos_;
      std::string den = digits();
      if (den.empty()) throw ParseError(pos_, "expected denominator");
      if (Rational(den) == 0) throw ParseError(den_pos, "zero denominator");
      coeff /= Rational(den);
      is_coeff = true;
    }
    if (!at_end() && peek() == '*') {
      ++pos_;
      return monomial(GaussRat(coeff));
    }
    if (is_coeff) return Form(GaussRat(coeff));
    pos_ = start;
    return monomial(GaussRat(1));
  }

  // mono := ['e'] digit+, each digit a generator index
  Form monomial(const GaussRat& coeff) {
    if (!at_end() && peek() == 'e') ++pos_;
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError(pos_, "expected generator digits");
    Form out(coeff);
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      int index = peek() - '0';
      if (index == 0) throw ParseError(pos_, "generator index 0 is not allowed");
      if (index > dim_)
        throw IndexError("generator index " + std::to_string(index) + " exceeds dimension " + std::to_string(dim_) +
                         " at position " + std::to_string(pos_));
      out = wedge(out, Form::e(static_cast<Generator>(index)));
      ++pos_;
    }
    return out;
  }

  int dim_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the compact form notation: terms like "12", "-3/2*123", "e34",
/// joined by '+' and '-'. Each digit is a generator index (1..9), wedged left
/// to right. "0" is the zero form.
inline Form parse_form(int dimension, std::string_view text) { return detail::FormParser(dimension, text).parse(); }

}  // namespace cartan
