#pragma once

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <sstream>
#include <string>

namespace cartan {

using Rational = mpq_class;

/// Exact complex number with rational real and imaginary parts.
class GaussRat {
 public:
  GaussRat() = default;
  GaussRat(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  GaussRat(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  GaussRat(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  /// num/den, canonicalized. `den` must be nonzero.
  static GaussRat fraction(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return GaussRat(q);
  }
  static GaussRat i() { return GaussRat(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  GaussRat conj() const { return GaussRat(re_, -im_); }

  GaussRat& operator+=(const GaussRat& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussRat& operator-=(const GaussRat& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussRat& operator*=(const GaussRat& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
      re_ *= o.re_;
      return *this;
    }
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }
  /// Division by zero is undefined behaviour of the caller; the solver never divides by zero.
  GaussRat& operator/=(const GaussRat& o) {
    if (sgn(o.im_) == 0) {
      re_ /= o.re_;
      im_ /= o.re_;
      return *this;
    }
    Rational norm = o.re_ * o.re_ + o.im_ * o.im_;
    *this *= o.conj();
    re_ /= norm;
    im_ /= norm;
    return *this;
  }

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
  friend GaussRat operator-(const GaussRat& a) { return GaussRat(-a.re_, -a.im_); }

  friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

  /// Exact text: "3/2", "-I", "1/2*I", "(1+2*I)".
  std::string str() const {
    if (sgn(im_) == 0) return re_.get_str();
    std::string imag;
    if (im_ == 1)
      imag = "I";
    else if (im_ == -1)
      imag = "-I";
    else
      imag = im_.get_str() + "*I";
    if (sgn(re_) == 0) return imag;
    std::string out = "(" + re_.get_str();
    if (imag.front() != '-') out += "+";
    return out + imag + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussRat& g) { return os << g.str(); }

 private:
  Rational re_;
  Rational im_;
};

}  // namespace cartan
