#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <complex>
#include <compare>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>

#include "eigshift/error.hpp"

namespace eigshift {

using Rational = mpq_class;

/// Exact complex number with arbitrary-precision rational parts.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }
  static Scalar ratio(long num, long den) {
    if (den == 0) throw Error(ErrorKind::invalid_parameter, "zero denominator");
    return Scalar(Rational(num, den));
  }
  static Scalar imag_unit() { return Scalar(Rational(0), Rational(1)); }

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  Scalar conj() const { return Scalar(re_, -im_); }
  Rational norm() const { return Rational(re_ * re_ + im_ * im_); }

  Scalar& operator+=(const Scalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    if (o.is_real()) {
      re_ *= o.re_;
      im_ *= o.re_;
      return *this;
    }
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  Scalar& operator/=(const Scalar& o) {
    if (o.is_zero()) throw Error(ErrorKind::singular, "division by zero scalar");
    if (o.is_real()) {
      re_ /= o.re_;
      im_ /= o.re_;
      return *this;
    }
    Rational d = o.norm();
    Rational r = (re_ * o.re_ + im_ * o.im_) / d;
    Rational i = (im_ * o.re_ - re_ * o.im_) / d;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend Scalar operator-(const Scalar& a) { return Scalar(-a.re_, -a.im_); }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Lexicographic on (re, im); only used for deterministic ordering.
  friend std::strong_ordering lex_compare(const Scalar& a, const Scalar& b) {
    int c = cmp(a.re_, b.re_);
    if (c == 0) c = cmp(a.im_, b.im_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  friend bool lex_less(const Scalar& a, const Scalar& b) { return lex_compare(a, b) < 0; }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  /// "p/q", "p/qi", "a+bi" with each part in lowest terms; the imaginary
  /// coefficient is always written out ("1i", not "i").
  std::string to_string() const {
    if (is_real()) return re_.get_str();
    std::string im = im_.get_str() + "i";
    if (sgn(re_) == 0) return im;
    return re_.get_str() + (sgn(im_) > 0 ? "+" : "") + im;
  }

  static Scalar parse(std::string_view text);

 private:
  Rational re_{0};
  Rational im_{0};
};

namespace detail {

inline Rational parse_rational(std::string_view part, std::string_view whole) {
  auto fail = [&] { throw Error(ErrorKind::parse, "malformed scalar \"" + std::string(whole) + "\""); };
  if (part.empty()) fail();
  std::size_t pos = 0;
  if (part[0] == '+' || part[0] == '-') pos = 1;
  bool seen_digit = false;
  bool seen_slash = false;
  bool digit_after_slash = false;
  for (std::size_t i = pos; i < part.size(); ++i) {
    char c = part[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      seen_digit = true;
      if (seen_slash) digit_after_slash = true;
    } else if (c == '/' && seen_digit && !seen_slash) {
      seen_slash = true;
    } else {
      fail();
    }
  }
  if (!seen_digit || (seen_slash && !digit_after_slash)) fail();
  std::string s(part[0] == '+' ? part.substr(1) : part);
  Rational q;
  if (q.set_str(s, 10) != 0) fail();
  if (sgn(q.get_den()) == 0) throw Error(ErrorKind::parse, "zero denominator in \"" + std::string(whole) + "\"");
  q.canonicalize();
  return q;
}

}  // namespace detail

inline Scalar Scalar::parse(std::string_view text) {
  std::string compact;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  std::string_view s(compact);
  if (s.empty()) throw Error(ErrorKind::parse, "empty scalar");
  if (s.back() != 'i') return Scalar(detail::parse_rational(s, text));

  std::string_view body = s.substr(0, s.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if (body[i] == '+' || body[i] == '-') {
      split = i;
      break;
    }
  }
  std::string_view re_part = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
  std::string_view im_part = split == std::string_view::npos ? body : body.substr(split);
  Rational im;
  if (im_part.empty() || im_part == "+") {
    im = 1;
  } else if (im_part == "-") {
    im = -1;
  } else {
    im = detail::parse_rational(im_part, text);
  }
  Rational re = re_part.empty() ? Rational(0) : detail::parse_rational(re_part, text);
  return Scalar(std::move(re), std::move(im));
}

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

using FloatScalar = std::complex<double>;

/// Uniform access to the two scalar backends for the templated algorithms.
template <typename T>
struct scalar_traits;

template <>
struct scalar_traits<Scalar> {
  static constexpr bool exact = true;
  static Scalar zero() { return Scalar(0); }
  static Scalar one() { return Scalar(1); }
  static Scalar conj(const Scalar& x) { return x.conj(); }
  static bool is_zero(const Scalar& x) { return x.is_zero(); }
  static std::string to_string(const Scalar& x) { return x.to_string(); }
  static Scalar from_exact(const Scalar& x) { return x; }
};

template <>
struct scalar_traits<FloatScalar> {
  static constexpr bool exact = false;
  // Demonstration backend only; nothing that branches on zero-testing relies on it.
  static constexpr double tolerance = 1e-10;
  static FloatScalar zero() { return {0.0, 0.0}; }
  static FloatScalar one() { return {1.0, 0.0}; }
  static FloatScalar conj(const FloatScalar& x) { return std::conj(x); }
  static bool is_zero(const FloatScalar& x) { return std::abs(x) <= tolerance; }
  static std::string to_string(const FloatScalar& x) {
    std::ostringstream os;
    os.precision(17);
    os << x.real();
    if (x.imag() != 0.0) os << (x.imag() > 0 ? "+" : "") << x.imag() << "i";
    return os.str();
  }
  static FloatScalar from_exact(const Scalar& x) { return x.to_complex(); }
};

}  // namespace eigshift
