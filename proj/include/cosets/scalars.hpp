#pragma once

// Exact field scalars: Q (arbitrary-precision rationals, backed by GMP) and
// Q(i) (Gaussian rationals).  Both are plain value types so they can be used
// as Eigen matrix scalars; all arithmetic is exact and representations are
// kept canonical (reduced fractions, positive denominators).

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace cosets {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

enum class Field { Q, Qi };

inline std::string fieldName(Field f) { return f == Field::Q ? "Q" : "Qi"; }

inline Field fieldFromName(const std::string& s) {
  if (s == "Q") return Field::Q;
  if (s == "Qi") return Field::Qi;
  throw Error("unknown field tag: " + s);
}

class Rational {
public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit on purpose, Eigen casts literals
  Rational(long n, long d) : v_(n, d) {
    if (d == 0) throw Error("zero denominator");
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  const mpq_class& raw() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  bool isZero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  double toDouble() const { return v_.get_d(); }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.isZero()) throw Error("division by zero");
    return Rational(mpq_class(a.v_ / b.v_));
  }
  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  /// Serialized as "p" when the denominator is 1, otherwise "p/q".
  std::string str() const { return v_.get_str(); }

  static Rational parse(const std::string& s);

private:
  mpq_class v_;
};

inline Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

inline Rational Rational::parse(const std::string& s) {
  if (s.empty()) throw Error("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(mpq_class(mpz_class(s)));
    }
    mpz_class num(s.substr(0, slash));
    mpz_class den(s.substr(slash + 1));
    if (den == 0) throw Error("zero denominator in \"" + s + "\"");
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(q);
  } catch (const std::invalid_argument&) {
    throw Error("bad rational literal: \"" + s + "\"");
  }
}

/// Element of Q(i).  Division goes through the conjugate; equality is exact.
class GaussRational {
public:
  GaussRational() = default;
  GaussRational(long n) : re_(n) {}  // NOLINT
  GaussRational(Rational re) : re_(std::move(re)) {}  // NOLINT
  GaussRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  bool isZero() const { return re_.isZero() && im_.isZero(); }

  GaussRational conj() const { return {re_, -im_}; }
  Rational normSq() const { return re_ * re_ + im_ * im_; }

  friend GaussRational operator+(const GaussRational& a, const GaussRational& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend GaussRational operator-(const GaussRational& a, const GaussRational& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend GaussRational operator/(const GaussRational& a, const GaussRational& b) {
    Rational n = b.normSq();
    if (n.isZero()) throw Error("division by zero");
    GaussRational prod = a * b.conj();
    return {prod.re_ / n, prod.im_ / n};
  }
  GaussRational operator-() const { return {-re_, -im_}; }
  GaussRational& operator+=(const GaussRational& o) { *this = *this + o; return *this; }
  GaussRational& operator-=(const GaussRational& o) { *this = *this - o; return *this; }
  GaussRational& operator*=(const GaussRational& o) { *this = *this * o; return *this; }
  GaussRational& operator/=(const GaussRational& o) { *this = *this / o; return *this; }

  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }

  /// "a/b+c/d*i" with zero parts omitted; plain "0" for zero.
  std::string str() const {
    if (im_.isZero()) return re_.str();
    std::string imPart = im_.str() + "*i";
    if (re_.isZero()) return imPart;
    return im_.sign() < 0 ? re_.str() + imPart : re_.str() + "+" + imPart;
  }

  static GaussRational parse(const std::string& s);

private:
  Rational re_;
  Rational im_;
};

inline GaussRational GaussRational::parse(const std::string& s) {
  if (s.empty()) throw Error("empty scalar literal");
  // Split at the last top-level '+'/'-' (not the leading sign, not an exponent:
  // the grammar here has no exponents, so only position 0 is excluded).
  auto parsePart = [](const std::string& part, Rational& re, Rational& im) {
    auto star = part.find("*i");
    if (star != std::string::npos) {
      if (star + 2 != part.size()) throw Error("bad scalar literal: \"" + part + "\"");
      im = Rational::parse(part.substr(0, star));
    } else if (part == "i") {
      im = Rational(1);
    } else if (part == "-i") {
      im = Rational(-1);
    } else {
      re = Rational::parse(part);
    }
  };
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if (s[i] == '+' || s[i] == '-') { split = i; break; }
  }
  Rational re(0), im(0);
  if (split == std::string::npos) {
    parsePart(s, re, im);
  } else {
    Rational re2(0), im2(0);
    parsePart(s.substr(0, split), re, im);
    std::string rest = s.substr(split + 1);
    parsePart(rest, re2, im2);
    if (s[split] == '-') { re2 = -re2; im2 = -im2; }
    if ((!re.isZero() && !re2.isZero()) || (!im.isZero() && !im2.isZero())) {
      // Something like "1+2" or "i+i" — reject rather than silently add.
      throw Error("bad scalar literal: \"" + s + "\"");
    }
    re += re2;
    im += im2;
  }
  return {re, im};
}

// Field-generic helpers used by templated code.

template <typename K>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static constexpr Field tag = Field::Q;
  static Rational conj(const Rational& x) { return x; }
  static std::string str(const Rational& x) { return x.str(); }
  static Rational parse(const std::string& s) { return Rational::parse(s); }
  static double toDoubleRe(const Rational& x) { return x.toDouble(); }
  static double toDoubleIm(const Rational&) { return 0.0; }
};

template <>
struct FieldTraits<GaussRational> {
  static constexpr Field tag = Field::Qi;
  static GaussRational conj(const GaussRational& x) { return x.conj(); }
  static std::string str(const GaussRational& x) { return x.str(); }
  static GaussRational parse(const std::string& s) { return GaussRational::parse(s); }
  static double toDoubleRe(const GaussRational& x) { return x.re().toDouble(); }
  static double toDoubleIm(const GaussRational& x) { return x.im().toDouble(); }
};

template <typename K>
K scalarConj(const K& x) {
  return FieldTraits<K>::conj(x);
}

}  // namespace cosets
