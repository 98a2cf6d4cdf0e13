#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

#include "serrec/error.hpp"

namespace serrec {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// The coefficient field: the rationals, or a prime field F_p.
struct FieldTag {
  enum class Kind { Rational, Prime };
  Kind kind = Kind::Rational;
  std::uint32_t p = 0;  // modulus, meaningful only when kind == Prime

  static FieldTag rationals() { return FieldTag{Kind::Rational, 0}; }
  static FieldTag prime(std::uint32_t p);  // checks primality

  bool operator==(const FieldTag& o) const = default;
  std::string str() const;
};

/// Exact field element tagged with its field.
///
/// Rational values stay in lowest terms with positive denominator
/// (cpp_rational canonicalizes); prime-field values are canonical
/// representatives in [0, p).  Mixed-field arithmetic throws FieldMismatch.
class Scalar {
 public:
  Scalar() : tag_(FieldTag::rationals()) {}

  static Scalar zero(FieldTag t);
  static Scalar one(FieldTag t);
  static Scalar from_int(long long v, FieldTag t);
  static Scalar from_rational(const Rational& q, FieldTag t);
  /// Parses "7", "-3" or "p/q".  Over F_p a fraction means p * q^{-1}.
  static Scalar parse(const std::string& text, FieldTag t);

  const FieldTag& tag() const { return tag_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;  // throws on division by zero
  Scalar operator-() const;
  Scalar inverse() const;
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  /// Rational value (only when tag is Rational).
  const Rational& rational() const;
  /// Prime-field residue in [0, p) (only when tag is Prime).
  std::uint32_t residue() const;

  /// "p/q" for non-integral rationals, plain integer string otherwise.
  std::string str() const;

 private:
  void check_same(const Scalar& o) const;

  FieldTag tag_;
  Rational q_;          // used when Rational
  std::uint32_t r_ = 0; // used when Prime
};

}  // namespace serrec
