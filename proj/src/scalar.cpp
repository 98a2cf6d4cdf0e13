#include "serrec/scalar.hpp"

namespace serrec {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotIdempotent: return "NotIdempotent";
    case Errc::NotDistinguishedSum: return "NotDistinguishedSum";
    case Errc::NotTwoSidedIdeal: return "NotTwoSidedIdeal";
    case Errc::DegenerateQuotient: return "DegenerateQuotient";
    case Errc::InfiniteDimensional: return "InfiniteDimensional";
    case Errc::MalformedRelation: return "MalformedRelation";
    case Errc::AlgebraMismatch: return "AlgebraMismatch";
    case Errc::RadicalUnavailable: return "RadicalUnavailable";
    case Errc::NotSimple: return "NotSimple";
    case Errc::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case Errc::CertificationFailed: return "CertificationFailed";
    case Errc::NotATorsionPair: return "NotATorsionPair";
    case Errc::HypothesisViolated: return "HypothesisViolated";
    case Errc::SplitLiftFailed: return "SplitLiftFailed";
    case Errc::NotGiraud: return "NotGiraud";
    case Errc::ExtensionFailed: return "ExtensionFailed";
    case Errc::SplitExpectedButFailed: return "SplitExpectedButFailed";
    case Errc::InternalInconsistency: return "InternalInconsistency";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

FieldTag FieldTag::prime(std::uint32_t p) {
  if (p < 2) throw Error(Errc::InvalidArgument, "modulus must be prime");
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0)
      throw Error(Errc::InvalidArgument,
                  "modulus " + std::to_string(p) + " is not prime");
  return FieldTag{Kind::Prime, p};
}

std::string FieldTag::str() const {
  return kind == Kind::Rational ? "Q" : "F" + std::to_string(p);
}

namespace {

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
  // extended Euclid; a nonzero mod p
  long long t = 0, new_t = 1, r = p, new_r = a % p;
  while (new_r != 0) {
    long long q = r / new_r;
    long long tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw Error(Errc::InvalidArgument, "division by zero in F_p");
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

}  // namespace

Scalar Scalar::zero(FieldTag t) {
  Scalar s;
  s.tag_ = t;
  return s;
}

Scalar Scalar::one(FieldTag t) { return from_int(1, t); }

Scalar Scalar::from_int(long long v, FieldTag t) {
  Scalar s;
  s.tag_ = t;
  if (t.kind == FieldTag::Kind::Rational) {
    s.q_ = Rational(v);
  } else {
    long long m = v % static_cast<long long>(t.p);
    if (m < 0) m += t.p;
    s.r_ = static_cast<std::uint32_t>(m);
  }
  return s;
}

Scalar Scalar::from_rational(const Rational& q, FieldTag t) {
  if (t.kind == FieldTag::Kind::Rational) {
    Scalar s;
    s.tag_ = t;
    s.q_ = q;
    return s;
  }
  Integer num = boost::multiprecision::numerator(q);
  Integer den = boost::multiprecision::denominator(q);
  Integer p(t.p);
  Integer nm = num % p;
  if (nm < 0) nm += p;
  Integer dm = den % p;
  if (dm < 0) dm += p;
  Scalar n = from_int(static_cast<long long>(nm), t);
  Scalar d = from_int(static_cast<long long>(dm), t);
  return n / d;
}

Scalar Scalar::parse(const std::string& text, FieldTag t) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return from_rational(Rational(Integer(text)), t);
    Integer num(text.substr(0, slash));
    Integer den(text.substr(slash + 1));
    if (den == 0) throw Error(Errc::InvalidArgument, "zero denominator");
    return from_rational(Rational(num, den), t);
  } catch (const std::exception& e) {
    throw Error(Errc::InvalidArgument, "bad scalar literal '" + text + "'");
  }
}

bool Scalar::is_zero() const {
  return tag_.kind == FieldTag::Kind::Rational ? q_.is_zero() : r_ == 0;
}

bool Scalar::is_one() const {
  return tag_.kind == FieldTag::Kind::Rational ? q_ == 1 : r_ == 1;
}

void Scalar::check_same(const Scalar& o) const {
  if (!(tag_ == o.tag_))
    throw Error(Errc::FieldMismatch,
                "operands over " + tag_.str() + " and " + o.tag_.str());
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same(o);
  Scalar s;
  s.tag_ = tag_;
  if (tag_.kind == FieldTag::Kind::Rational) {
    s.q_ = q_ + o.q_;
  } else {
    s.r_ = static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(r_) + o.r_) % tag_.p);
  }
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  check_same(o);
  Scalar s;
  s.tag_ = tag_;
  if (tag_.kind == FieldTag::Kind::Rational) {
    s.q_ = q_ * o.q_;
  } else {
    s.r_ = static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(r_) * o.r_) % tag_.p);
  }
  return s;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::operator-() const {
  Scalar s;
  s.tag_ = tag_;
  if (tag_.kind == FieldTag::Kind::Rational) {
    s.q_ = -q_;
  } else {
    s.r_ = r_ == 0 ? 0 : tag_.p - r_;
  }
  return s;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(Errc::InvalidArgument, "inverse of zero");
  Scalar s;
  s.tag_ = tag_;
  if (tag_.kind == FieldTag::Kind::Rational) {
    s.q_ = 1 / q_;
  } else {
    s.r_ = mod_inverse(r_, tag_.p);
  }
  return s;
}

bool Scalar::operator==(const Scalar& o) const {
  if (!(tag_ == o.tag_)) return false;
  return tag_.kind == FieldTag::Kind::Rational ? q_ == o.q_ : r_ == o.r_;
}

const Rational& Scalar::rational() const {
  if (tag_.kind != FieldTag::Kind::Rational)
    throw Error(Errc::FieldMismatch, "rational() on prime-field scalar");
  return q_;
}

std::uint32_t Scalar::residue() const {
  if (tag_.kind != FieldTag::Kind::Prime)
    throw Error(Errc::FieldMismatch, "residue() on rational scalar");
  return r_;
}

std::string Scalar::str() const {
  if (tag_.kind == FieldTag::Kind::Prime) return std::to_string(r_);
  Integer num = boost::multiprecision::numerator(q_);
  Integer den = boost::multiprecision::denominator(q_);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace serrec
