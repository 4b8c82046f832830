#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace incidence_braid {

/// Deterministic 64-bit primality test (Miller-Rabin with a fixed base set
/// that is exact for all inputs below 2^64).
bool is_prime_u64(std::uint64_t n);

/// A ground field: the rationals, or Z/p for a prime p.
class Field {
public:
  enum class Kind { Rationals, Prime };

  static Field rationals() { return Field(Kind::Rationals, 0); }
  /// Throws std::invalid_argument if p is not prime.
  static Field prime(std::uint64_t p);

  Kind kind() const { return kind_; }
  std::uint64_t modulus() const { return p_; }
  /// 0 for the rationals, p for Z/p.
  std::uint64_t characteristic() const { return p_; }

  bool operator==(const Field&) const = default;

private:
  Field(Kind k, std::uint64_t p) : kind_(k), p_(p) {}
  Kind kind_;
  std::uint64_t p_;
};

/// An exact field element. Rationals are kept in lowest terms with a positive
/// denominator; prime-field values are canonical residues in [0, p).
/// Immutable value semantics; all arithmetic is exact and mixing elements of
/// different fields throws.
class Scalar {
public:
  /// Rational zero. Prefer the field-aware factories below.
  Scalar() : Scalar(Field::rationals(), 0) {}

  Scalar(const Field& f, long long n);
  static Scalar zero(const Field& f) { return Scalar(f, 0); }
  static Scalar one(const Field& f) { return Scalar(f, 1); }
  static Scalar from_mpq(mpq_class q);

  /// Parses the text encoding: "n" or "num/den" over the rationals,
  /// a decimal residue (optionally signed) over a prime field.
  static Scalar parse(const Field& f, std::string_view text);

  const Field& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& other) const;
  Scalar operator-(const Scalar& other) const;
  Scalar operator*(const Scalar& other) const;
  /// Throws std::domain_error on division by zero.
  Scalar operator/(const Scalar& other) const;
  Scalar operator-() const;
  /// Throws std::domain_error on inversion of zero.
  Scalar inverse() const;

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  bool operator==(const Scalar& other) const;
  bool operator!=(const Scalar& other) const { return !(*this == other); }

  std::string str() const;

  /// Rational payload; only meaningful when field().kind() == Rationals.
  const mpq_class& rational() const;
  /// Canonical residue; only meaningful over a prime field.
  std::uint64_t residue() const { return res_; }

private:
  void require_same_field(const Scalar& other) const;

  Field field_ = Field::rationals();
  std::uint64_t res_ = 0;           // prime-field payload
  std::optional<mpq_class> q_;      // rational payload
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace incidence_braid
