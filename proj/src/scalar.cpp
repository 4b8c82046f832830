#include "incidence_braid/scalar.hpp"

#include <charconv>
#include <ostream>
#include <stdexcept>

namespace incidence_braid {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t acc = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) acc = mulmod_u64(acc, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return acc;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is a proven deterministic witness set for all n < 2^64.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (!is_prime_u64(p)) {
    throw std::invalid_argument("modulus not prime: " + std::to_string(p));
  }
  return Field(Kind::Prime, p);
}

Scalar::Scalar(const Field& f, long long n) : field_(f) {
  if (f.kind() == Field::Kind::Rationals) {
    q_.emplace(static_cast<long>(n));
  } else {
    const std::uint64_t p = f.modulus();
    long long r = n % static_cast<long long>(p);
    if (r < 0) r += static_cast<long long>(p);
    res_ = static_cast<std::uint64_t>(r);
  }
}

Scalar Scalar::from_mpq(mpq_class q) {
  Scalar s;
  q.canonicalize();
  s.q_ = std::move(q);
  return s;
}

Scalar Scalar::parse(const Field& f, std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty scalar literal");
  if (f.kind() == Field::Kind::Rationals) {
    mpq_class q;
    if (q.set_str(std::string(text), 10) != 0 || q.get_den() == 0) {
      throw std::invalid_argument("bad rational literal: " + std::string(text));
    }
    return from_mpq(std::move(q));
  }
  bool neg = false;
  std::size_t pos = 0;
  if (text[0] == '-' || text[0] == '+') {
    neg = text[0] == '-';
    pos = 1;
  }
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("bad residue literal: " + std::string(text));
  }
  std::uint64_t r = value % f.modulus();
  if (neg && r != 0) r = f.modulus() - r;
  Scalar s;
  s.field_ = f;
  s.q_.reset();
  s.res_ = r;
  return s;
}

bool Scalar::is_zero() const {
  return field_.kind() == Field::Kind::Rationals ? sgn(*q_) == 0 : res_ == 0;
}

bool Scalar::is_one() const {
  return field_.kind() == Field::Kind::Rationals ? *q_ == 1 : res_ == 1 % field_.modulus();
}

void Scalar::require_same_field(const Scalar& other) const {
  if (!(field_ == other.field_)) {
    throw std::invalid_argument("scalar operands belong to different fields");
  }
}

Scalar Scalar::operator+(const Scalar& other) const {
  require_same_field(other);
  Scalar out = *this;
  if (field_.kind() == Field::Kind::Rationals) {
    *out.q_ += *other.q_;
    out.q_->canonicalize();
  } else {
    const std::uint64_t p = field_.modulus();
    out.res_ = res_ + other.res_;
    if (out.res_ >= p) out.res_ -= p;
  }
  return out;
}

Scalar Scalar::operator-(const Scalar& other) const { return *this + (-other); }

Scalar Scalar::operator*(const Scalar& other) const {
  require_same_field(other);
  Scalar out = *this;
  if (field_.kind() == Field::Kind::Rationals) {
    *out.q_ *= *other.q_;
    out.q_->canonicalize();
  } else {
    out.res_ = mulmod_u64(res_, other.res_, field_.modulus());
  }
  return out;
}

Scalar Scalar::operator/(const Scalar& other) const {
  require_same_field(other);
  if (other.is_zero()) throw std::domain_error("division by zero");
  return *this * other.inverse();
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  if (field_.kind() == Field::Kind::Rationals) {
    *out.q_ = -*out.q_;
  } else if (res_ != 0) {
    out.res_ = field_.modulus() - res_;
  }
  return out;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("zero inverse");
  Scalar out = *this;
  if (field_.kind() == Field::Kind::Rationals) {
    *out.q_ = 1 / *out.q_;
  } else {
    out.res_ = powmod_u64(res_, field_.modulus() - 2, field_.modulus());
  }
  return out;
}

bool Scalar::operator==(const Scalar& other) const {
  require_same_field(other);
  return field_.kind() == Field::Kind::Rationals ? *q_ == *other.q_ : res_ == other.res_;
}

std::string Scalar::str() const {
  if (field_.kind() == Field::Kind::Prime) return std::to_string(res_);
  if (q_->get_den() == 1) return q_->get_num().get_str();
  return q_->get_str();
}

const mpq_class& Scalar::rational() const {
  if (field_.kind() != Field::Kind::Rationals) {
    throw std::logic_error("rational() on a prime-field scalar");
  }
  return *q_;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace incidence_braid
