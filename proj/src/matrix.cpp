#include "incidence_braid/matrix.hpp"

#include <cstdint>

namespace incidence_braid {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t acc = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) acc = mulmod(acc, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return acc;
}

// Elimination mod p over residues; returns nonsingularity.
bool eliminate_mod(std::vector<std::uint64_t>& m, std::size_t n, std::uint64_t p) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot * n + col] == 0) ++pivot;
    if (pivot == n) return false;
    if (pivot != col) {
      for (std::size_t j = col; j < n; ++j) std::swap(m[pivot * n + j], m[col * n + j]);
    }
    std::uint64_t inv = powmod(m[col * n + col], p - 2, p);
    for (std::size_t i = col + 1; i < n; ++i) {
      std::uint64_t factor = mulmod(m[i * n + col], inv, p);
      if (factor == 0) continue;
      for (std::size_t j = col; j < n; ++j) {
        std::uint64_t sub = mulmod(factor, m[col * n + j], p);
        std::uint64_t cur = m[i * n + j];
        m[i * n + j] = cur >= sub ? cur - sub : cur + p - sub;
      }
    }
  }
  return true;
}

}  // namespace

bool DenseMatrix::invertible_mod(std::uint64_t p, bool& conclusive) const {
  conclusive = true;
  std::vector<std::uint64_t> m(n_ * n_, 0);
  for (std::size_t i = 0; i < n_ * n_; ++i) {
    const mpq_class& q = a_[i].rational();
    mpz_class den_mod = q.get_den() % p;
    std::uint64_t den = den_mod.get_ui();
    if (den == 0) {
      conclusive = false;  // p divides a denominator; caller retries another prime
      return false;
    }
    mpz_class num_mod = q.get_num() % p;
    long long num = num_mod.get_si();
    std::uint64_t nr = num >= 0 ? static_cast<std::uint64_t>(num) % p
                                : p - (static_cast<std::uint64_t>(-num) % p);
    m[i] = mulmod(nr % p, powmod(den, p - 2, p), p);
  }
  return eliminate_mod(m, n_, p);
}

bool DenseMatrix::invertible_exact_rational() const {
  std::vector<mpq_class> m(n_ * n_);
  for (std::size_t i = 0; i < n_ * n_; ++i) m[i] = a_[i].rational();
  for (std::size_t col = 0; col < n_; ++col) {
    std::size_t pivot = col;
    while (pivot < n_ && sgn(m[pivot * n_ + col]) == 0) ++pivot;
    if (pivot == n_) return false;
    if (pivot != col) {
      for (std::size_t j = col; j < n_; ++j) std::swap(m[pivot * n_ + j], m[col * n_ + j]);
    }
    for (std::size_t i = col + 1; i < n_; ++i) {
      if (sgn(m[i * n_ + col]) == 0) continue;
      mpq_class factor = m[i * n_ + col] / m[col * n_ + col];
      for (std::size_t j = col; j < n_; ++j) {
        m[i * n_ + j] -= factor * m[col * n_ + j];
        m[i * n_ + j].canonicalize();
      }
    }
  }
  return true;
}

bool DenseMatrix::invertible() const {
  if (field_.kind() == Field::Kind::Prime) {
    const std::uint64_t p = field_.modulus();
    std::vector<std::uint64_t> m(n_ * n_, 0);
    for (std::size_t i = 0; i < n_ * n_; ++i) m[i] = a_[i].residue();
    return eliminate_mod(m, n_, p);
  }
  // Nonzero determinant modulo any prime certifies a nonzero determinant.
  // Zero residues are inconclusive and trigger the exact fallback.
  std::uint64_t p = 2305843009213693951ull;  // 2^61 - 1
  for (int conclusive_tries = 0; conclusive_tries < 2; --p) {
    while (!is_prime_u64(p)) --p;
    bool conclusive = false;
    bool inv = invertible_mod(p, conclusive);
    if (!conclusive) continue;  // p divided a denominator
    if (inv) return true;
    ++conclusive_tries;
  }
  return invertible_exact_rational();
}

}  // namespace incidence_braid
