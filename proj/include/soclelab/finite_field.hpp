#pragma once

// Arithmetic in F_q, q = p^d, with elements encoded as integers
// c_0 + c_1 p + ... + c_{d-1} p^{d-1} (coefficients of a residue polynomial).
// The modulus is the lexicographically smallest monic irreducible polynomial
// of degree d.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "soclelab/errors.hpp"
#include "soclelab/fp_linalg.hpp"

namespace soclelab {

/// (p, d) with q = p^d, or nullopt when q is not a prime power.
inline std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 2;
  while (q % p) ++p;
  std::uint32_t d = 0;
  while (q % p == 0) {
    q /= p;
    ++d;
  }
  if (q != 1) return std::nullopt;
  return std::make_pair(static_cast<std::uint32_t>(p), d);
}

class GaloisField {
 public:
  GaloisField(std::uint32_t p, std::uint32_t d) : p_(p), d_(d) {
    check_modulus(p);
    if (d == 0) throw invalid_input("field degree must be positive");
    q_ = 1;
    for (std::uint32_t i = 0; i < d; ++i) {
      q_ *= p;
      if (q_ > 4096) throw unsupported_input("field of order above 4096 not supported");
    }
    modulus_ = smallest_irreducible(p, d);
    build_tables();
  }

  static GaloisField of_order(std::uint64_t q) {
    auto pp = prime_power(q);
    if (!pp) throw invalid_input(std::to_string(q) + " is not a prime power");
    return GaloisField(pp->first, pp->second);
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t degree() const { return d_; }
  std::uint32_t order() const { return q_; }
  /// Coefficients of the modulus, low degree first, leading 1 included.
  const std::vector<Residue>& modulus() const { return modulus_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return add_[a * q_ + b]; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[a * q_ + b]; }
  std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) throw invalid_input("zero has no inverse");
    return inv_[a];
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1, b = a;
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }

  /// Smallest-encoded generator of the multiplicative group.
  std::uint32_t primitive_element() const {
    for (std::uint32_t a = 1; a < q_; ++a) {
      std::uint32_t x = a, k = 1;
      while (x != 1) {
        x = mul(x, a);
        ++k;
      }
      if (k == q_ - 1) return a;
    }
    return 1;  // q = 2
  }

  /// Coordinates over F_p, low degree first.
  std::vector<Residue> coords(std::uint32_t a) const {
    std::vector<Residue> c(d_);
    for (std::uint32_t i = 0; i < d_; ++i) {
      c[i] = a % p_;
      a /= p_;
    }
    return c;
  }

  std::uint32_t from_coords(const std::vector<Residue>& c) const {
    std::uint32_t a = 0;
    for (std::uint32_t i = d_; i-- > 0;) a = a * p_ + c[i] % p_;
    return a;
  }

  static std::vector<Residue> smallest_irreducible(std::uint32_t p, std::uint32_t d) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t low = 0; low < count; ++low) {
      std::vector<Residue> f(d + 1);
      std::uint64_t x = low;
      for (std::uint32_t i = 0; i < d; ++i) {
        f[i] = static_cast<Residue>(x % p);
        x /= p;
      }
      f[d] = 1;
      if (is_irreducible(f, p)) return f;
    }
    throw consistency_failure("no irreducible polynomial found");
  }

  /// Trial division by every monic polynomial of degree 1..deg/2.
  static bool is_irreducible(const std::vector<Residue>& f, std::uint32_t p) {
    const std::size_t d = f.size() - 1;
    if (d <= 1) return d == 1;
    for (std::size_t k = 1; 2 * k <= d; ++k) {
      std::uint64_t count = 1;
      for (std::size_t i = 0; i < k; ++i) count *= p;
      for (std::uint64_t low = 0; low < count; ++low) {
        std::vector<Residue> g(k + 1);
        std::uint64_t x = low;
        for (std::size_t i = 0; i < k; ++i) {
          g[i] = static_cast<Residue>(x % p);
          x /= p;
        }
        g[k] = 1;
        if (divides(g, f, p)) return false;
      }
    }
    return true;
  }

 private:
  // g monic.
  static bool divides(const std::vector<Residue>& g, std::vector<Residue> f, std::uint32_t p) {
    const std::size_t k = g.size() - 1;
    for (std::size_t top = f.size() - 1; top >= k; --top) {
      const std::uint64_t c = f[top];
      if (c) {
        for (std::size_t i = 0; i <= k; ++i) {
          auto& t = f[top - k + i];
          t = static_cast<Residue>((t + (p - c) * g[i]) % p);
        }
      }
      if (top == 0) break;
    }
    for (std::size_t i = 0; i < k; ++i)
      if (f[i]) return false;
    return true;
  }

  void build_tables() {
    add_.assign(std::size_t(q_) * q_, 0);
    mul_.assign(std::size_t(q_) * q_, 0);
    neg_.assign(q_, 0);
    inv_.assign(q_, 0);
    for (std::uint32_t a = 0; a < q_; ++a) {
      auto ca = coords(a);
      for (std::uint32_t b = 0; b < q_; ++b) {
        auto cb = coords(b);
        std::vector<Residue> s(d_), prod(2 * d_ - 1, 0);
        for (std::uint32_t i = 0; i < d_; ++i) s[i] = (ca[i] + cb[i]) % p_;
        add_[a * q_ + b] = from_coords(s);
        for (std::uint32_t i = 0; i < d_; ++i)
          for (std::uint32_t j = 0; j < d_; ++j)
            prod[i + j] = static_cast<Residue>((prod[i + j] + std::uint64_t(ca[i]) * cb[j]) % p_);
        for (std::size_t top = prod.size(); top-- > d_;) {
          const std::uint64_t c = prod[top];
          if (!c) continue;
          for (std::uint32_t i = 0; i <= d_; ++i) {
            auto& t = prod[top - d_ + i];
            t = static_cast<Residue>((t + (p_ - c) * modulus_[i]) % p_);
          }
        }
        prod.resize(d_);
        mul_[a * q_ + b] = from_coords(prod);
      }
    }
    for (std::uint32_t a = 0; a < q_; ++a) {
      for (std::uint32_t b = 0; b < q_; ++b) {
        if (add(a, b) == 0) neg_[a] = b;
        if (mul(a, b) == 1) inv_[a] = b;
      }
    }
  }

  std::uint32_t p_, d_, q_ = 1;
  std::vector<Residue> modulus_;
  std::vector<std::uint32_t> add_, mul_, neg_, inv_;
};

}  // namespace soclelab
