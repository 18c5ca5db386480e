#include "etalecup/arith.hpp"

#include <algorithm>
#include <array>

namespace etalecup {

namespace mp = boost::multiprecision;

Integer Rng::below(const Integer& bound) {
  if (bound <= 0) throw InvalidInput("Rng::below needs a positive bound");
  const unsigned bits = msb(bound) + 1;
  for (;;) {
    Integer x = 0;
    for (unsigned got = 0; got < bits; got += 64) {
      x <<= 64;
      x |= Integer(next());
    }
    x >>= (64 - bits % 64) % 64;
    if (x < bound) return x;
  }
}

long Rng::below_long(long bound) {
  return static_cast<long>(below(Integer(bound)));
}

Integer Factorization::reassemble() const {
  Integer out = sign;
  for (const auto& [p, e] : factors)
    for (unsigned i = 0; i < e; ++i) out *= p;
  return out;
}

Integer pow_mod(Integer base, Integer exp, const Integer& mod) {
  if (mod <= 0) throw InvalidInput("pow_mod: modulus must be positive");
  base %= mod;
  if (base < 0) base += mod;
  return mp::powm(base, exp, mod);
}

Integer inv_mod(const Integer& a, const Integer& mod) {
  // extended Euclid; gcd must be 1
  Integer old_r = a % mod, r = mod, old_s = 1, s = 0;
  if (old_r < 0) old_r += mod;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw InvalidInput("inv_mod: element not invertible");
  old_s %= mod;
  if (old_s < 0) old_s += mod;
  return old_s;
}

Integer gcd_int(Integer a, Integer b) { return mp::gcd(a, b); }

Integer lcm_int(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return mp::abs(a / mp::gcd(a, b) * b);
}

long v_adic(Integer x, const Integer& p) {
  if (x == 0) throw InvalidInput("v_adic of zero");
  long v = 0;
  x = mp::abs(x);
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

long v_adic_rat(const Rational& x, const Integer& p) {
  if (x == 0) throw InvalidInput("v_adic_rat of zero");
  return v_adic(numerator(x), p) - v_adic(denominator(x), p);
}

Integer isqrt(const Integer& n) {
  if (n < 0) throw InvalidInput("isqrt of negative");
  return mp::sqrt(n);
}

bool is_square(const Integer& n) {
  if (n < 0) return false;
  Integer r = mp::sqrt(n);
  return r * r == n;
}

namespace {

bool miller_rabin_witness(const Integer& n, const Integer& a, const Integer& d,
                          unsigned s) {
  Integer x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (unsigned i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == n - 1) return false;
  }
  return true;  // a witnesses compositeness
}

// Strong Lucas probable-prime test with Selfridge's parameter choice.
bool strong_lucas_prp(const Integer& n) {
  // find D = 5, -7, 9, -11, ... with (D|n) = -1
  Integer d = 5;
  for (;;) {
    Integer g = mp::gcd(mp::abs(d), n);
    if (g > 1 && g < n) return false;
    if (jacobi_symbol(d, n) == -1) break;
    d = d > 0 ? -(d + 2) : -(d - 2);
    if (mp::abs(d) > 1000) {
      // n is almost certainly a perfect square at this point
      if (is_square(n)) return false;
    }
  }
  const Integer p = 1, q = (1 - d) / 4;
  Integer k = n + 1;
  unsigned s = 0;
  while (k % 2 == 0) {
    k /= 2;
    ++s;
  }
  // compute U_k, V_k by binary ladder
  Integer u = 1, v = p, qk = q % n;
  if (qk < 0) qk += n;
  const Integer inv2 = inv_mod(2, n);
  for (long i = static_cast<long>(msb(k)) - 1; i >= 0; --i) {
    u = u * v % n;
    v = (v * v - 2 * qk) % n;
    qk = qk * qk % n;
    if (bit_test(k, static_cast<unsigned>(i))) {
      Integer u2 = (u * p + v) % n * inv2 % n;
      Integer v2 = ((v * p + u * d % n) % n) * inv2 % n;
      u = u2;
      v = v2;
      qk = qk * (q % n) % n;
    }
    if (u < 0) u += n;
    if (v < 0) v += n;
    if (qk < 0) qk += n;
  }
  if (u == 0 || v == 0) return true;
  for (unsigned i = 1; i < s; ++i) {
    v = (v * v - 2 * qk) % n;
    if (v < 0) v += n;
    if (v == 0) return true;
    qk = qk * qk % n;
  }
  return false;
}

const std::array<unsigned, 12> kMrBases = {2,  3,  5,  7,  11, 13,
                                           17, 19, 23, 29, 31, 37};

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> table = [] {
    constexpr std::uint32_t limit = 1000000;
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= limit; ++i) {
      if (!composite[i]) {
        out.push_back(i);
        for (std::uint64_t j = std::uint64_t(i) * i; j <= limit; j += i)
          composite[static_cast<std::uint32_t>(j)] = true;
      }
    }
    return out;
  }();
  return table;
}

Integer pollard_brent(const Integer& n, Rng& rng) {
  // Brent's cycle variant; n odd composite, not a prime power edge case here.
  for (;;) {
    Integer y = rng.below(n - 3) + 2;
    Integer c = rng.below(n - 2) + 1;
    Integer m = 128, g = 1, r = 1, q = 1, x = 0, ys = 0;
    while (g == 1) {
      x = y;
      for (Integer i = 0; i < r; ++i) y = (y * y + c) % n;
      Integer k = 0;
      while (k < r && g == 1) {
        ys = y;
        Integer lim = std::min(m, r - k);
        for (Integer i = 0; i < lim; ++i) {
          y = (y * y + c) % n;
          q = q * mp::abs(x - y) % n;
        }
        g = mp::gcd(q, n);
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      g = 1;
      do {
        ys = (ys * ys + c) % n;
        g = mp::gcd(mp::abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_rec(Integer n, std::map<Integer, unsigned>& out, Rng& rng) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  Integer d = pollard_brent(n, rng);
  factor_rec(d, out, rng);
  factor_rec(n / d, out, rng);
}

}  // namespace

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  Integer d = n - 1;
  unsigned s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  static const Integer two64 = Integer(1) << 64;
  for (unsigned a : kMrBases) {
    if (miller_rabin_witness(n, a, d, s)) return false;
  }
  if (n < two64) return true;  // the 12-base set is deterministic here
  return strong_lucas_prp(n);
}

Factorization factor_integer(const Integer& m, Rng* rng) {
  if (m == 0) throw InvalidInput("factor_integer: zero has no factorization");
  static const Integer bound = Integer(1) << 96;
  if (mp::abs(m) >= bound) throw Unsupported("factor_integer: |m| >= 2^96");
  Factorization f;
  f.value = m;
  f.sign = m < 0 ? -1 : 1;
  Integer n = mp::abs(m);
  for (std::uint32_t p : small_primes()) {
    if (Integer(p) * p > n) break;
    while (n % p == 0) {
      ++f.factors[p];
      n /= p;
    }
  }
  if (n > 1) {
    if (is_prime(n)) {
      ++f.factors[n];
    } else {
      Rng local;
      Rng& r = rng ? *rng : local;
      factor_rec(n, f.factors, r);
    }
  }
  return f;
}

int jacobi_symbol(const Integer& a_in, const Integer& m_in) {
  if (m_in <= 0 || m_in % 2 == 0)
    throw InvalidInput("jacobi_symbol: modulus must be positive and odd");
  Integer a = a_in % m_in, m = m_in;
  if (a < 0) a += m;
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      Integer r = m % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, m);
    if (a % 4 == 3 && m % 4 == 3) result = -result;
    a %= m;
  }
  return m == 1 ? result : 0;
}

namespace {

// Tonelli-Shanks mod an odd prime p; a must be a quadratic residue unit.
Integer sqrt_mod_prime(const Integer& a, const Integer& p) {
  if (p % 4 == 3) return pow_mod(a, (p + 1) / 4, p);
  Integer q = p - 1;
  unsigned s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  Integer z = 2;
  while (jacobi_symbol(z, p) != -1) ++z;
  Integer m = s, c = pow_mod(z, q, p), t = pow_mod(a, q, p),
          r = pow_mod(a, (q + 1) / 2, p);
  while (t != 1) {
    Integer t2 = t;
    unsigned i = 0;
    while (t2 != 1) {
      t2 = t2 * t2 % p;
      ++i;
    }
    Integer b = c;
    for (Integer j = 0; j < m - i - 1; ++j) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return r;
}

}  // namespace

std::optional<Integer> sqrt_mod_prime_power(const Integer& a_in,
                                            const Integer& p, unsigned k) {
  if (k == 0 || p < 2 || !is_prime(p))
    throw InvalidInput("sqrt_mod_prime_power: need prime p and k >= 1");
  Integer pk = 1;
  for (unsigned i = 0; i < k; ++i) pk *= p;
  Integer a = a_in % pk;
  if (a < 0) a += pk;
  if (a == 0) return Integer(0);
  if (a % p == 0)
    throw InvalidInput("sqrt_mod_prime_power: a must be a unit or zero");

  if (p == 2) {
    if (k == 1) return Integer(1);
    if (k == 2) return a == 1 ? std::optional<Integer>(1) : std::nullopt;
    if (a % 8 != 1) return std::nullopt;
    // lift: maintain r^2 = a (mod 2^j)
    Integer r = 1;
    for (unsigned j = 3; j < k; ++j) {
      Integer mod_next = Integer(1) << (j + 1);
      if ((r * r - a) % mod_next != 0) r += Integer(1) << (j - 1);
    }
    r %= pk;
    Integer best = r;
    for (Integer cand : {pk - r, (r + pk / 2) % pk, (pk - r + pk / 2) % pk})
      best = std::min(best, cand);
    return best;
  }

  if (jacobi_symbol(a, p) != 1) return std::nullopt;
  Integer r = sqrt_mod_prime(a % p, p);
  // Hensel: double precision each step
  Integer mod = p;
  while (mod < pk) {
    mod = std::min(mod * mod, pk);
    Integer inv = inv_mod(2 * r % mod, mod);
    r = (r - (r * r - a) % mod * inv) % mod;
    if (r < 0) r += mod;
    r %= pk;
  }
  return std::min(r, pk - r);
}

std::pair<Integer, Integer> crt_combine(
    const std::vector<std::pair<Integer, Integer>>& congruences) {
  Integer x = 0, m = 1;
  for (const auto& [r_in, mod] : congruences) {
    if (mod <= 0) throw InvalidInput("crt_combine: moduli must be positive");
    Integer r = r_in % mod;
    if (r < 0) r += mod;
    Integer g = mp::gcd(m, mod);
    if ((r - x) % g != 0)
      throw InvalidInput("crt_combine: inconsistent congruences");
    Integer m2 = mod / g;
    Integer t = (r - x) / g % m2 * inv_mod(m / g % m2, m2) % m2;
    if (t < 0) t += m2;
    x += m * t;
    m *= m2;
    x %= m;
  }
  return {x, m};
}

Integer primitive_root_mod_pk(const Integer& p, unsigned k) {
  if (p == 2) throw InvalidInput("primitive_root_mod_pk: p must be odd");
  Factorization f = factor_integer(p - 1);
  Integer g = 2;
  for (;; ++g) {
    bool ok = true;
    for (const auto& [q, e] : f.factors) {
      (void)e;
      if (pow_mod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) break;
  }
  if (k > 1 && pow_mod(g, p - 1, p * p) == 1) g += p;
  return g;
}

}  // namespace etalecup
