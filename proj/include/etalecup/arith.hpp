#pragma once
// Exact integer/rational arithmetic: factorization, Jacobi symbols, modular
// square roots, CRT, deterministic primality, and the shared seeded RNG.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace etalecup {

// Expression templates are disabled so arithmetic yields concrete values
// (usable with std::min, ?:, auto, ...).
using Integer =
    boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                  boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<
        boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

// Contract violations surface as typed exceptions; "expected absence" results
// (no square root, no norm-equation solution) are std::nullopt instead.
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct Unsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotInKernel : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotTorsion : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DescentFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every randomized subroutine draws from an Rng seeded with kDefaultSeed
// unless the caller overrides the seed, so repeated runs are identical.
inline constexpr std::uint64_t kDefaultSeed = 0x517cc1b727220a95ULL;

class Rng {
 public:
  explicit Rng(std::uint64_t seed = kDefaultSeed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  Integer below(const Integer& bound);  // uniform in [0, bound)
  long below_long(long bound);

 private:
  std::mt19937_64 eng_;
};

struct Factorization {
  Integer value;  // signed input
  int sign = 1;
  std::map<Integer, unsigned> factors;  // prime -> exponent, ascending
  Integer reassemble() const;
};

Integer pow_mod(Integer base, Integer exp, const Integer& mod);
Integer inv_mod(const Integer& a, const Integer& mod);
Integer gcd_int(Integer a, Integer b);
Integer lcm_int(const Integer& a, const Integer& b);
long v_adic(Integer x, const Integer& p);                 // v_p(x), x != 0
long v_adic_rat(const Rational& x, const Integer& p);     // extends to Q^x
Integer isqrt(const Integer& n);
bool is_square(const Integer& n);

// Deterministic Miller-Rabin for n < 2^64 (fixed witness set), with a strong
// Lucas test layered on top for larger inputs.
bool is_prime(const Integer& n);

// Trial division below 10^6, then Pollard rho (Brent cycles) on what is left.
// Input bound |m| < 2^96; m = 0 raises InvalidInput.
Factorization factor_integer(const Integer& m, Rng* rng = nullptr);

// Jacobi symbol (a|m); m must be positive and odd, else InvalidInput.
int jacobi_symbol(const Integer& a, const Integer& m);

// Square roots modulo p^k (Tonelli-Shanks + Hensel). `a` must be a unit
// mod p or literally zero; returns the smaller root, or nullopt if none.
std::optional<Integer> sqrt_mod_prime_power(const Integer& a, const Integer& p,
                                            unsigned k);

// Simultaneous congruences x = r_i (mod m_i); moduli need not be coprime,
// inconsistency raises InvalidInput. Returns (x, lcm of moduli).
std::pair<Integer, Integer> crt_combine(
    const std::vector<std::pair<Integer, Integer>>& congruences);

// Smallest primitive root mod p, lifted to a generator of (Z/p^k)^x (odd p).
Integer primitive_root_mod_pk(const Integer& p, unsigned k);

}  // namespace etalecup
