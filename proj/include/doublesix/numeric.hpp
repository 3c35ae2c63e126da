#pragma once

// Exact arithmetic primitives shared by every module: arbitrary-precision
// integers and rationals (GMP-backed), plus the handful of helpers the
// lattice and interpolation code needs. No floating point anywhere.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace doublesix {

using Int = mpz_class;
using Rat = mpq_class;

enum class Errc {
  UnknownLattice,
  NotDefinite,
  NotRootGenerated,
  NotASublattice,
  DimensionMismatch,
  BranchNotEven,
  BranchNotDisjoint,
  NotExceptional,
  NotAFiber,
  DuplicateLine,
  ConcurrentTriple,
  DegenerateFive,
  NotPencilFree,
  NotKummer,
  EulerMismatch,
  CertificateFailure,
  ParseError,
};

struct Error : std::runtime_error {
  Errc code;
  Error(Errc c, const std::string& what) : std::runtime_error(what), code(c) {}
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::UnknownLattice: return "UnknownLattice";
    case Errc::NotDefinite: return "NotDefinite";
    case Errc::NotRootGenerated: return "NotRootGenerated";
    case Errc::NotASublattice: return "NotASublattice";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::BranchNotEven: return "BranchNotEven";
    case Errc::BranchNotDisjoint: return "BranchNotDisjoint";
    case Errc::NotExceptional: return "NotExceptional";
    case Errc::NotAFiber: return "NotAFiber";
    case Errc::DuplicateLine: return "DuplicateLine";
    case Errc::ConcurrentTriple: return "ConcurrentTriple";
    case Errc::DegenerateFive: return "DegenerateFive";
    case Errc::NotPencilFree: return "NotPencilFree";
    case Errc::NotKummer: return "NotKummer";
    case Errc::EulerMismatch: return "EulerMismatch";
    case Errc::CertificateFailure: return "CertificateFailure";
    case Errc::ParseError: return "ParseError";
  }
  return "Error";
}

inline Int num(const Rat& r) { return r.get_num(); }
inline Int den(const Rat& r) { return r.get_den(); }

// mpq_class(a, b) does not reduce; every rational built from an arbitrary
// numerator/denominator pair must go through here
inline Rat make_rat(long numerator, long denominator) {
  Rat r(numerator, denominator);
  r.canonicalize();
  return r;
}

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// floor(sqrt(n)) for n >= 0.
inline Int isqrt(const Int& n) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

// Largest integer x with x <= r.
inline Int rat_floor(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), num(r).get_mpz_t(), den(r).get_mpz_t());
  return q;
}

inline Int rat_ceil(const Rat& r) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), num(r).get_mpz_t(), den(r).get_mpz_t());
  return q;
}

// floor(sqrt(r)) for r >= 0.
inline Int rat_sqrt_floor(const Rat& r) {
  if (r < 0) throw Error(Errc::DimensionMismatch, "sqrt of negative rational");
  // floor(sqrt(p/q)) = floor(sqrt(p*q)/q)
  Int pq = num(r) * den(r);
  return isqrt(pq) / den(r);
}

// ceil(sqrt(r)) for r >= 0.
inline Int rat_sqrt_ceil(const Rat& r) {
  Int f = rat_sqrt_floor(r);
  return (Rat(f) * Rat(f) == r) ? f : f + 1;
}

inline bool is_integer(const Rat& r) { return den(r) == 1; }

inline std::string to_string(const Int& v) { return v.get_str(); }

// Rationals serialize as "p/q" (or "p" when integral): the bit-exact CLI
// contract for arrangement files and reports.
inline std::string to_string(const Rat& v) {
  if (is_integer(v)) return num(v).get_str();
  return num(v).get_str() + "/" + den(v).get_str();
}

inline Rat parse_rat(const std::string& s) {
  try {
    Rat r(s);
    if (r.get_den() == 0) throw Error(Errc::ParseError, "zero denominator: " + s);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw Error(Errc::ParseError, "bad rational literal: " + s);
  }
}

// Small deterministic PRNG (xorshift64*), used for reproducible random
// arrangements and property tests across platforms.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed = 0x9e3779b97f4a7c15ull) : state(seed ? seed : 1) {}
  std::uint64_t next() {
    std::uint64_t x = state;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state = x;
    return x * 0x2545f4914f6cdd1dull;
  }
  // uniform in [lo, hi] inclusive
  long range(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

}  // namespace doublesix
