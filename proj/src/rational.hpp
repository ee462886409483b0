// Exact rational scalars and small helpers shared across the library.
//
// All algebraic data (structure constants, group coordinates, digits) lives
// over Q. GMP's mpq_class keeps everything in canonical reduced form.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilc {

using Rat = mpq_class;
using Int = mpz_class;

using VecQ = std::vector<Rat>;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Parses "p/q" or "p" (reduced output). Throws std::invalid_argument on junk.
inline Rat parse_rat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rat r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: " + s);
  r.canonicalize();
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  return r;
}

// Serializes reduced form, "p/q" or plain "p" for integers.
inline std::string rat_str(const Rat& r) {
  return r.get_str();
}

inline Rat pow2(long e) {
  Rat r;
  if (e >= 0) {
    mpz_ui_pow_ui(r.get_num_mpz_t(), 2, static_cast<unsigned long>(e));
  } else {
    r = 1;
    mpz_ui_pow_ui(r.get_den_mpz_t(), 2, static_cast<unsigned long>(-e));
  }
  return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline VecQ zero_vec(std::size_t n) { return VecQ(n, Rat(0)); }

inline VecQ unit_vec(std::size_t n, std::size_t i) {
  VecQ v(n, Rat(0));
  v[i] = 1;
  return v;
}

inline bool is_zero_vec(const VecQ& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline VecQ add(const VecQ& a, const VecQ& b) {
  VecQ r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline VecQ sub(const VecQ& a, const VecQ& b) {
  VecQ r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline VecQ neg(const VecQ& a) {
  VecQ r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline VecQ scale(const Rat& t, const VecQ& a) {
  VecQ r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = t * a[i];
  return r;
}

inline void add_in_place(VecQ& a, const VecQ& b, const Rat& t) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (b[i] != 0) a[i] += t * b[i];
}

}  // namespace nilc
