#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace csep {

using Int = mpz_class;
using Rat = mpq_class;

enum class Errc {
  invalid_input,
  field_mismatch,
  division_by_zero,
  not_p_integral,
  ramified_prime,
  precision_exceeded,
  unsupported_eigenvalue,
  enumeration_cap,
  digest_mismatch,
  bad_certificate,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

inline Int rat_num(const Rat& q) { return Int(q.get_num()); }
inline Int rat_den(const Rat& q) { return Int(q.get_den()); }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rat pow_rat(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  Rat b = base;
  unsigned long a = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  if (e < 0) {
    if (b == 0) throw Error(Errc::division_by_zero, "0 raised to a negative power");
    b = 1 / b;
  }
  Rat r(1);
  while (a) {
    if (a & 1) r *= b;
    b *= b;
    a >>= 1;
  }
  return r;
}

// Parses "n" or "n/d" in base 10.  Rejects zero denominators and garbage.
inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw Error(Errc::invalid_input, "empty rational literal");
  for (size_t i = 0; i < s.size(); ++i) {
    char ch = s[i];
    bool ok = (ch >= '0' && ch <= '9') || (ch == '-' && i == 0) || ch == '/';
    if (!ok) throw Error(Errc::invalid_input, "malformed rational literal: " + s);
  }
  Rat q;
  if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
    throw Error(Errc::invalid_input, "malformed rational literal: " + s);
  if (q.get_den() == 0)
    throw Error(Errc::invalid_input, "zero denominator in rational literal: " + s);
  q.canonicalize();
  return q;
}

inline std::string rat_to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Int int_from_string(const std::string& s) {
  Rat q = rat_from_string(s);
  if (!is_integer(q)) throw Error(Errc::invalid_input, "expected an integer: " + s);
  return rat_num(q);
}

inline uint64_t to_u64(const Int& n) {
  if (n < 0 || !n.fits_ulong_p()) throw Error(Errc::invalid_input, "value out of range");
  return n.get_ui();
}

}  // namespace csep
