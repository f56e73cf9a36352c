#pragma once

#include <mpfr.h>

#include <cassert>
#include <string>
#include <utility>

#include "cakecut/rat.hpp"

namespace cakecut {

inline constexpr mpfr_prec_t kBfPrecision = 256;

/// 256-bit float, RAII wrapper around mpfr_t.
class Bf {
 public:
  Bf() { mpfr_init2(x_, kBfPrecision); mpfr_set_zero(x_, 1); }
  Bf(const Bf& o) { mpfr_init2(x_, kBfPrecision); mpfr_set(x_, o.x_, MPFR_RNDN); }
  Bf(Bf&& o) noexcept { mpfr_init2(x_, kBfPrecision); mpfr_swap(x_, o.x_); }
  Bf& operator=(Bf o) noexcept { mpfr_swap(x_, o.x_); return *this; }
  ~Bf() { mpfr_clear(x_); }

  mpfr_ptr get() { return x_; }
  mpfr_srcptr get() const { return x_; }

  static Bf from_rat(const Rat& r, mpfr_rnd_t rnd) {
    Bf b;
    mpfr_set_q(b.x_, r.get_mpq_t(), rnd);
    return b;
  }

  double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }

  std::string to_decimal(int digits = 12) const {
    char buf[128];
    mpfr_snprintf(buf, sizeof(buf), "%.*Rg", digits, x_);
    return std::string(buf);
  }

  friend bool operator<(const Bf& a, const Bf& b) { return mpfr_cmp(a.x_, b.x_) < 0; }
  friend bool operator<=(const Bf& a, const Bf& b) { return mpfr_cmp(a.x_, b.x_) <= 0; }
  friend bool operator==(const Bf& a, const Bf& b) { return mpfr_cmp(a.x_, b.x_) == 0; }

 private:
  mpfr_t x_;
};

/// Directed-rounding bracket [lo, hi] around a nonnegative real. Used for the
/// handful of irrational quantities (rho-th powers, geometric means, the
/// constant e) so that every inequality check rounds in the sound direction.
struct BfI {
  Bf lo, hi;

  static BfI from_rat(const Rat& r) {
    return {Bf::from_rat(r, MPFR_RNDD), Bf::from_rat(r, MPFR_RNDU)};
  }

  static BfI from_ul(unsigned long v) {
    BfI b;
    mpfr_set_ui(b.lo.get(), v, MPFR_RNDD);
    mpfr_set_ui(b.hi.get(), v, MPFR_RNDU);
    return b;
  }

  static BfI euler_e() {
    BfI b;
    mpfr_t one;
    mpfr_init2(one, kBfPrecision);
    mpfr_set_ui(one, 1, MPFR_RNDN);
    mpfr_exp(b.lo.get(), one, MPFR_RNDD);
    mpfr_exp(b.hi.get(), one, MPFR_RNDU);
    mpfr_clear(one);
    return b;
  }

  BfI operator+(const BfI& o) const {
    BfI r;
    mpfr_add(r.lo.get(), lo.get(), o.lo.get(), MPFR_RNDD);
    mpfr_add(r.hi.get(), hi.get(), o.hi.get(), MPFR_RNDU);
    return r;
  }

  BfI operator-(const BfI& o) const {
    BfI r;
    mpfr_sub(r.lo.get(), lo.get(), o.hi.get(), MPFR_RNDD);
    mpfr_sub(r.hi.get(), hi.get(), o.lo.get(), MPFR_RNDU);
    return r;
  }

  // Both operands nonnegative.
  BfI operator*(const BfI& o) const {
    BfI r;
    mpfr_mul(r.lo.get(), lo.get(), o.lo.get(), MPFR_RNDD);
    mpfr_mul(r.hi.get(), hi.get(), o.hi.get(), MPFR_RNDU);
    return r;
  }

  // Divisor strictly positive.
  BfI operator/(const BfI& o) const {
    BfI r;
    mpfr_div(r.lo.get(), lo.get(), o.hi.get(), MPFR_RNDD);
    mpfr_div(r.hi.get(), hi.get(), o.lo.get(), MPFR_RNDU);
    return r;
  }

  /// x^(p/q) for nonnegative x and positive integers p, q.
  BfI pow(unsigned long p, unsigned long q) const {
    BfI r;
    mpfr_pow_ui(r.lo.get(), lo.get(), p, MPFR_RNDD);
    mpfr_pow_ui(r.hi.get(), hi.get(), p, MPFR_RNDU);
    if (q != 1) {
      mpfr_rootn_ui(r.lo.get(), r.lo.get(), q, MPFR_RNDD);
      mpfr_rootn_ui(r.hi.get(), r.hi.get(), q, MPFR_RNDU);
    }
    return r;
  }

  /// x^rho for a positive rational exponent.
  BfI pow(const Rat& rho) const {
    return pow(rho.get_num().get_ui(), rho.get_den().get_ui());
  }

  /// Certified a >= b: true only when the brackets prove it.
  friend bool certainly_geq(const BfI& a, const BfI& b) { return b.hi <= a.lo; }
  friend bool certainly_leq(const BfI& a, const BfI& b) { return a.hi <= b.lo; }

  Bf mid() const {
    Bf m;
    mpfr_add(m.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_ui(m.get(), m.get(), 2, MPFR_RNDN);
    return m;
  }

  std::string to_decimal(int digits = 12) const { return mid().to_decimal(digits); }
};

}  // namespace cakecut
