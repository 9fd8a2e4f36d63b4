#pragma once

// Exact rationals with an int64 fast path.
//
// Values are kept in lowest terms with a positive denominator.  While both
// parts fit in int64 no heap storage is used; any overflow promotes the value
// to a GMP rational, and results that fit again are demoted.

#include <cstdint>
#include <memory>
#include <string>

#include <gmpxx.h>

namespace eqp {

class Rat {
 public:
  Rat() = default;
  Rat(long long n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Rat(long long n, long long d);
  explicit Rat(const mpq_class& q);

  Rat(const Rat& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rat(Rat&&) noexcept = default;
  Rat& operator=(const Rat& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rat& operator=(Rat&&) noexcept = default;

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const;
  int sign() const;
  bool is_small() const { return !big_; }

  mpq_class to_mpq() const;
  std::string str() const;
  // Floor and ceiling as integers; throws if they do not fit in int64.
  long long floor() const;
  long long ceil() const;
  double to_double() const;

  Rat operator-() const;
  Rat inverse() const;

  friend Rat operator+(const Rat& a, const Rat& b);
  friend Rat operator-(const Rat& a, const Rat& b);
  friend Rat operator*(const Rat& a, const Rat& b);
  friend Rat operator/(const Rat& a, const Rat& b);
  Rat& operator+=(const Rat& b) { return *this = *this + b; }
  Rat& operator-=(const Rat& b) { return *this = *this - b; }
  Rat& operator*=(const Rat& b) { return *this = *this * b; }
  Rat& operator/=(const Rat& b) { return *this = *this / b; }

  // this += a * b, the inner step of every convolution.
  void add_mul(const Rat& a, const Rat& b);

  friend bool operator==(const Rat& a, const Rat& b);
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b);
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  long long num_small() const { return num_; }
  long long den_small() const { return den_; }

 private:
  static Rat from_mpq(mpq_class q);

  long long num_ = 0;
  long long den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

}  // namespace eqp
