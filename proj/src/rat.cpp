#include "eqp/rat.hpp"

#include <climits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace eqp {

namespace {

inline long long gcd_ll(long long a, long long b) {
  // operands are never LLONG_MIN here: every producer goes through the
  // overflow-checked paths below
  return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

inline bool fits(const mpz_class& z) { return z.fits_slong_p(); }

}  // namespace

Rat::Rat(long long n, long long d) {
  if (d == 0) throw std::domain_error("Rat: zero denominator");
  if (n == LLONG_MIN || d == LLONG_MIN) {
    *this = from_mpq(mpq_class(mpz_class(std::to_string(n)), mpz_class(std::to_string(d))));
    return;
  }
  if (d < 0) {
    n = -n;
    d = -d;
  }
  long long g = gcd_ll(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num_ = n;
  den_ = d;
}

Rat::Rat(const mpq_class& q) { *this = from_mpq(q); }

Rat Rat::from_mpq(mpq_class q) {
  q.canonicalize();
  Rat r;
  if (fits(q.get_num()) && fits(q.get_den()) && q.get_num().get_si() != LLONG_MIN) {
    r.num_ = q.get_num().get_si();
    r.den_ = q.get_den().get_si();
  } else {
    r.num_ = 0;
    r.den_ = 1;
    r.big_ = std::make_unique<mpq_class>(std::move(q));
  }
  return r;
}

mpq_class Rat::to_mpq() const {
  if (big_) return *big_;
  mpq_class q;
  mpz_set_si(q.get_num_mpz_t(), num_);
  mpz_set_si(q.get_den_mpz_t(), den_);
  return q;
}

bool Rat::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rat::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

std::string Rat::str() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

long long Rat::floor() const {
  if (!big_) {
    long long q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
  if (!fits(f)) throw std::overflow_error("Rat::floor out of range");
  return f.get_si();
}

long long Rat::ceil() const { return -(-*this).floor(); }

double Rat::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

Rat Rat::operator-() const {
  if (!big_ && num_ != LLONG_MIN) {
    Rat r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  return from_mpq(-to_mpq());
}

Rat Rat::inverse() const {
  if (is_zero()) throw std::domain_error("Rat: inverse of zero");
  if (!big_) {
    Rat r;
    if (num_ > 0) {
      r.num_ = den_;
      r.den_ = num_;
    } else if (num_ != LLONG_MIN) {
      r.num_ = -den_;
      r.den_ = -num_;
    } else {
      return from_mpq(1 / to_mpq());
    }
    return r;
  }
  return from_mpq(1 / *big_);
}

Rat operator+(const Rat& a, const Rat& b) {
  if (!a.big_ && !b.big_) {
    long long n, d;
    if (a.den_ == b.den_) {
      if (!__builtin_add_overflow(a.num_, b.num_, &n)) {
        Rat r;
        if (a.den_ == 1) {
          r.num_ = n;
          return r;
        }
        long long g = gcd_ll(n, a.den_);
        r.num_ = g > 1 ? n / g : n;
        r.den_ = g > 1 ? a.den_ / g : a.den_;
        if (n == 0) r.den_ = 1;
        return r;
      }
    } else {
      long long g = std::gcd(a.den_, b.den_);
      long long da = a.den_ / g, db = b.den_ / g;
      long long t1, t2;
      if (!__builtin_mul_overflow(a.num_, db, &t1) && !__builtin_mul_overflow(b.num_, da, &t2) &&
          !__builtin_add_overflow(t1, t2, &n) && !__builtin_mul_overflow(a.den_, db, &d)) {
        Rat r;
        if (n == 0) return r;
        long long h = gcd_ll(n, g);
        r.num_ = n / h;
        r.den_ = d / h;
        return r;
      }
    }
  }
  return Rat::from_mpq(a.to_mpq() + b.to_mpq());
}

Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }

Rat operator*(const Rat& a, const Rat& b) {
  if (!a.big_ && !b.big_) {
    if (a.num_ == 0 || b.num_ == 0) return Rat();
    long long g1 = gcd_ll(a.num_, b.den_);
    long long g2 = gcd_ll(b.num_, a.den_);
    long long n, d;
    if (!__builtin_mul_overflow(a.num_ / g1, b.num_ / g2, &n) &&
        !__builtin_mul_overflow(a.den_ / g2, b.den_ / g1, &d)) {
      Rat r;
      r.num_ = n;
      r.den_ = d;
      return r;
    }
  }
  return Rat::from_mpq(a.to_mpq() * b.to_mpq());
}

Rat operator/(const Rat& a, const Rat& b) { return a * b.inverse(); }

void Rat::add_mul(const Rat& a, const Rat& b) {
  if (a.is_zero() || b.is_zero()) return;
  *this = *this + a * b;
}

bool operator==(const Rat& a, const Rat& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  return a.to_mpq() == b.to_mpq();
}

bool operator<(const Rat& a, const Rat& b) {
  if (!a.big_ && !b.big_) {
    __int128 l = static_cast<__int128>(a.num_) * b.den_;
    __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l < r;
  }
  return a.to_mpq() < b.to_mpq();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace eqp
