#include "eqp/qseries.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

namespace eqp {

namespace {

std::atomic<int> g_qmax_grid{30 * kGridPerQ};
thread_local int t_qmax_grid = -1;

const Rat& zero_rat() {
  static const Rat z;
  return z;
}

std::vector<int> nonzero_positions(const std::vector<Rat>& c) {
  std::vector<int> out;
  out.reserve(c.size());
  for (int i = 0; i < static_cast<int>(c.size()); ++i)
    if (!c[i].is_zero()) out.push_back(i);
  return out;
}

std::string grid_exp_str(int g) {
  if (g % kGridPerQ == 0) return std::to_string(g / kGridPerQ);
  return "(" + std::to_string(g) + "/" + std::to_string(kGridPerQ) + ")";
}

}  // namespace

int qmax() { return qmax_grid() / kGridPerQ; }
int qmax_grid() { return t_qmax_grid >= 0 ? t_qmax_grid : g_qmax_grid.load(); }

ScopedThreadQmaxGrid::ScopedThreadQmaxGrid(int grid) : saved_(t_qmax_grid) {
  if (grid < 0) throw std::invalid_argument("qmax must be non-negative");
  t_qmax_grid = grid;
}
ScopedThreadQmaxGrid::~ScopedThreadQmaxGrid() { t_qmax_grid = saved_; }
void set_qmax(int q_units) {
  if (q_units < 0) throw std::invalid_argument("qmax must be non-negative");
  g_qmax_grid.store(q_units * kGridPerQ);
}

int to_grid(const Rat& e) {
  Rat g = e * Rat(kGridPerQ);
  if (!g.is_integer()) throw std::invalid_argument("q-exponent " + e.str() + " is not on the half-integer grid");
  return static_cast<int>(g.floor());
}

QSeries::QSeries(const Rat& constant) {
  if (!constant.is_zero()) c_.push_back(constant);
}

QSeries QSeries::monomial_grid(const Rat& coef, int grid_exp) {
  QSeries s;
  if (!coef.is_zero()) {
    s.val_ = grid_exp;
    s.c_.push_back(coef);
  }
  s.normalize();
  return s;
}

QSeries QSeries::from_dense(int val, std::vector<Rat> coeffs, int prec) {
  QSeries s;
  s.val_ = val;
  s.c_ = std::move(coeffs);
  s.prec_ = prec;
  s.normalize();
  return s;
}

QSeries QSeries::zero_to(int prec) {
  QSeries s;
  s.prec_ = prec;
  s.normalize();
  return s;
}

void QSeries::normalize() {
  const int cap = qmax_grid();
  if (prec_ < kExact) prec_ = std::min(prec_, cap);
  size_t lead = 0;
  while (lead < c_.size() && c_[lead].is_zero()) ++lead;
  if (lead == c_.size()) {
    c_.clear();
    val_ = 0;
    return;
  }
  if (lead > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
    val_ += static_cast<int>(lead);
  }
  int limit = prec_ < kExact ? prec_ : cap;
  if (top() > limit) {
    bool dropped_nonzero = false;
    while (!c_.empty() && top() > limit) {
      if (!c_.back().is_zero()) dropped_nonzero = true;
      c_.pop_back();
    }
    if (dropped_nonzero && prec_ >= kExact) prec_ = cap;
  }
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  if (c_.empty()) val_ = 0;
}

const Rat& QSeries::coeff_grid(int g) const {
  if (c_.empty() || g < val_ || g > top()) return zero_rat();
  return c_[static_cast<size_t>(g - val_)];
}

bool QSeries::uses_half_powers() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero() && (val_ + static_cast<int>(i)) % kGridPerQ != 0) return true;
  return false;
}

QSeries QSeries::with_prec(int prec) const {
  QSeries s = *this;
  s.prec_ = std::min(prec_, prec);
  s.normalize();
  return s;
}

QSeries QSeries::shifted(int grid) const {
  QSeries s = *this;
  s.val_ += grid;
  s.prec_ = is_exact() ? kExact : sat_add(prec_, grid);
  s.normalize();
  return s;
}

QSeries QSeries::operator-() const {
  QSeries s = *this;
  for (auto& x : s.c_) x = -x;
  return s;
}

QSeries operator+(const QSeries& a, const QSeries& b) {
  if (b.c_.empty() && b.prec_ >= a.prec_) return a;
  if (a.c_.empty() && a.prec_ >= b.prec_) return b;
  QSeries s;
  s.prec_ = std::min(a.prec_, b.prec_);
  int lo, hi;
  if (a.c_.empty()) {
    lo = b.val_;
    hi = b.top();
  } else if (b.c_.empty()) {
    lo = a.val_;
    hi = a.top();
  } else {
    lo = std::min(a.val_, b.val_);
    hi = std::max(a.top(), b.top());
  }
  hi = std::min(hi, s.prec_ < kExact ? s.prec_ : hi);
  if (hi < lo) {
    s.normalize();
    return s;
  }
  s.val_ = lo;
  s.c_.assign(static_cast<size_t>(hi - lo + 1), Rat());
  for (size_t i = 0; i < a.c_.size(); ++i) {
    int e = a.val_ + static_cast<int>(i);
    if (e > hi) break;
    s.c_[static_cast<size_t>(e - lo)] = a.c_[i];
  }
  for (size_t i = 0; i < b.c_.size(); ++i) {
    int e = b.val_ + static_cast<int>(i);
    if (e > hi) break;
    auto& t = s.c_[static_cast<size_t>(e - lo)];
    t = t + b.c_[i];
  }
  s.normalize();
  return s;
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

QSeries operator*(const QSeries& a, const QSeries& b) {
  QSeries s;
  // an exact factor contributes no error term
  int pa = a.is_exact() ? kExact : QSeries::sat_add(a.prec_, b.valuation());
  int pb = b.is_exact() ? kExact : QSeries::sat_add(b.prec_, a.valuation());
  s.prec_ = std::min(pa, pb);
  if (a.c_.empty() || b.c_.empty()) {
    s.normalize();
    return s;
  }
  const int cap = qmax_grid();
  int lo = a.val_ + b.val_;
  int hi = a.top() + b.top();
  int limit = s.prec_ < kExact ? s.prec_ : cap;
  bool truncated = hi > limit;
  hi = std::min(hi, limit);
  if (hi < lo) {
    if (truncated && s.prec_ >= kExact) s.prec_ = cap;
    s.normalize();
    return s;
  }
  s.val_ = lo;
  s.c_.assign(static_cast<size_t>(hi - lo + 1), Rat());
  auto na = nonzero_positions(a.c_);
  auto nb = nonzero_positions(b.c_);
  const int span = hi - lo;
  for (int i : na) {
    if (i > span) break;
    const Rat& x = a.c_[static_cast<size_t>(i)];
    for (int j : nb) {
      if (i + j > span) break;
      s.c_[static_cast<size_t>(i + j)].add_mul(x, b.c_[static_cast<size_t>(j)]);
    }
  }
  if (truncated && s.prec_ >= kExact) s.prec_ = cap;
  s.normalize();
  return s;
}

QSeries QSeries::scaled(const Rat& r) const {
  if (r.is_zero()) return zero_to(prec_ >= kExact ? kExact : sat_add(prec_, 0));
  QSeries s = *this;
  for (auto& x : s.c_) x = x * r;
  return s;
}

QSeries QSeries::inverse() const {
  if (c_.empty()) throw ZeroSeries("inverse of a series that vanishes in-window");
  const int v = val_;
  if (c_.size() == 1 && is_exact()) return monomial_grid(c_[0].inverse(), -v);
  const int cap = qmax_grid();
  // relative precision is preserved: prec(1/s) = prec(s) - 2 v
  int prec = is_exact() ? cap : std::min(cap, sat_add(prec_, -2 * v));
  QSeries s;
  s.prec_ = prec;
  int n_terms = prec - (-v) + 1;
  if (n_terms <= 0) {
    s.normalize();
    return s;
  }
  std::vector<Rat> w(static_cast<size_t>(n_terms));
  Rat inv0 = c_[0].inverse();
  w[0] = inv0;
  auto nu = nonzero_positions(c_);
  for (int n = 1; n < n_terms; ++n) {
    Rat acc;
    for (int j : nu) {
      if (j == 0) continue;
      if (j > n) break;
      acc.add_mul(c_[static_cast<size_t>(j)], w[static_cast<size_t>(n - j)]);
    }
    w[static_cast<size_t>(n)] = -(acc * inv0);
  }
  s.val_ = -v;
  s.c_ = std::move(w);
  s.normalize();
  return s;
}

QSeries QSeries::exp() const {
  if (c_.empty()) {
    QSeries one(Rat(1));
    one.prec_ = prec_ >= kExact ? kExact : std::max(prec_, 0);
    one.normalize();
    return one;
  }
  if (val_ <= 0) throw std::domain_error("exp of a q-series needs strictly positive valuation");
  const int cap = qmax_grid();
  int prec = is_exact() ? cap : std::min(prec_, cap);
  if (prec < 0) return zero_to(prec);
  int n_terms = prec + 1;
  std::vector<Rat> e(static_cast<size_t>(n_terms));
  e[0] = Rat(1);
  for (int n = 1; n < n_terms; ++n) {
    Rat acc;
    for (int k = val_; k <= std::min(n, top()); ++k) {
      const Rat& sk = c_[static_cast<size_t>(k - val_)];
      if (sk.is_zero()) continue;
      acc.add_mul(sk * Rat(k), e[static_cast<size_t>(n - k)]);
    }
    e[static_cast<size_t>(n)] = acc / Rat(n);
  }
  QSeries s;
  s.val_ = 0;
  s.c_ = std::move(e);
  s.prec_ = prec;
  s.normalize();
  return s;
}

QSeries QSeries::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  QSeries result(Rat(1));
  QSeries base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

std::optional<int> first_difference(const QSeries& a, const QSeries& b) {
  int limit = std::min(a.prec_, b.prec_);
  int lo = INT_MAX, hi = INT_MIN;
  if (!a.c_.empty()) {
    lo = std::min(lo, a.val_);
    hi = std::max(hi, a.top());
  }
  if (!b.c_.empty()) {
    lo = std::min(lo, b.val_);
    hi = std::max(hi, b.top());
  }
  hi = std::min(hi, limit);
  for (int e = lo; e <= hi; ++e)
    if (a.coeff_grid(e) != b.coeff_grid(e)) return e;
  return std::nullopt;
}

bool operator==(const QSeries& a, const QSeries& b) {
  return a.prec_ == b.prec_ && a.val_ == b.val_ && a.c_ == b.c_;
}

std::string QSeries::str(std::optional<int> upto) const {
  std::ostringstream os;
  bool first = true;
  int cut = upto ? std::min(*upto, prec_) : prec_;
  for (size_t i = 0; i < c_.size(); ++i) {
    const Rat& r = c_[i];
    if (r.is_zero()) continue;
    int g = val_ + static_cast<int>(i);
    if (upto && g > *upto) break;
    Rat mag = r.sign() < 0 ? -r : r;
    if (first) {
      if (r.sign() < 0) os << "-";
    } else {
      os << (r.sign() < 0 ? " - " : " + ");
    }
    first = false;
    if (g == 0) {
      os << mag.str();
    } else {
      if (!mag.is_one()) os << mag.str() << "*";
      os << "q";
      if (g != kGridPerQ) os << "^" << grid_exp_str(g);
    }
  }
  if (cut < kExact) {
    if (!first) os << " + ";
    os << "O(q^" << grid_exp_str(cut + 1) << ")";
  } else if (first) {
    os << "0";
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const QSeries& s) { return os << s.str(); }

QSeries q_integer(long long n) {
  if (n == 0) return QSeries();
  if (n < 0) return -q_integer(-n);
  // exponents -(n-1), -(n-3), ..., n-1 in q units
  int lo = static_cast<int>(-(n - 1) * kGridPerQ);
  int hi = static_cast<int>((n - 1) * kGridPerQ);
  std::vector<Rat> c(static_cast<size_t>(hi - lo + 1));
  for (int g = lo; g <= hi; g += 2 * kGridPerQ) c[static_cast<size_t>(g - lo)] = Rat(1);
  return QSeries::from_dense(lo, std::move(c));
}

}  // namespace eqp
