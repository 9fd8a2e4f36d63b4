#pragma once

// A degree-truncated Fock module for the three bosons, on which vertex
// terms act as explicit linear maps.  It is an oracle independent of the
// Wick-contraction engine: products of currents are formed by summing over
// explicit intermediate states.
//
// A basis state is prod_{f,m} f_{-m}^{n_{f,m}} |lambda> with total degree
// sum n_{f,m} m <= D, where lambda holds the P_f eigenvalues.  A vertex term
// maps a basis state to a combination of basis states, each times a single
// power of its variable, so matrix elements are monomials.

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "eqp/wakimoto.hpp"

namespace eqp {

struct InsufficientWindow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Weights = std::array<Rat, kFamilies>;

struct FockState {
  Weights weight;
  // occ[f * D + m - 1] is the multiplicity of f_{-m}
  std::vector<int> occ;
  int degree = 0;

  friend bool operator<(const FockState& x, const FockState& y) {
    return std::tie(x.degree, x.occ, x.weight) < std::tie(y.degree, y.occ, y.weight);
  }
  friend bool operator==(const FockState& x, const FockState& y) {
    return x.degree == y.degree && x.occ == y.occ && x.weight == y.weight;
  }
  std::string str() const;
};

// Components keyed by (state, power of the variable).
using FockVector = std::map<std::pair<FockState, Rat>, QSeries>;

class FockSpace {
 public:
  FockSpace(int k, int D);
  int level() const { return k_; }
  int cutoff() const { return D_; }
  FockState vacuum(const Weights& w = {}) const;
  // All basis states of degree <= D at weights w, ordered by degree.
  std::vector<FockState> basis(const Weights& w = {}) const;

  // f_n for a single oscillator (z-power 0).
  FockVector apply_mode(Family f, int n, const FockState& s) const;
  // sum_{f, 0<|n|<=D} coef(f, n) f_n of a form read at z = 1.
  FockVector apply_linear(const LinearForm& form, const FockState& s) const;
  // coeff z^zpow :exp(form(z)): on s, dropping components above degree D.
  FockVector apply_term(const VertexTerm& t, const FockState& s) const;

 private:
  int k_, D_;
};

// A current's action with per-state memoisation; safe to share across
// threads.
class FockAction {
 public:
  FockAction(const FockSpace& space, const Current& current);
  const FockVector& on(const FockState& s) const;
  const Current& current() const { return current_; }
  // zpow + sum_f delta_f lambda_f of term j: the variable power it adds on
  // top of the degree change.
  Rat offset(size_t j, const Weights& w) const;
  // The weight change of term j.
  Weights shift(size_t j) const;

 private:
  const FockSpace& space_;
  Current current_;
  mutable std::shared_mutex mu_;
  mutable std::map<FockState, std::unique_ptr<FockVector>> cache_;
};

// <t| X(z) Y(w) |s> (direct) or <t| Y(w) X(z) |s> (reversed) for one source
// state, as monomials z^a w^b per target.
struct TwoPoint {
  std::map<std::tuple<FockState, Rat, Rat>, QSeries> values;
  // Every monomial with b <= b_hi is complete (direct order).
  std::optional<Rat> b_hi;
  // Every monomial with b >= degree(t) + b_lo_rel is complete (reversed).
  std::optional<Rat> b_lo_rel;
  bool complete(const FockState& t, const Rat& b) const;
};
TwoPoint two_point(const FockAction& x, const FockAction& y, const FockState& s, Order order);

struct FockMismatch {
  std::string source, target;
  Rat z_exp, w_exp;
  int q_grid = 0;
  Rat lhs, rhs;
};

struct OracleReport {
  std::string id;
  bool pass = true;
  long long compared = 0;  // matrix-element monomials compared
  int certified_prec = kExact;
  std::optional<FockMismatch> first_mismatch;
  std::string detail;
};

// sign * delta(q^alpha w / z) * rhs(w)
struct DeltaTerm {
  int sign = 1;
  Rat alpha;
  Current rhs;
};

struct TwoPointSpec {
  std::string id;
  int window = 4;  // monomials with |a|, |b| <= window + 1 are compared
  Weights weights{};
  // prefactor z^zw_power w^zw_power sum of delta terms
  QSeries prefactor{Rat(1)};
  int zw_power = -1;
  std::vector<DeltaTerm> delta;
  bool parallel = true;
};

// X(z)Y(w) - Y(w)X(z) against the delta right-hand side (zero when `delta`
// is empty) on every basis state of degree <= D.
OracleReport check_two_point(const FockSpace& space, const Current& x, const Current& y, const TwoPointSpec& spec);

enum class DeltaRelation { ee, efp };
// [E+(z), E-(w)] (ee) or [e(z), f(w)] (efp) against the delta right-hand
// side 1/((q - 1/q) z w) (...).  The realized currents are divided by
// (q - 1/q) z first, which turns them into sum_n E_n z^{-n-1}.
// `drop_prefactor` removes 1/(q - 1/q) (a negative control).
OracleReport check_delta_relation(DeltaRelation which, const RealizationConfig& cfg, int D, int window,
                                  const Weights& weights = {}, bool drop_prefactor = false, bool parallel = true);

// [l_m, X_n] = 0 for X in {k+, k-, e, f, l} with l = build_l at k = -2.  With
// `reduced_at_any_level` the two-term reduced l is used instead, which also
// runs at other levels (the negative control).
std::vector<OracleReport> check_centrality_matrix(const RealizationConfig& cfg, int D, int window,
                                                  bool reduced_at_any_level = false, bool parallel = true);

// Mode-level checks on states of degree <= D for |n|, |m| <= nmax:
//   [f_n, f_m] = pairing delta_{n+m,0}, [P_f, e^{Q_f}] = [P_f, Q_f] e^{Q_f},
//   [H_n, H_m] = [2n][kn]/n delta_{n+m,0},
//   [H_n, E+-(z)] = +-([2n]/n) q^{-+k|n|/2} z^n E+-(z).
// `literal_exponent` uses q^{-+kn/2} instead, which fails for n < 0.
std::vector<OracleReport> check_heisenberg_matrices(const RealizationConfig& cfg, int D, int nmax,
                                                    bool literal_exponent = false);

// <vac| X(z) Y(w) |vac> from the oracle against the engine's pair scalars on
// x-powers |j| <= window.  `engine_scale` multiplies the engine side (a
// negative control when it is not 1).
OracleReport vacuum_cross_check(const std::string& id, const Current& x, const Current& y, int D, int window,
                                const QSeries& engine_scale = QSeries(Rat(1)));

}  // namespace eqp
