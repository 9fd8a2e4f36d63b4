#pragma once

// Builders for the currents of the free-field realization: the
// trigonometric currents K+-, E+-, the dressing currents V+-, D+-, the
// twisted currents k+-, e, f, Psi+-, and the critical-level objects
// :e f:, W1, W2 and l.

#include <stdexcept>
#include <string>

#include "eqp/vertex.hpp"

namespace eqp {

struct WrongLevel : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InvalidConfig : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RealizationConfig {
  int k = 1;
  int r = 3;
  int N = 20;
  int r_star() const { return r - k; }
  // Throws InvalidConfig unless r >= 1, r* >= 1 and N >= 1.
  void validate() const;
};

enum class TrigName { K_plus, K_minus, E_plus, E_minus };
enum class DressingName { V_plus, V_minus, D_plus, D_minus };
enum class EllipticName { k_plus, k_minus, e, f, Psi_plus, Psi_minus };
enum class WName { W1, W2 };

Current build_trig(TrigName name, const RealizationConfig& cfg);
Current build_dressing(DressingName name, const RealizationConfig& cfg);
Current build_elliptic(EllipticName name, const RealizationConfig& cfg);
Current build_W(WName name, const RealizationConfig& cfg);

// K+-(z) assembled from the realized H-modes,
// q^{+-h/2} exp(+-(q - 1/q) sum_{n>0} [n]/[2n] q^{-+n} H_{-+n} z^{+-n})
// with h = p_a + 2 p_b.
Current drinfeld_K(int sign, const RealizationConfig& cfg);

// The evaluated four-term :e(z) f(z): at k = -2.
Current build_ef_normal_ordered(const RealizationConfig& cfg);

// The W1/W2 four-term expression claimed for k+(zq) :e f: k-(zq) at k = -2.
Current build_W_display(const RealizationConfig& cfg);
// k+(zq) :e f: k-(zq) computed as an operator product.
Current build_kefk(const RealizationConfig& cfg);

// The two Cartan products of l at k = -2, normal ordered:
//   first:  q^{-1} :k+(zq) k-(zq^{-1})^{-1}:
//   second: q :k-(zq) k+(zq^3)^{-1}:
Current build_l_cartan(int which, const RealizationConfig& cfg);
// The printed right-hand sides of the two identities for those products:
//   first:  q^{-1} W1(z/q) A-(z/q)^{-1} A+(z/q) W2(z/q)^{-1} e^{-b-(z)} e^{b+(zq^{-2})}
//   second: q W1(qz)^{-1} A-(zq) A+(zq)^{-1} W2(qz) e^{b-(zq^2)} e^{-b+(z)}
Current build_cartan_display(int which, const RealizationConfig& cfg);
// The variant of the second product with k-(zq^{-1}) in place of k-(zq).
Current build_l_cartan_variant(const RealizationConfig& cfg);

// l(z) = q^{-1}:k+ k-^{-1}: + q:k- k+^{-1}: + k+ :e f: k- at k = -2.
Current build_l(const RealizationConfig& cfg);
// q^{-1} A-(zq) A+(zq)^{-1} + q A-(zq^{-1})^{-1} A+(zq^{-1}).  With
// enforce_level false the same expression is built at any level (used for
// negative controls).
Current build_l_reduced(const RealizationConfig& cfg, bool enforce_level = true);

std::string trig_name(TrigName n);
std::string elliptic_name(EllipticName n);

}  // namespace eqp
