#pragma once

// The catalogue of exchange relations checked by the suites: each case is a
// pair of currents, the clearing factors that turn the structure function
// into an equality of series, and a stable identifier.

#include <string>
#include <vector>

#include "eqp/wakimoto.hpp"

namespace eqp {

struct ExchangeCase {
  std::string id;        // e.g. "trig.K-K+"
  std::string relation;  // the relation in words, for reports
  Current a, b;
  ExchangeSpec spec;
};

// K+-K+-, K-K+, K+-E+-, E+E+, E-E- for the realized trigonometric currents.
std::vector<ExchangeCase> trig_exchange_cases(const RealizationConfig& cfg, int window, int guard);

// k+-k+-, k-k+, k+-e, k+-f, ee, ff for the twisted currents, theta cleared.
std::vector<ExchangeCase> elliptic_exchange_cases(const RealizationConfig& cfg, int window, int guard);

}  // namespace eqp
