#pragma once

// Closed-form inference-token costs of re-generation-based detectors.
// Symbols are namespaced per method: n_regen is each method's own
// re-generation count, not the estimator's N.

#include <string>
#include <string_view>

#include "poger/errors.hpp"

namespace poger {

enum class CostMethod { DetectGpt, DnaGpt, FullSampling, Poger };

CostMethod parse_cost_method(std::string_view name);
std::string cost_method_name(CostMethod method);

struct CostInputs {
  long long n_regen = 100;   // n
  long long text_len = 300;  // l, tokens
  double trunc_ratio = 0.5;  // r, DNA-GPT only, 0 < r < 1
  long long k = 10;          // representative word set size
  long long prompt_len = 40; // l_p, tokens
  long long max_new = 2;     // m
};

// detectgpt: n*l
// dnagpt:    r*l + n*(1-r)*l
// full:      l*(l_p + n*(m-1))
// poger:     k*(l_p + n*(m-1))
long long cost_tokens(CostMethod method, const CostInputs& in);

}  // namespace poger
