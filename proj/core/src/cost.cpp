#include "poger/cost.hpp"

#include <cmath>

namespace poger {

CostMethod parse_cost_method(std::string_view name) {
  if (name == "detectgpt") return CostMethod::DetectGpt;
  if (name == "dnagpt") return CostMethod::DnaGpt;
  if (name == "full") return CostMethod::FullSampling;
  if (name == "poger") return CostMethod::Poger;
  throw InvalidInputsError("unknown cost method: " + std::string(name));
}

std::string cost_method_name(CostMethod method) {
  switch (method) {
    case CostMethod::DetectGpt: return "detectgpt";
    case CostMethod::DnaGpt: return "dnagpt";
    case CostMethod::FullSampling: return "full";
    case CostMethod::Poger: return "poger";
  }
  return "?";
}

long long cost_tokens(CostMethod method, const CostInputs& in) {
  switch (method) {
    case CostMethod::DetectGpt:
      if (in.n_regen < 1 || in.text_len < 1) {
        throw InvalidInputsError("detectgpt needs n >= 1 and l >= 1");
      }
      return in.n_regen * in.text_len;
    case CostMethod::DnaGpt: {
      if (in.n_regen < 1 || in.text_len < 1 || !(in.trunc_ratio > 0.0) ||
          !(in.trunc_ratio < 1.0)) {
        throw InvalidInputsError("dnagpt needs n >= 1, l >= 1, 0 < r < 1");
      }
      double l = static_cast<double>(in.text_len);
      double n = static_cast<double>(in.n_regen);
      return std::llround(in.trunc_ratio * l +
                          n * (1.0 - in.trunc_ratio) * l);
    }
    case CostMethod::FullSampling:
      if (in.n_regen < 1 || in.text_len < 1 || in.prompt_len < 0 ||
          in.max_new < 1) {
        throw InvalidInputsError("full sampling inputs invalid");
      }
      return in.text_len * (in.prompt_len + in.n_regen * (in.max_new - 1));
    case CostMethod::Poger:
      if (in.n_regen < 1 || in.k < 1 || in.prompt_len < 0 || in.max_new < 1) {
        throw InvalidInputsError("poger inputs invalid");
      }
      return in.k * (in.prompt_len + in.n_regen * (in.max_new - 1));
  }
  throw InvalidInputsError("unknown cost method");
}

}  // namespace poger
