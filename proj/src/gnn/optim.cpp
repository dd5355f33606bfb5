#include <cmath>

#include "pkgraph/error.hpp"
#include "pkgraph/train.hpp"

namespace pkgraph::gnn {

AdamState AdamState::for_params(const ModelParams& p) {
  return {zeros_like(p), zeros_like(p), 0};
}

void adam_step(ModelParams& params, const ModelParams& grads, AdamState& state,
               const AdamConfig& config) {
  auto theta = params.tensors();
  const auto g = grads.tensors();
  auto m = state.m.tensors();
  auto v = state.v.tensors();
  if (theta.size() != g.size() || theta.size() != m.size() || theta.size() != v.size())
    throw ContractError("optimizer state does not match parameters");

  ++state.step;
  const double t = static_cast<double>(state.step);
  const double c1 = 1.0 - std::pow(config.beta1, t);
  const double c2 = 1.0 - std::pow(config.beta2, t);
  for (std::size_t k = 0; k < theta.size(); ++k) {
    auto& p = *theta[k].second;
    const auto& gk = *g[k].second;
    auto& mk = *m[k].second;
    auto& vk = *v[k].second;
    if (!p.same_shape(gk) || !p.same_shape(mk) || !p.same_shape(vk))
      throw ContractError("optimizer shape mismatch at " + theta[k].first);
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double gi = gk.data[i];
      mk.data[i] = config.beta1 * mk.data[i] + (1.0 - config.beta1) * gi;
      vk.data[i] = config.beta2 * vk.data[i] + (1.0 - config.beta2) * gi * gi;
      const double mhat = mk.data[i] / c1;
      const double vhat = vk.data[i] / c2;
      p.data[i] -= config.learning_rate * mhat / (std::sqrt(vhat) + config.epsilon);
    }
  }
}

}  // namespace pkgraph::gnn
