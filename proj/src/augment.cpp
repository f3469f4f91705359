#include "ssc/augment.hpp"

namespace ssc::augment {

double sample_lambda(const MixupConfig& cfg, Rng& rng) {
  const double g1 = rng.gamma(cfg.alpha);
  const double g2 = rng.gamma(cfg.alpha);
  return g1 / (g1 + g2);
}

}  // namespace ssc::augment
