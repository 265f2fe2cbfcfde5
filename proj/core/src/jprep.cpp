#include "jpmono/jprep.hpp"

namespace jpmono {

const char *irr_name(IrrVerdict v) {
  switch (v) {
    case IrrVerdict::Irreducible: return "Irreducible";
    case IrrVerdict::Reducible: return "Reducible";
    case IrrVerdict::Inconclusive: return "Inconclusive";
    case IrrVerdict::NotApplicable: return "NotApplicable";
  }
  return "?";
}

std::optional<Params<Fq>> random_valid_params(const Fq &K, int n, Rng &rng, int tries) {
  if (K.q < 3 || n < 1) return std::nullopt;
  for (int t = 0; t < tries; ++t) {
    Params<Fq> par;
    auto draw = [&] {
      fel x;
      do { x = (fel)rng.below(K.q); } while (x == 0 || x == 1);
      return x;
    };
    par.lambda0 = draw();
    fel prod = par.lambda0;
    for (int i = 0; i < n; ++i) {
      fel x = draw();
      par.lambdas.push_back(x);
      prod = K.mul(prod, x);
    }
    fel last = K.inv(prod);
    if (last == 1) continue;
    par.lambdas.push_back(last);
    return par;
  }
  return std::nullopt;
}

} // namespace jpmono
