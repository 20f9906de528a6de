#include "ellgen/qseries.hpp"

namespace ellgen {

QSeries<Laurent<Rat>> euler_product(const std::vector<EulerFactor>& factors, const Rat& trunc) {
  using L = Laurent<Rat>;
  const L one(Rat(1));
  QSeries<L> r = QSeries<L>::constant(one, trunc);
  for (const auto& f : factors) {
    if (f.sign != 1 && f.sign != -1) throw DomainError("euler_product: sign must be +1 or -1");
    if (f.exponent <= 0) throw DomainError("euler_product: factor exponent must be positive");
    if (f.exponent >= trunc || f.power == 0) continue;
    r *= binomial_factor(L::monomial(f.z_half, Rat(f.sign)), f.exponent, f.power, one, trunc);
  }
  return r;
}

}  // namespace ellgen
