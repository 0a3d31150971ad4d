#include "widthlab/sampling.hpp"

#include <vector>

namespace widthlab {

Rational random_rational(Prng& rng) { return make_rational(rng.uniform(-20, 20), rng.uniform(1, 8)); }

RationalFunction random_rational_function(Prng& rng) {
  Rational c = make_rational(rng.uniform(-9, 9), rng.uniform(1, 4));
  if (c == 0) return RationalFunction();
  std::vector<Rational> num{Rational(1)};
  for (long i = rng.uniform(0, 2); i > 0; --i) num.push_back(make_rational(rng.uniform(-5, 5), rng.uniform(1, 3)));
  std::vector<Rational> den{Rational(1)};
  if (rng.coin()) den.push_back(make_rational(rng.uniform(-3, 3), rng.uniform(1, 2)));
  RationalFunction unit(QPoly(std::move(num)), QPoly(std::move(den)));
  if (unit.is_zero()) unit = RationalFunction(1);
  return RationalFunction(c) * unit * RationalFunction::t_power(rng.uniform(-4, 4));
}

RationalFunction random_laurent_polynomial(Prng& rng) {
  Rational c = make_rational(rng.uniform(-9, 9), rng.uniform(1, 4));
  if (c == 0) return RationalFunction();
  std::vector<Rational> num{c};
  for (long i = rng.uniform(0, 2); i > 0; --i) num.push_back(make_rational(rng.uniform(-5, 5), rng.uniform(1, 3)));
  return RationalFunction(QPoly(std::move(num))) * RationalFunction::t_power(rng.uniform(-4, 4));
}

template <>
Rational random_base<Rational>(Prng& rng) {
  return random_rational(rng);
}

template <>
RationalFunction random_base<RationalFunction>(Prng& rng) {
  return random_rational_function(rng);
}

template <class F>
TowerElement<F> random_tower_element(const TowerHandle<F>& tower, Prng& rng) {
  std::vector<F> c(tower->degree(), F(0));
  for (auto& x : c) {
    if (rng.below(4) != 0) x = random_base<F>(rng);
  }
  return TowerElement<F>(tower, std::move(c));
}

template <>
TowerElement<Rational> random_validation_element(const TowerHandle<Rational>& tower, Prng& rng) {
  return random_tower_element(tower, rng);
}

template <>
TowerElement<RationalFunction> random_validation_element(const TowerHandle<RationalFunction>& tower, Prng& rng) {
  std::vector<RationalFunction> c(tower->degree());
  for (auto& x : c) {
    if (rng.below(4) != 0) x = random_laurent_polynomial(rng);
  }
  return TowerElement<RationalFunction>(tower, std::move(c));
}

template TowerElement<Rational> random_tower_element(const TowerHandle<Rational>&, Prng&);
template TowerElement<RationalFunction> random_tower_element(const TowerHandle<RationalFunction>&, Prng&);

}  // namespace widthlab
