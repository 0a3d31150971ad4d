#ifndef WIDTHLAB_SAMPLING_HPP
#define WIDTHLAB_SAMPLING_HPP

#include "widthlab/random.hpp"
#include "widthlab/rational_function.hpp"
#include "widthlab/tower.hpp"

namespace widthlab {

// Seeded generators of small field elements, shared by the validation
// routines, the experiment harness and the tests.

/// num/den with |num| <= 20 and 1 <= den <= 8.
Rational random_rational(Prng& rng);

/// c * t^k * (1 + a t) / (1 + b t) style elements with -4 <= k <= 4.
RationalFunction random_rational_function(Prng& rng);

/// c * t^k * (1 + a t + b t^2) style Laurent polynomials, -4 <= k <= 4.
RationalFunction random_laurent_polynomial(Prng& rng);

template <class F>
F random_base(Prng& rng);

/// Each coefficient is zero with probability 1/4, otherwise random_base.
template <class F>
TowerElement<F> random_tower_element(const TowerHandle<F>& tower, Prng& rng);

/// Samples for extension checks. Over Q(t) the coefficients are Laurent
/// polynomials, which keeps deep-tower products cheap.
template <class F>
TowerElement<F> random_validation_element(const TowerHandle<F>& tower, Prng& rng);

}  // namespace widthlab

#endif  // WIDTHLAB_SAMPLING_HPP
