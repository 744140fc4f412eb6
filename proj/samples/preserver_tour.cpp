// Small tour: brackets, the two classifiers, and a preserver round trip over Q(i).

#include <iostream>

#include "kcomm/kcomm.hpp"

using namespace kcomm;

int main() {
  using M = Mat2<Gaussian>;
  const M e11 = M::unit(1, 1);
  const M swap = M::unit(1, 2) + M::unit(2, 1);
  const M b = kcomm_recursive(e11, swap, 3);
  std::cout << "[E11, E12+E21]_3 = [[" << scalar_traits<Gaussian>::to_string(b(0, 0)) << ", "
            << scalar_traits<Gaussian>::to_string(b(0, 1)) << "], [" << scalar_traits<Gaussian>::to_string(b(1, 0))
            << ", " << scalar_traits<Gaussian>::to_string(b(1, 1)) << "]]\n";

  const M rotation(Gaussian(0), Gaussian(1), Gaussian(-1), Gaussian(0));
  const auto v = scalar_witness_test(rotation, 4);
  std::cout << "rotation scalar? " << (v.holds ? "yes" : "no") << "\n";
  const auto s = scalar_plus_nilpotent_spectral(rotation);
  std::cout << "rotation = lambda I + N? " << (s.holds ? "yes" : "no")
            << " (discriminant " << scalar_traits<Gaussian>::to_string(s.discriminant) << ")\n";

  // Phi(A) = i A + tr(A) I preserves [.,.]_3 since i^4 = 1.
  const auto table = generate_map(Gaussian::i(), h_trace<Gaussian>(), probe_set<Gaussian>(), 3);
  const auto d = decompose(table);
  std::cout << "recovered lambda = " << scalar_traits<Gaussian>::to_string(d.lambda) << ", pairs checked "
            << d.verified_pairs << "\n";
}
