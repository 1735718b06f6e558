// Half-chain ED spectra of the Heisenberg chain next to the free-fermion
// product formula. Usage: ed_crosscheck [delta] [N]
#include <cstdio>
#include <cstdlib>

#include "majolab/majolab.hpp"

using namespace majolab;

int main(int argc, char** argv) {
  const double delta = argc > 1 ? std::atof(argv[1]) : 3.0;
  const int n_max = argc > 2 ? std::atoi(argv[2]) : 12;

  const auto formula = assemble_model(HeisenbergChain{delta}, 12);
  std::printf("delta = %g, formula p1 = %.10f\n", delta, formula.dist[0]);
  for (int n = 4; n <= n_max; n += 2) {
    const SpinChainSpec spec{EdHeisenberg{delta}, n};
    const auto gs = ground_state(spec);
    const auto rho = reduced_spectrum(gs.state, n, SiteBlock::from_boundary(n / 2));
    std::printf("N = %2d  E0 = %+.8f  gap = %.3e  p1 = %.10f  |p1 - formula| = %.3e\n", n,
                gs.energy, gs.gap, rho[0], std::abs(rho[0] - formula.dist[0]));
  }
  return 0;
}
