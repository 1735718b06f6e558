// Walks the three closed-form flows and prints entropy and the largest
// eigenvalue at each grid point, plus the verdict of each adjacent step.
#include <cstdio>

#include "majolab/majolab.hpp"

using namespace majolab;

static void show(const char* title, const ModelFamily& family, const std::vector<double>& grid,
                 std::size_t modes) {
  const auto f = flow(family, grid, modes);
  const auto r = chain_flow_report(f);
  std::printf("%s  (%s)\n", title, std::string(to_string(r.direction)).c_str());
  for (std::size_t i = 0; i < r.points.size(); ++i)
    std::printf("  %8.4g   S = %.6f   p1 = %.6f\n", r.points[i], r.entropies[i], r.largest[i]);
  std::printf("  global=%d monotonous=%d fine_grained=%d\n\n", r.levels.global,
              r.levels.monotonous, r.levels.fine_grained);
}

int main() {
  show("XX block size L", XXBlockFamily{}, {4, 8, 16, 32, 64}, 12);
  show("Heisenberg anisotropy", HeisenbergFamily{}, {1.05, 1.5, 2, 4, 10}, 12);
  show("XY field, gamma=0.5", XYLambdaFamily{0.5}, {1.1, 1.5, 2, 5}, 12);
  show("XY anisotropy, lambda=1.5", XYGammaFamily{1.5}, {0.3, 0.6, 1.0, 1.5}, 12);

  // CFT towers: the same statement for any scaling spectrum.
  const ScalingSpectrum ising({0.125, 1.0, 1.125, 2.0}, {1, 1, 1, 2});
  const auto r = check_L_flow(ising, {1.0, 1.0}, {2, 8, 32, 128});
  std::printf("CFT tower, L flow: fine_grained=%d\n", r.levels.fine_grained);
  for (std::size_t i = 0; i < r.points.size(); ++i)
    std::printf("  L = %4g   lambda1 = %.6f\n", r.points[i], r.largest[i]);
  return 0;
}
