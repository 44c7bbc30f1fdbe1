// Builds the DeVore matrix for z=5, r=1, colors it and prints the largest
// clique of each color next to the bounds they are held to.

#include <iostream>

#include "ripramsey/ripramsey.hpp"

int main() {
  using namespace ripramsey;
  const DeVoreParams params(5, 1);
  const CoherenceResult mu = coherence_exact(params);
  std::cout << "n=" << params.rows() << " p=" << params.cols() << " coherence=" << mu.value << '\n';

  const EdgeColoring coloring = color_edges_exact_devore(params);
  const RamseyReport report = verify_ramsey(coloring, params.rows());
  for (const auto& c : report.colors)
    std::cout << color_name(c.color) << ": max clique " << c.max_size << " (bound < " << c.bound << ", "
              << verdict_name(verdict_of(c)) << ")\n";
  return report.has_violation() ? 2 : 0;
}
