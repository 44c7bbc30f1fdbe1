#include <numeric>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "ripramsey/coloring.hpp"
#include "ripramsey/rip.hpp"

using namespace ripramsey;

namespace {

ColumnMatrix two_columns(double x, double y) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 2);
  m.col(0) << x, y, 0, 0;
  m.col(1) << 1, 0, 0, 0;
  return ColumnMatrix(m);
}

}  // namespace

TEST(Threshold, Values) {
  EXPECT_DOUBLE_EQ(threshold(4), 0.25);
  EXPECT_DOUBLE_EQ(threshold(25), 0.1);
  EXPECT_NEAR(threshold(2), 0.35355339059327373, 1e-16);
  EXPECT_THROW(threshold(0), std::invalid_argument);
}

TEST(ColorEdges, OrthonormalIsAllWhite) {
  const ColumnMatrix m(Eigen::MatrixXd::Identity(6, 5));
  const EdgeColoring c = color_edges(m);
  EXPECT_EQ(c.edge_count(), 10u);
  EXPECT_EQ(c.count(Color::White), 10u);
}

TEST(ColorEdges, BlueAndRedByThreshold) {
  EXPECT_EQ(color_edges(two_columns(0.6, 0.8)).get(0, 1), Color::Blue);
  EXPECT_EQ(color_edges(two_columns(-0.6, -0.8)).get(0, 1), Color::Red);
  EXPECT_EQ(color_edges(two_columns(0.2, std::sqrt(1 - 0.04))).get(0, 1), Color::White);
}

TEST(ColorEdges, BoundaryIsWhiteAndFlagged) {
  // <u1,u2> = 0.25 = 1/(2 sqrt 4)
  const EdgeColoring c = color_edges(two_columns(0.25, std::sqrt(1.0 - 0.0625)));
  EXPECT_EQ(c.get(0, 1), Color::White);
  ASSERT_EQ(c.boundary_edges().size(), 1u);
  EXPECT_EQ(c.boundary_edges()[0], (std::pair<index_t, index_t>{0, 1}));
  const EdgeColoring neg = color_edges(two_columns(-0.25, std::sqrt(1.0 - 0.0625)));
  EXPECT_EQ(neg.get(0, 1), Color::White);
  EXPECT_EQ(neg.boundary_edges().size(), 1u);
  EXPECT_TRUE(color_edges(two_columns(0.6, 0.8)).boundary_edges().empty());
}

TEST(ColorEdges, TwoColorNeedsNonnegativeEntries) {
  EXPECT_THROW(color_edges(two_columns(-0.6, 0.8), {Palette::TwoColor}), std::invalid_argument);
  const EdgeColoring c = color_edges(two_columns(0.6, 0.8), {Palette::TwoColor});
  EXPECT_EQ(c.palette(), Palette::TwoColor);
  EXPECT_EQ(c.get(0, 1), Color::Blue);
}

TEST(ColorEdges, ColumnSignFlipsSwapBlueAndRedOnCutEdges) {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ColumnMatrix m = random_baseline(6, 15, Distribution::Gaussian, seed);
    std::vector<index_t> flip;
    std::vector<bool> flipped(15, false);
    for (index_t j = 0; j < 15; ++j)
      if (rng() & 1u) {
        flip.push_back(j);
        flipped[j] = true;
      }
    const EdgeColoring a = color_edges(m);
    const EdgeColoring b = color_edges(m.with_flipped_columns(flip));
    for (index_t i = 0; i < 15; ++i)
      for (index_t j = i + 1; j < 15; ++j) {
        Color expect = a.get(i, j);
        if (flipped[i] != flipped[j] && expect != Color::White)
          expect = expect == Color::Blue ? Color::Red : Color::Blue;
        ASSERT_EQ(b.get(i, j), expect);
      }
  }
}

TEST(ColorEdges, PermutationEquivariance) {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ColumnMatrix m = random_baseline(5, 12, Distribution::Gaussian, seed);
    std::vector<index_t> perm(12);
    std::iota(perm.begin(), perm.end(), index_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    const EdgeColoring a = color_edges(m);
    const EdgeColoring b = color_edges(m.permuted(perm));
    for (index_t i = 0; i < 12; ++i)
      for (index_t j = i + 1; j < 12; ++j) ASSERT_EQ(b.get(i, j), a.get(perm[i], perm[j]));
  }
}

TEST(ColorEdges, ThreadCountDoesNotChangeOutput) {
  const ColumnMatrix m = random_baseline(9, 60, Distribution::Rademacher, 3);
  EXPECT_EQ(color_edges(m, {Palette::ThreeColor, 1e-12, 1}), color_edges(m, {Palette::ThreeColor, 1e-12, 4}));
}

TEST(ColorEdgesExactDeVore, Z2R1ByHand) {
  // polynomials 0, 1, x, x+1; pairs differing by a constant never agree
  const EdgeColoring c = color_edges_exact_devore(DeVoreParams(2, 1));
  EXPECT_EQ(c.get(0, 1), Color::White);
  EXPECT_EQ(c.get(0, 2), Color::Blue);
  EXPECT_EQ(c.get(0, 3), Color::Blue);
  EXPECT_EQ(c.get(1, 2), Color::Blue);
  EXPECT_EQ(c.get(1, 3), Color::Blue);
  EXPECT_EQ(c.get(2, 3), Color::White);
}

TEST(ColorEdgesExactDeVore, Z5R1BlueIffLeadingCoefficientsDiffer) {
  const DeVoreParams params(5, 1);
  const EdgeColoring c = color_edges_exact_devore(params);
  for (index_t i = 0; i < 25; ++i)
    for (index_t j = i + 1; j < 25; ++j) {
      const bool differ = (i / 5) != (j / 5);
      ASSERT_EQ(c.get(i, j), differ ? Color::Blue : Color::White);
    }
  EXPECT_EQ(c.count(Color::Blue), 250u);
  EXPECT_EQ(c.count(Color::White), 50u);
  EXPECT_EQ(c.count(Color::Red), 0u);
}

TEST(ColorEdgesExactDeVore, AgreesWithDensePath) {
  for (std::uint32_t z : {2u, 3u, 5u, 7u})
    for (std::uint32_t r = 1; r <= 2 && r < z; ++r) {
      const DeVoreParams params(z, r);
      const EdgeColoring exact = color_edges_exact_devore(params);
      const ColumnMatrix dense = devore_dense(params);
      EXPECT_EQ(color_edges(dense, {Palette::TwoColor}), exact) << z << "," << r;
      const EdgeColoring three = color_edges(dense);
      EXPECT_EQ(three.count(Color::Red), 0u);
      EXPECT_TRUE(three.boundary_edges().empty());
    }
}

TEST(EdgeColoring, RejectsRedInTwoColorPalette) {
  EdgeColoring c(3, Palette::TwoColor);
  EXPECT_THROW(c.set(0, 1, Color::Red), std::invalid_argument);
  EXPECT_THROW(c.get(1, 1), std::out_of_range);
  EXPECT_EQ(c.get(2, 0), c.get(0, 2));
}

TEST(ColoringFile, ExactFormat) {
  std::ostringstream os;
  write_coloring(os, color_edges_exact_devore(DeVoreParams(2, 1)));
  EXPECT_EQ(os.str(), "coloring p=4 palette=2\n0 1 W\n0 2 B\n0 3 B\n1 2 B\n1 3 B\n2 3 W\n");
}

TEST(ColoringFile, RoundTripThreeColor) {
  const EdgeColoring c = color_edges(random_baseline(4, 9, Distribution::Gaussian, 2));
  std::ostringstream os;
  write_coloring(os, c);
  std::istringstream is(os.str());
  EXPECT_EQ(read_coloring(is), c);
}

TEST(ColoringFile, RejectsMalformed) {
  for (const char* bad : {"", "coloring p=3 palette=4\n", "coloring p=3 palette=2\n0 1 W\n0 2 R\n1 2 W\n",
                          "coloring p=3 palette=3\n0 1 W\n1 2 W\n0 2 W\n", "coloring p=3 palette=3\n0 1 W\n0 2 X\n1 2 W\n",
                          "coloring p=3 palette=3\n0 1 W\n0 2 W\n", "coloring p=3 palette=3\n0 1 W\n0 2 W\n1 2 W\n3 4 B\n"}) {
    std::istringstream is(bad);
    EXPECT_THROW(read_coloring(is), std::runtime_error) << bad;
  }
}
