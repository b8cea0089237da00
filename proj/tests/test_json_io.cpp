#include <gtest/gtest.h>

#include <limits>

#include "fixtures.hpp"
#include "lindblad/json_io.hpp"

using namespace lindblad;
using nlohmann::json;
using fixtures::max_diff;

TEST(Json, RealMatrixRoundTripIsBitExact) {
  CounterRng rng(1, 0);
  const RMatrix m = random_real(4, 3, rng);
  const std::string text = io::from_real_matrix(m).dump();
  const RMatrix back = io::to_real_matrix(json::parse(text), "m");
  ASSERT_EQ(back.rows(), 4);
  ASSERT_EQ(back.cols(), 3);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) EXPECT_EQ(back(i, j), m(i, j));
}

TEST(Json, ComplexAlwaysPairs) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  const json j = io::from_complex_matrix(m);
  EXPECT_EQ(j.dump(), "[[[0.0,0.0],[1.0,0.0]],[[0.0,0.0],[0.0,0.0]]]");
  const CMatrix z = io::to_complex_matrix(json::parse("[[1,[0,2]],[[3,-1],0.5]]"), "z");
  EXPECT_EQ(z(0, 0), cplx(1, 0));
  EXPECT_EQ(z(0, 1), cplx(0, 2));
  EXPECT_EQ(z(1, 0), cplx(3, -1));
  EXPECT_EQ(z(1, 1), cplx(0.5, 0));
}

TEST(Json, ShortestRoundTripNumbers) {
  EXPECT_EQ(json(0.1).dump(), "0.1");
  EXPECT_EQ(json(1.0 / 3.0).dump(), "0.3333333333333333");
  const double x = std::sqrt(2.0) / 3.0;
  EXPECT_EQ(json::parse(json(x).dump()).get<double>(), x);
}

TEST(Json, RejectsMalformed) {
  EXPECT_THROW(io::to_real_matrix(json::parse("[[1,2],[3]]"), "m"), ShapeError);
  EXPECT_THROW(io::to_real_matrix(json::parse("[1,2]"), "m"), ShapeError);
  EXPECT_THROW(io::to_real_vector(json::parse("[1,\"a\"]"), "v"), ShapeError);
  EXPECT_THROW(io::to_complex(json::parse("[1,2,3]"), "z"), ShapeError);
  EXPECT_THROW(io::from_real_vector(RVector::Constant(1, std::numeric_limits<double>::quiet_NaN())),
               InvariantError);
}
