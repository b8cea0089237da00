#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace lindblad;
using fixtures::max_diff;

namespace {

double params_error(const MasterEqParams& got, const MasterEqParams& want) {
  const double scale = std::max({1.0, detail::max_abs(want.H), detail::max_abs(want.a)});
  return std::max(max_diff(got.H, want.H), max_diff(got.a, want.a)) / scale;
}

std::string route_name(const std::vector<Space>& r) {
  std::string s;
  for (Space v : r) s += to_string(v);
  return s;
}

}  // namespace

TEST(Spaces, EveryReachableAndNoDirectOneToSix) {
  EXPECT_FALSE(has_direct_edge(Space::V1, Space::V6));
  for (int f = 1; f <= 6; ++f)
    for (int t = 1; t <= 6; ++t) {
      if (f == t) continue;
      const auto r = shortest_route(static_cast<Space>(f), static_cast<Space>(t));
      EXPECT_EQ(r.front(), static_cast<Space>(f));
      EXPECT_EQ(r.back(), static_cast<Space>(t));
    }
  const auto r16 = shortest_route(Space::V1, Space::V6);
  EXPECT_EQ(route_name(r16), "V1V4V5V6");
}

TEST(Spaces, TwoToOneInvertsOneToTwo) {
  CounterRng rng(1, 0);
  for (int d = 2; d <= 3; ++d) {
    const NiceBasis b = generate_gell_mann(d);
    for (int t = 0; t < 10; ++t) {
      const MasterEqParams p = fixtures::random_params(d, rng);
      const Tensor4 x = spaces::x_from_hamiltonian(p, b);
      EXPECT_LT(x.invariant_defect(), 1e-10);
      EXPECT_LT(params_error(spaces::hamiltonian_from_tensor(x, b), p), 1e-12);
    }
  }
}

TEST(Spaces, DephasingPairMapsToParams) {
  const NiceBasis b = generate_gell_mann(2);
  OdePair pair;
  pair.G = fixtures::dephasing_G();
  pair.c = RVector::Zero(3);
  const auto p = std::get<MasterEqParams>(phi(Space::V6, Space::V1, pair, b));
  EXPECT_LT(detail::max_abs(p.H), 1e-14);
  EXPECT_LT(max_diff(p.a, fixtures::dephasing_a()), 1e-14);
}

TEST(Spaces, ForwardMapEqualsSixFromOne) {
  CounterRng rng(2, 0);
  for (int d = 2; d <= 3; ++d) {
    const NiceBasis b = generate_gell_mann(d);
    const MasterEqParams p = fixtures::random_params(d, rng);
    const auto pair = std::get<OdePair>(phi(Space::V1, Space::V6, p, b));
    const OdePair fw = forward_map(p, b);
    EXPECT_LT(max_diff(pair.G, fw.G), 1e-11);
    EXPECT_LT(max_diff(pair.c, fw.c), 1e-11);
  }
}

TEST(Spaces, ThreeFourOneThreeCommutes) {
  CounterRng rng(3, 0);
  for (int d = 2; d <= 3; ++d) {
    const NiceBasis b = generate_gell_mann(d);
    const MasterEqParams p = fixtures::random_params(d, rng);
    const SpaceValue v4 = phi(Space::V1, Space::V4, p, b);
    const SpaceValue v3 = phi(Space::V4, Space::V3, v4, b);
    const Tensor4 direct = std::get<Tensor4>(apply_route({Space::V1, Space::V2}, p, b));
    const auto back = std::get<MasterEqParams>(phi(Space::V3, Space::V1, v3, b));
    EXPECT_LT(params_error(back, p), 1e-10);
    EXPECT_LT(std::get<Tensor4>(phi(Space::V3, Space::V2, v3, b)).max_abs_difference(direct), 1e-10);
  }
}

TEST(Spaces, AllSimpleCyclesThroughOneAreIdentity) {
  const auto cycles = simple_cycles(Space::V1);
  ASSERT_GE(cycles.size(), 10u);
  CounterRng rng(4, 0);
  for (int d = 2; d <= 3; ++d) {
    const NiceBasis b = generate_gell_mann(d);
    for (int t = 0; t < 25; ++t) {
      const MasterEqParams p = fixtures::random_params(d, rng);
      for (const auto& cyc : cycles) {
        SpaceValue v = p;
        for (std::size_t k = 0; k + 1 < cyc.size(); ++k) {
          v = phi_direct(cyc[k], cyc[k + 1], v, b);
          validate_space_value(cyc[k + 1], v, b, 1e-9);
        }
        EXPECT_LT(params_error(std::get<MasterEqParams>(v), p), 1e-9) << route_name(cyc) << " d=" << d;
      }
    }
  }
}

TEST(Spaces, AllRoutesFromSixAgree) {
  CounterRng rng(5, 0);
  for (int d = 2; d <= 3; ++d) {
    const NiceBasis b = generate_gell_mann(d);
    const OdePair pair = fixtures::random_pair(d, rng);
    const auto reference = std::get<MasterEqParams>(phi_direct(Space::V6, Space::V1, pair, b));
    for (int via = 2; via <= 5; ++via) {
      const SpaceValue mid = phi(Space::V6, static_cast<Space>(via), pair, b);
      const auto p = std::get<MasterEqParams>(phi(static_cast<Space>(via), Space::V1, mid, b));
      EXPECT_LT(params_error(p, reference), 1e-10) << via;
      const auto round = std::get<OdePair>(phi(static_cast<Space>(via), Space::V6, mid, b));
      EXPECT_LT(max_diff(round.G, pair.G), 1e-10);
      EXPECT_LT(max_diff(round.c, pair.c), 1e-10);
    }
  }
}

TEST(Spaces, InvalidInputsRejected) {
  const NiceBasis b = generate_gell_mann(2);
  MasterEqParams p = MasterEqParams::make(fixtures::sigma_z(), fixtures::dephasing_a());
  p.a(0, 1) = 1.0;  // breaks Hermiticity
  EXPECT_THROW(phi(Space::V1, Space::V6, p, b), InvariantError);
  EXPECT_THROW(phi(Space::V2, Space::V1, p, b), InvariantError);
  const auto notcp = SuperopTensor::identity(2);  // not trace-annihilating
  EXPECT_THROW(phi(Space::V4, Space::V6, notcp, b), InvariantError);
  Tensor4 wrong = spaces::x_from_hamiltonian(MasterEqParams::make(fixtures::sigma_z(), fixtures::dephasing_a()), b);
  EXPECT_THROW(phi(Space::V3, Space::V1, wrong, b), InvariantError);  // flavor mismatch
}

TEST(Spaces, RestrictionRejectsNonHermitianArgument) {
  const NiceBasis b = generate_gell_mann(2);
  const auto p = MasterEqParams::make(fixtures::sigma_z(), fixtures::amplitude_a());
  const auto r = std::get<HermitianRestriction>(phi(Space::V1, Space::V5, p, b));
  EXPECT_THROW(r.apply(CMatrix(CMatrix::Identity(2, 2) * kI)), InvariantError);
  const CMatrix h = fixtures::sigma_x() + 0.5 * fixtures::sigma_y();
  EXPECT_LT(max_diff(r.apply(h), apply_liouvillian(p, h, b)), 1e-14);
}
