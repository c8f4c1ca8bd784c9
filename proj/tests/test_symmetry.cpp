#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "chi2qec/codes.hpp"
#include "chi2qec/symmetry.hpp"
#include "test_support.hpp"

using namespace chi2qec;

namespace {

double eigen_residual(const SymmetryOperator& s, const StateVector& v) {
  return (apply(s.op, v).amplitudes - v.amplitudes).norm();
}

}  // namespace

TEST(Symmetry, ZPairUnityOnH2) {
  auto b = enumerate_truncated_space(ModeLayout::three_mode(1, 2));
  auto zs = z_pair_operator(3, ZPair::signal_pump, 1, b);
  auto zi = z_pair_operator(3, ZPair::idler_pump, 1, b);
  auto s = StateVector::basis_state(b, {1, 1, 1});
  EXPECT_LT(eigen_residual(zs, s), 1e-14);
  EXPECT_LT(eigen_residual(zi, s), 1e-14);
  auto off = StateVector::basis_state(b, {1, 0, 1});
  EXPECT_GT(eigen_residual(zs, off) + eigen_residual(zi, off), 0.5);
}

TEST(Symmetry, ZPairUnityOnEveryHN) {
  for (int N = 0; N <= 6; ++N) {
    auto b = enumerate_irreducible_subspace(N, 1);
    for (const auto& z : z_pair_operators(N + 1, b)) {
      for (const auto& s : b->states()) {
        EXPECT_LT(eigen_residual(z, StateVector::basis_state(b, s)), 1e-13);
      }
    }
  }
}

TEST(Symmetry, InversionMapsAndIsInvolution) {
  auto b = enumerate_irreducible_subspace(2, 1);
  auto v = inversion_operator(2, 1, b);
  auto out = apply(v.op, StateVector::basis_state(b, {0, 0, 2}));
  EXPECT_NEAR(std::abs(out.amplitude({2, 2, 0}) - 1.0), 0.0, 1e-15);
  EXPECT_LT(eigen_residual(v, StateVector::basis_state(b, {1, 1, 1})), 1e-15);
  EXPECT_LT(max_abs_diff(compose(v.op, v.op), LinearOperator::identity(b)), 1e-15);
  auto outside = enumerate_truncated_space(ModeLayout::three_mode(1, 2));
  EXPECT_THROW(inversion_operator(2, 1, outside), InvalidArgument);
}

TEST(Symmetry, SwapOperator) {
  auto b = enumerate_irreducible_subspace(2, 2);
  auto x = swap_operator(b);
  auto out = apply(x.op, StateVector::basis_state(b, {2, 2, 0, 0, 0, 2}));
  EXPECT_NEAR(std::abs(out.amplitude({0, 0, 2, 2, 2, 0}) - 1.0), 0.0, 1e-15);
  EXPECT_LT(eigen_residual(x, StateVector::basis_state(b, {1, 1, 1, 1, 1, 1})), 1e-15);
  EXPECT_LT(max_abs_diff(compose(x.op, x.op), LinearOperator::identity(b)), 1e-15);
  EXPECT_THROW(swap_operator(enumerate_irreducible_subspace(2, 1)), InvalidArgument);
}

TEST(Symmetry, SignalParity) {
  auto b = enumerate_irreducible_subspace(2, 1);
  auto p = signal_parity_operator(b);
  auto out = apply(p.op, StateVector::basis_state(b, {1, 1, 1}));
  EXPECT_NEAR(std::abs(out.amplitude({1, 1, 1}) + 1.0), 0.0, 1e-15);
}

TEST(Symmetry, PseudoBeamsplitterN2) {
  auto b = enumerate_irreducible_subspace(3, 1);
  auto u = pseudo_beamsplitter(2, b);
  EXPECT_LT(unitarity_defect(u.op), 1e-10);
  const double r = std::sqrt(0.5);
  auto plus = StateVector::from_terms(b, {{{0, 0, 3}, r}, {{3, 3, 0}, r}});
  auto out = apply(u.op, plus);
  auto expected = StateVector::from_terms(b, {{{0, 0, 3}, 0.5}, {{2, 2, 1}, std::sqrt(3.0) / 2}});
  EXPECT_LT((out.amplitudes - expected.amplitudes).norm(), 1e-14);
  EXPECT_THROW(pseudo_beamsplitter(0, b), InvalidArgument);
}

TEST(Symmetry, PseudoBeamsplitterUnitaryForSeveralN) {
  for (int N = 1; N <= 6; ++N) {
    auto b = enumerate_irreducible_subspace(2 * N - 1, 1);
    EXPECT_LT(unitarity_defect(pseudo_beamsplitter(N, b).op), 1e-10) << N;
  }
}

TEST(Symmetry, OperatorsAreUnitaryAndInvolutions) {
  auto b2 = enumerate_irreducible_subspace(2, 2);
  for (const auto& s : {inversion_all_groups(2, b2), swap_operator(b2), signal_parity_operator(b2)}) {
    EXPECT_LT(unitarity_defect(s.op), 1e-12) << s.name;
    EXPECT_LT(max_abs_diff(compose(s.op, s.op), LinearOperator::identity(b2)), 1e-12) << s.name;
  }
  for (int N = 1; N <= 4; ++N) {
    auto b = enumerate_irreducible_subspace(2 * N - 1, 1);
    EXPECT_LT(unitarity_defect(bc_symmetry_operator(N, b).op), 1e-10);
  }
}

TEST(Symmetry, QutritPccDimensionTrace) {
  auto b = enumerate_irreducible_subspace(2, 2);
  auto res = joint_unity_eigenspace({inversion_all_groups(2, b), swap_operator(b)});
  ASSERT_EQ(res.dimension_trace.size(), 3u);
  EXPECT_EQ(res.dimension_trace[0], 9u);
  EXPECT_EQ(res.dimension_trace[1], 5u);
  // The swap-symmetric part of the 5-dim space also contains
  // (|002>+|220>)|111> + |111>(|002>+|220>), so four vectors survive.
  EXPECT_EQ(res.dimension_trace[2], 4u);
  EXPECT_LT(res.max_residual, 1e-8);

  const double h = 0.5;
  auto extra = StateVector::from_terms(b, {{{0, 0, 2, 1, 1, 1}, h}, {{2, 2, 0, 1, 1, 1}, h},
                                           {{1, 1, 1, 0, 0, 2}, h}, {{1, 1, 1, 2, 2, 0}, h}});
  for (const auto& s : {inversion_all_groups(2, b), swap_operator(b)}) {
    EXPECT_LT((apply(s.op, extra).amplitudes - extra.amplitudes).norm(), 1e-15);
  }
}

TEST(Symmetry, EeccQubitFromInversion) {
  auto b = enumerate_irreducible_subspace(2, 1);
  auto res = joint_unity_eigenspace({inversion_operator(2, 1, b)});
  ASSERT_EQ(res.vectors.size(), 2u);
  const double r = std::sqrt(0.5);
  std::vector<StateVector> expected{StateVector::from_terms(b, {{{2, 2, 0}, r}, {{0, 0, 2}, r}}),
                                 StateVector::basis_state(b, {1, 1, 1})};
  EXPECT_LT(projector_distance(res.vectors, expected), 1e-8);
}

TEST(Symmetry, IdentityGivesFullSpace) {
  auto b = enumerate_irreducible_subspace(3, 1);
  auto res = joint_unity_eigenspace({{"I", LinearOperator::identity(b)}});
  EXPECT_EQ(res.vectors.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(std::abs(res.vectors[i].amplitudes[static_cast<Eigen::Index>(i)] - 1.0), 0.0, 1e-14);
  }
}

TEST(Symmetry, NonCommutingRejected) {
  auto b = enumerate_truncated_space(ModeLayout::three_mode(1, 2));
  auto h2 = enumerate_irreducible_subspace(2, 1);
  // V on H_2 extended by identity does not commute with a non-symmetric diagonal.
  auto v = inversion_operator(2, 1, h2);
  auto d = diagonal_operator(h2, [](const FockState& s) { return cplx(s[0] == 0 ? -1.0 : 1.0, 0.0); });
  try {
    joint_unity_eigenspace({v, {"D", d}});
    FAIL() << "expected NonCommutingOperators";
  } catch (const NonCommutingOperators& e) {
    EXPECT_GT(e.max_commutator_norm, 0.1);
  }
  (void)b;
}

TEST(Symmetry, EmptyEigenspaceRejected) {
  auto b = enumerate_irreducible_subspace(2, 1);
  EXPECT_THROW(joint_unity_eigenspace({{"-I", scale(LinearOperator::identity(b), -1.0)}}), EmptyEigenspace);
}

TEST(Symmetry, PermutationInvarianceProperty) {
  auto b = enumerate_irreducible_subspace(2, 2);
  std::vector<SymmetryOperator> ops{inversion_all_groups(2, b), swap_operator(b),
                                    {"I", LinearOperator::identity(b)}};
  auto reference = joint_unity_eigenspace(ops).vectors;
  std::sort(ops.begin(), ops.end(), [](const auto& x, const auto& y) { return x.name < y.name; });
  do {
    auto res = joint_unity_eigenspace(ops);
    EXPECT_LT(projector_distance(res.vectors, reference), 1e-10);
  } while (std::next_permutation(ops.begin(), ops.end(),
                                 [](const auto& x, const auto& y) { return x.name < y.name; }));
}

TEST(Symmetry, CanonicalizationIsGaugeFixed) {
  std::mt19937_64 rng(21);
  auto b = enumerate_irreducible_subspace(3, 1);
  std::vector<StateVector> span{test_support::random_state(b, rng), test_support::random_state(b, rng)};
  auto c1 = canonicalize_subspace(span);
  // A random unitary mix of the same span canonicalizes to the same vectors.
  std::vector<StateVector> mixed{
      StateVector(b, 0.6 * span[0].amplitudes + cplx(0, 0.8) * span[1].amplitudes),
      StateVector(b, cplx(0.3, 0.1) * span[0].amplitudes - 2.0 * span[1].amplitudes)};
  auto c2 = canonicalize_subspace(mixed);
  ASSERT_EQ(c1.size(), 2u);
  ASSERT_EQ(c2.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_LT((c1[i].amplitudes - c2[i].amplitudes).norm(), 1e-10);
    EXPECT_NEAR(c1[i].norm(), 1.0, 1e-12);
  }
  EXPECT_NEAR(std::abs(inner_product(c1[0], c1[1])), 0.0, 1e-12);
}

TEST(Symmetry, ProjectorDistanceBasics) {
  auto b = enumerate_irreducible_subspace(2, 1);
  auto e0 = StateVector::basis_state(b, {0, 0, 2});
  auto e1 = StateVector::basis_state(b, {1, 1, 1});
  EXPECT_NEAR(projector_distance({e0}, {e0}), 0.0, 1e-14);
  EXPECT_NEAR(projector_distance({e0}, {e1}), std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(projector_distance({e0, e1}, {e1, e0}), 0.0, 1e-14);
}

TEST(Symmetry, TwoModeOperators) {
  for (int N = 1; N <= 4; ++N) {
    auto b = two_mode_chain_basis(N);
    auto s = two_mode_bc_symmetry_operator(N, b);
    EXPECT_LT(unitarity_defect(s.op), 1e-10);
    for (int bit = 0; bit < 2; ++bit) {
      EXPECT_LT(eigen_residual(s, two_mode_bc_state(N, bit, b)), 1e-10);
    }
  }
}
