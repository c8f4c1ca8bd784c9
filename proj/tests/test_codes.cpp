#include <gtest/gtest.h>

#include <cmath>

#include "chi2qec/codes.hpp"
#include "chi2qec/combinatorics.hpp"

using namespace chi2qec;

namespace {

double amp(const StateVector& v, const FockState& s) { return std::abs(v.amplitude(s)); }

}  // namespace

TEST(Codes, PccQubitMatchesReference) {
  auto c = build_pcc(2);
  ASSERT_EQ(c.dimension(), 2u);
  const double r = std::sqrt(0.5);
  EXPECT_NEAR(amp(c.logical_states[0], {1, 1, 0, 1, 1, 0}), r, 1e-15);
  EXPECT_NEAR(amp(c.logical_states[0], {0, 0, 1, 0, 0, 1}), r, 1e-15);
  EXPECT_NEAR(amp(c.logical_states[1], {1, 1, 0, 0, 0, 1}), r, 1e-15);
  EXPECT_NEAR(amp(c.logical_states[1], {0, 0, 1, 1, 1, 0}), r, 1e-15);
}

TEST(Codes, PccQutritMatchesReference) {
  auto c = build_pcc(3);
  ASSERT_EQ(c.dimension(), 3u);
  EXPECT_NEAR(amp(c.logical_states[0], {1, 1, 1, 1, 1, 1}), 1.0, 1e-15);
  const double r = std::sqrt(0.5);
  EXPECT_NEAR(amp(c.logical_states[1], {2, 2, 0, 2, 2, 0}), r, 1e-15);
  EXPECT_NEAR(amp(c.logical_states[1], {0, 0, 2, 0, 0, 2}), r, 1e-15);
  EXPECT_NEAR(amp(c.logical_states[2], {2, 2, 0, 0, 0, 2}), r, 1e-15);
  EXPECT_NEAR(amp(c.logical_states[2], {0, 0, 2, 2, 2, 0}), r, 1e-15);
  EXPECT_EQ(c.total_photons, Rational(6));
}

TEST(Codes, PccGeneralFamiliesAreOrthonormalAndSymmetric) {
  for (int N = 2; N <= 7; ++N) {
    auto c = build_pcc(N);
    EXPECT_EQ(c.dimension(), static_cast<std::size_t>(N));
    EXPECT_LT(orthonormality_defect(c), 1e-12) << N;
    for (const auto& s : code_symmetry_operators(c)) {
      for (const auto& v : c.logical_states) {
        EXPECT_LT((apply(s.op, v).amplitudes - v.amplitudes).norm(), 1e-12) << N << " " << s.name;
      }
    }
    EXPECT_NEAR(mean_total_photons(c), boost::rational_cast<double>(c.total_photons), 1e-12);
  }
  EXPECT_THROW(build_pcc(1), InvalidArgument);
}

TEST(Codes, PccEvenFamilyN4) {
  auto c = build_pcc(4);
  const double r = std::sqrt(0.5);
  // m = 2: |0~> pairs |2,2,1> with |1,1,2> across groups.
  EXPECT_NEAR(amp(c.logical_states[0], {2, 2, 1, 1, 1, 2}), r, 1e-15);
  EXPECT_NEAR(amp(c.logical_states[1], {2, 2, 1, 2, 2, 1}), r, 1e-15);
  EXPECT_NEAR(amp(c.logical_states[3], {0, 0, 3, 0, 0, 3}), r, 1e-15);
}

TEST(Codes, EeccMatchesReference) {
  auto c = build_eecc(2);
  const double r = std::sqrt(0.5);
  EXPECT_NEAR(amp(c.logical_states[0], {2, 2, 0}), r, 1e-15);
  EXPECT_NEAR(amp(c.logical_states[0], {0, 0, 2}), r, 1e-15);
  EXPECT_NEAR(amp(c.logical_states[1], {1, 1, 1}), 1.0, 1e-15);

  auto c3 = build_eecc(3);
  EXPECT_NEAR(amp(c3.logical_states[0], {4, 4, 0}), r, 1e-15);
  EXPECT_NEAR(amp(c3.logical_states[0], {0, 0, 4}), r, 1e-15);
  EXPECT_NEAR(amp(c3.logical_states[2], {2, 2, 2}), 1.0, 1e-15);
  EXPECT_EQ(c3.params.q, 5);
}

TEST(Codes, EeccUniformMeanPhotons) {
  for (int N = 2; N <= 6; ++N) {
    auto c = build_eecc(N);
    const auto means = mean_photons_per_mode(c);
    for (const auto& row : means) {
      for (double x : row) EXPECT_NEAR(x, means[0][0], 1e-12);
    }
    EXPECT_LT(orthonormality_defect(c), 1e-12);
  }
}

TEST(Codes, PccUniformMeanPhotons) {
  for (int N = 2; N <= 6; ++N) {
    auto c = build_pcc(N);
    const auto means = mean_photons_per_mode(c);
    for (const auto& row : means) {
      for (std::size_t k = 0; k < row.size(); ++k) EXPECT_NEAR(row[k], means[0][k], 1e-12) << N;
    }
  }
}

TEST(Codes, BinomialCodeN2N3) {
  auto c = build_bc(2);
  EXPECT_NEAR(amp(c.logical_states[0], {0, 0, 3}), 0.5, 1e-15);
  EXPECT_NEAR(amp(c.logical_states[0], {2, 2, 1}), std::sqrt(3.0) / 2, 1e-15);
  EXPECT_NEAR(amp(c.logical_states[1], {3, 3, 0}), 0.5, 1e-15);
  EXPECT_NEAR(amp(c.logical_states[1], {1, 1, 2}), std::sqrt(3.0) / 2, 1e-15);

  auto c3 = build_bc(3);
  EXPECT_NEAR(amp(c3.logical_states[0], {0, 0, 5}), 0.25, 1e-15);
  EXPECT_NEAR(amp(c3.logical_states[0], {2, 2, 3}), std::sqrt(10.0) / 4, 1e-15);
  EXPECT_NEAR(amp(c3.logical_states[0], {4, 4, 1}), std::sqrt(5.0) / 4, 1e-15);
}

TEST(Codes, BinomialNormalizationExact) {
  for (int N = 1; N <= 8; ++N) {
    BigInt even = 0, odd = 0;
    for (int j = 0; j < N; ++j) {
      even += binomial(2 * N - 1, 2 * j);
      odd += binomial(2 * N - 1, 2 * j + 1);
    }
    EXPECT_EQ(even, int_pow(4, N - 1));
    EXPECT_EQ(odd, int_pow(4, N - 1));
    EXPECT_LT(orthonormality_defect(build_bc(N)), 1e-12);
  }
}

TEST(Codes, BinomialOppositeParities) {
  for (int N = 1; N <= 5; ++N) {
    auto c = build_bc(N);
    for (int bit = 0; bit < 2; ++bit) {
      for (const auto& [s, a] : c.logical_states[static_cast<std::size_t>(bit)].support()) {
        EXPECT_EQ(s[0] % 2, bit);
        EXPECT_EQ(s[1] % 2, bit);
        EXPECT_EQ(s[2] % 2, 1 - bit);
      }
    }
  }
}

TEST(Codes, TwoModeBinomial) {
  for (int N = 1; N <= 5; ++N) {
    auto c = build_two_mode_bc(N);
    for (const auto& v : c.logical_states) {
      for (const auto& [s, a] : v.support()) EXPECT_EQ(s[0] + s[1], 2 * N - 1);
      EXPECT_NEAR(v.norm(), 1.0, 1e-12);
    }
    EXPECT_NEAR(std::abs(inner_product(c.logical_states[0], c.logical_states[1])), 0.0, 1e-15);
  }
  auto c2 = build_two_mode_bc(2);
  EXPECT_NEAR(amp(c2.logical_states[0], {2, 1}), std::sqrt(3.0) / 2, 1e-15);
  EXPECT_NEAR(amp(c2.logical_states[0], {0, 3}), 0.5, 1e-15);
  EXPECT_THROW(build_two_mode_bc(0), InvalidArgument);
}

TEST(Codes, Rates) {
  for (int N = 2; N <= 8; ++N) EXPECT_NEAR(code_rate(build_pcc(N)), 0.5, 1e-15);
  EXPECT_NEAR(code_rate(build_eecc(2)), 1.0 / std::log2(3.0), 1e-15);
  for (int N = 1; N <= 6; ++N) EXPECT_NEAR(code_rate(build_bc(N)), 1.0 / std::log2(2.0 * N), 1e-15);
}

TEST(Codes, TotalPhotons) {
  for (int N = 2; N <= 6; ++N) {
    EXPECT_EQ(build_pcc(N).total_photons, Rational(3 * (N - 1)));
    EXPECT_EQ(build_eecc(N).total_photons, Rational(3 * (N - 1)));
    EXPECT_NEAR(mean_total_photons(build_eecc(N)), 3.0 * (N - 1), 1e-12);
  }
  for (int N = 1; N <= 6; ++N) {
    auto c = build_bc(N);
    EXPECT_EQ(c.total_photons, Rational(6 * N - 3, 2));
    EXPECT_NEAR(mean_total_photons(c), 3.0 * (N - 0.5), 1e-12);
  }
}

TEST(Codes, SynthesisQutritPcc) {
  auto r = synthesize(build_pcc(3));
  ASSERT_GE(r.dimension_trace.size(), 3u);
  EXPECT_EQ(r.dimension_trace.front(), 729u);
  const auto n = r.dimension_trace.size();
  EXPECT_EQ(r.dimension_trace[n - 3], 9u);
  EXPECT_EQ(r.dimension_trace[n - 2], 5u);
  EXPECT_EQ(r.dimension_trace[n - 1], 4u);
  // The code is a 3-dim subspace of the 4-dim synthesized space.
  EXPECT_FALSE(r.subspace_equal);
  EXPECT_NEAR(r.projector_distance, 1.0, 1e-10);
  EXPECT_LT(r.codeword_leakage, 1e-12);
}

TEST(Codes, SynthesisPccContainsCodewords) {
  for (int N = 2; N <= 4; ++N) {
    auto r = synthesize(build_pcc(N));
    EXPECT_LT(r.codeword_leakage, 1e-10) << N;
    EXPECT_LT(r.max_codeword_residual, 1e-12) << N;
  }
}

TEST(Codes, SynthesisQubitPccAndEecc) {
  auto p = synthesize(build_pcc(2));
  EXPECT_LT(p.projector_distance, 1e-8);
  auto e = synthesize(build_eecc(2));
  EXPECT_LT(e.projector_distance, 1e-8);
  for (int N = 3; N <= 5; ++N) EXPECT_LT(synthesize(build_eecc(N)).projector_distance, 1e-8) << N;
}

TEST(Codes, SynthesisBinomialContainsCodewords) {
  for (int N = 1; N <= 4; ++N) {
    auto r = synthesize(build_bc(N));
    EXPECT_LT(r.max_codeword_residual, 1e-9) << N;
    EXPECT_LT(r.codeword_leakage, 1e-8) << N;
  }
}

TEST(Codes, ParseFamily) {
  EXPECT_EQ(parse_code_family("PCC"), CodeFamily::PCC);
  EXPECT_EQ(parse_code_family("bc2"), CodeFamily::BC2mode);
  EXPECT_THROW(parse_code_family("gkp"), UnknownName);
}
