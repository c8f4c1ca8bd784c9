#include <gtest/gtest.h>

#include <random>
#include <set>

#include "chi2qec/gates.hpp"
#include "chi2qec/syndromes.hpp"
#include "test_support.hpp"

using namespace chi2qec;

namespace {

using Row = std::tuple<std::string, std::vector<int>, std::vector<int>>;

// Qutrit PCC reference table, loss rows then gain rows.
const std::vector<Row> kPccRows = {
    {"a_s1", {1, 1, 0, 0, 0, 0}, {2, 0}},    {"a_i1", {1, 0, 1, 0, 0, 0}, {2, 0}},
    {"a_p1", {0, 1, 1, 0, 0, 0}, {2, 0}},    {"a_s2", {0, 0, 0, 1, 1, 0}, {0, 2}},
    {"a_i2", {0, 0, 0, 1, 0, 1}, {0, 2}},    {"a_p2", {0, 0, 0, 0, 1, 1}, {0, 2}},
    {"adag_s1", {1, 1, 0, 0, 0, 0}, {1, 0}}, {"adag_i1", {1, 0, 1, 0, 0, 0}, {1, 0}},
    {"adag_p1", {0, 1, 1, 0, 0, 0}, {1, 0}}, {"adag_s2", {0, 0, 0, 1, 1, 0}, {0, 1}},
    {"adag_i2", {0, 0, 0, 1, 0, 1}, {0, 1}}, {"adag_p2", {0, 0, 0, 0, 1, 1}, {0, 1}},
};

// Qubit EECC reference table.
const std::vector<Row> kEeccRows = {
    {"a_s", {1, 1, 0}, {2}},    {"a_i", {1, 0, 1}, {2}},    {"a_p", {0, 1, 1}, {2}},
    {"adag_s", {1, 1, 0}, {1}}, {"adag_i", {1, 0, 1}, {1}}, {"adag_p", {0, 1, 1}, {1}},
};

void expect_table(const std::vector<SyndromeRecord>& got, const std::vector<Row>& want) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t r = 0; r < want.size(); ++r) {
    EXPECT_EQ(got[r].label, std::get<0>(want[r]));
    EXPECT_EQ(got[r].p, std::get<1>(want[r])) << got[r].label;
    EXPECT_EQ(got[r].q, std::get<2>(want[r])) << got[r].label;
  }
}

void expect_distinct(const std::vector<SyndromeRecord>& table, const SyndromeRecord& base) {
  std::set<std::pair<std::vector<int>, std::vector<int>>> seen{{base.p, base.q}};
  for (const auto& r : table) EXPECT_TRUE(seen.insert({r.p, r.q}).second) << r.label;
}

}  // namespace

TEST(Syndromes, P3OnIrreducibleSubspaces) {
  std::mt19937_64 rng(11);
  for (int N = 1; N <= 6; ++N) {
    const Basis b = enumerate_irreducible_subspace(N, 1);
    const auto s = make_scheme(SchemeName::p3, b->layout(), N);
    const auto v = measure_parity(test_support::random_state(b, rng), s);
    EXPECT_EQ(v, (std::vector<int>{0, N % 2, N % 2})) << N;
  }
}

TEST(Syndromes, VacuumAndZeroVectorGiveZeros) {
  const Basis b = enumerate_truncated_space(ModeLayout::three_mode(2, 1));
  const auto vac = StateVector::basis_state(b, {0, 0, 0, 0, 0, 0});
  EXPECT_EQ(measure_parity(vac, make_scheme(SchemeName::p12, b->layout(), 0)), std::vector<int>(6, 0));
  EXPECT_EQ(measure_parity(StateVector::zero(b), make_scheme(SchemeName::p3, b->layout(), 0)),
            std::vector<int>(3, 0));
}

TEST(Syndromes, IndefiniteParityThrows) {
  const Basis b = enumerate_truncated_space(ModeLayout::three_mode(1, 2));
  const auto s = make_scheme(SchemeName::p3, b->layout(), 2);
  const auto st = StateVector::from_terms(b, {{{1, 0, 0}, 1.0}, {{0, 0, 0}, 1.0}});
  EXPECT_THROW(measure_parity(st, s), IndefiniteParity);
}

TEST(Syndromes, ModuliValidated) {
  const auto layout = ModeLayout::three_mode(1, 2);
  EXPECT_THROW(make_scheme(SchemeName::pBC, layout, 1), InvalidArgument);
  EXPECT_THROW(make_scheme(SchemeName::p12, layout, 2), InvalidArgument);
}

TEST(Syndromes, EeccSignalLossExample) {
  const CodeSpec code = build_eecc(2);
  const Basis b = enclosing_space(code, 1);
  const auto psi = random_logical_state(code, 5);
  const auto img = apply(parse_error_label("a_s", b).op, psi);
  EXPECT_EQ(measure_parity(img, make_scheme(SchemeName::p3, b->layout(), 2)), (std::vector<int>{1, 1, 0}));
  EXPECT_EQ(measure_parity(img, make_scheme(SchemeName::qEECC, b->layout(), 2)), std::vector<int>{2});
}

TEST(Syndromes, PccTableMatchesReference) {
  const CodeSpec code = build_pcc(3);
  const auto table = syndrome_table(code);
  expect_table(table, kPccRows);
  const auto base = baseline_syndrome(code);
  EXPECT_EQ(base.p, std::vector<int>(6, 0));
  EXPECT_EQ(base.q, std::vector<int>(2, 0));
  expect_distinct(table, base);
}

TEST(Syndromes, EeccTableMatchesReference) {
  const CodeSpec code = build_eecc(2);
  const auto table = syndrome_table(code);
  expect_table(table, kEeccRows);
  expect_distinct(table, baseline_syndrome(code));
}

TEST(Syndromes, OtherPccAndEeccSizesStayDistinct) {
  for (int N : {2, 4, 5}) {
    const CodeSpec pcc = build_pcc(N);
    expect_distinct(syndrome_table(pcc), baseline_syndrome(pcc));
  }
  for (int N : {3, 4}) {
    const CodeSpec eecc = build_eecc(N);
    expect_distinct(syndrome_table(eecc), baseline_syndrome(eecc));
  }
}

TEST(Syndromes, QubitPccBaselineIsOdd) {
  const auto base = baseline_syndrome(build_pcc(2));
  EXPECT_EQ(base.p, (std::vector<int>{0, 1, 1, 0, 1, 1}));
}

TEST(Syndromes, BcTablesDistinctPerOrder) {
  for (int N = 2; N <= 4; ++N) {
    const CodeSpec code = build_bc(N);
    const auto base = baseline_syndrome(code);
    EXPECT_EQ(base.p, std::vector<int>(3, 0));
    EXPECT_EQ(base.q, std::vector<int>{0});
    for (int m = 1; m <= N; ++m) {
      const auto table = syndrome_table(code, m);
      EXPECT_EQ(table.size(), static_cast<std::size_t>((m + 2) * (m + 1)));
      expect_distinct(table, base);
    }
  }
}

TEST(Syndromes, BcTwoLossLabelsDistinct) {
  const auto table = syndrome_table(build_bc(2), 2);
  std::set<std::vector<int>> ps;
  int losses = 0;
  for (const auto& r : table) {
    if (r.description.rfind("loss", 0) != 0) continue;
    ++losses;
    ps.insert(r.p);
  }
  EXPECT_EQ(losses, 6);
  EXPECT_EQ(ps.size(), 6u);
}

TEST(Syndromes, DecodeExamples) {
  EXPECT_EQ(decode_syndrome(build_pcc(3), {1, 1, 0, 0, 0, 0}, {2, 0}).description, "loss on s1");
  EXPECT_EQ(decode_syndrome(build_eecc(2), {0, 1, 1}, {1}).description, "gain on p");
  EXPECT_EQ(decode_syndrome(build_pcc(3), std::vector<int>(6, 0), {0, 0}).description, "no error");
  EXPECT_THROW(decode_syndrome(build_pcc(3), {1, 1, 1, 0, 0, 0}, {2, 0}), UnknownSyndrome);
  EXPECT_EQ(decode_syndrome(build_bc(3), {0, 3, 3}, {11}, 2).label, "a_p^2");
}

TEST(Syndromes, DecodeRoundTripsEveryRow) {
  for (const CodeSpec& code : {build_pcc(3), build_eecc(2), build_bc(3)}) {
    const int m = code.family == CodeFamily::BC ? 2 : 1;
    for (const auto& r : syndrome_table(code, m)) {
      EXPECT_EQ(decode_syndrome(code, r.p, r.q, m).label, r.label);
    }
  }
}

TEST(Syndromes, ConfigurationCountBound) {
  for (int N = 2; N <= 10; ++N) {
    for (int m = 0; m <= N; ++m) EXPECT_TRUE(configuration_count_ok(N, m)) << N << "," << m;
  }
  EXPECT_FALSE(configuration_count_ok(1, 1));
}

TEST(Syndromes, CsvExport) {
  const auto csv = syndrome_table_csv(syndrome_table(build_eecc(2)));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "error_label,p,q");
  EXPECT_NE(csv.find("a_s,1 1 0,2\n"), std::string::npos);
}

TEST(Restoration, BasisMaps) {
  const auto iso = restoration_isometry(RestorationCase::signal_loss);
  const auto out = apply(iso, StateVector::basis_state(iso.domain, {1, 2, 0}));
  EXPECT_NEAR(std::abs(out.amplitude({0, 0, 2})), 1.0, 1e-15);
  const auto pump = restoration_isometry(parse_restoration_case("pcc_pump_loss"));
  EXPECT_NEAR(std::abs(apply(pump, StateVector::basis_state(pump.domain, {1, 1, 0})).amplitude({2, 2, 0})), 1.0,
              1e-15);
  EXPECT_EQ(parse_restoration_case("eecc_signal_loss"), RestorationCase::signal_loss);
  EXPECT_THROW(parse_restoration_case("bogus"), UnknownName);
}

TEST(Restoration, IsometricOnDomain) {
  for (auto c : {RestorationCase::signal_loss, RestorationCase::idler_loss, RestorationCase::pump_loss}) {
    const auto iso = restoration_isometry(c);
    const Eigen::MatrixXcd m = iso.dense();
    EXPECT_LT((m.adjoint() * m - Eigen::MatrixXcd::Identity(2, 2)).norm(), 1e-15);
  }
}

TEST(Restoration, CaseAPsi1) {
  // alpha|2~> + beta|1~> + gamma|0~> after a_s1 and restoration.
  const CodeSpec code = build_pcc(3);
  const cplx al{0.3, 0.1}, be{-0.5, 0.2}, ga{0.4, -0.6};
  Eigen::VectorXcd c(3);
  c << ga, be, al;
  const auto psi = logical_state(code, c);
  const auto phi = apply(parse_error_label("a_s1", enclosing_space(code, 1)).op, psi).normalized();
  const auto iso = tensor(restoration_isometry(RestorationCase::signal_loss), LinearOperator::identity(h2_basis()));
  const auto out = apply(iso, embed(phi, iso.domain));
  const double s = std::sqrt(std::norm(al) + std::norm(be) + std::norm(ga));
  EXPECT_NEAR(std::abs(out.amplitude({0, 0, 2, 0, 0, 2}) - al / s), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(out.amplitude({0, 0, 2, 2, 2, 0}) - be / s), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(out.amplitude({2, 2, 0, 1, 1, 1}) - ga / s), 0.0, 1e-14);
}

TEST(Recovery, PccLossesAllModes) {
  const CodeSpec code = build_pcc(3);
  for (const std::string label : {"a_s1", "a_i1", "a_p1", "a_s2", "a_i2", "a_p2"}) {
    for (unsigned long long seed = 0; seed < 100; ++seed) {
      const auto r = full_recovery(code, label, random_logical_state(code, seed));
      ASSERT_NEAR(r.fidelity, 1.0, 1e-10) << label << " seed " << seed;
    }
  }
}

TEST(Recovery, EeccLossesAllModes) {
  const CodeSpec code = build_eecc(2);
  for (const std::string label : {"a_s", "a_i", "a_p"}) {
    for (unsigned long long seed = 0; seed < 100; ++seed) {
      const auto r = full_recovery(code, label, random_logical_state(code, seed));
      ASSERT_NEAR(r.fidelity, 1.0, 1e-10) << label << " seed " << seed;
    }
  }
}

TEST(Recovery, StepsFollowCases) {
  const CodeSpec code = build_pcc(3);
  const auto a = full_recovery(code, "a_s1", random_logical_state(code, 1));
  EXPECT_EQ(a.steps, (std::vector<std::string>{"syndrome -> loss on s1", "restore signal_loss", "CNOT2_21",
                                               "Lambda21H", "LambdaBar21H", "CNOT2p_12"}));
  const auto b = full_recovery(code, "a_p1", random_logical_state(code, 1));
  EXPECT_EQ(b.steps[2], "Lambda21H");
  EXPECT_EQ(b.steps.back(), "CNOT2pp_12");
}

TEST(Recovery, GainUsesCanonicalRecovery) {
  for (const CodeSpec& code : {build_pcc(3), build_eecc(2)}) {
    for (const auto& r : syndrome_table(code)) {
      if (r.description.rfind("gain", 0) != 0) continue;
      for (unsigned long long seed = 0; seed < 10; ++seed) {
        EXPECT_NEAR(full_recovery(code, r.label, random_logical_state(code, seed)).fidelity, 1.0, 1e-10);
      }
    }
  }
}

TEST(Recovery, BcTwoPhotonEvents) {
  const CodeSpec code = build_bc(2);
  for (const auto& r : syndrome_table(code, 2)) {
    for (unsigned long long seed = 0; seed < 10; ++seed) {
      EXPECT_NEAR(full_recovery(code, r.label, random_logical_state(code, seed)).fidelity, 1.0, 1e-10)
          << r.label;
    }
  }
}

TEST(Recovery, NoErrorIsIdentity) {
  const CodeSpec code = build_pcc(3);
  const auto psi = random_logical_state(code, 3);
  const auto r = full_recovery(code, "I", psi);
  EXPECT_EQ(r.syndrome.description, "no error");
  EXPECT_NEAR(r.fidelity, 1.0, 1e-14);
}

TEST(Recovery, RandomStatesAreSeeded) {
  const CodeSpec code = build_eecc(2);
  EXPECT_EQ(random_logical_state(code, 9).amplitudes, random_logical_state(code, 9).amplitudes);
  EXPECT_NE(random_logical_state(code, 9).amplitudes, random_logical_state(code, 10).amplitudes);
}
