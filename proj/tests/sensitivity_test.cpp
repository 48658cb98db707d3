#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "lvdyn/case_study.hpp"
#include "lvdyn/dynamics.hpp"
#include "lvdyn/error.hpp"
#include "lvdyn/sensitivity.hpp"

namespace lvdyn {
namespace {

using case_study::Subsystem;

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no lvdyn::Error thrown";
  return ErrorKind::InvalidArgument;
}

std::vector<Interval> unit_box(std::size_t d) { return std::vector<Interval>(d, Interval{0.0, 1.0}); }

std::vector<std::string> names(std::size_t d) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < d; ++i) out.push_back("p" + std::to_string(i + 1));
  return out;
}

SobolResult analyze(const SaltelliDesign& design, const RowModel& f) {
  const ModelOutputs out = evaluate_design(design, {"f"}, f);
  return sobol_indices(design, out, names(design.dimension()));
}

TEST(Bounds, BaselineBox) {
  const ContinuousParams cp = case_study::published_table(Subsystem::AiPhysical).continuous;
  const ParamBounds b = bounds_from_baseline(cp, 0.1);
  EXPECT_NEAR(b.intervals[0].lower, 3.4673517, 1e-6);
  EXPECT_NEAR(b.intervals[0].upper, 4.2378743, 1e-6);
  EXPECT_NEAR(b.intervals[5].lower, -0.0001386, 1e-12);
  EXPECT_NEAR(b.intervals[5].upper, -0.0001134, 1e-12);
  for (const Interval& iv : b.intervals) {
    EXPECT_LT(iv.lower, iv.upper);
    EXPECT_EQ(std::signbit(iv.lower), std::signbit(iv.upper));
  }
}

TEST(Bounds, RejectsDegenerateInput) {
  const ContinuousParams cp = case_study::published_table(Subsystem::AiPhysical).continuous;
  EXPECT_EQ(kind_of([&] { bounds_from_baseline(cp, 0.0); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([&] { bounds_from_baseline(cp, 1.0); }), ErrorKind::InvalidArgument);
  ContinuousParams zero = cp;
  zero.b12 = 0.0;
  EXPECT_EQ(kind_of([&] { bounds_from_baseline(zero, 0.1); }), ErrorKind::ZeroBaseline);
}

TEST(Saltelli, RowCounts) {
  EXPECT_EQ(saltelli_sample(unit_box(6), 64, 1).rows(), 896u);
  EXPECT_EQ(saltelli_sample(unit_box(6), 1024, 1).rows(), 14336u);
}

TEST(Saltelli, RejectsInvalidN) {
  EXPECT_EQ(kind_of([] { saltelli_sample(unit_box(6), 100, 1); }), ErrorKind::InvalidN);
  EXPECT_EQ(kind_of([] { saltelli_sample(unit_box(6), 32, 1); }), ErrorKind::InvalidN);
}

TEST(Saltelli, RowsStayInsideTheBox) {
  const ContinuousParams cp = case_study::published_table(Subsystem::AiLabor).continuous;
  const ParamBounds b = bounds_from_baseline(cp, 0.1);
  const SaltelliDesign d = saltelli_sample(b, 64, 5);
  for (std::size_t r = 0; r < d.rows(); ++r) {
    const auto row = d.row(r);
    for (std::size_t i = 0; i < 6; ++i) {
      EXPECT_GE(row[i], b.intervals[i].lower);
      EXPECT_LE(row[i], b.intervals[i].upper);
    }
  }
}

TEST(Saltelli, CrossMatricesSwapOneColumn) {
  const SaltelliDesign d = saltelli_sample(unit_box(4), 64, 9);
  for (std::size_t j = 0; j < d.base_n(); ++j) {
    const auto a = d.row(d.index_a(j)), b = d.row(d.index_b(j));
    for (std::size_t i = 0; i < 4; ++i) {
      const auto ab = d.row(d.index_ab(j, i)), ba = d.row(d.index_ba(j, i));
      for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_EQ(ab[k], k == i ? b[k] : a[k]);
        EXPECT_EQ(ba[k], k == i ? a[k] : b[k]);
      }
    }
  }
}

TEST(SobolIndices, SingleVariableFunction) {
  const SaltelliDesign d = saltelli_sample(unit_box(6), 1024, 3);
  const SobolResult r = analyze(d, [](std::span<const double> t, std::span<double> out) {
    out[0] = t[0];
    return true;
  });
  const IndexEstimate& e = r.outputs[0];
  EXPECT_NEAR(e.first[0], 1.0, 0.02);
  EXPECT_NEAR(e.total[0], 1.0, 0.02);
  for (std::size_t i = 1; i < 6; ++i) {
    EXPECT_NEAR(e.first[i], 0.0, 0.02);
    EXPECT_NEAR(e.total[i], 0.0, 0.02);
  }
}

TEST(SobolIndices, AdditiveFunctionRecoversVarianceShares) {
  // theta1 ~ U(0, 1), theta2 ~ U(0, 2): variances 1/12 and 4/12
  const std::vector<Interval> box{{0.0, 1.0}, {0.0, 2.0}};
  const SaltelliDesign d = saltelli_sample(box, 1024, 17);
  const SobolResult r = analyze(d, [](std::span<const double> t, std::span<double> out) {
    out[0] = t[0] + t[1];
    return true;
  });
  const IndexEstimate& e = r.outputs[0];
  EXPECT_NEAR(e.first[0], 0.2, 0.02);
  EXPECT_NEAR(e.first[1], 0.8, 0.02);
  EXPECT_NEAR(e.total[0], 0.2, 0.02);
  EXPECT_NEAR(e.total[1], 0.8, 0.02);
  EXPECT_NEAR(e.variance, 5.0 / 12.0, 0.02);
}

TEST(SobolIndices, EqualSharesForSymmetricSum) {
  const SaltelliDesign d = saltelli_sample(unit_box(6), 1024, 23);
  const SobolResult r = analyze(d, [](std::span<const double> t, std::span<double> out) {
    out[0] = std::accumulate(t.begin(), t.end(), 0.0);
    return true;
  });
  for (double s : r.outputs[0].first) EXPECT_NEAR(s, 1.0 / 6.0, 0.02);
  EXPECT_NEAR(r.outputs[0].sum_first(), 1.0, 0.03);
}

TEST(SobolIndices, DeterministicForFixedSeed) {
  const ContinuousParams cp = case_study::published_table(Subsystem::AiLabor).continuous;
  const ParamBounds b = bounds_from_baseline(cp, 0.1);
  const SobolResult a = equilibrium_sensitivity(b, 256, 77, 1);
  const SobolResult c = equilibrium_sensitivity(b, 256, 77, 4);
  ASSERT_EQ(a.outputs.size(), 2u);
  for (std::size_t o = 0; o < 2; ++o) {
    EXPECT_EQ(a.outputs[o].first, c.outputs[o].first);
    EXPECT_EQ(a.outputs[o].total, c.outputs[o].total);
    EXPECT_EQ(a.outputs[o].variance, c.outputs[o].variance);
  }
  const SobolResult other = equilibrium_sensitivity(b, 256, 78, 1);
  EXPECT_NE(a.outputs[0].first, other.outputs[0].first);
}

TEST(SobolIndices, EquilibriumIndicesStayInTheNoiseBand) {
  for (Subsystem s : {Subsystem::AiPhysical, Subsystem::AiLabor}) {
    const ParamBounds b = bounds_from_baseline(case_study::published_table(s).continuous, 0.1);
    const SobolResult r = equilibrium_sensitivity(b, 1024, 20240101, 2);
    EXPECT_EQ(r.rejected_count, 0u);
    EXPECT_EQ(r.accepted_count, 14336u);
    for (const IndexEstimate& e : r.outputs) {
      for (std::size_t i = 0; i < 6; ++i) {
        EXPECT_GE(e.first[i], -0.05);
        EXPECT_GE(e.total[i], e.first[i] - 0.05);
      }
      EXPECT_GE(e.sum_first(), 0.8);
      EXPECT_LE(e.sum_first(), 1.1);
    }
  }
}

TEST(EvaluateEquilibria, BaselineRowAndSingularRow) {
  const ContinuousParams cp = case_study::published_table(Subsystem::AiPhysical).continuous;
  const auto base = cp.to_array();
  // b12 b21 = b11 b22 makes the nullclines parallel
  const std::array<double, 6> singular{1.0, -1.0, -2.0, 1.0, -1.0, -2.0};
  std::vector<double> values(14 * 6);
  for (std::size_t r = 0; r < 14; ++r) {
    const auto& src = r == 3 ? singular : base;
    std::copy(src.begin(), src.end(), values.begin() + static_cast<std::ptrdiff_t>(r * 6));
  }
  const SaltelliDesign d(1, 6, 0, values);
  const ModelOutputs out = evaluate_equilibria(d);
  ASSERT_EQ(out.names, (std::vector<std::string>{"x*", "y*"}));
  EXPECT_EQ(out.valid[0], 1);
  EXPECT_NEAR(out.values[0][0], 198.18, 0.01);
  EXPECT_NEAR(out.values[1][0], 51506.42, 0.01);
  EXPECT_EQ(out.valid[3], 0);
}

TEST(SobolIndices, TooManyRejections) {
  const SaltelliDesign d = saltelli_sample(unit_box(3), 64, 1);
  const ModelOutputs out = evaluate_design(d, {"f"}, [](std::span<const double> t, std::span<double> o) {
    o[0] = t[0];
    return t[1] < 0.3;  // rejects most rows, so most blocks are dropped
  });
  EXPECT_EQ(kind_of([&] { sobol_indices(d, out, names(3)); }), ErrorKind::TooManyRejections);
}

TEST(SobolIndices, DropsWholeBlocksOnRejection) {
  const SaltelliDesign d = saltelli_sample(unit_box(2), 64, 1);
  const ModelOutputs out = evaluate_design(d, {"f"}, [](std::span<const double> t, std::span<double> o) {
    o[0] = t[0] + t[1];
    return t[0] < 0.9;
  });
  const SobolResult r = sobol_indices(d, out, names(2));
  const std::size_t invalid =
      static_cast<std::size_t>(std::count(out.valid.begin(), out.valid.end(), std::uint8_t{0}));
  EXPECT_EQ(r.rejected_count, invalid);
  EXPECT_EQ(r.accepted_count + r.rejected_count, d.rows());
  EXPECT_LT(r.retained_blocks, d.base_n());
  EXPECT_GE(r.retained_blocks, d.base_n() / 2);
}

}  // namespace
}  // namespace lvdyn
