#include "lvdyn/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "lvdyn/dynamics.hpp"
#include "lvdyn/error.hpp"
#include "lvdyn/sobol_sequence.hpp"

namespace lvdyn {

ParamBounds bounds_from_baseline(const ContinuousParams& cp, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    fail(ErrorKind::InvalidArgument, "fraction must lie in (0, 1), got " + std::to_string(fraction));
  }
  ParamBounds b;
  const auto values = cp.to_array();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (v == 0.0) {
      fail(ErrorKind::ZeroBaseline,
           std::string(ContinuousParams::kNames[i]) + " is exactly zero; the box would collapse");
    }
    if (!std::isfinite(v)) {
      fail(ErrorKind::InvalidArgument, std::string(ContinuousParams::kNames[i]) + " is not finite");
    }
    const double half = std::abs(v) * fraction;
    b.intervals[i] = {v - half, v + half};
  }
  return b;
}

SaltelliDesign::SaltelliDesign(std::size_t base_n, std::size_t dimension, std::uint64_t seed,
                               std::vector<double> values)
    : base_n_(base_n), dim_(dimension), seed_(seed), values_(std::move(values)) {
  if (values_.size() != rows() * dim_) {
    fail(ErrorKind::InvalidArgument, "design storage does not match N (2D + 2) x D");
  }
}

SaltelliDesign saltelli_sample(std::span<const Interval> bounds, std::size_t base_n,
                               std::uint64_t seed) {
  if (base_n < 64 || !is_power_of_two(base_n)) {
    fail(ErrorKind::InvalidN, "N must be a power of two >= 64, got " + std::to_string(base_n));
  }
  const std::size_t dim = bounds.size();
  if (dim == 0 || 2 * dim > SobolSequence::kMaxDimension) {
    fail(ErrorKind::InvalidArgument, "unsupported parameter count " + std::to_string(dim));
  }
  for (const Interval& iv : bounds) {
    if (!(iv.lower < iv.upper)) fail(ErrorKind::InvalidArgument, "bounds need lower < upper");
  }

  const std::size_t block = 2 * dim + 2;
  std::vector<double> values(base_n * block * dim);
  SobolSequence seq(static_cast<unsigned>(2 * dim), seed);
  std::vector<double> point;
  std::vector<double> a(dim), b(dim);
  for (std::size_t j = 0; j < base_n; ++j) {
    seq.next(point);
    for (std::size_t i = 0; i < dim; ++i) {
      a[i] = bounds[i].lower + point[i] * bounds[i].width();
      b[i] = bounds[i].lower + point[dim + i] * bounds[i].width();
    }
    double* out = values.data() + j * block * dim;
    auto put = [&](std::size_t slot, const std::vector<double>& base, std::size_t swap_col,
                   const std::vector<double>& other) {
      double* row = out + slot * dim;
      for (std::size_t i = 0; i < dim; ++i) row[i] = i == swap_col ? other[i] : base[i];
    };
    put(0, a, dim, b);
    for (std::size_t i = 0; i < dim; ++i) put(1 + i, a, i, b);        // A with column i from B
    for (std::size_t i = 0; i < dim; ++i) put(1 + dim + i, b, i, a);  // B with column i from A
    put(block - 1, b, dim, a);
  }
  return SaltelliDesign(base_n, dim, seed, std::move(values));
}

SaltelliDesign saltelli_sample(const ParamBounds& bounds, std::size_t base_n, std::uint64_t seed) {
  return saltelli_sample(std::span<const Interval>(bounds.intervals), base_n, seed);
}

ModelOutputs evaluate_design(const SaltelliDesign& design, std::vector<std::string> output_names,
                             const RowModel& model, unsigned workers) {
  const std::size_t rows = design.rows();
  const std::size_t k = output_names.size();
  ModelOutputs out;
  out.names = std::move(output_names);
  out.values.assign(k, std::vector<double>(rows, 0.0));
  out.valid.assign(rows, 0);

  auto run = [&](std::size_t begin, std::size_t end) {
    std::vector<double> buffer(k);
    for (std::size_t r = begin; r < end; ++r) {
      const bool ok = model(design.row(r), buffer);
      bool finite = ok;
      for (std::size_t o = 0; o < k; ++o) {
        out.values[o][r] = buffer[o];
        finite = finite && std::isfinite(buffer[o]);
      }
      out.valid[r] = finite ? 1 : 0;
    }
  };

  workers = std::max(1u, workers);
  if (workers == 1 || rows < 2 * workers) {
    run(0, rows);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (rows + workers - 1) / workers;
    for (std::size_t begin = 0; begin < rows; begin += chunk) {
      pool.emplace_back(run, begin, std::min(rows, begin + chunk));
    }
  }
  return out;
}

ModelOutputs evaluate_equilibria(const SaltelliDesign& design, unsigned workers) {
  if (design.dimension() != ContinuousParams::kCount) {
    fail(ErrorKind::InvalidArgument, "equilibrium model needs 6 parameters per row");
  }
  const RowModel model = [](std::span<const double> theta, std::span<double> out) {
    std::array<double, ContinuousParams::kCount> v{};
    std::copy(theta.begin(), theta.end(), v.begin());
    const auto eq = interior_equilibrium(ContinuousParams::from_array(v));
    if (!eq) {
      out[0] = out[1] = std::numeric_limits<double>::quiet_NaN();
      return false;
    }
    out[0] = eq->x;
    out[1] = eq->y;
    return eq->x >= 0.0 && eq->y >= 0.0;
  };
  return evaluate_design(design, {"x*", "y*"}, model, workers);
}

double IndexEstimate::sum_first() const { return std::accumulate(first.begin(), first.end(), 0.0); }

namespace {

std::vector<double> clipped(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [](double s) { return std::clamp(s, 0.0, 1.0); });
  return out;
}

}  // namespace

std::vector<double> IndexEstimate::first_clipped() const { return clipped(first); }
std::vector<double> IndexEstimate::total_clipped() const { return clipped(total); }

SobolResult sobol_indices(const SaltelliDesign& design, const ModelOutputs& outputs,
                          std::vector<std::string> parameter_names) {
  const std::size_t n = design.base_n();
  const std::size_t dim = design.dimension();
  if (outputs.valid.size() != design.rows()) {
    fail(ErrorKind::LengthMismatch, "outputs do not cover every design row");
  }
  if (parameter_names.size() != dim) {
    fail(ErrorKind::LengthMismatch, "one parameter name per design column is required");
  }

  SobolResult result;
  result.parameters = std::move(parameter_names);
  result.seed = design.seed();
  result.base_n = n;
  result.accepted_count = static_cast<std::size_t>(
      std::count(outputs.valid.begin(), outputs.valid.end(), std::uint8_t{1}));
  result.rejected_count = design.rows() - result.accepted_count;

  std::vector<std::size_t> kept;
  kept.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    bool ok = outputs.valid[design.index_a(j)] && outputs.valid[design.index_b(j)];
    for (std::size_t i = 0; ok && i < dim; ++i) ok = outputs.valid[design.index_ab(j, i)];
    if (ok) kept.push_back(j);
  }
  result.retained_blocks = kept.size();
  if (2 * kept.size() < n) {
    fail(ErrorKind::TooManyRejections, "only " + std::to_string(kept.size()) + " of " +
                                           std::to_string(n) + " base samples survive rejection");
  }

  const double m = static_cast<double>(kept.size());
  for (std::size_t o = 0; o < outputs.values.size(); ++o) {
    const std::vector<double>& f = outputs.values[o];
    IndexEstimate est;
    est.output = o < outputs.names.size() ? outputs.names[o] : "y" + std::to_string(o);

    // Population variance of the retained A and B outputs, two-pass. The sums
    // below use outputs centred on the same mean, which leaves their
    // expectation unchanged and keeps the output level out of the f_B factor.
    double mean = 0.0;
    for (std::size_t j : kept) mean += f[design.index_a(j)] + f[design.index_b(j)];
    mean /= 2.0 * m;
    double var = 0.0;
    for (std::size_t j : kept) {
      const double da = f[design.index_a(j)] - mean;
      const double db = f[design.index_b(j)] - mean;
      var += da * da + db * db;
    }
    var /= 2.0 * m;
    est.variance = var;

    est.first.assign(dim, 0.0);
    est.total.assign(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
      double vi = 0.0, vt = 0.0;
      for (std::size_t j : kept) {
        const double fa = f[design.index_a(j)] - mean;
        const double fb = f[design.index_b(j)] - mean;
        const double fab = f[design.index_ab(j, i)] - mean;
        vi += fb * (fab - fa);
        vt += (fa - fab) * (fa - fab);
      }
      if (var > 0.0) {
        est.first[i] = vi / m / var;
        est.total[i] = 0.5 * vt / m / var;
      }
    }
    result.outputs.push_back(std::move(est));
  }
  return result;
}

SobolResult equilibrium_sensitivity(const ParamBounds& bounds, std::size_t base_n,
                                    std::uint64_t seed, unsigned workers) {
  const SaltelliDesign design = saltelli_sample(bounds, base_n, seed);
  const ModelOutputs outputs = evaluate_equilibria(design, workers);
  std::vector<std::string> names(ContinuousParams::kNames.begin(), ContinuousParams::kNames.end());
  return sobol_indices(design, outputs, std::move(names));
}

}  // namespace lvdyn
