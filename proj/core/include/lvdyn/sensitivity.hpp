#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "lvdyn/params.hpp"

namespace lvdyn {

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  double width() const { return upper - lower; }
};

/// Uniform box over theta = (a1, b11, b12, a2, b21, b22).
struct ParamBounds {
  std::array<Interval, ContinuousParams::kCount> intervals;
};

/// [v - |v| f, v + |v| f] per parameter. Requires 0 < fraction < 1;
/// a zero baseline throws ZeroBaseline.
ParamBounds bounds_from_baseline(const ContinuousParams& cp, double fraction);

/// Saltelli design. Per base index j the block holds, in order:
/// A_j, A_B^(1..D)_j, B_A^(1..D)_j, B_j, for N (2D + 2) rows in total.
class SaltelliDesign {
 public:
  SaltelliDesign(std::size_t base_n, std::size_t dimension, std::uint64_t seed,
                 std::vector<double> values);

  std::size_t base_n() const { return base_n_; }
  std::size_t dimension() const { return dim_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t rows() const { return base_n_ * block_size(); }
  std::size_t block_size() const { return 2 * dim_ + 2; }

  std::span<const double> row(std::size_t r) const { return {values_.data() + r * dim_, dim_}; }

  std::size_t index_a(std::size_t j) const { return j * block_size(); }
  std::size_t index_ab(std::size_t j, std::size_t i) const { return j * block_size() + 1 + i; }
  std::size_t index_ba(std::size_t j, std::size_t i) const {
    return j * block_size() + 1 + dim_ + i;
  }
  std::size_t index_b(std::size_t j) const { return j * block_size() + block_size() - 1; }

 private:
  std::size_t base_n_;
  std::size_t dim_;
  std::uint64_t seed_;
  std::vector<double> values_;
};

/// Requires N a power of two >= 64 (InvalidN).
SaltelliDesign saltelli_sample(std::span<const Interval> bounds, std::size_t base_n,
                               std::uint64_t seed);
SaltelliDesign saltelli_sample(const ParamBounds& bounds, std::size_t base_n, std::uint64_t seed);

/// Model outputs for every design row. `valid[r] == 0` marks a rejected row.
struct ModelOutputs {
  std::vector<std::string> names;
  std::vector<std::vector<double>> values;  // [output][row]
  std::vector<std::uint8_t> valid;
};

using RowModel = std::function<bool(std::span<const double> theta, std::span<double> out)>;

/// Evaluates `model` on every row; rows are split across `workers` threads
/// and written back by row index, so the result does not depend on the
/// worker count.
ModelOutputs evaluate_design(const SaltelliDesign& design, std::vector<std::string> output_names,
                             const RowModel& model, unsigned workers = 1);

/// Interior equilibrium (x*, y*) per row. NoInterior, non-finite and
/// negative components are marked invalid.
ModelOutputs evaluate_equilibria(const SaltelliDesign& design, unsigned workers = 1);

struct IndexEstimate {
  std::string output;
  std::vector<double> first;   // raw S_i
  std::vector<double> total;   // raw S_Ti
  double variance = 0.0;       // of the retained A and B outputs
  double sum_first() const;
  std::vector<double> first_clipped() const;
  std::vector<double> total_clipped() const;
};

struct SobolResult {
  std::vector<std::string> parameters;
  std::vector<IndexEstimate> outputs;
  std::size_t accepted_count = 0;  // valid rows
  std::size_t rejected_count = 0;  // invalid rows
  std::size_t retained_blocks = 0; // base indices used by the estimators
  std::uint64_t seed = 0;
  std::size_t base_n = 0;
};

/// First order V_i ~ mean(f(B) (f(A_B^i) - f(A))), total order
/// mean((f(A) - f(A_B^i))^2) / 2 (Jansen), both over V(Y) of retained A and B
/// outputs; f is centred on the mean of those outputs first. A base index is dropped whole when any of its A, B, A_B^(i) rows
/// is invalid; fewer than N/2 retained throws TooManyRejections.
SobolResult sobol_indices(const SaltelliDesign& design, const ModelOutputs& outputs,
                          std::vector<std::string> parameter_names);

/// Bounds -> Saltelli design -> equilibria -> indices.
SobolResult equilibrium_sensitivity(const ParamBounds& bounds, std::size_t base_n,
                                    std::uint64_t seed, unsigned workers = 1);

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace lvdyn
