#include "lvdyn/sobol_sequence.hpp"

#include <array>
#include <bit>
#include <random>
#include <string>

#include "lvdyn/error.hpp"

namespace lvdyn {

namespace {

struct Primitive {
  unsigned degree;
  unsigned coeffs;  // interior coefficients of the primitive polynomial
  std::array<std::uint32_t, 8> m;
};

// Joe & Kuo (new-joe-kuo-6.21201), dimensions 2..21.
constexpr std::array<Primitive, SobolSequence::kMaxDimension - 1> kPrimitives{{
    {1, 0, {1}},
    {2, 1, {1, 3}},
    {3, 1, {1, 3, 1}},
    {3, 2, {1, 1, 1}},
    {4, 1, {1, 1, 3, 3}},
    {4, 4, {1, 3, 5, 13}},
    {5, 2, {1, 1, 5, 5, 17}},
    {5, 4, {1, 1, 5, 5, 5}},
    {5, 7, {1, 1, 7, 11, 19}},
    {5, 11, {1, 1, 5, 1, 1}},
    {5, 13, {1, 1, 1, 3, 11}},
    {5, 14, {1, 3, 5, 5, 31}},
    {6, 1, {1, 3, 3, 9, 7, 49}},
    {6, 13, {1, 1, 1, 15, 21, 21}},
    {6, 16, {1, 3, 1, 13, 27, 49}},
    {6, 19, {1, 1, 1, 15, 7, 5}},
    {6, 22, {1, 3, 1, 15, 13, 25}},
    {6, 25, {1, 1, 5, 5, 19, 61}},
    {7, 1, {1, 3, 7, 11, 23, 15, 103}},
    {7, 4, {1, 3, 7, 13, 13, 15, 69}},
}};

constexpr unsigned kBits = SobolSequence::kBits;

}  // namespace

SobolSequence::SobolSequence(unsigned dimension, std::optional<std::uint64_t> seed)
    : dimension_(dimension) {
  if (dimension == 0 || dimension > kMaxDimension) {
    fail(ErrorKind::InvalidArgument,
         "Sobol' dimension must be in [1, " + std::to_string(kMaxDimension) + "]");
  }
  directions_.assign(static_cast<std::size_t>(dimension) * kBits, 0);
  // first dimension: van der Corput
  for (unsigned k = 0; k < kBits; ++k) directions_[k] = 1u << (kBits - 1 - k);

  for (unsigned d = 1; d < dimension; ++d) {
    const Primitive& p = kPrimitives[d - 1];
    std::uint32_t* v = &directions_[static_cast<std::size_t>(d) * kBits];
    const unsigned s = p.degree;
    for (unsigned k = 0; k < s && k < kBits; ++k) v[k] = p.m[k] << (kBits - 1 - k);
    for (unsigned k = s; k < kBits; ++k) {
      std::uint32_t value = v[k - s] ^ (v[k - s] >> s);
      for (unsigned j = 1; j < s; ++j) {
        if ((p.coeffs >> (s - 1 - j)) & 1u) value ^= v[k - j];
      }
      v[k] = value;
    }
  }

  shift_.assign(dimension, 0);
  if (seed) {
    std::mt19937_64 engine(*seed);
    for (auto& s : shift_) s = static_cast<std::uint32_t>(engine() >> 32);
  }
  state_.assign(dimension, 0);
}

void SobolSequence::reset(std::uint64_t index) {
  // Gray-code point: XOR of directions selected by the bits of index ^ (index >> 1)
  const std::uint64_t gray = index ^ (index >> 1);
  for (unsigned d = 0; d < dimension_; ++d) {
    std::uint32_t x = 0;
    for (unsigned k = 0; k < kBits; ++k) {
      if ((gray >> k) & 1u) x ^= directions_[static_cast<std::size_t>(d) * kBits + k];
    }
    state_[d] = x;
  }
  index_ = index;
}

void SobolSequence::next(std::vector<double>& out) {
  out.resize(dimension_);
  constexpr double kScale = 1.0 / 4294967296.0;
  for (unsigned d = 0; d < dimension_; ++d) {
    out[d] = static_cast<double>(state_[d] ^ shift_[d]) * kScale;
  }
  // advance: flip the direction at the lowest zero bit of the current index
  const auto c = static_cast<unsigned>(std::countr_one(index_));
  if (c >= kBits) fail(ErrorKind::InvalidArgument, "Sobol' sequence exhausted (2^32 points)");
  for (unsigned d = 0; d < dimension_; ++d) {
    state_[d] ^= directions_[static_cast<std::size_t>(d) * kBits + c];
  }
  ++index_;
}

std::vector<double> SobolSequence::next() {
  std::vector<double> out;
  next(out);
  return out;
}

}  // namespace lvdyn
