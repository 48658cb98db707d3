#pragma once

#include <string>
#include <vector>

namespace lvdyn {

/// Paired annual observations of two factors.
struct TimeSeries {
  std::string label_x;
  std::string label_y;
  std::string unit;
  std::vector<int> years;
  std::vector<double> xs;
  std::vector<double> ys;

  std::size_t size() const { return years.size(); }
};

/// Throws InsufficientData (n < 4), NonPositiveValue, LengthMismatch or
/// ValidationError (years not consecutive).
void validate_series(const TimeSeries& ts);

struct State {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const State&) const = default;
};

struct Trajectory {
  std::vector<double> xs;
  std::vector<double> ys;

  std::size_t size() const { return xs.size(); }
  State at(std::size_t i) const { return {xs[i], ys[i]}; }
  void push_back(State s) {
    xs.push_back(s.x);
    ys.push_back(s.y);
  }
};

}  // namespace lvdyn
