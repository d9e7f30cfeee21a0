// Small shared types: error class, dense rank-3/4 coefficient arrays.
#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypmass {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }

// Rank-3 coefficient array, indices in [0, n).
struct Tensor3 {
  int n = 0;
  std::vector<double> v;

  Tensor3() = default;
  explicit Tensor3(int dim) : n(dim), v(static_cast<size_t>(dim) * dim * dim, 0.0) {}

  double& operator()(int a, int b, int c) { return v[(static_cast<size_t>(a) * n + b) * n + c]; }
  double operator()(int a, int b, int c) const { return v[(static_cast<size_t>(a) * n + b) * n + c]; }
  bool empty() const { return v.empty(); }
};

// Rank-4 coefficient array.
struct Tensor4 {
  int n = 0;
  std::vector<double> v;

  Tensor4() = default;
  explicit Tensor4(int dim) : n(dim), v(static_cast<size_t>(dim) * dim * dim * dim, 0.0) {}

  double& operator()(int a, int b, int c, int d) {
    return v[((static_cast<size_t>(a) * n + b) * n + c) * n + d];
  }
  double operator()(int a, int b, int c, int d) const {
    return v[((static_cast<size_t>(a) * n + b) * n + c) * n + d];
  }
  bool empty() const { return v.empty(); }
};

}  // namespace hypmass
