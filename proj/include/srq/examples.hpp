#pragma once

#include <string>
#include <vector>

#include "srq/core.hpp"
#include "srq/instance.hpp"

namespace srq::builtin {

/// A classic benchmark instance together with its reference results: the pencil range,
/// the branch-and-bound maximizer and iteration count at eps = 1e-5, and the stage-one
/// evaluation count of the two-stage scheme at delta = 0.05.
struct Example {
  std::string name;
  SrqInstance instance;
  double mu_lo = 0.0, mu_hi = 0.0;
  double bnb_mu_star = 0.0;
  long bnb_iterations = 0;
  long stage1_evals = 0;
};

namespace detail {

inline Matrix diag(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v(i++) = x;
  return Matrix(v.asDiagonal());
}

inline Matrix dense(Index n, std::initializer_list<double> values) {
  Matrix m(n, n);
  Index i = 0;
  for (double x : values) {
    m(i / n, i % n) = x;
    ++i;
  }
  return m;
}

}  // namespace detail

inline const std::vector<Example>& all() {
  using detail::dense;
  using detail::diag;
  static const std::vector<Example> examples = [] {
    std::vector<Example> out;
    out.push_back({"example1",
                   validate(dense(3, {2.3969, 0.4651, 4.6392,    //
                                      0.4651, 5.4401, 0.7838,    //
                                      4.6392, 0.7838, 10.1741}),
                            dense(3, {0.8077, 0.8163, 1.0970,    //
                                      0.8163, 4.1942, 0.8457,    //
                                      1.0970, 0.8457, 1.8810}),
                            dense(3, {3.9104, -0.9011, -2.0128,  //
                                      -0.9011, 0.9636, 0.6102,   //
                                      -2.0128, 0.6102, 1.0908})),
                   0.9882, 6.7322, 6.5952, 141, 116});
    out.push_back({"example2",
                   validate(diag({1, 9, 2}), diag({5, 2, 3}), diag({5, 2, 3})),
                   0.2, 4.5, 4.5, 2, 87});
    out.push_back({"example3",
                   validate(dense(4, {1, 2, 3, 1,    //
                                      2, 5, 4, -1,   //
                                      3, 4, 0, 1,    //
                                      1, -1, 1, 6}),
                            diag({2, 1, 5, 10}),
                            dense(4, {5, -1, 0, 3,   //
                                      -1, 9, 1, 0,   //
                                      0, 1, -2, 0,   //
                                      3, 0, 0, 8})),
                   -0.8241, 6.0647, 5.8821, 35, 139});
    out.push_back({"example4",
                   validate(diag({1, 2, 8, 7, 9, 3, 10, 2, -1, 6}),
                            diag({9, 8, 7, 6, 5, 4, 3, 2, 1, 10}),
                            diag({5, 20, 3, 4, 8, -1, 0, 6, 32, 10})),
                   -1.0, 3.3333, -1.0, 18, 88});
    out.push_back({"example5",
                   validate(diag({1, 2, 20, 3, 50, 4, 6, 7, 8, 9, 100, 2, 3, 4, 5, 6, 7, 0, 10, 9}),
                            diag({100, 1, 2, 30, 5, 7, 9, 7, 8, 9, 1, 2, 30, 1, 50, 8, 1, 10, 10, 9}),
                            diag({0, 1000, 20, 2, 5, 6, 7, 9, 50, 3, 4, 5, 100, 5, 2, 200, 4, 5, 9, 21})),
                   0.0, 100.0, 1.9999, 22, 2001});
    return out;
  }();
  return examples;
}

}  // namespace srq::builtin
