#pragma once

#include <random>
#include <vector>

#include "alc/padic.hpp"

namespace alc::testing_support {

inline i64 det_int(const std::vector<i64>& q, int n) {
  if (n == 1) return q[0];
  if (n == 2) return q[0] * q[3] - q[1] * q[2];
  i64 s = 0;
  for (int j = 0; j < n; ++j) {
    std::vector<i64> m;
    for (int r = 1; r < n; ++r)
      for (int c = 0; c < n; ++c)
        if (c != j) m.push_back(q[r * n + c]);
    s += (j % 2 ? -1 : 1) * q[j] * det_int(m, n - 1);
  }
  return s;
}

// Symmetric integer matrix with entries in [-3, 3] and determinant prime to p.
inline std::vector<i64> random_symmetric_unit(int n, i64 p, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  for (;;) {
    std::vector<i64> q(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) q[a * n + b] = q[b * n + a] = d(rng);
    if (det_int(q, n) % p != 0) return q;
  }
}

inline std::vector<std::vector<i64>> random_metric_tuple(int n, i64 p, std::mt19937_64& rng) {
  std::vector<std::vector<i64>> t;
  for (int i = 0; i < n; ++i) t.push_back(random_symmetric_unit(n, p, rng));
  return t;
}

}  // namespace alc::testing_support
