#pragma once

// Reference computations used only by the tests. They work from joint
// distributions and closed forms, never through the library's transform or
// capacity code paths.

#include <cmath>
#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace oracle {

/// H(p) in base q, long double.
inline long double entropy(const std::vector<long double>& p, int q) {
  long double h = 0.0L;
  for (long double v : p)
    if (v > 0.0L) h -= v * std::log(v);
  return h / std::log(static_cast<long double>(q));
}

/// I(A;B) in base q from a joint table joint[a][b].
inline long double mutual_information(const std::vector<std::vector<long double>>& joint, int q) {
  std::vector<long double> pa(joint.size(), 0.0L);
  std::vector<long double> pb(joint.empty() ? 0 : joint[0].size(), 0.0L);
  for (std::size_t a = 0; a < joint.size(); ++a)
    for (std::size_t b = 0; b < joint[a].size(); ++b) {
      pa[a] += joint[a][b];
      pb[b] += joint[a][b];
    }
  long double i = 0.0L;
  for (std::size_t a = 0; a < joint.size(); ++a)
    for (std::size_t b = 0; b < joint[a].size(); ++b)
      if (joint[a][b] > 0.0L) i += joint[a][b] * std::log(joint[a][b] / (pa[a] * pb[b]));
  return i / std::log(static_cast<long double>(q));
}

/// w[x][y] = W(y|x).
using Rows = std::vector<std::vector<double>>;

inline long double capacity(const Rows& w) {
  const int q = static_cast<int>(w.size());
  std::vector<std::vector<long double>> joint(q, std::vector<long double>(w[0].size()));
  for (int x = 0; x < q; ++x)
    for (std::size_t y = 0; y < w[0].size(); ++y) joint[x][y] = w[x][y] / static_cast<long double>(q);
  return mutual_information(joint, q);
}

/// Enumerates (X1, X2, Y1, Y2) with uniform independent inputs, maps
/// (X1, X2) -> (U1, U2) = (X1 + pi(X2), pi(X2)) and returns
/// (I(U1; Y1 Y2), I(U2; Y1 Y2 U1)).
inline std::pair<long double, long double> transformed_capacities(const Rows& w, const std::vector<int>& pi) {
  const int q = static_cast<int>(w.size());
  const int m = static_cast<int>(w[0].size());
  std::vector<std::vector<long double>> minus(q, std::vector<long double>(m * m, 0.0L));
  std::vector<std::vector<long double>> plus(q, std::vector<long double>(m * m * q, 0.0L));
  const long double pin = 1.0L / (static_cast<long double>(q) * q);
  for (int x1 = 0; x1 < q; ++x1)
    for (int x2 = 0; x2 < q; ++x2) {
      const int u2 = pi[x2];
      const int u1 = (x1 + u2) % q;
      for (int y1 = 0; y1 < m; ++y1)
        for (int y2 = 0; y2 < m; ++y2) {
          const long double p = pin * w[x1][y1] * w[x2][y2];
          minus[u1][y1 * m + y2] += p;
          plus[u2][(y1 * m + y2) * q + u1] += p;
        }
    }
  return {mutual_information(minus, q), mutual_information(plus, q)};
}

inline std::vector<int> identity(int q) {
  std::vector<int> p(q);
  for (int i = 0; i < q; ++i) p[i] = i;
  return p;
}

/// Erasure probabilities of all 2^n leaves, minus-first, first sign most
/// significant.
inline std::vector<double> erasure_leaves(double e, int n) {
  if (n == 0) return {e};
  std::vector<double> out;
  for (double child : {1.0 - (1.0 - e) * (1.0 - e), e * e}) {
    const auto sub = erasure_leaves(child, n - 1);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

}  // namespace oracle
