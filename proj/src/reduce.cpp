#include "qpolar/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <vector>

namespace qpolar {

namespace {

constexpr double kMergeRelTol = 1e-9;
constexpr double kKeyScale = 1e12;
constexpr double kEquivTol = 1e-9;

bool same_posterior(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double scale = std::max({std::abs(a(i)), std::abs(b(i)), 1.0});
    if (std::abs(a(i) - b(i)) > kMergeRelTol * scale) return false;
  }
  return true;
}

std::vector<long long> bucket_key(const Eigen::VectorXd& posterior) {
  std::vector<long long> key(static_cast<std::size_t>(posterior.size()));
  for (Eigen::Index i = 0; i < posterior.size(); ++i)
    key[static_cast<std::size_t>(i)] = std::llround(posterior(i) * kKeyScale);
  return key;
}

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

struct Group {
  Eigen::Index representative;
  Eigen::VectorXd column;
};

}  // namespace

Channel canonicalize(const Channel& w) {
  const Table& t = w.table();
  const int q = w.q();

  std::vector<Group> groups;
  std::map<std::vector<long long>, std::vector<std::size_t>> buckets;
  for (Eigen::Index y = 0; y < t.cols(); ++y) {
    const double mass = t.col(y).sum();
    if (mass <= 0.0) continue;
    const Eigen::VectorXd post = t.col(y) / mass;
    auto& members = buckets[bucket_key(post)];
    bool merged = false;
    for (std::size_t g : members) {
      const Eigen::VectorXd& col = groups[g].column;
      if (same_posterior(post, col / col.sum())) {
        groups[g].column += t.col(y);
        merged = true;
        break;
      }
    }
    if (!merged) {
      members.push_back(groups.size());
      groups.push_back({y, t.col(y)});
    }
  }

  struct Keyed {
    Eigen::VectorXd posterior;
    double marginal;
    std::size_t group;
  };
  std::vector<Keyed> order;
  order.reserve(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const double mass = groups[g].column.sum();
    order.push_back({groups[g].column / mass, mass / q, g});
  }
  std::stable_sort(order.begin(), order.end(), [](const Keyed& a, const Keyed& b) {
    if (lex_less(a.posterior, b.posterior)) return true;
    if (lex_less(b.posterior, a.posterior)) return false;
    return a.marginal < b.marginal;
  });

  const auto m = static_cast<Eigen::Index>(order.size());
  Table out(q, m);
  std::vector<OutputLabel> labels;
  labels.reserve(order.size());
  for (Eigen::Index k = 0; k < m; ++k) {
    const Group& g = groups[order[static_cast<std::size_t>(k)].group];
    out.col(k) = g.column;
    labels.push_back(w.labels()[static_cast<std::size_t>(g.representative)]);
  }
  // Renormalize rows only when drift exceeds a few ulps per cell, so that a
  // second pass leaves the table bit-identical.
  const double drift_floor = 8.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(std::max<Eigen::Index>(m, 1));
  for (int x = 0; x < q; ++x) {
    const double total = out.row(x).sum();
    if (std::abs(total - 1.0) > drift_floor) out.row(x) /= total;
  }
  return Channel(w.alphabet(), std::move(labels), std::move(out), Channel::LabelCheck::trusted);
}

bool equivalent(const Channel& first, const Channel& second) {
  if (!(first.alphabet() == second.alphabet())) return false;
  const PosteriorView a = posteriors(canonicalize(first));
  const PosteriorView b = posteriors(canonicalize(second));
  if (a.entries.size() != b.entries.size()) return false;

  auto close = [](const PosteriorEntry& u, const PosteriorEntry& v) {
    if (std::abs(u.weight - v.weight) > kEquivTol) return false;
    return ((u.posterior.mass() - v.posterior.mass()).cwiseAbs().maxCoeff() <= kEquivTol);
  };

  // Canonical order usually aligns the two lists; fall back to matching when
  // near-ties reorder entries.
  bool aligned = true;
  for (std::size_t i = 0; i < a.entries.size() && aligned; ++i) aligned = close(a.entries[i], b.entries[i]);
  if (aligned) return true;

  std::vector<bool> used(b.entries.size(), false);
  for (const auto& u : a.entries) {
    bool found = false;
    for (std::size_t j = 0; j < b.entries.size(); ++j) {
      if (!used[j] && close(u, b.entries[j])) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace qpolar
