#include "qpolar/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace qpolar {

namespace {

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

constexpr Eigen::Index kCompensatedCells = 10000;

}  // namespace

Channel::Channel(Alphabet alphabet, std::vector<OutputLabel> labels, Table table, LabelCheck check)
    : alphabet_(alphabet), labels_(std::move(labels)), table_(std::move(table)) {
  if (table_.rows() != alphabet_.size())
    throw std::invalid_argument("channel table has " + std::to_string(table_.rows()) + " rows, expected q=" +
                                std::to_string(alphabet_.size()));
  if (table_.cols() < 1) throw std::invalid_argument("channel needs at least one output");
  if (static_cast<Eigen::Index>(labels_.size()) != table_.cols())
    throw std::invalid_argument("channel has " + std::to_string(labels_.size()) + " labels for " +
                                std::to_string(table_.cols()) + " output columns");
  for (Eigen::Index x = 0; x < table_.rows(); ++x) {
    for (Eigen::Index y = 0; y < table_.cols(); ++y) {
      const double v = table_(x, y);
      if (!std::isfinite(v) || v < 0.0)
        throw std::invalid_argument("row " + std::to_string(x) + " has a negative or non-finite entry at column " +
                                    std::to_string(y));
    }
    const double total = table_.row(x).sum();
    const double dev = std::abs(total - 1.0);
    if (dev > kRenormTolerance)
      throw std::invalid_argument("row " + std::to_string(x) + " sums to " + std::to_string(total) +
                                  ", not 1");
    if (dev > kSumTolerance) table_.row(x) /= total;
  }
  if (check == LabelCheck::verify) {
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_)
      if (!seen.insert(l.str()).second) throw std::invalid_argument("duplicate output label \"" + l.str() + "\"");
  }
}

Channel make_channel(int q, const std::vector<std::string>& labels, const std::vector<std::vector<double>>& rows) {
  Alphabet alphabet(q);
  if (static_cast<int>(rows.size()) != q)
    throw std::invalid_argument("expected " + std::to_string(q) + " rows, got " + std::to_string(rows.size()));
  const auto m = static_cast<Eigen::Index>(labels.size());
  Table t(q, m);
  for (int x = 0; x < q; ++x) {
    if (static_cast<Eigen::Index>(rows[x].size()) != m)
      throw std::invalid_argument("row " + std::to_string(x) + " has " + std::to_string(rows[x].size()) +
                                  " entries, expected " + std::to_string(m));
    for (Eigen::Index y = 0; y < m; ++y) t(x, y) = rows[x][y];
  }
  std::vector<OutputLabel> out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.emplace_back(l);
  return Channel(alphabet, std::move(out), std::move(t));
}

double capacity(const Channel& w) {
  const Table& t = w.table();
  const double q = w.q();
  const bool compensate = t.size() > kCompensatedCells;
  CompensatedSum acc;
  double plain = 0.0;
  for (Eigen::Index y = 0; y < t.cols(); ++y) {
    const double col_sum = t.col(y).sum();
    if (col_sum <= 0.0) continue;
    for (Eigen::Index x = 0; x < t.rows(); ++x) {
      const double v = t(x, y);
      if (v <= 0.0) continue;
      const double term = v * std::log(q * v / col_sum);
      if (compensate)
        acc.add(term);
      else
        plain += term;
    }
  }
  const double nats = (compensate ? acc.value() : plain) / q;
  return clamp_unit(nats / std::log(q), "capacity");
}

double PosteriorView::conditional_entropy() const {
  double h = 0.0;
  for (const auto& e : entries) h += e.weight * entropy(e.posterior);
  return h;
}

PosteriorView posteriors(const Channel& w) {
  PosteriorView view{w.alphabet(), {}};
  const Table& t = w.table();
  view.entries.reserve(static_cast<std::size_t>(t.cols()));
  for (Eigen::Index y = 0; y < t.cols(); ++y) {
    const double col_sum = t.col(y).sum();
    if (col_sum <= 0.0) continue;
    view.entries.push_back({col_sum / w.q(), Dist(w.alphabet(), t.col(y) / col_sum)});
  }
  return view;
}

Channel channel_from_posteriors(const PosteriorView& view) {
  const int q = view.alphabet.size();
  Table t(q, static_cast<Eigen::Index>(view.entries.size()));
  for (std::size_t y = 0; y < view.entries.size(); ++y)
    t.col(static_cast<Eigen::Index>(y)) = q * view.entries[y].weight * view.entries[y].posterior.mass();
  return Channel(view.alphabet, numbered_labels(static_cast<int>(view.entries.size())), std::move(t),
                 Channel::LabelCheck::trusted);
}

Channel erasure_channel(int q, double erasure_probability) {
  Alphabet a(q);
  const double e = erasure_probability;
  if (!(e >= 0.0 && e <= 1.0)) throw std::invalid_argument("erasure probability must lie in [0,1]");
  Table t = Table::Zero(q, q + 1);
  for (int x = 0; x < q; ++x) {
    t(x, x) = 1.0 - e;
    t(x, q) = e;
  }
  auto labels = numbered_labels(q);
  labels.emplace_back("E");
  return Channel(a, std::move(labels), std::move(t), Channel::LabelCheck::trusted);
}

Channel noiseless(int q) {
  Alphabet a(q);
  return Channel(a, numbered_labels(q), Table::Identity(q, q), Channel::LabelCheck::trusted);
}

Channel useless(int q, int m) {
  Alphabet a(q);
  if (m < 1) throw std::invalid_argument("useless channel needs m >= 1 outputs");
  return Channel(a, numbered_labels(m), Table::Constant(q, m, 1.0 / m), Channel::LabelCheck::trusted);
}

Channel subgroup_channel(int q, int d) {
  Alphabet a(q);
  if (d <= 1 || d >= q || q % d != 0)
    throw std::invalid_argument("subgroup channel needs a proper nontrivial divisor d of q (q=" + std::to_string(q) +
                                ", d=" + std::to_string(d) + ")");
  Table t = Table::Zero(q, d);
  for (int x = 0; x < q; ++x) t(x, x % d) = 1.0;
  return Channel(a, numbered_labels(d), std::move(t), Channel::LabelCheck::trusted);
}

Channel random_channel(int q, int m, std::uint64_t seed) {
  Alphabet a(q);
  if (m < 1) throw std::invalid_argument("random channel needs m >= 1 outputs");
  Engine eng(seed);
  Table t(q, m);
  for (int x = 0; x < q; ++x) {
    const auto row = simplex_point(eng, m);
    for (int y = 0; y < m; ++y) t(x, y) = row[static_cast<std::size_t>(y)];
  }
  return Channel(a, numbered_labels(m), std::move(t), Channel::LabelCheck::trusted);
}

}  // namespace qpolar
