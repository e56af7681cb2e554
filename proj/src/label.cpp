#include "qpolar/label.hpp"

namespace qpolar {

struct OutputLabel::Node {
  std::string name;
  std::vector<OutputLabel> parts;
  int symbol = -1;
};

OutputLabel::OutputLabel(std::string name)
    : node_(std::make_shared<const Node>(Node{std::move(name), {}, -1})) {}

OutputLabel OutputLabel::pair(const OutputLabel& first, const OutputLabel& second) {
  return OutputLabel(std::make_shared<const Node>(Node{{}, {first, second}, -1}));
}

OutputLabel OutputLabel::triple(const OutputLabel& first, const OutputLabel& second, int symbol) {
  return OutputLabel(std::make_shared<const Node>(Node{{}, {first, second}, symbol}));
}

bool OutputLabel::is_tuple() const noexcept { return !node_->parts.empty(); }

std::string OutputLabel::str() const {
  if (!is_tuple()) return node_->name;
  std::string s = "(";
  for (std::size_t i = 0; i < node_->parts.size(); ++i) {
    if (i) s += ',';
    s += node_->parts[i].str();
  }
  if (node_->symbol >= 0) s += ',' + std::to_string(node_->symbol);
  s += ')';
  return s;
}

std::vector<OutputLabel> numbered_labels(int n) {
  std::vector<OutputLabel> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.emplace_back(std::to_string(i));
  return out;
}

}  // namespace qpolar
