#pragma once

#include <memory>
#include <string>
#include <vector>

namespace qpolar {

/// Output symbol of a channel. Either an opaque name, or a tuple built by the
/// polar transform: (y1,y2) for W- outputs and (y1,y2,u1) for W+ outputs.
/// Copies share structure, so labels of deep channels stay cheap.
class OutputLabel {
 public:
  OutputLabel() : OutputLabel(std::string{}) {}
  explicit OutputLabel(std::string name);

  static OutputLabel pair(const OutputLabel& first, const OutputLabel& second);
  static OutputLabel triple(const OutputLabel& first, const OutputLabel& second, int symbol);

  bool is_tuple() const noexcept;
  std::string str() const;

 private:
  struct Node;
  explicit OutputLabel(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// "0", "1", ..., "n-1".
std::vector<OutputLabel> numbered_labels(int n);

}  // namespace qpolar
