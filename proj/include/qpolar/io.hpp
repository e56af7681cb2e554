#pragma once

#include <string>

#include "qpolar/channel.hpp"

namespace qpolar {

/// Channel documents are JSON objects
///   {"q": 3, "labels": ["a", "b"], "rows": [[0.5, 0.5], ...]}
/// with one row of W(. | x) per input symbol.
Channel parse_channel_document(const std::string& text);
std::string channel_document(const Channel& w);

Channel load_channel(const std::string& path);
void store_channel(const Channel& w, const std::string& path);

/// Builtin grammar "name:key=val,key=val", for example "erasure:q=3,e=0.5",
/// "noiseless:q=5", "useless:q=2,m=3", "subgroup:q=4,d=2",
/// "random:q=3,m=4,seed=7". Anything that is not a builtin name is read as a
/// channel file path.
Channel resolve_channel(const std::string& spec);

}  // namespace qpolar
