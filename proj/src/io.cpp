#include "qpolar/io.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qpolar {

using nlohmann::json;

Channel parse_channel_document(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed channel document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("q") || !doc.contains("labels") || !doc.contains("rows"))
    throw std::invalid_argument("channel document needs fields q, labels and rows");
  try {
    const int q = doc.at("q").get<int>();
    const auto labels = doc.at("labels").get<std::vector<std::string>>();
    const auto rows = doc.at("rows").get<std::vector<std::vector<double>>>();
    return make_channel(q, labels, rows);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed channel document: ") + e.what());
  }
}

std::string channel_document(const Channel& w) {
  json doc;
  doc["q"] = w.q();
  json labels = json::array();
  for (const auto& l : w.labels()) labels.push_back(l.str());
  doc["labels"] = std::move(labels);
  json rows = json::array();
  for (int x = 0; x < w.q(); ++x) {
    json row = json::array();
    for (int y = 0; y < w.outputs(); ++y) row.push_back(w(y, x));
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(1) + "\n";
}

Channel load_channel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open channel file \"" + path + "\"");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_channel_document(ss.str());
}

void store_channel(const Channel& w, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write \"" + path + "\"");
  out << channel_document(w);
}

namespace {

class Params {
 public:
  Params(std::string name, const std::string& body) : name_(std::move(name)) {
    std::stringstream ss(body);
    std::string kv;
    while (std::getline(ss, kv, ',')) {
      if (kv.empty()) continue;
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0)
        throw std::invalid_argument("builtin \"" + name_ + "\": expected key=value, got \"" + kv + "\"");
      values_[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
  }

  double real(const std::string& key) {
    const std::string& v = raw(key);
    std::size_t used = 0;
    double d = 0.0;
    try {
      d = std::stod(v, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != v.size()) throw std::invalid_argument("builtin \"" + name_ + "\": bad number for " + key);
    return d;
  }

  long long integer(const std::string& key) {
    const std::string& v = raw(key);
    std::size_t used = 0;
    long long n = 0;
    try {
      n = std::stoll(v, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != v.size()) throw std::invalid_argument("builtin \"" + name_ + "\": bad integer for " + key);
    return n;
  }

  unsigned long long unsigned_integer(const std::string& key, unsigned long long fallback) {
    if (!values_.count(key)) return fallback;
    const std::string& v = raw(key);
    std::size_t used = 0;
    unsigned long long n = 0;
    try {
      n = std::stoull(v, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != v.size() || v.front() == '-')
      throw std::invalid_argument("builtin \"" + name_ + "\": bad integer for " + key);
    return n;
  }

  void done() const {
    for (const auto& [k, v] : values_)
      if (!read_.count(k)) throw std::invalid_argument("builtin \"" + name_ + "\": unknown key " + k);
  }

 private:
  const std::string& raw(const std::string& key) {
    const auto it = values_.find(key);
    if (it == values_.end()) throw std::invalid_argument("builtin \"" + name_ + "\": missing key " + key);
    read_[key] = true;
    return it->second;
  }

  std::string name_;
  std::map<std::string, std::string> values_;
  std::map<std::string, bool> read_;
};

int as_int(long long v, const char* what) {
  if (v < 0 || v > 1'000'000) throw std::invalid_argument(std::string(what) + " out of range");
  return static_cast<int>(v);
}

}  // namespace

Channel resolve_channel(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string body = colon == std::string::npos ? std::string{} : spec.substr(colon + 1);
  if (name != "erasure" && name != "noiseless" && name != "useless" && name != "subgroup" && name != "random")
    return load_channel(spec);

  Params p(name, body);
  const int q = as_int(p.integer("q"), "q");
  Channel w = [&] {
    if (name == "erasure") return erasure_channel(q, p.real("e"));
    if (name == "noiseless") return noiseless(q);
    if (name == "useless") return useless(q, as_int(p.integer("m"), "m"));
    if (name == "subgroup") return subgroup_channel(q, as_int(p.integer("d"), "d"));
    const int m = as_int(p.integer("m"), "m");
    return random_channel(q, m, p.unsigned_integer("seed", 0));
  }();
  p.done();
  return w;
}

}  // namespace qpolar
