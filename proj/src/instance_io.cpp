#include "rrsp/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "rrsp/error.hpp"

namespace rrsp {

namespace {

using Json = nlohmann::ordered_json;

std::vector<std::string> export_names(const Multidigraph& g) {
  std::vector<std::string> names;
  std::set<std::string> seen;
  bool unique = true;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    names.push_back(g.node_label(v));
    unique = unique && seen.insert(names.back()).second;
  }
  if (!unique)
    for (NodeId v = 0; v < g.node_count(); ++v) names[static_cast<std::size_t>(v)] = std::to_string(v);
  return names;
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::Parse, (where.empty() ? std::string("/") : where) + ": " + what);
}

class Reader {
 public:
  explicit Reader(const Json& doc) : doc_(doc) {}

  Instance read() {
    expect_keys(doc_, "", {"format", "version", "label", "nodes", "source", "sink", "arcs", "k",
                           "neighborhood", "uncertainty"},
                {"label"});
    if (string_at(doc_, "", "format") != kInstanceFormat) fail("/format", "expected \"rrsp-instance\"");
    if (int_at(doc_, "", "version") != kInstanceVersion)
      fail("/version", "unsupported version (this build reads version 1)");

    const Json& nodes = member(doc_, "", "nodes");
    if (!nodes.is_array()) fail("/nodes", "expected an array of names");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const std::string where = "/nodes/" + std::to_string(i);
      if (!nodes[i].is_string()) fail(where, "expected a string");
      std::string name = nodes[i].get<std::string>();
      if (!index_.emplace(name, static_cast<NodeId>(i)).second) fail(where, "duplicate node name");
      names.push_back(std::move(name));
    }
    const NodeId s = node_at(doc_, "", "source");
    const NodeId t = node_at(doc_, "", "sink");

    const Json& arcs = member(doc_, "", "arcs");
    if (!arcs.is_array()) fail("/arcs", "expected an array");
    std::vector<Arc> list;
    Instance inst;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      const std::string where = "/arcs/" + std::to_string(i);
      const Json& a = arcs[i];
      if (!a.is_object()) fail(where, "expected an object");
      expect_keys(a, where, {"tail", "head", "C", "c_hat", "delta"}, {});
      list.push_back({node_at(a, where, "tail"), node_at(a, where, "head")});
      inst.first_stage.push_back(number_at(a, where, "C"));
      inst.nominal.push_back(number_at(a, where, "c_hat"));
      inst.deviation.push_back(number_at(a, where, "delta"));
    }
    try {
      inst.graph = Multidigraph(static_cast<std::int32_t>(names.size()), std::move(list), s, t);
    } catch (const Error& err) {
      throw Error(ErrorKind::Validation, err.what());
    }
    inst.graph.set_node_names(std::move(names));

    inst.k = int_at(doc_, "", "k");
    const auto kind = parse_neighborhood(string_at(doc_, "", "neighborhood"));
    if (!kind) fail("/neighborhood", "expected incl, excl or sym");
    inst.neighborhood = *kind;
    inst.uncertainty = read_uncertainty(member(doc_, "", "uncertainty"));
    if (doc_.contains("label")) inst.label = string_at(doc_, "", "label");
    require_valid(inst);
    return inst;
  }

 private:
  Uncertainty read_uncertainty(const Json& u) {
    const std::string where = "/uncertainty";
    if (!u.is_object()) fail(where, "expected an object");
    const std::string kind = string_at(u, where, "kind");
    if (kind == "interval") {
      expect_keys(u, where, {"kind"}, {});
      return IntervalUncertainty{};
    }
    expect_keys(u, where, {"kind", "budget"}, {});
    if (kind == "discrete") return DiscreteBudget{int_at(u, where, "budget")};
    if (kind == "continuous") return ContinuousBudget{number_at(u, where, "budget")};
    fail(where + "/kind", "expected interval, discrete or continuous");
  }

  static void expect_keys(const Json& obj, const std::string& where,
                          std::initializer_list<std::string_view> allowed,
                          std::initializer_list<std::string_view> optional) {
    for (const auto& [key, value] : obj.items()) {
      bool known = false;
      for (auto k : allowed) known = known || k == key;
      if (!known) fail(where + "/" + key, "unknown field");
    }
    for (auto k : allowed) {
      bool opt = false;
      for (auto o : optional) opt = opt || o == k;
      if (!opt && !obj.contains(std::string(k))) fail(where + "/" + std::string(k), "missing field");
    }
  }

  static const Json& member(const Json& obj, const std::string& where, const char* key) {
    if (!obj.contains(key)) fail(where + "/" + key, "missing field");
    return obj.at(key);
  }

  static std::string string_at(const Json& obj, const std::string& where, const char* key) {
    const Json& v = member(obj, where, key);
    if (!v.is_string()) fail(where + "/" + key, "expected a string");
    return v.get<std::string>();
  }

  static int int_at(const Json& obj, const std::string& where, const char* key) {
    const Json& v = member(obj, where, key);
    if (!v.is_number_integer()) fail(where + "/" + key, "expected an integer");
    const auto x = v.get<long long>();
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
      fail(where + "/" + key, "integer out of range");
    return static_cast<int>(x);
  }

  static double number_at(const Json& obj, const std::string& where, const char* key) {
    const Json& v = member(obj, where, key);
    if (!v.is_number()) fail(where + "/" + key, "expected a number");
    return v.get<double>();
  }

  NodeId node_at(const Json& obj, const std::string& where, const char* key) const {
    const Json& v = member(obj, where, key);
    if (v.is_string()) {
      auto it = index_.find(v.get<std::string>());
      if (it == index_.end()) fail(where + "/" + key, "unknown node \"" + v.get<std::string>() + "\"");
      return it->second;
    }
    if (v.is_number_integer()) {
      const auto x = v.get<long long>();
      if (x < 0 || x >= static_cast<long long>(index_.size())) fail(where + "/" + key, "node index out of range");
      return static_cast<NodeId>(x);
    }
    fail(where + "/" + key, "expected a node name or index");
  }

  const Json& doc_;
  std::unordered_map<std::string, NodeId> index_;
};

}  // namespace

std::string serialize_instance(const Instance& inst) {
  const auto names = export_names(inst.graph);
  Json doc;
  doc["format"] = kInstanceFormat;
  doc["version"] = kInstanceVersion;
  doc["label"] = inst.label;
  doc["nodes"] = names;
  doc["source"] = names[static_cast<std::size_t>(inst.graph.source())];
  doc["sink"] = names[static_cast<std::size_t>(inst.graph.sink())];
  Json arcs = Json::array();
  for (ArcId e = 0; e < inst.graph.arc_count(); ++e) {
    const auto i = static_cast<std::size_t>(e);
    const Arc& a = inst.graph.arc(e);
    Json rec;
    rec["tail"] = names[static_cast<std::size_t>(a.tail)];
    rec["head"] = names[static_cast<std::size_t>(a.head)];
    rec["C"] = inst.first_stage[i];
    rec["c_hat"] = inst.nominal[i];
    rec["delta"] = inst.deviation[i];
    arcs.push_back(std::move(rec));
  }
  doc["arcs"] = std::move(arcs);
  doc["k"] = inst.k;
  doc["neighborhood"] = std::string(to_string(inst.neighborhood));
  Json u;
  if (const auto* d = std::get_if<DiscreteBudget>(&inst.uncertainty)) {
    u["kind"] = "discrete";
    u["budget"] = d->budget;
  } else if (const auto* c = std::get_if<ContinuousBudget>(&inst.uncertainty)) {
    u["kind"] = "continuous";
    u["budget"] = c->budget;
  } else {
    u["kind"] = "interval";
  }
  doc["uncertainty"] = std::move(u);
  return doc.dump(2) + "\n";
}

Instance parse_instance(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& err) {
    throw Error(ErrorKind::Parse, "byte " + std::to_string(err.byte) + ": malformed JSON");
  }
  if (!doc.is_object()) fail("", "expected a JSON object");
  return Reader(doc).read();
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_instance(buf.str());
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::Parse) throw Error(ErrorKind::Parse, path + ": " + err.what());
    throw;
  }
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out << serialize_instance(inst);
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

Path parse_path_spec(const Multidigraph& g, std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  Path path;
  if (text.find('>') != std::string_view::npos) {
    std::vector<NodeId> nodes;
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t end = std::min(text.find('>', start), text.size());
      const std::string label(trim(text.substr(start, end - start)));
      NodeId found = -1;
      for (NodeId v = 0; v < g.node_count() && found < 0; ++v)
        if (g.node_label(v) == label) found = v;
      if (found < 0) throw Error(ErrorKind::Parse, "unknown node \"" + label + "\" in path");
      nodes.push_back(found);
      start = end + 1;
    }
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      ArcId chosen = -1;
      for (ArcId e : g.out_arcs(nodes[i]))
        if (g.arc(e).head == nodes[i + 1]) {
          chosen = e;
          break;
        }
      if (chosen < 0)
        throw Error(ErrorKind::Parse, "no arc " + g.node_label(nodes[i]) + "->" +
                                          g.node_label(nodes[i + 1]));
      path.arcs.push_back(chosen);
    }
    return path;
  }
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') throw Error(ErrorKind::Parse, "unbalanced bracket in path");
    text = trim(text.substr(1, text.size() - 2));
  }
  if (text.empty()) return path;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const auto item = trim(text.substr(start, end - start));
    ArcId e = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), e);
    if (ec != std::errc{} || ptr != item.data() + item.size() || item.empty())
      throw Error(ErrorKind::Parse, "bad arc id \"" + std::string(item) + "\" in path");
    if (e < 0 || e >= g.arc_count()) throw Error(ErrorKind::Parse, "arc id out of range in path");
    path.arcs.push_back(e);
    start = end + 1;
  }
  return path;
}

}  // namespace rrsp
