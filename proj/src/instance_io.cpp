#include "harmless/instance_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace harmless {

namespace {

long long parse_int(std::istringstream &fields, int line, const char *what) {
  long long value = 0;
  if (!(fields >> value))
    throw ParseError(line, std::string("expected integer ") + what);
  return value;
}

void expect_end(std::istringstream &fields, int line) {
  std::string rest;
  if (fields >> rest)
    throw ParseError(line, "trailing token '" + rest + "'");
}

Vertex parse_vertex(std::istringstream &fields, int line, long long n) {
  long long id = parse_int(fields, line, "vertex id");
  if (id < 1 || id > n)
    throw ParseError(line, "vertex id " + std::to_string(id) + " out of range 1.." + std::to_string(n));
  return static_cast<Vertex>(id - 1);
}

} // namespace

Instance load_instance(std::istream &in) {
  Instance inst;
  std::string text;
  int line = 0;
  bool have_header = false;
  bool have_k = false;
  long long n = 0, m = 0, edges_seen = 0;
  std::vector<char> has_threshold;

  while (std::getline(in, text)) {
    ++line;
    std::istringstream fields(text);
    std::string tag;
    if (!(fields >> tag) || tag == "c")
      continue;
    if (tag == "p") {
      if (have_header)
        throw ParseError(line, "duplicate header");
      std::string kind;
      if (!(fields >> kind) || kind != "hs")
        throw ParseError(line, "header must read 'p hs <n> <m>'");
      n = parse_int(fields, line, "vertex count");
      m = parse_int(fields, line, "edge count");
      if (n < 0 || m < 0)
        throw ParseError(line, "negative size in header");
      expect_end(fields, line);
      inst.graph = Graph(static_cast<std::size_t>(n));
      inst.thresholds.assign(static_cast<std::size_t>(n), 0);
      has_threshold.assign(static_cast<std::size_t>(n), 0);
      have_header = true;
      continue;
    }
    if (!have_header)
      throw ParseError(line, "'" + tag + "' line before header");
    if (tag == "e") {
      Vertex u = parse_vertex(fields, line, n);
      Vertex v = parse_vertex(fields, line, n);
      expect_end(fields, line);
      try {
        inst.graph.add_edge(u, v);
      } catch (const std::invalid_argument &e) {
        throw ParseError(line, e.what());
      }
      ++edges_seen;
    } else if (tag == "t") {
      Vertex v = parse_vertex(fields, line, n);
      long long t = parse_int(fields, line, "threshold");
      expect_end(fields, line);
      if (t < 1)
        throw ParseError(line, "threshold must be at least 1");
      if (has_threshold[static_cast<std::size_t>(v)])
        throw ParseError(line, "duplicate threshold for vertex " + std::to_string(v + 1));
      has_threshold[static_cast<std::size_t>(v)] = 1;
      inst.thresholds[static_cast<std::size_t>(v)] = static_cast<Threshold>(t);
    } else if (tag == "k") {
      if (have_k)
        throw ParseError(line, "duplicate k line");
      long long k = parse_int(fields, line, "target size");
      expect_end(fields, line);
      if (k < 0)
        throw ParseError(line, "target size must be non-negative");
      inst.k = static_cast<int>(k);
      have_k = true;
    } else {
      throw ParseError(line, "unknown line tag '" + tag + "'");
    }
  }
  if (!have_header)
    throw ParseError(line, "missing 'p hs' header");
  if (edges_seen != m)
    throw ParseError(line, "header announces " + std::to_string(m) + " edges, found " +
                               std::to_string(edges_seen));
  for (std::size_t v = 0; v < has_threshold.size(); ++v)
    if (!has_threshold[v])
      throw ParseError(line, "missing threshold for vertex " + std::to_string(v + 1));
  return inst;
}

void save_instance(const Instance &instance, std::ostream &out) {
  out << "p hs " << instance.size() << ' ' << instance.graph.num_edges() << '\n';
  for (auto [u, v] : instance.graph.edges())
    out << "e " << u + 1 << ' ' << v + 1 << '\n';
  for (std::size_t v = 0; v < instance.size(); ++v)
    out << "t " << v + 1 << ' ' << instance.thresholds[v] << '\n';
  out << "k " << instance.k << '\n';
}

Instance load_instance_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  return load_instance(in);
}

void save_instance_file(const Instance &instance, const std::string &path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write " + path);
  save_instance(instance, out);
}

nlohmann::json instance_to_json(const Instance &instance) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [u, v] : instance.graph.edges())
    edges.push_back({u, v});
  return {{"format", "harmless-instance"},
          {"n", instance.size()},
          {"edges", std::move(edges)},
          {"thresholds", instance.thresholds},
          {"k", instance.k}};
}

Instance instance_from_json(const nlohmann::json &doc) {
  Instance inst;
  try {
    auto n = doc.at("n").get<long long>();
    if (n < 0)
      throw std::invalid_argument("negative vertex count");
    inst.graph = Graph(static_cast<std::size_t>(n));
    for (const auto &e : doc.at("edges")) {
      auto u = e.at(0).get<long long>();
      auto v = e.at(1).get<long long>();
      if (u < 0 || v < 0 || u >= n || v >= n)
        throw std::invalid_argument("edge endpoint out of range");
      inst.graph.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    inst.thresholds = doc.at("thresholds").get<std::vector<Threshold>>();
    inst.k = doc.value("k", 0);
    inst.validate();
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(0, e.what());
  } catch (const std::invalid_argument &e) {
    throw ParseError(0, e.what());
  }
  return inst;
}

nlohmann::json annotated_to_json(const AnnotatedInstance &ann) {
  auto doc = instance_to_json(ann.instance);
  doc["core"] = ann.core;
  doc["labels"] = ann.labels;
  return doc;
}

AnnotatedInstance annotated_from_json(const nlohmann::json &doc) {
  auto inst = instance_from_json(doc);
  AnnotatedInstance ann;
  try {
    ann.core = normalized(doc.value("core", std::vector<Vertex>{}));
    if (doc.contains("labels")) {
      ann.labels = doc.at("labels").get<std::vector<Vertex>>();
    } else {
      ann.labels.resize(inst.size());
      for (std::size_t v = 0; v < ann.labels.size(); ++v)
        ann.labels[v] = static_cast<Vertex>(v);
    }
    ann.instance = std::move(inst);
    ann.validate();
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(0, e.what());
  } catch (const std::invalid_argument &e) {
    throw ParseError(0, e.what());
  }
  return ann;
}

Instance load_any_instance_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  in >> std::ws;
  if (in.peek() == '{') {
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception &e) {
      throw ParseError(0, e.what());
    }
    return instance_from_json(doc);
  }
  return load_instance(in);
}

} // namespace harmless
