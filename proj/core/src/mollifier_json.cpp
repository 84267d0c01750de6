#include "asymptotica/mollifier_io.hpp"

#include "json_support.hpp"

#include <cstdio>
#include <ostream>

namespace asymptotica::mollifier {

namespace {

using detail::json;

const char* kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::base_bump: return "base_bump";
    case NodeKind::dilate: return "dilate";
    case NodeKind::scale: return "scale";
    case NodeKind::sum: return "sum";
    case NodeKind::tensor_product: return "tensor_product";
    case NodeKind::epsilon_scale: return "epsilon_scale";
  }
  return "?";
}

json node_to_json(const Node& n) {
  json j{{"kind", kind_name(n.kind)}};
  switch (n.kind) {
    case NodeKind::base_bump: break;
    case NodeKind::dilate: j["m"] = detail::rational_to_json(n.param); break;
    case NodeKind::scale: j["c"] = detail::rational_to_json(n.param); break;
    case NodeKind::epsilon_scale: j["eps"] = detail::rational_to_json(n.param); break;
    case NodeKind::sum:
    case NodeKind::tensor_product: {
      json children = json::array();
      for (const auto& c : n.children) children.push_back(node_to_json(*c));
      j["children"] = children;
      return j;
    }
  }
  if (!n.children.empty()) j["child"] = node_to_json(*n.children.front());
  return j;
}

NodePtr node_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw FormatError("tree node needs a \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "base_bump") return base_bump_node();
  if (kind == "sum" || kind == "tensor_product") {
    std::vector<NodePtr> children;
    for (const auto& c : j.at("children")) children.push_back(node_from_json(c));
    if (children.empty()) throw FormatError(kind + " needs children");
    return kind == "sum" ? sum(std::move(children)) : tensor_product(std::move(children));
  }
  if (!j.contains("child")) throw FormatError(kind + " needs a \"child\"");
  NodePtr child = node_from_json(j.at("child"));
  if (kind == "dilate") return dilate(child, detail::rational_from_json(j.at("m")));
  if (kind == "scale") return scale(child, detail::rational_from_json(j.at("c")));
  if (kind == "epsilon_scale") return epsilon_scale(child, detail::rational_from_json(j.at("eps")));
  throw FormatError("unknown node kind \"" + kind + "\"");
}

}  // namespace

std::string to_json(const Mollifier& phi) {
  json meta = json::object();
  if (phi.meta.m) meta["m"] = detail::rational_to_json(*phi.meta.m);
  if (phi.meta.eps) meta["eps"] = detail::rational_to_json(*phi.meta.eps);
  if (phi.meta.M) meta["M"] = *phi.meta.M;
  if (!phi.meta.C.empty()) meta["C"] = phi.meta.C;
  json j{{"dim", phi.dim}, {"level", phi.level}, {"radius", phi.radius}, {"meta", meta}, {"expr", node_to_json(*phi.expr)}};
  return j.dump(2) + "\n";
}

Mollifier from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("mollifier JSON: ") + e.what());
  }
  try {
    Meta meta;
    if (j.contains("meta")) {
      const json& m = j.at("meta");
      if (m.contains("m")) meta.m = detail::rational_from_json(m.at("m"));
      if (m.contains("eps")) meta.eps = detail::rational_from_json(m.at("eps"));
      if (m.contains("M")) meta.M = m.at("M").get<double>();
      if (m.contains("C")) meta.C = m.at("C").get<std::vector<double>>();
    }
    Mollifier phi = from_tree(node_from_json(j.at("expr")), j.value("level", 0), std::move(meta));
    if (j.contains("dim") && j.at("dim").get<int>() != phi.dim) {
      throw FormatError("\"dim\" does not match the expression tree");
    }
    return phi;
  } catch (const json::exception& e) {
    throw FormatError(std::string("mollifier JSON: ") + e.what());
  }
}

void write_samples_csv(std::ostream& out, const Mollifier& phi, int k) {
  if (k < 2) throw FormatError("need at least 2 samples per axis");
  for (int i = 0; i < phi.dim; ++i) out << 'x' << (i + 1) << ',';
  out << "value\n";
  std::vector<int> idx(static_cast<std::size_t>(phi.dim), 0);
  std::vector<double> x(static_cast<std::size_t>(phi.dim));
  const double R = phi.radius;
  char buf[40];
  for (;;) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = -R + 2 * R * idx[i] / (k - 1);
    for (double xi : x) {
      std::snprintf(buf, sizeof buf, "%.17g,", xi);
      out << buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g\n", eval(phi, x));
    out << buf;
    std::size_t a = 0;
    while (a < idx.size() && ++idx[a] == k) idx[a++] = 0;
    if (a == idx.size()) break;
  }
}

}  // namespace asymptotica::mollifier
