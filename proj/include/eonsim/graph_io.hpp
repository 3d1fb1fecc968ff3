#pragma once

#include <charconv>
#include <sstream>
#include <string>
#include <string_view>

#include "graph.hpp"

namespace eonsim {

namespace detail {

inline std::string fmt_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

template <class T>
T parse_num(std::string_view tok, const std::string& where) {
  T v{};
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    throw std::runtime_error(where + ": bad number '" + std::string(tok) + "'");
  return v;
}

}  // namespace detail

// Line-oriented topology dump.  Spectrum occupancy is never serialized;
// loaded graphs start with all slices available.
//
//   nodes N slices W
//   node <id> <x> <y>
//   link <u> <v> <length>
inline std::string dump_graph(const EonGraph& g) {
  std::ostringstream out;
  out << "nodes " << g.node_count() << " slices " << g.n_slices() << "\n";
  for (NodeId n = 0; n < g.node_count(); ++n)
    out << "node " << n << " " << detail::fmt_double(g.point(n).x) << " "
        << detail::fmt_double(g.point(n).y) << "\n";
  for (int e = 0; e < g.link_count(); ++e) {
    const Link& l = g.link(e);
    out << "link " << l.u << " " << l.v << " " << l.length_km << "\n";
  }
  return out.str();
}

inline EonGraph load_graph(const std::string& text) {
  std::istringstream in(text);
  std::string word;
  int n_nodes = 0, n_slices = 0;
  if (!(in >> word) || word != "nodes" || !(in >> n_nodes) || !(in >> word) ||
      word != "slices" || !(in >> n_slices))
    throw std::runtime_error("load_graph: malformed header");
  if (n_nodes < 1 || n_slices < 1) throw std::runtime_error("load_graph: bad header counts");
  EonGraph g(n_slices);
  int seen_nodes = 0;
  while (in >> word) {
    if (word == "node") {
      int id;
      std::string xs, ys;
      if (!(in >> id >> xs >> ys)) throw std::runtime_error("load_graph: malformed node line");
      if (id != seen_nodes) throw std::runtime_error("load_graph: node ids must be dense");
      g.add_node({detail::parse_num<double>(xs, "load_graph node x"),
                  detail::parse_num<double>(ys, "load_graph node y")});
      ++seen_nodes;
    } else if (word == "link") {
      int u, v, len;
      if (!(in >> u >> v >> len)) throw std::runtime_error("load_graph: malformed link line");
      g.add_link(u, v, len);
    } else {
      throw std::runtime_error("load_graph: unknown record '" + word + "'");
    }
  }
  if (seen_nodes != n_nodes) throw std::runtime_error("load_graph: node count mismatch");
  return g;
}

}  // namespace eonsim
