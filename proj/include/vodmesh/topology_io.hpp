#pragma once

// JSON and DOT renderings of a Topology. JSON round-trips; DOT is for
// drawing only.

#include <sstream>
#include <string>
#include <string_view>

#include "json.hpp"
#include "vodmesh/errors.hpp"
#include "vodmesh/topology.hpp"

namespace vodmesh {

enum class TopologyFormat { Dot, Json };

inline TopologyFormat parse_topology_format(std::string_view s) {
  if (s == "dot") return TopologyFormat::Dot;
  if (s == "json") return TopologyFormat::Json;
  throw InvalidArgument("unknown topology format '" + std::string(s) + "' (expected dot or json)");
}

namespace detail {

inline NodeKind node_kind_from(const std::string& s) {
  for (auto k : {NodeKind::ArchiveStorage, NodeKind::Peer, NodeKind::ProxyServer, NodeKind::BillingServer,
                 NodeKind::ViewerCluster})
    if (s == to_string(k)) return k;
  throw InvalidArgument("unknown node kind '" + s + "'");
}

inline LinkKind link_kind_from(const std::string& s) {
  for (auto k : {LinkKind::UnicastDown, LinkKind::ForwardUp, LinkKind::IntraLevel})
    if (s == to_string(k)) return k;
  throw InvalidArgument("unknown link kind '" + s + "'");
}

}  // namespace detail

// {levels, nodes:[{id,kind,level}], links:[{from,to,kind,kbps}],
//  clusters:[{level,head,members}]}
inline nlohmann::json topology_to_json(const Topology& t, const std::vector<VirtualCluster>& clusters = {}) {
  nlohmann::json j;
  j["levels"] = t.levels();
  j["nodes"] = nlohmann::json::array();
  for (const auto& n : t.nodes()) j["nodes"].push_back({{"id", n.id}, {"kind", to_string(n.kind)}, {"level", n.level}});
  j["links"] = nlohmann::json::array();
  for (const auto& l : t.links())
    j["links"].push_back({{"from", l.from}, {"to", l.to}, {"kind", to_string(l.kind)}, {"kbps", l.kbps}});
  j["clusters"] = nlohmann::json::array();
  for (const auto& c : clusters) j["clusters"].push_back({{"level", c.level}, {"head", c.head}, {"members", c.members}});
  return j;
}

// Peers get their fixed 4/3/3 slot layout back, with links filling each role
// in file order and the remainder left empty.
inline Topology topology_from_json(const nlohmann::json& j) {
  const int levels = j.at("levels").get<int>();
  const auto& jn = j.at("nodes");
  std::vector<Node> nodes;
  for (std::size_t i = 0; i < jn.size(); ++i) {
    Node n;
    n.id = jn[i].at("id").get<NodeId>();
    if (n.id != i) throw InvalidTopology("node ids must be dense and ordered");
    n.kind = detail::node_kind_from(jn[i].at("kind").get<std::string>());
    n.level = jn[i].at("level").get<int>();
    nodes.push_back(n);
  }
  std::vector<std::vector<Link>> owned(nodes.size());
  for (const auto& jl : j.at("links")) {
    Link l{jl.at("from").get<NodeId>(), jl.at("to").get<NodeId>(), detail::link_kind_from(jl.at("kind")),
           jl.at("kbps").get<double>()};
    if (l.from >= nodes.size() || l.to >= nodes.size()) throw InvalidTopology("link endpoint out of range");
    owned[l.from].push_back(l);
  }
  const LinkCapacityPolicy nominal;
  for (auto& n : nodes) {
    if (n.kind != NodeKind::Peer) {
      for (const auto& l : owned[n.id]) n.slots.push_back({l.kind, l.to, l.kbps});
      continue;
    }
    for (auto [kind, count] : {std::pair{LinkKind::UnicastDown, kDownSlots}, std::pair{LinkKind::ForwardUp, kUpSlots},
                               std::pair{LinkKind::IntraLevel, kIntraSlots}}) {
      int used = 0;
      for (const auto& l : owned[n.id]) {
        if (l.kind != kind) continue;
        if (++used > count) throw InvalidTopology("peer has more links of one role than slots");
        n.slots.push_back({kind, l.to, l.kbps});
      }
      for (; used < count; ++used) n.slots.push_back({kind, std::nullopt, detail::empty_slot_kbps(kind, n.level, nominal)});
    }
  }
  Topology t(levels, std::move(nodes));
  check_invariants(t);
  return t;
}

inline std::string topology_to_dot(const Topology& t) {
  std::ostringstream os;
  os << "digraph hybrid {\n  rankdir=BT;\n";
  for (const auto& n : t.nodes())
    os << "  n" << n.id << " [label=\"" << to_string(n.kind) << " " << n.id << "\\nL" << n.level << "\"];\n";
  for (const auto& l : t.links())
    os << "  n" << l.from << " -> n" << l.to << " [kind=" << to_string(l.kind) << ", label=\"" << l.kbps << "\"];\n";
  os << "}\n";
  return os.str();
}

inline std::string export_topology(const Topology& t, TopologyFormat format,
                                   const std::vector<VirtualCluster>& clusters = {}) {
  if (format == TopologyFormat::Dot) return topology_to_dot(t);
  return topology_to_json(t, clusters).dump(2) + "\n";
}

inline Topology import_topology_json(std::string_view text) {
  return topology_from_json(nlohmann::json::parse(text));
}

}  // namespace vodmesh
