#include "sinrcg/mcma.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>

namespace sinrcg {

namespace {

const NodeCaps& caps_at(const CapsMap& caps, const Point& p, int link_id) {
  auto it = caps.find(p);
  if (it == caps.end()) {
    throw std::invalid_argument("no node caps for an endpoint of link " + std::to_string(link_id));
  }
  return it->second;
}

struct Antenna {
  Point node;
  int index;
  friend auto operator<=>(const Antenna&, const Antenna&) = default;
};

std::unordered_map<int, const Link*> link_index(const Instance& instance) {
  std::unordered_map<int, const Link*> index;
  index.reserve(instance.links.size());
  for (const Link& l : instance.links) index.emplace(l.id, &l);
  return index;
}

}  // namespace

void validate(const NodeCaps& caps) {
  if (caps.antennas < 1) throw std::invalid_argument("a node needs at least one antenna");
  if (caps.channels.empty()) throw std::invalid_argument("a node needs at least one channel");
}

std::vector<VirtualLink> expand_virtual(const Instance& instance, const CapsMap& caps) {
  std::vector<VirtualLink> out;
  for (const Link& l : instance.links) {
    const NodeCaps& s = caps_at(caps, l.sender, l.id);
    const NodeCaps& r = caps_at(caps, l.receiver, l.id);
    validate(s);
    validate(r);
    std::vector<int> sc = s.channels;
    std::vector<int> rc = r.channels;
    std::sort(sc.begin(), sc.end());
    std::sort(rc.begin(), rc.end());
    std::vector<int> common;
    std::set_intersection(sc.begin(), sc.end(), rc.begin(), rc.end(), std::back_inserter(common));
    common.erase(std::unique(common.begin(), common.end()), common.end());
    for (int as = 1; as <= s.antennas; ++as) {
      for (int ar = 1; ar <= r.antennas; ++ar) {
        for (int c : common) {
          out.push_back(VirtualLink{static_cast<int>(out.size()), l.id, as, ar, c});
        }
      }
    }
  }
  return out;
}

bool share_antenna(const VirtualLink& a, const VirtualLink& b, const Instance& instance) {
  const Link& la = instance.links.at(*find_link(instance, a.original_id));
  const Link& lb = instance.links.at(*find_link(instance, b.original_id));
  const Antenna ua[2] = {{la.sender, a.sender_antenna}, {la.receiver, a.receiver_antenna}};
  const Antenna ub[2] = {{lb.sender, b.sender_antenna}, {lb.receiver, b.receiver_antenna}};
  for (const Antenna& x : ua) {
    for (const Antenna& y : ub) {
      if (x == y) return true;
    }
  }
  return false;
}

McmaGraph build_mcma_graph(std::span<const VirtualLink> vlinks, const ConflictGraph& base,
                           const Instance& instance) {
  const std::size_t n = vlinks.size();
  const auto links = link_index(instance);
  std::vector<std::size_t> origin(n);
  std::vector<Antenna> send(n);
  std::vector<Antenna> recv(n);
  std::vector<int> ids(n);
  std::vector<double> efflen(n);
  for (std::size_t k = 0; k < n; ++k) {
    const VirtualLink& v = vlinks[k];
    auto it = links.find(v.original_id);
    if (it == links.end()) {
      throw std::invalid_argument("virtual link refers to unknown link " + std::to_string(v.original_id));
    }
    origin[k] = base.index_of(v.original_id);
    send[k] = Antenna{it->second->sender, v.sender_antenna};
    recv[k] = Antenna{it->second->receiver, v.receiver_antenna};
    ids[k] = v.id;
    efflen[k] = base.effective_length(origin[k]);
  }

  AdjacencyMatrix adjacency(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const bool antenna = send[a] == send[b] || send[a] == recv[b] || recv[a] == send[b] ||
                           recv[a] == recv[b];
      const bool channel = vlinks[a].channel == vlinks[b].channel &&
                           (origin[a] == origin[b] || base.adjacent(origin[a], origin[b]));
      if (antenna || channel) adjacency.set(a, b);
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto key = [&](std::size_t k) {
      const VirtualLink& v = vlinks[k];
      return std::tuple(base.rank(origin[k]), v.sender_antenna, v.receiver_antenna, v.channel, v.id);
    };
    return key(a) < key(b);
  });

  McmaGraph out;
  out.vlinks.assign(vlinks.begin(), vlinks.end());
  out.graph = ConflictGraph(std::move(ids), std::move(efflen), base.fn(), std::move(adjacency),
                            std::move(order));
  return out;
}

bool mcma_feasible_check(std::span<const VirtualLink> set, const PowerAssignment& power,
                         const Instance& instance, double tol) {
  const auto links = link_index(instance);
  std::set<Antenna> antennas;
  std::map<int, std::vector<Link>> per_channel;
  std::set<std::pair<int, int>> uses;
  for (const VirtualLink& v : set) {
    auto it = links.find(v.original_id);
    if (it == links.end()) return false;
    const Link& l = *it->second;
    if (!antennas.insert(Antenna{l.sender, v.sender_antenna}).second) return false;
    if (!antennas.insert(Antenna{l.receiver, v.receiver_antenna}).second) return false;
    if (!uses.emplace(v.channel, v.original_id).second) return false;
    per_channel[v.channel].push_back(l);
  }
  for (const auto& [channel, members] : per_channel) {
    if (!feasible(members, power, instance.alpha, tol)) return false;
  }
  return true;
}

std::vector<VirtualLink> select_vlinks(const McmaGraph& graph, std::span<const int> ids) {
  std::vector<VirtualLink> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(graph.vlinks[graph.graph.index_of(id)]);
  return out;
}

}  // namespace sinrcg
