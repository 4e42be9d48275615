#include "lobnet/network.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

namespace lobnet {

std::string_view to_string(NetworkKind kind) noexcept {
  switch (kind) {
    case NetworkKind::None: return "none";
    case NetworkKind::LatticeX: return "lattice";
    case NetworkKind::ErdosRenyi: return "er";
    case NetworkKind::BarabasiAlbert: return "ba";
  }
  return "none";
}

NetworkKind parse_network_kind(std::string_view text) {
  if (text == "none") return NetworkKind::None;
  if (text == "lattice") return NetworkKind::LatticeX;
  if (text == "er") return NetworkKind::ErdosRenyi;
  if (text == "ba") return NetworkKind::BarabasiAlbert;
  throw std::invalid_argument("unknown network kind '" + std::string(text) + "' (expected none|lattice|er|ba)");
}

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  for (auto& e : edges_) {
    if (e.u == e.v) throw std::invalid_argument("self-loop in edge list");
    if (e.u >= n_ || e.v >= n_) throw std::invalid_argument("edge endpoint out of range");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw std::invalid_argument("duplicate edge in edge list");

  std::vector<std::size_t> degree(n_, 0);
  for (const auto& e : edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  offsets_.assign(n_ + 1, 0);
  for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] = offsets_[i] + degree[i];
  adjacency_.resize(offsets_[n_]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    adjacency_[cursor[e.u]++] = e.v;
    adjacency_[cursor[e.v]++] = e.u;
  }
  for (std::size_t i = 0; i < n_; ++i)
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]));
}

std::span<const AgentId> Graph::neighbors(AgentId node) const {
  if (node >= n_) throw std::out_of_range("node index out of range");
  return {adjacency_.data() + offsets_[node], offsets_[node + 1] - offsets_[node]};
}

Graph build_lattice_x(std::size_t rows, std::size_t cols) {
  if (rows < 3 || cols < 3) throw std::invalid_argument("lattice dimensions must be >= 3");
  const auto id = [cols](std::size_t r, std::size_t c) { return static_cast<AgentId>(r * cols + c); };
  std::vector<Edge> edges;
  edges.reserve(4 * rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t down = (r + 1) % rows;
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t right = (c + 1) % cols;
      const std::size_t left = (c + cols - 1) % cols;
      const AgentId self = id(r, c);
      edges.push_back({self, id(r, right)});
      edges.push_back({self, id(down, c)});
      edges.push_back({self, id(down, right)});
      edges.push_back({self, id(down, left)});
    }
  }
  return Graph(rows * cols, std::move(edges));
}

namespace {

std::uint64_t pair_key(std::uint64_t u, std::uint64_t v, std::uint64_t n) {
  return u < v ? u * n + v : v * n + u;
}

// Distinct uniformly random unordered pairs, in draw order.
std::vector<Edge> sample_pairs(std::size_t n, std::size_t count, Rng& rng,
                               std::unordered_set<std::uint64_t>& taken) {
  std::vector<Edge> out;
  out.reserve(count);
  while (out.size() < count) {
    const auto u = rng.below(n);
    const auto v = rng.below(n);
    if (u == v) continue;
    if (!taken.insert(pair_key(u, v, n)).second) continue;
    out.push_back({static_cast<AgentId>(std::min(u, v)), static_cast<AgentId>(std::max(u, v))});
  }
  return out;
}

} // namespace

Graph build_erdos_renyi(std::size_t n, std::size_t m, Rng& rng) {
  const std::size_t pairs = n < 2 ? 0 : n * (n - 1) / 2;
  if (m > pairs) throw std::invalid_argument("edge count exceeds n(n-1)/2");

  std::unordered_set<std::uint64_t> taken;
  if (2 * m <= pairs) {
    taken.reserve(2 * m);
    return Graph(n, sample_pairs(n, m, rng, taken));
  }
  // Dense regime: draw the complement instead.
  taken.reserve(2 * (pairs - m));
  sample_pairs(n, pairs - m, rng, taken);
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (!taken.contains(pair_key(u, v, n))) edges.push_back({static_cast<AgentId>(u), static_cast<AgentId>(v)});
  return Graph(n, std::move(edges));
}

Graph build_barabasi_albert(std::size_t n, std::size_t m_attach, Rng& rng) {
  if (m_attach < 1) throw std::invalid_argument("m_attach must be >= 1");
  if (n <= m_attach) throw std::invalid_argument("n must exceed m_attach");

  const std::size_t seed_nodes = m_attach + 1;
  std::vector<Edge> edges;
  edges.reserve(seed_nodes * m_attach / 2 + (n - seed_nodes) * m_attach);
  // Every edge contributes both endpoints, so a uniform pick is degree-proportional.
  std::vector<AgentId> endpoints;
  endpoints.reserve(2 * edges.capacity());
  for (std::size_t u = 0; u < seed_nodes; ++u)
    for (std::size_t v = u + 1; v < seed_nodes; ++v) {
      edges.push_back({static_cast<AgentId>(u), static_cast<AgentId>(v)});
      endpoints.push_back(static_cast<AgentId>(u));
      endpoints.push_back(static_cast<AgentId>(v));
    }

  std::vector<AgentId> targets;
  targets.reserve(m_attach);
  for (std::size_t node = seed_nodes; node < n; ++node) {
    targets.clear();
    while (targets.size() < m_attach) {
      const AgentId t = endpoints[rng.below(endpoints.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (const AgentId t : targets) {
      edges.push_back({t, static_cast<AgentId>(node)});
      endpoints.push_back(t);
      endpoints.push_back(static_cast<AgentId>(node));
    }
  }
  return Graph(n, std::move(edges));
}

std::optional<Graph> build_network(const NetworkSpec& spec, std::size_t n, Rng& rng) {
  switch (spec.kind) {
    case NetworkKind::None: return std::nullopt;
    case NetworkKind::LatticeX:
      if (spec.lattice_rows * spec.lattice_cols != n)
        throw std::invalid_argument("lattice rows*cols must equal the agent count");
      return build_lattice_x(spec.lattice_rows, spec.lattice_cols);
    case NetworkKind::ErdosRenyi: return build_erdos_renyi(n, spec.er_edges, rng);
    case NetworkKind::BarabasiAlbert: return build_barabasi_albert(n, spec.ba_attach, rng);
  }
  return std::nullopt;
}

void write_edge_list(const Graph& g, std::ostream& out) {
  for (const auto& e : g.edges()) out << e.u << ',' << e.v << '\n';
}

} // namespace lobnet
