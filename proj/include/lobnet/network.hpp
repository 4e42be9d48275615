#pragma once
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lobnet/random.hpp"
#include "lobnet/types.hpp"

namespace lobnet {

enum class NetworkKind { None, LatticeX, ErdosRenyi, BarabasiAlbert };

std::string_view to_string(NetworkKind kind) noexcept;
/// Accepts none | lattice | er | ba.
NetworkKind parse_network_kind(std::string_view text);

struct Edge {
  AgentId u{0};
  AgentId v{0};  // u < v
  auto operator<=>(const Edge&) const = default;
};

/// Undirected, unweighted, immutable graph in compressed adjacency form.
/// Neighbor lists are sorted ascending.
class Graph {
public:
  Graph() = default;
  /// Throws std::invalid_argument on self-loops, duplicate edges or out-of-range endpoints.
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t node_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const AgentId> neighbors(AgentId node) const;
  std::size_t degree(AgentId node) const { return neighbors(node).size(); }
  /// Sorted by (u, v).
  const std::vector<Edge>& edges() const noexcept { return edges_; }

private:
  std::size_t n_{0};
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<AgentId> adjacency_;
};

/// Square torus lattice where each square also carries both diagonals (degree 8).
Graph build_lattice_x(std::size_t rows, std::size_t cols);
/// G(n, M): exactly m distinct edges drawn uniformly without replacement.
Graph build_erdos_renyi(std::size_t n, std::size_t m, Rng& rng);
/// Preferential attachment from a complete seed on m_attach + 1 nodes.
Graph build_barabasi_albert(std::size_t n, std::size_t m_attach, Rng& rng);

struct NetworkSpec {
  NetworkKind kind{NetworkKind::None};
  std::size_t lattice_rows{25};
  std::size_t lattice_cols{40};
  std::size_t er_edges{4000};
  std::size_t ba_attach{4};
};

/// nullopt for NetworkKind::None.
std::optional<Graph> build_network(const NetworkSpec& spec, std::size_t n, Rng& rng);

/// One "u,v" line per edge, 0-indexed, u < v.
void write_edge_list(const Graph& g, std::ostream& out);

} // namespace lobnet
