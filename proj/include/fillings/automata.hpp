#ifndef FILLINGS_AUTOMATA_HPP_
#define FILLINGS_AUTOMATA_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fillings/core.hpp"

namespace fillings {

  using vertex_type = std::uint32_t;

  struct Edge {
    vertex_type    source;
    generator_type label;
    vertex_type    target;

    auto operator<=>(Edge const&) const = default;
  };

  // A relator loop attached at basepoint; the boundary is read starting
  // and ending there.
  struct FaceLoop {
    vertex_type basepoint;
    Word        boundary;

    bool operator==(FaceLoop const&) const = default;
  };

  // Upper bound on the number of vertices any single construction may
  // create. Read from FILLINGS_MEM_CEILING_MB (default 1024 MB) at 64
  // bytes per vertex.
  struct GraphLimits {
    std::size_t max_vertices;

    [[nodiscard]] static GraphLimits from_environment();
  };

  // Rooted multigraph with A-labelled directed edges. Inverse letters are
  // not materialised: reading x^-1 at v means following an x-edge into v
  // backwards. Vertex 0 is the origin.
  class LabeledGraph {
   public:
    explicit LabeledGraph(std::size_t num_generators);

    [[nodiscard]] std::size_t num_generators() const noexcept {
      return _num_generators;
    }
    [[nodiscard]] std::size_t num_vertices() const noexcept {
      return _num_vertices;
    }
    [[nodiscard]] static constexpr vertex_type origin() noexcept {
      return 0;
    }
    [[nodiscard]] std::vector<Edge> const& edges() const noexcept {
      return _edges;
    }
    [[nodiscard]] std::vector<FaceLoop> const& faces() const noexcept {
      return _faces;
    }

    vertex_type add_vertex();
    void        add_edge(vertex_type source, generator_type label, vertex_type target);
    // Edge for letter x from v to u: v -a-> u for x = a, u -a-> v for a^-1.
    void add_letter_edge(vertex_type v, Letter x, vertex_type u);
    // Fresh path from v labelled w; returns its far end.
    vertex_type add_path(vertex_type v, Word const& w);
    // Fresh loop at v labelled r (|r| - 1 new vertices); records a face.
    void add_loop(vertex_type v, Word const& r);
    void add_face(vertex_type basepoint, Word boundary);

    // No vertex has two out-edges, or two in-edges, with the same label.
    [[nodiscard]] bool is_deterministic() const;

   private:
    std::size_t           _num_generators;
    std::size_t           _num_vertices;
    std::vector<Edge>     _edges;
    std::vector<FaceLoop> _faces;
  };

  // The graph read as an NFA over A^{±1}, every edge usable in both
  // directions; start and accept state is the origin.
  class SymmetricNfa {
   public:
    explicit SymmetricNfa(LabeledGraph graph);

    [[nodiscard]] LabeledGraph const& graph() const noexcept {
      return _graph;
    }
    [[nodiscard]] std::size_t num_states() const noexcept {
      return _graph.num_vertices();
    }
    // q·x, the states reachable from q reading x.
    [[nodiscard]] std::vector<vertex_type> const& next(vertex_type q, Letter x) const {
      return _next[q * 2 * _graph.num_generators() + x.code()];
    }
    [[nodiscard]] bool accepts(Word const& w) const;

   private:
    LabeledGraph                          _graph;
    std::vector<std::vector<vertex_type>> _next;
  };

  // A folded graph read as a DFA over A^{±1}.
  class FoldedDfa {
   public:
    // Throws InvalidArgument if the graph is not deterministic.
    explicit FoldedDfa(LabeledGraph graph);

    [[nodiscard]] LabeledGraph const& graph() const noexcept {
      return _graph;
    }
    [[nodiscard]] std::optional<vertex_type> step(vertex_type v, Letter x) const noexcept;
    [[nodiscard]] std::optional<vertex_type> trace(vertex_type v, Word const& w) const;
    // Traces red(w) from the origin; accepts iff the trace completes there.
    [[nodiscard]] bool accepts_reduced(Word const& w) const;

   private:
    LabeledGraph             _graph;
    std::vector<std::int64_t> _table;  // [v * 2|A| + letter code] -> target or -1
  };

  // Λ_j: for every reduced u with |u| <= j and every r ∈ R, a fresh path
  // labelled u from the origin with a fresh r-loop at its end.
  [[nodiscard]] SymmetricNfa build_loop_complex(Presentation const& p,
                                                std::size_t         radius,
                                                GraphLimits const&  limits
                                                = GraphLimits::from_environment());
  // 1 + Σ_{(u, r)} (|u| + |r| - 1)
  [[nodiscard]] std::uint64_t loop_complex_size(Presentation const& p, std::size_t radius);

  // treeΛ_j: the radius-j ball of the free group's Cayley tree with one
  // fresh r-loop per (tree vertex, r ∈ R).
  [[nodiscard]] SymmetricNfa build_tree_nfa(Presentation const& p,
                                            std::size_t         radius,
                                            GraphLimits const&  limits
                                            = GraphLimits::from_environment());
  [[nodiscard]] std::uint64_t tree_nfa_size(Presentation const& p, std::size_t radius);

  // Stallings folding by union-find. The origin's class becomes vertex 0,
  // other classes are numbered by their smallest member. Face loops are
  // carried over and deduplicated up to rotation and orientation.
  [[nodiscard]] FoldedDfa fold(LabeledGraph const& graph);
  [[nodiscard]] inline FoldedDfa fold(SymmetricNfa const& nfa) {
    return fold(nfa.graph());
  }

  [[nodiscard]] bool accepts_reduced(FoldedDfa const& dfa, Word const& w);

  // Sound for every radius; complete once radius >= d(|w|).
  [[nodiscard]] bool decide_word_problem(Presentation const& p,
                                         Word const&         w,
                                         std::size_t         radius,
                                         GraphLimits const&  limits
                                         = GraphLimits::from_environment());

  // Deterministic graphs only: vertices renumbered in BFS order from the
  // origin, exploring a1-out, a1-in, a2-out, ... at each vertex.
  struct CanonicalForm {
    std::size_t       num_vertices;
    std::vector<Edge> edges;  // sorted

    bool operator==(CanonicalForm const&) const = default;
  };

  [[nodiscard]] CanonicalForm canonical_form(LabeledGraph const& graph);
  // Old vertex -> canonical number, for the same numbering.
  [[nodiscard]] std::vector<vertex_type> canonical_numbering(LabeledGraph const& graph);

  // Undirected BFS distances from the origin; unreachable vertices get
  // SIZE_MAX.
  [[nodiscard]] std::vector<std::size_t> distances_from_origin(LabeledGraph const& graph);
  [[nodiscard]] std::size_t              radius(LabeledGraph const& graph);

  // Deletes hairs (edges with a degree-1 endpoint other than the origin)
  // until none remain, then drops isolated vertices.
  [[nodiscard]] LabeledGraph remove_hairs(LabeledGraph const& graph);

  // Vertices within distance k of the origin together with every edge
  // having an endpoint at distance < k.
  [[nodiscard]] LabeledGraph ball(LabeledGraph const& graph, std::size_t k);

  // For a folded graph: the least distance from the origin to a vertex at
  // which the face's boundary label can be read around the face.
  [[nodiscard]] std::size_t face_distance(FoldedDfa const&                dfa,
                                          FaceLoop const&                 face,
                                          std::vector<std::size_t> const& dist);
  // Maximum face distance over all recorded faces (0 if there are none).
  [[nodiscard]] std::size_t face_radius(FoldedDfa const& dfa);

  // Graphviz output; deterministic graphs use canonical numbering.
  [[nodiscard]] std::string to_dot(LabeledGraph const& graph, std::string const& name = "G");

}  // namespace fillings

#endif  // FILLINGS_AUTOMATA_HPP_
