#include "fillings/automata.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "fillings/errors.hpp"

namespace fillings {

  GraphLimits GraphLimits::from_environment() {
    std::size_t mb = 1024;
    if (char const* env = std::getenv("FILLINGS_MEM_CEILING_MB")) {
      char*              end = nullptr;
      unsigned long long v   = std::strtoull(env, &end, 10);
      if (end != env && *end == '\0' && v > 0) {
        mb = static_cast<std::size_t>(v);
      }
    }
    return GraphLimits{mb * (1024 * 1024 / 64)};
  }

  ////////////////////////////////////////////////////////////////////////
  // LabeledGraph
  ////////////////////////////////////////////////////////////////////////

  LabeledGraph::LabeledGraph(std::size_t num_generators)
      : _num_generators(num_generators), _num_vertices(1), _edges(), _faces() {
    if (num_generators == 0) {
      throw InvalidArgument("a labelled graph needs at least one generator");
    }
  }

  vertex_type LabeledGraph::add_vertex() {
    return static_cast<vertex_type>(_num_vertices++);
  }

  void LabeledGraph::add_edge(vertex_type source, generator_type label, vertex_type target) {
    if (source >= _num_vertices || target >= _num_vertices || label >= _num_generators) {
      throw InvalidArgument("edge endpoint or label out of range");
    }
    _edges.push_back({source, label, target});
  }

  void LabeledGraph::add_letter_edge(vertex_type v, Letter x, vertex_type u) {
    if (x.is_inverse()) {
      add_edge(u, x.generator(), v);
    } else {
      add_edge(v, x.generator(), u);
    }
  }

  vertex_type LabeledGraph::add_path(vertex_type v, Word const& w) {
    for (Letter x : w) {
      vertex_type u = add_vertex();
      add_letter_edge(v, x, u);
      v = u;
    }
    return v;
  }

  void LabeledGraph::add_loop(vertex_type v, Word const& r) {
    if (r.empty()) {
      throw InvalidArgument("cannot attach a loop with empty label");
    }
    vertex_type cur = v;
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
      vertex_type u = add_vertex();
      add_letter_edge(cur, r[i], u);
      cur = u;
    }
    add_letter_edge(cur, r.back(), v);
    _faces.push_back({v, r});
  }

  void LabeledGraph::add_face(vertex_type basepoint, Word boundary) {
    if (basepoint >= _num_vertices) {
      throw InvalidArgument("face basepoint out of range");
    }
    _faces.push_back({basepoint, std::move(boundary)});
  }

  bool LabeledGraph::is_deterministic() const {
    std::vector<char> seen(_num_vertices * 2 * _num_generators, 0);
    for (auto const& e : _edges) {
      auto& o = seen[e.source * 2 * _num_generators + 2 * e.label];
      auto& i = seen[e.target * 2 * _num_generators + 2 * e.label + 1];
      if (o || i) {
        return false;
      }
      o = i = 1;
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // SymmetricNfa / FoldedDfa
  ////////////////////////////////////////////////////////////////////////

  SymmetricNfa::SymmetricNfa(LabeledGraph graph)
      : _graph(std::move(graph)),
        _next(_graph.num_vertices() * 2 * _graph.num_generators()) {
    std::size_t const k = 2 * _graph.num_generators();
    for (auto const& e : _graph.edges()) {
      _next[e.source * k + 2 * e.label].push_back(e.target);
      _next[e.target * k + 2 * e.label + 1].push_back(e.source);
    }
  }

  bool SymmetricNfa::accepts(Word const& w) const {
    std::vector<char>        in_set(num_states(), 0);
    std::vector<vertex_type> cur{LabeledGraph::origin()};
    std::vector<vertex_type> nxt;
    for (Letter x : w) {
      nxt.clear();
      for (vertex_type q : cur) {
        for (vertex_type p : next(q, x)) {
          if (!in_set[p]) {
            in_set[p] = 1;
            nxt.push_back(p);
          }
        }
      }
      for (vertex_type p : nxt) {
        in_set[p] = 0;
      }
      std::swap(cur, nxt);
      if (cur.empty()) {
        return false;
      }
    }
    return std::find(cur.begin(), cur.end(), LabeledGraph::origin()) != cur.end();
  }

  FoldedDfa::FoldedDfa(LabeledGraph graph)
      : _graph(std::move(graph)),
        _table(_graph.num_vertices() * 2 * _graph.num_generators(), -1) {
    std::size_t const k = 2 * _graph.num_generators();
    for (auto const& e : _graph.edges()) {
      auto& o = _table[e.source * k + 2 * e.label];
      auto& i = _table[e.target * k + 2 * e.label + 1];
      if (o >= 0 || i >= 0) {
        throw InvalidArgument("graph is not folded");
      }
      o = e.target;
      i = e.source;
    }
  }

  std::optional<vertex_type> FoldedDfa::step(vertex_type v, Letter x) const noexcept {
    auto t = _table[v * 2 * _graph.num_generators() + x.code()];
    if (t < 0) {
      return std::nullopt;
    }
    return static_cast<vertex_type>(t);
  }

  std::optional<vertex_type> FoldedDfa::trace(vertex_type v, Word const& w) const {
    for (Letter x : w) {
      auto t = step(v, x);
      if (!t) {
        return std::nullopt;
      }
      v = *t;
    }
    return v;
  }

  bool FoldedDfa::accepts_reduced(Word const& w) const {
    auto end = trace(LabeledGraph::origin(), red(w));
    return end && *end == LabeledGraph::origin();
  }

  bool accepts_reduced(FoldedDfa const& dfa, Word const& w) {
    return dfa.accepts_reduced(w);
  }

  ////////////////////////////////////////////////////////////////////////
  // Constructions
  ////////////////////////////////////////////////////////////////////////

  namespace {
    std::uint64_t num_reduced_of_length(std::size_t n, std::size_t len) {
      if (len == 0) {
        return 1;
      }
      std::uint64_t v = 2 * n;
      for (std::size_t i = 1; i < len; ++i) {
        v *= 2 * n - 1;
      }
      return v;
    }

    void check_ceiling(std::uint64_t needed, GraphLimits const& limits, char const* what) {
      if (needed > limits.max_vertices) {
        throw ResourceLimitExceeded(std::string(what) + " needs " + std::to_string(needed)
                                    + " vertices, above the ceiling of "
                                    + std::to_string(limits.max_vertices));
      }
    }
  }  // namespace

  std::uint64_t loop_complex_size(Presentation const& p, std::size_t radius) {
    std::uint64_t const nr    = p.num_relators();
    std::uint64_t const total = p.total_length();
    std::uint64_t       size  = 1;
    for (std::size_t len = 0; len <= radius; ++len) {
      size += num_reduced_of_length(p.num_generators(), len) * (nr * len + total - nr);
    }
    return size;
  }

  SymmetricNfa build_loop_complex(Presentation const& p,
                                  std::size_t         radius,
                                  GraphLimits const&  limits) {
    check_ceiling(loop_complex_size(p, radius), limits, "loop complex");
    LabeledGraph g(p.num_generators());
    for (std::size_t len = 0; len <= radius; ++len) {
      for_each_reduced_word(p.num_generators(), len, [&](Word const& u) {
        for (auto const& r : p.relators()) {
          g.add_loop(g.add_path(LabeledGraph::origin(), u), r);
        }
      });
    }
    return SymmetricNfa(std::move(g));
  }

  std::uint64_t tree_nfa_size(Presentation const& p, std::size_t radius) {
    std::uint64_t const nr = p.num_relators();
    return num_reduced_words_up_to(p.num_generators(), radius) * (1 + p.total_length() - nr);
  }

  SymmetricNfa build_tree_nfa(Presentation const& p,
                              std::size_t         radius,
                              GraphLimits const&  limits) {
    if (p.relators().empty()) {
      throw EmptyRelatorSet("the tree NFA needs at least one relator");
    }
    check_ceiling(tree_nfa_size(p, radius), limits, "tree NFA");
    LabeledGraph g(p.num_generators());
    // tree vertices of the previous length, in enumeration order
    std::vector<std::pair<Word, vertex_type>> layer{{Word{}, LabeledGraph::origin()}};
    std::vector<vertex_type>                  tree{LabeledGraph::origin()};
    for (std::size_t len = 1; len <= radius; ++len) {
      std::vector<std::pair<Word, vertex_type>> next;
      for (auto const& [u, v] : layer) {
        for (std::uint32_t c = 0; c < 2 * p.num_generators(); ++c) {
          Letter x = Letter::from_code(c);
          if (!u.empty() && u.back() == x.inverse()) {
            continue;
          }
          vertex_type child = g.add_vertex();
          g.add_letter_edge(v, x, child);
          Word uc = u;
          uc.push_back(x);
          next.emplace_back(std::move(uc), child);
          tree.push_back(child);
        }
      }
      layer = std::move(next);
    }
    for (vertex_type v : tree) {
      for (auto const& r : p.relators()) {
        g.add_loop(v, r);
      }
    }
    return SymmetricNfa(std::move(g));
  }

  bool decide_word_problem(Presentation const& p,
                           Word const&         w,
                           std::size_t         radius,
                           GraphLimits const&  limits) {
    Word rw = red(w);
    if (rw.empty()) {
      return true;
    }
    if (p.relators().empty()) {
      return false;
    }
    return fold(build_loop_complex(p, radius, limits)).accepts_reduced(rw);
  }

  ////////////////////////////////////////////////////////////////////////
  // Folding
  ////////////////////////////////////////////////////////////////////////

  namespace {
    class Folder {
     public:
      Folder(std::size_t num_vertices, std::size_t num_generators)
          : _k(2 * num_generators),
            _parent(num_vertices),
            _size(num_vertices, 1),
            _adj(num_vertices * _k, -1) {
        std::iota(_parent.begin(), _parent.end(), vertex_type(0));
      }

      vertex_type find(vertex_type v) {
        while (_parent[v] != v) {
          _parent[v] = _parent[_parent[v]];
          v          = _parent[v];
        }
        return v;
      }

      void add(vertex_type v, std::size_t key, vertex_type t) {
        v        = find(v);
        auto& at = _adj[v * _k + key];
        if (at < 0) {
          at = t;
        } else if (find(static_cast<vertex_type>(at)) != find(t)) {
          _pending.emplace_back(static_cast<vertex_type>(at), t);
        }
      }

      void run() {
        while (!_pending.empty()) {
          auto [x, y] = _pending.front();
          _pending.pop_front();
          x = find(x);
          y = find(y);
          if (x == y) {
            continue;
          }
          if (_size[x] < _size[y] || (_size[x] == _size[y] && y < x)) {
            std::swap(x, y);
          }
          _parent[y] = x;
          _size[x] += _size[y];
          for (std::size_t key = 0; key < _k; ++key) {
            auto t = _adj[y * _k + key];
            if (t >= 0) {
              add(x, key, static_cast<vertex_type>(t));
            }
          }
        }
      }

      std::int64_t target(vertex_type root, std::size_t key) const {
        return _adj[root * _k + key];
      }

     private:
      std::size_t                                     _k;
      std::vector<vertex_type>                        _parent;
      std::vector<std::size_t>                        _size;
      std::vector<std::int64_t>                       _adj;
      std::deque<std::pair<vertex_type, vertex_type>> _pending;
    };

    // Least (vertex, label) pair over all readings of the face cycle.
    std::pair<vertex_type, Word> face_key(FoldedDfa const& dfa, FaceLoop const& f) {
      std::size_t const        n = f.boundary.size();
      std::vector<vertex_type> along(n);
      vertex_type              v = f.basepoint;
      for (std::size_t i = 0; i < n; ++i) {
        along[i] = v;
        v        = *dfa.step(v, f.boundary[i]);
      }
      std::pair<vertex_type, Word> best{std::numeric_limits<vertex_type>::max(), {}};
      for (std::size_t i = 0; i < n; ++i) {
        Word fwd = rotate(f.boundary, i);
        Word bwd = invert(fwd);
        std::pair<vertex_type, Word> a{along[i], std::move(fwd)};
        std::pair<vertex_type, Word> b{along[i], std::move(bwd)};
        if (a < best) {
          best = std::move(a);
        }
        if (b < best) {
          best = std::move(b);
        }
      }
      return best;
    }
  }  // namespace

  FoldedDfa fold(LabeledGraph const& graph) {
    std::size_t const nv = graph.num_vertices();
    std::size_t const k  = 2 * graph.num_generators();
    Folder            folder(nv, graph.num_generators());
    for (auto const& e : graph.edges()) {
      folder.add(e.source, 2 * e.label, e.target);
      folder.add(e.target, 2 * e.label + 1, e.source);
      folder.run();
    }

    std::vector<vertex_type> number(nv, std::numeric_limits<vertex_type>::max());
    LabeledGraph             out(graph.num_generators());
    number[folder.find(LabeledGraph::origin())] = LabeledGraph::origin();
    for (vertex_type v = 0; v < nv; ++v) {
      vertex_type r = folder.find(v);
      if (number[r] == std::numeric_limits<vertex_type>::max()) {
        number[r] = out.add_vertex();
      }
    }
    std::vector<char> done(nv, 0);
    std::vector<Edge> edges;
    for (vertex_type v = 0; v < nv; ++v) {
      vertex_type r = folder.find(v);
      if (done[r]) {
        continue;
      }
      done[r] = 1;
      for (std::size_t key = 0; key < k; key += 2) {
        auto t = folder.target(r, key);
        if (t >= 0) {
          edges.push_back({number[r],
                           static_cast<generator_type>(key / 2),
                           number[folder.find(static_cast<vertex_type>(t))]});
        }
      }
    }
    std::sort(edges.begin(), edges.end());
    for (auto const& e : edges) {
      out.add_edge(e.source, e.label, e.target);
    }

    FoldedDfa dfa(std::move(out));
    if (graph.faces().empty()) {
      return dfa;
    }
    LabeledGraph with_faces = dfa.graph();
    std::map<std::pair<vertex_type, Word>, bool> seen;
    for (auto const& f : graph.faces()) {
      FaceLoop mapped{number[folder.find(f.basepoint)], f.boundary};
      if (seen.emplace(face_key(dfa, mapped), true).second) {
        with_faces.add_face(mapped.basepoint, mapped.boundary);
      }
    }
    return FoldedDfa(std::move(with_faces));
  }

  ////////////////////////////////////////////////////////////////////////
  // Measurements and transformations
  ////////////////////////////////////////////////////////////////////////

  namespace {
    // Per vertex, incident (edge index, other endpoint) pairs.
    std::vector<std::vector<std::pair<std::size_t, vertex_type>>>
    incidence(LabeledGraph const& g) {
      std::vector<std::vector<std::pair<std::size_t, vertex_type>>> inc(g.num_vertices());
      for (std::size_t i = 0; i < g.edges().size(); ++i) {
        auto const& e = g.edges()[i];
        inc[e.source].emplace_back(i, e.target);
        if (e.source != e.target) {
          inc[e.target].emplace_back(i, e.source);
        }
      }
      return inc;
    }

    // Keeps the vertices with keep[v] set, renumbered in increasing order
    // (the origin must be kept), and the edges with keep_edge[i] set.
    LabeledGraph restrict(LabeledGraph const&      g,
                          std::vector<char> const& keep,
                          std::vector<char> const& keep_edge) {
      std::vector<vertex_type> number(g.num_vertices(), std::numeric_limits<vertex_type>::max());
      LabeledGraph             out(g.num_generators());
      number[LabeledGraph::origin()] = LabeledGraph::origin();
      for (vertex_type v = 1; v < g.num_vertices(); ++v) {
        if (keep[v]) {
          number[v] = out.add_vertex();
        }
      }
      for (std::size_t i = 0; i < g.edges().size(); ++i) {
        if (keep_edge[i]) {
          auto const& e = g.edges()[i];
          out.add_edge(number[e.source], e.label, number[e.target]);
        }
      }
      for (auto const& f : g.faces()) {
        if (keep[f.basepoint]) {
          out.add_face(number[f.basepoint], f.boundary);
        }
      }
      return out;
    }
  }  // namespace

  std::vector<vertex_type> canonical_numbering(LabeledGraph const& graph) {
    FoldedDfa                dfa(graph);
    std::size_t const        n     = graph.num_vertices();
    vertex_type const        unset = std::numeric_limits<vertex_type>::max();
    std::vector<vertex_type> number(n, unset);
    std::vector<vertex_type> order{LabeledGraph::origin()};
    number[LabeledGraph::origin()] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      vertex_type v = order[i];
      for (std::uint32_t c = 0; c < 2 * graph.num_generators(); ++c) {
        auto t = dfa.step(v, Letter::from_code(c));
        if (t && number[*t] == unset) {
          number[*t] = static_cast<vertex_type>(order.size());
          order.push_back(*t);
        }
      }
    }
    // unreachable vertices keep their relative order
    for (vertex_type v = 0; v < n; ++v) {
      if (number[v] == unset) {
        number[v] = static_cast<vertex_type>(order.size());
        order.push_back(v);
      }
    }
    return number;
  }

  CanonicalForm canonical_form(LabeledGraph const& graph) {
    auto          number = canonical_numbering(graph);
    CanonicalForm out{graph.num_vertices(), {}};
    out.edges.reserve(graph.edges().size());
    for (auto const& e : graph.edges()) {
      out.edges.push_back({number[e.source], e.label, number[e.target]});
    }
    std::sort(out.edges.begin(), out.edges.end());
    return out;
  }

  std::vector<std::size_t> distances_from_origin(LabeledGraph const& graph) {
    auto const               inc = incidence(graph);
    std::size_t const        inf = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> dist(graph.num_vertices(), inf);
    std::vector<vertex_type> queue{LabeledGraph::origin()};
    dist[LabeledGraph::origin()] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      vertex_type v = queue[i];
      for (auto const& [edge, u] : inc[v]) {
        if (dist[u] == inf) {
          dist[u] = dist[v] + 1;
          queue.push_back(u);
        }
      }
    }
    return dist;
  }

  std::size_t radius(LabeledGraph const& graph) {
    std::size_t r = 0;
    for (std::size_t d : distances_from_origin(graph)) {
      if (d != std::numeric_limits<std::size_t>::max()) {
        r = std::max(r, d);
      }
    }
    return r;
  }

  LabeledGraph remove_hairs(LabeledGraph const& graph) {
    auto const               inc = incidence(graph);
    std::size_t const        n   = graph.num_vertices();
    std::vector<std::size_t> degree(n, 0);
    for (auto const& e : graph.edges()) {
      ++degree[e.source];
      ++degree[e.target];
    }
    std::vector<char>        alive(graph.edges().size(), 1);
    std::vector<vertex_type> stack;
    for (vertex_type v = 1; v < n; ++v) {
      if (degree[v] == 1) {
        stack.push_back(v);
      }
    }
    while (!stack.empty()) {
      vertex_type v = stack.back();
      stack.pop_back();
      if (degree[v] != 1) {
        continue;
      }
      for (auto const& [edge, u] : inc[v]) {
        if (!alive[edge]) {
          continue;
        }
        alive[edge] = 0;
        --degree[v];
        --degree[u];
        if (u != LabeledGraph::origin() && degree[u] == 1) {
          stack.push_back(u);
        }
        break;
      }
    }
    std::vector<char> keep(n, 0);
    for (vertex_type v = 0; v < n; ++v) {
      keep[v] = (v == LabeledGraph::origin() || degree[v] > 0) ? 1 : 0;
    }
    return restrict(graph, keep, alive);
  }

  LabeledGraph ball(LabeledGraph const& graph, std::size_t k) {
    auto const        dist = distances_from_origin(graph);
    std::vector<char> keep(graph.num_vertices(), 0);
    for (vertex_type v = 0; v < graph.num_vertices(); ++v) {
      keep[v] = dist[v] <= k ? 1 : 0;
    }
    std::vector<char> keep_edge(graph.edges().size(), 0);
    for (std::size_t i = 0; i < graph.edges().size(); ++i) {
      auto const& e = graph.edges()[i];
      keep_edge[i]  = std::min(dist[e.source], dist[e.target]) < k ? 1 : 0;
    }
    return restrict(graph, keep, keep_edge);
  }

  std::size_t face_distance(FoldedDfa const&                dfa,
                            FaceLoop const&                 face,
                            std::vector<std::size_t> const& dist) {
    std::size_t const n    = face.boundary.size();
    std::size_t       best = std::numeric_limits<std::size_t>::max();
    vertex_type       v    = face.basepoint;
    for (std::size_t i = 0; i < n; ++i) {
      Word rot = rotate(face.boundary, i);
      if (rot == face.boundary || invert(rot) == face.boundary) {
        best = std::min(best, dist[v]);
      }
      auto t = dfa.step(v, face.boundary[i]);
      if (!t) {
        throw MissingFaceData("face boundary cannot be read in the graph");
      }
      v = *t;
    }
    return best;
  }

  std::size_t face_radius(FoldedDfa const& dfa) {
    auto const  dist = distances_from_origin(dfa.graph());
    std::size_t r    = 0;
    for (auto const& f : dfa.graph().faces()) {
      r = std::max(r, face_distance(dfa, f, dist));
    }
    return r;
  }

  std::string to_dot(LabeledGraph const& graph, std::string const& name) {
    std::vector<vertex_type> number(graph.num_vertices());
    if (graph.is_deterministic()) {
      number = canonical_numbering(graph);
    } else {
      std::iota(number.begin(), number.end(), vertex_type(0));
    }
    std::vector<Edge> edges;
    for (auto const& e : graph.edges()) {
      edges.push_back({number[e.source], e.label, number[e.target]});
    }
    std::sort(edges.begin(), edges.end());
    std::ostringstream out;
    out << "digraph " << name << " {\n";
    out << "  " << number[LabeledGraph::origin()] << " [shape=doublecircle];\n";
    for (auto const& e : edges) {
      out << "  " << e.source << " -> " << e.target << " [label=\""
          << static_cast<char>('a' + e.label) << "\"];\n";
    }
    out << "}\n";
    return out.str();
  }

}  // namespace fillings
