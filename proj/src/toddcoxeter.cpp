#include "fillings/toddcoxeter.hpp"

#include <limits>

#include "fillings/errors.hpp"

namespace fillings {

  TcState::TcState(Presentation p, TcMode mode)
      : _presentation(std::move(p)), _graph(_presentation.num_generators()), _round(0), _mode(mode) {}

  TcState::TcState(Presentation p, LabeledGraph graph, std::size_t round, TcMode mode)
      : _presentation(std::move(p)), _graph(std::move(graph)), _round(round), _mode(mode) {
    if (_graph.num_generators() != _presentation.num_generators()) {
      throw InvalidArgument("graph and presentation have different alphabets");
    }
    if (!_graph.is_deterministic()) {
      throw InvalidArgument("a Todd-Coxeter state must be folded");
    }
  }

  void TcState::run_round(GraphLimits const& limits) {
    std::size_t const n      = _presentation.num_generators();
    std::size_t const active = _mode == TcMode::layered ? _round : std::numeric_limits<std::size_t>::max();
    auto const        dist   = distances_from_origin(_graph);
    auto const        in_range = [&](vertex_type v) {
      return dist[v] != std::numeric_limits<std::size_t>::max() && dist[v] <= active;
    };

    // step 1
    LabeledGraph g = _graph;
    {
      FoldedDfa const dfa(_graph);
      for (vertex_type v = 0; v < _graph.num_vertices(); ++v) {
        if (!in_range(v)) {
          continue;
        }
        for (generator_type a = 0; a < n; ++a) {
          if (!dfa.step(v, Letter::positive(a))) {
            g.add_edge(v, a, g.add_vertex());
          }
          if (!dfa.step(v, Letter::negative(a))) {
            g.add_edge(g.add_vertex(), a, v);
          }
        }
        if (g.num_vertices() > limits.max_vertices) {
          throw ResourceLimitExceeded("Todd-Coxeter round exceeds the vertex ceiling");
        }
      }
    }

    // step 2; the new pendant vertices are at distance > active
    {
      FoldedDfa const                                 snapshot(g);
      std::vector<std::pair<vertex_type, std::size_t>> missing;
      std::size_t                                      extra = 0;
      for (vertex_type v = 0; v < _graph.num_vertices(); ++v) {
        if (!in_range(v)) {
          continue;
        }
        for (std::size_t i = 0; i < _presentation.relators().size(); ++i) {
          auto const& r   = _presentation.relators()[i];
          auto        end = snapshot.trace(v, r);
          if (!end || *end != v) {
            missing.emplace_back(v, i);
            extra += r.size() - 1;
          }
        }
      }
      if (g.num_vertices() + extra > limits.max_vertices) {
        throw ResourceLimitExceeded("Todd-Coxeter round exceeds the vertex ceiling");
      }
      for (auto const& [v, i] : missing) {
        g.add_loop(v, _presentation.relators()[i]);
      }
    }

    // step 3
    _graph = fold(g).graph();
    ++_round;
  }

  TcState tc_round(TcState s, GraphLimits const& limits) {
    s.run_round(limits);
    return s;
  }

  PartialCayleyGraph partial_cayley(LabeledGraph const& folded) {
    auto g = remove_hairs(folded);
    auto r = radius(g);
    return {std::move(g), r};
  }

  PartialCayleyGraph partial_cayley(TcState const& s) {
    return partial_cayley(s.graph());
  }

  bool tc_decides(PartialCayleyGraph const& g, Word const& w) {
    return FoldedDfa(g.graph).accepts_reduced(w);
  }

  std::optional<TcMeasurement> measure_tc_radius(Presentation const&     p,
                                                 std::size_t             n,
                                                 TrivialityOracle const& oracle,
                                                 std::size_t             max_rounds,
                                                 TcMode                  mode,
                                                 GraphLimits const&      limits) {
    auto const words = reduced_words_up_to(p.num_generators(), n);
    std::vector<char> expected;
    expected.reserve(words.size());
    for (auto const& w : words) {
      expected.push_back(oracle(w) ? 1 : 0);
    }
    TcState s(p, mode);
    while (s.round() < max_rounds) {
      s.run_round(limits);
      auto            pcg = partial_cayley(s);
      FoldedDfa const dfa(pcg.graph);
      bool            agree = true;
      for (std::size_t i = 0; i < words.size() && agree; ++i) {
        agree = dfa.accepts_reduced(words[i]) == (expected[i] != 0);
      }
      if (agree) {
        std::size_t fr = face_radius(dfa);
        std::size_t vr = pcg.radius;
        return TcMeasurement{s.round(), vr, fr, std::move(pcg), s.graph()};
      }
    }
    return std::nullopt;
  }

}  // namespace fillings
