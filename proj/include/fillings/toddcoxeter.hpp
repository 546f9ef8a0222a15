#ifndef FILLINGS_TODDCOXETER_HPP_
#define FILLINGS_TODDCOXETER_HPP_

#include <cstddef>
#include <functional>
#include <optional>

#include "fillings/automata.hpp"
#include "fillings/core.hpp"

namespace fillings {

  // Which vertices a round works on.
  //  layered - in round k only vertices within distance k - 1 of the origin
  //            get missing edges and relator loops;
  //  literal - every vertex does, every round.
  enum class TcMode { layered, literal };

  class TcState {
   public:
    explicit TcState(Presentation p, TcMode mode = TcMode::layered);
    // Resume from an existing folded graph (e.g. a complete Cayley graph).
    TcState(Presentation p, LabeledGraph graph, std::size_t round, TcMode mode = TcMode::layered);

    [[nodiscard]] Presentation const& presentation() const noexcept {
      return _presentation;
    }
    [[nodiscard]] LabeledGraph const& graph() const noexcept {
      return _graph;
    }
    [[nodiscard]] std::size_t round() const noexcept {
      return _round;
    }
    [[nodiscard]] TcMode mode() const noexcept {
      return _mode;
    }

    // Steps 1 (complete edges), 2 (attach missing relator loops, guards
    // read off the post-step-1 graph), 3 (fold).
    void run_round(GraphLimits const& limits = GraphLimits::from_environment());

   private:
    Presentation _presentation;
    LabeledGraph _graph;
    std::size_t  _round;
    TcMode       _mode;
  };

  [[nodiscard]] TcState tc_round(TcState s, GraphLimits const& limits = GraphLimits::from_environment());

  struct PartialCayleyGraph {
    LabeledGraph graph;   // folded, hair-free
    std::size_t  radius;  // max BFS distance from the origin
  };

  [[nodiscard]] PartialCayleyGraph partial_cayley(TcState const& s);
  [[nodiscard]] PartialCayleyGraph partial_cayley(LabeledGraph const& folded);

  [[nodiscard]] bool tc_decides(PartialCayleyGraph const& g, Word const& w);

  struct TcMeasurement {
    std::size_t        rounds;
    std::size_t        radius;       // vertex radius of the partial Cayley graph
    std::size_t        face_radius;  // max over faces of the distance to a basepoint
    PartialCayleyGraph partial;
    LabeledGraph       raw;  // folded graph with hairs
  };

  using TrivialityOracle = std::function<bool(Word const&)>;

  // Runs rounds until the partial Cayley graph decides every reduced word
  // of length <= n as the oracle does. Returns nullopt after max_rounds
  // rounds without agreement.
  [[nodiscard]] std::optional<TcMeasurement>
  measure_tc_radius(Presentation const&     p,
                    std::size_t             n,
                    TrivialityOracle const& oracle,
                    std::size_t             max_rounds = 16,
                    TcMode                  mode       = TcMode::layered,
                    GraphLimits const&      limits     = GraphLimits::from_environment());

}  // namespace fillings

#endif  // FILLINGS_TODDCOXETER_HPP_
