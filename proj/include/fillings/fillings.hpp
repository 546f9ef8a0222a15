#ifndef FILLINGS_FILLINGS_HPP_
#define FILLINGS_FILLINGS_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fillings/automata.hpp"
#include "fillings/core.hpp"
#include "fillings/rewrite.hpp"
#include "fillings/toddcoxeter.hpp"

namespace fillings {

  // Ground truth for measurement loops. Spec strings: "cyclic:k",
  // "free-abelian:r", "free:r", "rewrite:L".
  class ReferenceOracle {
   public:
    enum class Kind { cyclic, free_abelian, free, rewrite };

    // Throws InvalidArgument on a malformed spec or one that does not
    // match the presentation's generator count.
    [[nodiscard]] static ReferenceOracle parse(std::string_view spec, Presentation const& p);

    [[nodiscard]] Kind kind() const noexcept {
      return _kind;
    }
    [[nodiscard]] std::size_t parameter() const noexcept {
      return _parameter;
    }
    [[nodiscard]] std::string name() const;
    [[nodiscard]] bool        trivial(Word const& w) const;
    [[nodiscard]] TrivialityOracle as_function() const;

   private:
    ReferenceOracle(Kind k, std::size_t parameter, std::size_t num_generators);

    Kind                           _kind;
    std::size_t                    _parameter;
    std::size_t                    _num_generators;
    std::shared_ptr<RewriteOracle> _rewrite;
  };

  // Least j such that fold(Λ_j) accepts red(w) for every oracle-trivial w
  // with |w| <= n. budget_exceeded if the ceiling or max_radius is hit.
  [[nodiscard]] OracleResult measure_isodiametric(Presentation const&     p,
                                                  std::size_t             n,
                                                  TrivialityOracle const& oracle,
                                                  std::size_t             max_radius = 12,
                                                  GraphLimits const&      limits
                                                  = GraphLimits::from_environment());

  struct ProfileOptions {
    SearchBudget budget;
    std::size_t  max_radius    = 12;
    std::size_t  max_tc_rounds = 16;
    TcMode       tc_mode       = TcMode::layered;
    GraphLimits  limits        = GraphLimits::from_environment();
  };

  struct ProfileEntry {
    std::size_t  n;
    OracleResult P;
    OracleResult f;
    OracleResult d;
    OracleResult rho_tc;  // face radius of TC_n
    std::size_t  tc_rounds = 0;
    std::size_t  tc_vertex_radius = 0;
  };

  struct FillingProfile {
    Presentation              presentation;
    std::size_t               n_max;
    std::vector<ProfileEntry> entries;
  };

  [[nodiscard]] FillingProfile measure_profile(Presentation const&     p,
                                               std::size_t             n_max,
                                               TrivialityOracle const& oracle,
                                               ProfileOptions const&   options = {});

  // n * 2^(C c^d) with C = 2(2|A| + 1)||R||^2 and c = (2|A|)^2. The
  // exponent saturates at UINT64_MAX.
  struct DoubleExpBound {
    std::uint64_t C;
    std::uint64_t c;
    std::size_t   d;
    std::uint64_t exponent;
    bool          saturated;

    // Whether value <= n * 2^exponent.
    [[nodiscard]] bool        admits(std::uint64_t value, std::size_t n) const noexcept;
    [[nodiscard]] std::string text(std::size_t n) const;  // "n*2^E"
  };

  [[nodiscard]] DoubleExpBound double_exp_bound(Presentation const& p, std::size_t d);

  struct InequalityRow {
    std::size_t                  n;
    std::optional<bool>          d_le_half_f;  // d <= ceil(f / 2)
    std::optional<bool>          double_exp;   // P <= n 2^(C c^d)
    std::optional<bool>          d_eq_rho_tc;
    std::optional<std::uint64_t> fitted_c3;    // least c >= 2 with P <= c^f
    std::optional<std::uint64_t> fitted_c4;    // least c >= 2 with f <= c^(d + n)
  };

  struct InequalityReport {
    std::vector<InequalityRow> rows;

    // No asserted check evaluated to false.
    [[nodiscard]] bool all_hold() const;
  };

  [[nodiscard]] InequalityReport check_inequalities(FillingProfile const& profile);

  [[nodiscard]] std::string profile_csv(FillingProfile const& profile, InequalityReport const& report);

  // One (r, x) per recorded face: x labels a shortest path from the origin
  // to a vertex where r can be read around the face.
  struct ConjugatedLoop {
    Word relator;
    Word conjugator;

    bool operator==(ConjugatedLoop const&) const = default;
  };

  // Throws MissingFaceData if the graph has edges but no faces.
  [[nodiscard]] std::vector<ConjugatedLoop> pull_apart(LabeledGraph const& folded);
  // The wedge of the loops at a fresh origin, folded.
  [[nodiscard]] FoldedDfa refold(std::size_t num_generators, std::vector<ConjugatedLoop> const& loops);

  // Radius-k ball of the Cayley graph, vertices identified via the oracle.
  [[nodiscard]] LabeledGraph cayley_ball(std::size_t             num_generators,
                                         std::size_t             k,
                                         TrivialityOracle const& oracle);

}  // namespace fillings

#endif  // FILLINGS_FILLINGS_HPP_
