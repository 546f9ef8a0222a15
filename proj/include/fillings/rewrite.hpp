#ifndef FILLINGS_REWRITE_HPP_
#define FILLINGS_REWRITE_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fillings/core.hpp"

namespace fillings {

  // Outcome classification shared by all search-based oracles.
  //  exact            - value certified (for areas: identical at caps L and
  //                     L + 2; for filling lengths: found at some cap, which
  //                     is minimal by construction).
  //  lower_bound_only - the search finished without certifying the value;
  //                     with no value it means "1 not reached within the cap".
  //  budget_exceeded  - the state cap was hit before the search finished.
  enum class Status { exact, lower_bound_only, budget_exceeded };

  [[nodiscard]] std::string to_string(Status s);

  struct OracleResult {
    std::optional<std::size_t> value;
    Status                     status = Status::exact;

    bool operator==(OracleResult const&) const = default;
  };

  struct SearchBudget {
    // Cap L on the length of intermediate words. Searches use
    // max(L, |w|) so that the input word itself is admissible.
    std::size_t max_word_length = 10;
    // Cap on the number of stored search states.
    std::size_t max_states = 20'000'000;
  };

  enum class RuleOrigin { relator, free_group };

  struct Rule {
    Word       lhs;
    Word       rhs;
    RuleOrigin origin;
  };

  // The symmetric rewrite system U_R ∪ U_FG over A^{±1}:
  //   U_R  = { u -> v : u v^-1 ∈ R^{±1} }
  //   U_FG = { x x^-1 -> 1, 1 -> x x^-1 : x ∈ A^{±1} }
  // Rules are stored relator rules first, then the free-group moves.
  class RewriteSystem {
   public:
    explicit RewriteSystem(Presentation p);

    [[nodiscard]] Presentation const& presentation() const noexcept {
      return _presentation;
    }
    [[nodiscard]] std::vector<Rule> const& rules() const noexcept {
      return _rules;
    }
    [[nodiscard]] std::size_t num_relator_rules() const noexcept {
      return _num_relator_rules;
    }
    // R ∪ R^-1 without literal duplicates.
    [[nodiscard]] std::vector<Word> const& relators_pm() const noexcept {
      return _relators_pm;
    }

   private:
    Presentation      _presentation;
    std::vector<Word> _relators_pm;
    std::vector<Rule> _rules;
    std::size_t       _num_relator_rules;
  };

  struct RewriteStep {
    std::size_t rule;      // index into RewriteSystem::rules()
    std::size_t position;  // offset of the rewritten factor in the input
    Word        result;
    RuleOrigin  origin;
  };

  // Every single-step rewrite of w, rule by rule, position by position.
  [[nodiscard]] std::vector<RewriteStep>
  apply_rule_positions(Word const& w, RewriteSystem const& rs);

  // Minimum number of U_R applications rewriting w to 1 (U_FG moves are
  // free), computed by 0-1 BFS at caps L and L + 2.
  [[nodiscard]] OracleResult min_isoperimetric(Word const&          w,
                                               RewriteSystem const& rs,
                                               SearchBudget const&  budget);

  // Minimum over rewrite sequences w -> ... -> 1 of the longest word in the
  // sequence (w included); binary search on the cap with a reachability
  // search at each cap.
  [[nodiscard]] OracleResult filling_length(Word const&          w,
                                            RewriteSystem const& rs,
                                            SearchBudget const&  budget);

  struct TrivialityResult {
    bool   trivial;
    Status status;
  };

  // Semidecision: true (exact) when 1 is reachable within the cap; false
  // otherwise, flagged lower_bound_only or budget_exceeded.
  [[nodiscard]] TrivialityResult is_trivial(Word const&          w,
                                            RewriteSystem const& rs,
                                            SearchBudget const&  budget);

  namespace detail {
    class WordSpace;
    class RuleTrie;
  }  // namespace detail

  // Single-source tables over every word of length <= cap, computed from
  // the empty word outwards. The rewrite graph is undirected, so distances
  // from 1 are distances to 1.
  class RewriteTable {
   public:
    // Throws ResourceLimitExceeded if the word space has more than
    // max_states elements.
    RewriteTable(RewriteSystem const& rs, std::size_t cap, std::size_t max_states);
    ~RewriteTable();
    RewriteTable(RewriteTable&&) noexcept;
    RewriteTable& operator=(RewriteTable&&) noexcept;

    [[nodiscard]] std::size_t cap() const noexcept {
      return _cap;
    }
    [[nodiscard]] std::size_t num_states() const noexcept;
    // Number of U_R steps needed within the cap, or nullopt.
    [[nodiscard]] std::optional<std::size_t> area(Word const& w) const;
    // Least cap c <= cap() at which w reaches 1, or nullopt.
    [[nodiscard]] std::optional<std::size_t> filling(Word const& w) const;
    [[nodiscard]] bool reachable(Word const& w) const {
      return area(w).has_value();
    }

   private:
    std::size_t                         _cap;
    std::unique_ptr<detail::WordSpace>  _space;
    std::vector<std::uint16_t>          _area;
    std::vector<std::uint8_t>           _filling;
  };

  // Pair of tables at caps L and L + 2, answering with the same exactness
  // protocol as min_isoperimetric.
  class RewriteOracle {
   public:
    RewriteOracle(RewriteSystem const& rs, SearchBudget const& budget);

    [[nodiscard]] std::size_t cap() const noexcept {
      return _cap;
    }
    [[nodiscard]] OracleResult area(Word const& w) const;
    [[nodiscard]] OracleResult filling(Word const& w) const;
    [[nodiscard]] TrivialityResult trivial(Word const& w) const;

   private:
    RewriteSystem                 _rs;
    SearchBudget                  _budget;
    std::size_t                   _cap;
    std::optional<RewriteTable>   _low;
    std::optional<RewriteTable>   _high;
  };

}  // namespace fillings

#endif  // FILLINGS_REWRITE_HPP_
