#ifndef FILLINGS_GRAMMAR_HPP_
#define FILLINGS_GRAMMAR_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fillings/automata.hpp"
#include "fillings/core.hpp"
#include "fillings/fillings.hpp"
#include "fillings/rewrite.hpp"

namespace fillings {

  ////////////////////////////////////////////////////////////////////////
  // Pushdown automata
  ////////////////////////////////////////////////////////////////////////

  using state_type  = std::uint32_t;
  using symbol_type = std::uint32_t;  // stack symbol: letter code, or 2|A| for z

  // State (q, s_i) of the product machine; stage == m is the reading
  // stage s_m, stage == kFinalStage is f.
  struct PdaState {
    static constexpr std::uint32_t kFinalStage = 0xffffffffu;

    vertex_type   nfa_state;
    std::uint32_t stage;
  };

  struct PdaTransition {
    state_type               from;
    std::optional<Letter>    input;  // nullopt: empty-input move
    symbol_type              pop;
    state_type               to;
    std::vector<symbol_type> push;  // front ends up on top
  };

  // Accepts by empty stack. States 0 .. |Q_Λ| - 1 are Q1 = Q_Λ × {s_m}
  // (state q is (q, s_m)); the rest are Q2 = {1} × {s_{m-1}, ..., s_0, f}.
  class Pda {
   public:
    [[nodiscard]] std::size_t num_generators() const noexcept {
      return _num_generators;
    }
    [[nodiscard]] symbol_type bottom() const noexcept {
      return static_cast<symbol_type>(2 * _num_generators);
    }
    [[nodiscard]] std::size_t num_stack_symbols() const noexcept {
      return 2 * _num_generators + 1;
    }
    [[nodiscard]] std::size_t num_states() const noexcept {
      return _states.size();
    }
    [[nodiscard]] std::size_t num_q1_states() const noexcept {
      return _num_q1;
    }
    [[nodiscard]] bool in_q1(state_type s) const noexcept {
      return s < _num_q1;
    }
    [[nodiscard]] PdaState const& state(state_type s) const {
      return _states[s];
    }
    [[nodiscard]] state_type start() const noexcept {
      return 0;
    }
    [[nodiscard]] state_type final_state() const noexcept {
      return static_cast<state_type>(_states.size() - 1);
    }
    [[nodiscard]] std::vector<PdaTransition> const& transitions() const noexcept {
      return _transitions;
    }
    // red(w) = v_1 ... v_m
    [[nodiscard]] Word const& target() const noexcept {
      return _target;
    }
    [[nodiscard]] std::string state_name(state_type s) const;
    [[nodiscard]] std::string symbol_name(symbol_type c) const;

    [[nodiscard]] bool accepts(Word const& z) const;

   private:
    friend Pda build_product_pda(Word const& w, SymmetricNfa const& nfa);

    std::size_t                _num_generators = 0;
    std::size_t                _num_q1         = 0;
    std::vector<PdaState>      _states;
    std::vector<PdaTransition> _transitions;
    Word                       _target;
  };

  // Π_w: accepts exactly the words z with red(z) = red(w).
  [[nodiscard]] Pda build_dyck_pda(Word const& w, std::size_t num_generators);
  // Π: accepts [w]_FG ∩ L(nfa).
  [[nodiscard]] Pda build_product_pda(Word const& w, SymmetricNfa const& nfa);

  ////////////////////////////////////////////////////////////////////////
  // Context-free grammars
  ////////////////////////////////////////////////////////////////////////

  struct GSymbol {
    bool          terminal;
    std::uint32_t id;  // letter code or nonterminal index

    auto operator<=>(GSymbol const&) const = default;
  };

  // Phase-1 move (q, a, p) of the NFA that a rule's terminal stands for.
  struct NfaStep {
    vertex_type from;
    Letter      letter;
    vertex_type to;
  };

  struct CfgRule {
    std::uint32_t          lhs;
    std::vector<GSymbol>   rhs;
    std::optional<NfaStep> step;
  };

  // Either the start symbol S or a triple [p, c, q].
  struct Nonterminal {
    bool        is_start;
    state_type  p;
    symbol_type c;
    state_type  q;
  };

  class Cfg {
   public:
    std::size_t              num_generators = 0;
    std::vector<Nonterminal> nonterminals;
    std::vector<std::string> names;
    std::uint32_t            start = 0;
    std::vector<CfgRule>     rules;

    [[nodiscard]] std::size_t max_rhs_length() const;
    // One rule per line: "[p,c,q] -> a [p,c,q] [p,c,q]"; empty right
    // sides print as "1".
    [[nodiscard]] std::string dump() const;
  };

  // Triple construction. Throws ResourceLimitExceeded above max_rules.
  [[nodiscard]] Cfg pda_to_cfg(Pda const& pda, std::size_t max_rules = 4'000'000);

  // Substitutes away nonterminals with only empty rules, makes
  // [(1,s_m), z, (1,f)] the start symbol, drops Q2 × Γ × Q1 nonterminals,
  // and prunes unproductive and unreachable nonterminals.
  [[nodiscard]] Cfg simplify_cfg(Cfg const& g, Pda const& pda);

  // No Q2 × Γ × Q2 or Q2 × Γ × Q1 nonterminal is left.
  [[nodiscard]] bool has_simplified_shape(Cfg const& g, Pda const& pda);
  // Number of Q1 × Γ × Q1 nonterminals.
  [[nodiscard]] std::size_t count_q1_q1(Cfg const& g, Pda const& pda);

  // CYK-style membership test for grammars with empty and unit rules.
  class CykParser {
   public:
    explicit CykParser(Cfg const& g);
    [[nodiscard]] bool member(Word const& w) const;

   private:
    Cfg const*                                     _g;
    std::vector<char>                              _nullable;
    std::vector<std::vector<std::size_t>>          _by_lhs;
  };

  struct ParseNode {
    GSymbol                    symbol;
    std::optional<std::size_t> rule;  // for nonterminals
    std::vector<std::size_t>   children;
  };

  struct ParseTree {
    std::vector<ParseNode> nodes;  // nodes[0] is the root

    [[nodiscard]] Word                 yield() const;
    [[nodiscard]] std::vector<NfaStep> steps(Cfg const& g) const;
    // No nonterminal repeats on any root-to-leaf path.
    [[nodiscard]] bool has_no_repeated_nonterminal() const;
  };

  struct ShortestWord {
    std::size_t length;
    Word        witness;
    ParseTree   tree;
  };

  // Least-length member by Knuth's generalisation of Dijkstra's algorithm.
  // The witness uses, at each nonterminal, the least-index rule of minimum
  // cost among those whose nonterminals were settled before it.
  [[nodiscard]] std::optional<ShortestWord> shortest_word(Cfg const& g);

  // Every Q1 × Γ × Q2 node of the tree lies on the rightmost root path.
  [[nodiscard]] bool rightmost_path_fact(ParseTree const& t, Cfg const& g, Pda const& pda);

  ////////////////////////////////////////////////////////////////////////
  // Path decomposition and the bound experiment
  ////////////////////////////////////////////////////////////////////////

  // u · loop · u^-1 with loop = r or r^-1 for a relator r attached at the
  // tree vertex labelled u.
  struct PathFactor {
    Word conjugator;
    Word loop;

    [[nodiscard]] Word word() const;
  };

  // Splits an accepting run of treeΛ_j into conjugated relator loops, one
  // per traversal of a loop's closing edge. Throws InvalidArgument if the
  // steps do not form a closed run from the origin.
  [[nodiscard]] std::vector<PathFactor> decompose_tree_run(Presentation const&         p,
                                                           std::size_t                 radius,
                                                           std::vector<NfaStep> const& steps);

  struct BoundReport {
    Word                       word;
    std::size_t                n;
    std::size_t                d;
    std::optional<std::size_t> ell;
    Word                       witness;
    OracleResult               area;
    DoubleExpBound             bound;
    bool                       witness_ok       = false;  // CYK, red, NFA
    bool                       decomposition_ok = false;
    std::size_t                num_factors      = 0;
    std::optional<bool>        area_le_ell;  // nullopt if area not exact
    bool                       ell_le_bound     = false;
    bool                       no_repeats       = false;
    bool                       rightmost_fact   = false;
    std::size_t                num_nonterminals = 0;
    std::size_t                num_rules        = 0;

    [[nodiscard]] bool ok() const;
  };

  struct GrammarOptions {
    SearchBudget budget;
    std::size_t  max_radius = 12;
    std::size_t  max_rules  = 4'000'000;
    GraphLimits  limits     = GraphLimits::from_environment();
  };

  // One report per oracle-trivial word of length <= n_max (the empty word
  // included), in length-then-lexicographic order.
  [[nodiscard]] std::vector<BoundReport> double_exp_experiment(Presentation const&     p,
                                                               std::size_t             n_max,
                                                               TrivialityOracle const& oracle,
                                                               GrammarOptions const&   options = {});

  [[nodiscard]] std::string bound_csv(std::vector<BoundReport> const& rows);

}  // namespace fillings

#endif  // FILLINGS_GRAMMAR_HPP_
