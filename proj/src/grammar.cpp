#include "fillings/grammar.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

#include "fillings/errors.hpp"

namespace fillings {

  ////////////////////////////////////////////////////////////////////////
  // Pda
  ////////////////////////////////////////////////////////////////////////

  std::string Pda::state_name(state_type s) const {
    auto const&       st = _states[s];
    std::ostringstream out;
    out << '(' << st.nfa_state << ',';
    if (st.stage == PdaState::kFinalStage) {
      out << 'f';
    } else {
      out << 's' << st.stage;
    }
    out << ')';
    return out.str();
  }

  std::string Pda::symbol_name(symbol_type c) const {
    if (c == bottom()) {
      return "z";
    }
    return to_string(Letter::from_code(c));
  }

  bool Pda::accepts(Word const& z) const {
    using Config = std::pair<state_type, std::vector<symbol_type>>;
    std::vector<std::vector<std::size_t>> by_state(_states.size());
    for (std::size_t i = 0; i < _transitions.size(); ++i) {
      by_state[_transitions[i].from].push_back(i);
    }
    auto apply = [](PdaTransition const& t, std::vector<symbol_type> const& stack) {
      std::vector<symbol_type> out(stack.begin(), stack.end() - 1);
      for (auto it = t.push.rbegin(); it != t.push.rend(); ++it) {
        out.push_back(*it);
      }
      return out;
    };
    // stacks are stored bottom first
    auto closure = [&](std::set<Config> current) {
      std::vector<Config> todo(current.begin(), current.end());
      while (!todo.empty()) {
        Config cfg = std::move(todo.back());
        todo.pop_back();
        if (cfg.second.empty()) {
          continue;
        }
        for (std::size_t i : by_state[cfg.first]) {
          auto const& t = _transitions[i];
          if (t.input || t.pop != cfg.second.back()) {
            continue;
          }
          Config next{t.to, apply(t, cfg.second)};
          if (current.insert(next).second) {
            todo.push_back(std::move(next));
          }
        }
      }
      return current;
    };
    std::set<Config> current = closure({Config{start(), {bottom()}}});
    for (Letter x : z) {
      std::set<Config> next;
      for (auto const& [s, stack] : current) {
        if (stack.empty()) {
          continue;
        }
        for (std::size_t i : by_state[s]) {
          auto const& t = _transitions[i];
          if (t.input == x && t.pop == stack.back()) {
            next.emplace(t.to, apply(t, stack));
          }
        }
      }
      current = closure(std::move(next));
      if (current.empty()) {
        return false;
      }
    }
    return std::any_of(current.begin(), current.end(), [](Config const& c) { return c.second.empty(); });
  }

  Pda build_product_pda(Word const& w, SymmetricNfa const& nfa) {
    Pda         pda;
    std::size_t n       = nfa.graph().num_generators();
    pda._num_generators = n;
    pda._target         = red(w);
    auto const m        = static_cast<std::uint32_t>(pda._target.size());
    pda._num_q1         = nfa.num_states();
    for (vertex_type q = 0; q < nfa.num_states(); ++q) {
      pda._states.push_back({q, m});
    }
    // Q2: (1, s_{m-1}), ..., (1, s_0), (1, f)
    auto q2 = [&](std::uint32_t stage) -> state_type {
      if (stage == PdaState::kFinalStage) {
        return static_cast<state_type>(pda._num_q1 + m);
      }
      return static_cast<state_type>(pda._num_q1 + (m - 1 - stage));
    };
    for (std::uint32_t i = m; i-- > 0;) {
      pda._states.push_back({LabeledGraph::origin(), i});
    }
    pda._states.push_back({LabeledGraph::origin(), PdaState::kFinalStage});

    symbol_type const z = pda.bottom();
    for (vertex_type q = 0; q < nfa.num_states(); ++q) {
      for (std::uint32_t code = 0; code < 2 * n; ++code) {
        Letter a = Letter::from_code(code);
        for (vertex_type p : nfa.next(q, a)) {
          pda._transitions.push_back({q, a, a.inverse().code(), p, {}});
          for (symbol_type c = 0; c <= z; ++c) {
            if (c != a.inverse().code()) {
              pda._transitions.push_back({q, a, c, p, {a.code(), c}});
            }
          }
        }
      }
    }
    // phase 2: pop v_m, ..., v_1 without input, then z
    state_type from = LabeledGraph::origin();
    for (std::uint32_t i = m; i >= 1; --i) {
      state_type to = q2(i - 1);
      pda._transitions.push_back({from, std::nullopt, pda._target[i - 1].code(), to, {}});
      from = to;
    }
    pda._transitions.push_back({from, std::nullopt, z, q2(PdaState::kFinalStage), {}});
    return pda;
  }

  Pda build_dyck_pda(Word const& w, std::size_t num_generators) {
    LabeledGraph one(num_generators);
    for (generator_type a = 0; a < num_generators; ++a) {
      one.add_edge(LabeledGraph::origin(), a, LabeledGraph::origin());
    }
    return build_product_pda(w, SymmetricNfa(std::move(one)));
  }

  ////////////////////////////////////////////////////////////////////////
  // Cfg
  ////////////////////////////////////////////////////////////////////////

  std::size_t Cfg::max_rhs_length() const {
    std::size_t out = 0;
    for (auto const& r : rules) {
      out = std::max(out, r.rhs.size());
    }
    return out;
  }

  std::string Cfg::dump() const {
    std::ostringstream out;
    for (auto const& r : rules) {
      out << names[r.lhs] << " ->";
      if (r.rhs.empty()) {
        out << " 1";
      }
      for (auto const& s : r.rhs) {
        out << ' ' << (s.terminal ? to_string(Letter::from_code(s.id)) : names[s.id]);
      }
      out << '\n';
    }
    return out.str();
  }

  namespace {

    std::string triple_name(Pda const& pda, state_type p, symbol_type c, state_type q) {
      return "[" + pda.state_name(p) + "," + pda.symbol_name(c) + "," + pda.state_name(q) + "]";
    }

    GSymbol terminal(Letter x) {
      return {true, x.code()};
    }

    GSymbol nonterminal(std::uint32_t id) {
      return {false, id};
    }

  }  // namespace

  Cfg pda_to_cfg(Pda const& pda, std::size_t max_rules) {
    std::size_t const Q     = pda.num_states();
    std::size_t const G     = pda.num_stack_symbols();
    std::size_t       count = Q;
    for (auto const& t : pda.transitions()) {
      count += t.push.empty() ? 1 : Q * Q;
      if (count > max_rules) {
        throw ResourceLimitExceeded("grammar exceeds the rule ceiling of " + std::to_string(max_rules));
      }
    }

    Cfg g;
    g.num_generators = pda.num_generators();
    g.nonterminals.push_back({true, 0, 0, 0});
    g.names.emplace_back("S");
    g.start = 0;
    std::unordered_map<std::uint64_t, std::uint32_t> ids;
    auto id = [&](state_type p, symbol_type c, state_type q) {
      std::uint64_t key = (static_cast<std::uint64_t>(p) * G + c) * Q + q;
      auto [it, fresh]  = ids.try_emplace(key, static_cast<std::uint32_t>(g.nonterminals.size()));
      if (fresh) {
        g.nonterminals.push_back({false, p, c, q});
        g.names.push_back(triple_name(pda, p, c, q));
      }
      return it->second;
    };

    g.rules.reserve(count);
    for (state_type q = 0; q < Q; ++q) {
      g.rules.push_back({g.start, {nonterminal(id(pda.start(), pda.bottom(), q))}, std::nullopt});
    }
    for (auto const& t : pda.transitions()) {
      std::optional<NfaStep> step;
      std::vector<GSymbol>   head;
      if (t.input) {
        step = NfaStep{pda.state(t.from).nfa_state, *t.input, pda.state(t.to).nfa_state};
        head.push_back(terminal(*t.input));
      }
      if (t.push.empty()) {
        g.rules.push_back({id(t.from, t.pop, t.to), head, step});
      } else if (t.push.size() == 1) {
        for (state_type q = 0; q < Q; ++q) {
          auto rhs = head;
          rhs.push_back(nonterminal(id(t.to, t.push[0], q)));
          g.rules.push_back({id(t.from, t.pop, q), std::move(rhs), step});
        }
      } else if (t.push.size() == 2) {
        for (state_type r = 0; r < Q; ++r) {
          for (state_type q = 0; q < Q; ++q) {
            auto rhs = head;
            rhs.push_back(nonterminal(id(t.to, t.push[0], r)));
            rhs.push_back(nonterminal(id(r, t.push[1], q)));
            g.rules.push_back({id(t.from, t.pop, q), std::move(rhs), step});
          }
        }
      } else {
        throw InvalidArgument("transitions may push at most two symbols");
      }
    }
    return g;
  }

  Cfg simplify_cfg(Cfg const& g, Pda const& pda) {
    std::size_t const N = g.nonterminals.size();
    std::optional<std::uint32_t> new_start;
    for (std::uint32_t i = 0; i < N; ++i) {
      auto const& nt = g.nonterminals[i];
      if (!nt.is_start && nt.p == pda.start() && nt.c == pda.bottom() && nt.q == pda.final_state()) {
        new_start = i;
      }
    }
    Cfg out;
    out.num_generators = g.num_generators;
    if (!new_start) {
      out.nonterminals.push_back(g.nonterminals[0]);
      out.names.push_back(g.names[0]);
      return out;
    }

    // nonterminals generating exactly {1}
    std::vector<char> eps_only(N, 0);
    {
      std::vector<char> has_rule(N, 0);
      for (auto const& r : g.rules) {
        has_rule[r.lhs] = 1;
      }
      bool changed = true;
      while (changed) {
        changed = false;
        std::vector<char> blocked(N, 0);
        for (auto const& r : g.rules) {
          for (auto const& s : r.rhs) {
            if (s.terminal || !eps_only[s.id]) {
              blocked[r.lhs] = 1;
            }
          }
        }
        for (std::uint32_t i = 0; i < N; ++i) {
          if (!eps_only[i] && has_rule[i] && !blocked[i] && i != *new_start && !g.nonterminals[i].is_start) {
            eps_only[i] = 1;
            changed     = true;
          }
        }
      }
    }

    std::vector<char> alive(N, 1);
    for (std::uint32_t i = 0; i < N; ++i) {
      auto const& nt = g.nonterminals[i];
      if (eps_only[i] || nt.is_start || (!pda.in_q1(nt.p) && pda.in_q1(nt.q))) {
        alive[i] = 0;
      }
    }
    std::vector<CfgRule> rules;
    for (auto const& r : g.rules) {
      if (!alive[r.lhs]) {
        continue;
      }
      CfgRule nr{r.lhs, {}, r.step};
      bool    keep = true;
      for (auto const& s : r.rhs) {
        if (s.terminal) {
          nr.rhs.push_back(s);
        } else if (!eps_only[s.id]) {
          keep = keep && alive[s.id];
          nr.rhs.push_back(s);
        }
      }
      if (keep) {
        rules.push_back(std::move(nr));
      }
    }

    // productive
    std::vector<char> productive(N, 0);
    for (bool changed = true; changed;) {
      changed = false;
      for (auto const& r : rules) {
        if (productive[r.lhs]) {
          continue;
        }
        bool ok = std::all_of(r.rhs.begin(), r.rhs.end(), [&](GSymbol s) { return s.terminal || productive[s.id]; });
        if (ok) {
          productive[r.lhs] = 1;
          changed           = true;
        }
      }
    }
    std::erase_if(rules, [&](CfgRule const& r) {
      return !productive[r.lhs]
             || std::any_of(r.rhs.begin(), r.rhs.end(), [&](GSymbol s) { return !s.terminal && !productive[s.id]; });
    });

    // reachable
    std::vector<std::vector<std::size_t>> by_lhs(N);
    for (std::size_t i = 0; i < rules.size(); ++i) {
      by_lhs[rules[i].lhs].push_back(i);
    }
    std::vector<char>          reachable(N, 0);
    std::vector<std::uint32_t> todo{*new_start};
    reachable[*new_start] = 1;
    while (!todo.empty()) {
      auto x = todo.back();
      todo.pop_back();
      for (auto i : by_lhs[x]) {
        for (auto const& s : rules[i].rhs) {
          if (!s.terminal && !reachable[s.id]) {
            reachable[s.id] = 1;
            todo.push_back(s.id);
          }
        }
      }
    }

    std::vector<std::uint32_t> renum(N, std::numeric_limits<std::uint32_t>::max());
    auto                       keep_nt = [&](std::uint32_t i) {
      renum[i] = static_cast<std::uint32_t>(out.nonterminals.size());
      out.nonterminals.push_back(g.nonterminals[i]);
      out.names.push_back(g.names[i]);
    };
    keep_nt(*new_start);
    for (std::uint32_t i = 0; i < N; ++i) {
      if (i != *new_start && reachable[i]) {
        keep_nt(i);
      }
    }
    out.start = 0;
    std::set<std::pair<std::uint32_t, std::vector<GSymbol>>> seen;
    for (auto const& r : rules) {
      if (!reachable[r.lhs]) {
        continue;
      }
      CfgRule nr{renum[r.lhs], r.rhs, r.step};
      for (auto& s : nr.rhs) {
        if (!s.terminal) {
          s.id = renum[s.id];
        }
      }
      if (seen.emplace(nr.lhs, nr.rhs).second) {
        out.rules.push_back(std::move(nr));
      }
    }
    return out;
  }

  bool has_simplified_shape(Cfg const& g, Pda const& pda) {
    return std::all_of(g.nonterminals.begin(), g.nonterminals.end(), [&](Nonterminal const& nt) {
      return nt.is_start || pda.in_q1(nt.p);
    });
  }

  std::size_t count_q1_q1(Cfg const& g, Pda const& pda) {
    return std::count_if(g.nonterminals.begin(), g.nonterminals.end(), [&](Nonterminal const& nt) {
      return !nt.is_start && pda.in_q1(nt.p) && pda.in_q1(nt.q);
    });
  }

  ////////////////////////////////////////////////////////////////////////
  // CYK
  ////////////////////////////////////////////////////////////////////////

  CykParser::CykParser(Cfg const& g) : _g(&g), _nullable(g.nonterminals.size(), 0), _by_lhs(g.nonterminals.size()) {
    for (std::size_t i = 0; i < g.rules.size(); ++i) {
      _by_lhs[g.rules[i].lhs].push_back(i);
    }
    for (bool changed = true; changed;) {
      changed = false;
      for (auto const& r : g.rules) {
        if (_nullable[r.lhs]) {
          continue;
        }
        bool ok = std::all_of(r.rhs.begin(), r.rhs.end(), [&](GSymbol s) { return !s.terminal && _nullable[s.id]; });
        if (ok) {
          _nullable[r.lhs] = 1;
          changed          = true;
        }
      }
    }
  }

  bool CykParser::member(Word const& w) const {
    std::size_t const n = w.size();
    std::size_t const N = _g->nonterminals.size();
    // table[i][j]: nonterminals deriving w[i, j)
    std::vector<std::vector<std::vector<char>>> table(n + 1, std::vector<std::vector<char>>(n + 1));
    for (std::size_t i = 0; i <= n; ++i) {
      table[i][i] = _nullable;
    }
    std::function<bool(std::vector<GSymbol> const&, std::size_t, std::size_t, std::size_t)> match
        = [&](std::vector<GSymbol> const& rhs, std::size_t k, std::size_t i, std::size_t j) -> bool {
      if (k == rhs.size()) {
        return i == j;
      }
      GSymbol s = rhs[k];
      if (s.terminal) {
        return i < j && w[i].code() == s.id && match(rhs, k + 1, i + 1, j);
      }
      for (std::size_t mid = i; mid <= j; ++mid) {
        if (table[i][mid][s.id] && match(rhs, k + 1, mid, j)) {
          return true;
        }
      }
      return false;
    };
    for (std::size_t len = 1; len <= n; ++len) {
      for (std::size_t i = 0; i + len <= n; ++i) {
        std::size_t j    = i + len;
        auto&       cell = table[i][j];
        cell.assign(N, 0);
        for (bool changed = true; changed;) {
          changed = false;
          for (auto const& r : _g->rules) {
            if (!cell[r.lhs] && match(r.rhs, 0, i, j)) {
              cell[r.lhs] = 1;
              changed     = true;
            }
          }
        }
      }
    }
    return table[0][n][_g->start] != 0;
  }

  ////////////////////////////////////////////////////////////////////////
  // Shortest words
  ////////////////////////////////////////////////////////////////////////

  Word ParseTree::yield() const {
    Word                                out;
    std::function<void(std::size_t)> go = [&](std::size_t v) {
      auto const& node = nodes[v];
      if (node.symbol.terminal) {
        out.push_back(Letter::from_code(node.symbol.id));
      }
      for (auto c : node.children) {
        go(c);
      }
    };
    if (!nodes.empty()) {
      go(0);
    }
    return out;
  }

  std::vector<NfaStep> ParseTree::steps(Cfg const& g) const {
    std::vector<NfaStep>             out;
    std::function<void(std::size_t)> go = [&](std::size_t v) {
      auto const& node = nodes[v];
      for (auto c : node.children) {
        if (nodes[c].symbol.terminal && node.rule && g.rules[*node.rule].step) {
          out.push_back(*g.rules[*node.rule].step);
        }
        go(c);
      }
    };
    if (!nodes.empty()) {
      go(0);
    }
    return out;
  }

  bool ParseTree::has_no_repeated_nonterminal() const {
    std::multiset<std::uint32_t>     path;
    std::function<bool(std::size_t)> go = [&](std::size_t v) {
      auto const& node = nodes[v];
      if (node.symbol.terminal) {
        return true;
      }
      if (path.count(node.symbol.id) != 0) {
        return false;
      }
      path.insert(node.symbol.id);
      bool ok = std::all_of(node.children.begin(), node.children.end(), go);
      path.erase(path.find(node.symbol.id));
      return ok;
    };
    return nodes.empty() || go(0);
  }

  std::optional<ShortestWord> shortest_word(Cfg const& g) {
    constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
    std::size_t const       N    = g.nonterminals.size();
    std::size_t const       M    = g.rules.size();

    std::vector<std::uint64_t>            cost(N, kInf);
    std::vector<std::size_t>              rank(N, kInf);
    std::vector<std::size_t>              remaining(M, 0);
    std::vector<std::uint64_t>            sum(M, 0);
    std::vector<std::vector<std::size_t>> uses(N);
    using Item = std::pair<std::uint64_t, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;

    auto offer = [&](std::uint32_t x, std::uint64_t c) {
      if (c < cost[x]) {
        cost[x] = c;
        queue.emplace(c, x);
      }
    };
    for (std::size_t i = 0; i < M; ++i) {
      for (auto const& s : g.rules[i].rhs) {
        if (s.terminal) {
          ++sum[i];
        } else {
          ++remaining[i];
          uses[s.id].push_back(i);
        }
      }
      if (remaining[i] == 0) {
        offer(g.rules[i].lhs, sum[i]);
      }
    }
    std::size_t settled = 0;
    while (!queue.empty()) {
      auto [c, x] = queue.top();
      queue.pop();
      if (rank[x] != kInf || c != cost[x]) {
        continue;
      }
      rank[x] = settled++;
      for (auto i : uses[x]) {
        sum[i] = sum[i] > kInf - c ? kInf : sum[i] + c;
        if (--remaining[i] == 0) {
          offer(g.rules[i].lhs, sum[i]);
        }
      }
    }
    if (rank[g.start] == kInf) {
      return std::nullopt;
    }

    std::vector<std::optional<std::size_t>> best(N);
    for (std::size_t i = 0; i < M; ++i) {
      auto const& r = g.rules[i];
      if (best[r.lhs] || rank[r.lhs] == kInf) {
        continue;
      }
      std::uint64_t total = 0;
      bool          ok    = true;
      for (auto const& s : r.rhs) {
        if (s.terminal) {
          ++total;
        } else if (rank[s.id] < rank[r.lhs]) {
          total += cost[s.id];
        } else {
          ok = false;
        }
      }
      if (ok && total == cost[r.lhs]) {
        best[r.lhs] = i;
      }
    }

    ParseTree                                 tree;
    std::function<std::size_t(GSymbol)> build = [&](GSymbol s) -> std::size_t {
      std::size_t v = tree.nodes.size();
      tree.nodes.push_back({s, std::nullopt, {}});
      if (!s.terminal) {
        std::size_t r      = *best[s.id];
        tree.nodes[v].rule = r;
        for (auto const& child : g.rules[r].rhs) {
          std::size_t c = build(child);
          tree.nodes[v].children.push_back(c);
        }
      }
      return v;
    };
    build(nonterminal(g.start));
    Word witness = tree.yield();
    return ShortestWord{witness.size(), std::move(witness), std::move(tree)};
  }

  bool rightmost_path_fact(ParseTree const& t, Cfg const& g, Pda const& pda) {
    if (t.nodes.empty()) {
      return true;
    }
    std::vector<char> on_path(t.nodes.size(), 0);
    for (std::size_t v = 0;;) {
      on_path[v] = 1;
      if (t.nodes[v].children.empty()) {
        break;
      }
      v = t.nodes[v].children.back();
    }
    for (std::size_t v = 0; v < t.nodes.size(); ++v) {
      auto const& s = t.nodes[v].symbol;
      if (s.terminal) {
        continue;
      }
      auto const& nt = g.nonterminals[s.id];
      if (!nt.is_start && pda.in_q1(nt.p) && !pda.in_q1(nt.q) && !on_path[v]) {
        return false;
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Path decomposition
  ////////////////////////////////////////////////////////////////////////

  Word PathFactor::word() const {
    return concat(concat(conjugator, loop), invert(conjugator));
  }

  std::vector<PathFactor> decompose_tree_run(Presentation const&         p,
                                             std::size_t                 radius,
                                             std::vector<NfaStep> const& steps) {
    // Vertex layout of build_tree_nfa: tree vertices in enumeration order,
    // then the interior vertices of each loop, loop by loop.
    auto const tree = reduced_words_up_to(p.num_generators(), radius);
    struct Interior {
      vertex_type   base;
      std::size_t   relator;
      std::size_t   position;  // 1 .. |r| - 1
    };
    std::vector<Interior> interior;
    for (vertex_type v = 0; v < tree.size(); ++v) {
      for (std::size_t i = 0; i < p.relators().size(); ++i) {
        for (std::size_t k = 1; k < p.relators()[i].size(); ++k) {
          interior.push_back({v, i, k});
        }
      }
    }
    auto const T     = static_cast<vertex_type>(tree.size());
    auto       fail  = [] { throw InvalidArgument("steps are not a run of the tree NFA"); };
    auto       check = [&](bool ok) {
      if (!ok) {
        fail();
      }
    };

    std::vector<PathFactor> out;
    vertex_type             at = LabeledGraph::origin();
    for (auto const& s : steps) {
      check(s.from == at && s.from < T + interior.size() && s.to < T + interior.size());
      at = s.to;
      if (s.from < T && s.to < T) {
        if (s.from != s.to) {
          continue;
        }
        bool found = false;
        for (auto const& r : p.relators()) {
          if (r.size() == 1 && (r[0] == s.letter || r[0] == s.letter.inverse())) {
            out.push_back({tree[s.from], r[0] == s.letter ? r : invert(r)});
            found = true;
            break;
          }
        }
        check(found);
        continue;
      }
      auto const& in     = interior[(s.from >= T ? s.from : s.to) - T];
      auto const& r      = p.relators()[in.relator];
      std::size_t k      = r.size();
      auto        pos_of = [&](vertex_type v) -> std::vector<std::size_t> {
        if (v == in.base) {
          return {0, k};
        }
        if (v >= T) {
          auto const& o = interior[v - T];
          if (o.base == in.base && o.relator == in.relator) {
            return {o.position};
          }
        }
        return {};
      };
      bool matched = false;
      for (std::size_t i : pos_of(s.from)) {
        for (std::size_t j : pos_of(s.to)) {
          if (matched) {
            break;
          }
          if (j == i + 1 && r[i] == s.letter) {
            matched = true;
            if (j == k) {
              out.push_back({tree[in.base], r});
            }
          } else if (i == j + 1 && r[j] == s.letter.inverse()) {
            matched = true;
            if (i == k) {
              out.push_back({tree[in.base], invert(r)});
            }
          }
        }
      }
      check(matched);
    }
    check(at == LabeledGraph::origin());
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Experiment
  ////////////////////////////////////////////////////////////////////////

  bool BoundReport::ok() const {
    return ell.has_value() && witness_ok && decomposition_ok && area_le_ell != false && ell_le_bound && no_repeats
           && rightmost_fact;
  }

  std::vector<BoundReport> double_exp_experiment(Presentation const&     p,
                                                 std::size_t             n_max,
                                                 TrivialityOracle const& oracle,
                                                 GrammarOptions const&   options) {
    RewriteOracle                             area(RewriteSystem(p), options.budget);
    std::map<std::size_t, SymmetricNfa>       trees;
    std::vector<BoundReport>                  out;
    for (std::size_t n = 0; n <= n_max; ++n) {
      auto dn = measure_isodiametric(p, n, oracle, options.max_radius, options.limits);
      if (dn.status != Status::exact) {
        throw ResourceLimitExceeded("d(" + std::to_string(n) + ") could not be measured");
      }
      std::size_t d = *dn.value;
      for_each_word(p.num_generators(), n, [&](Word const& w) {
        if (!oracle(w)) {
          return;
        }
        BoundReport row;
        row.word  = w;
        row.n     = n;
        row.d     = d;
        row.area  = area.area(w);
        row.bound = double_exp_bound(p, d);
        auto it   = trees.find(d);
        if (it == trees.end()) {
          it = trees.emplace(d, build_tree_nfa(p, d, options.limits)).first;
        }
        SymmetricNfa const& nfa = it->second;
        Pda const           pda = build_product_pda(w, nfa);
        Cfg const           g   = simplify_cfg(pda_to_cfg(pda, options.max_rules), pda);
        row.num_nonterminals    = g.nonterminals.size();
        row.num_rules           = g.rules.size();
        auto sw                 = shortest_word(g);
        if (sw) {
          row.ell        = sw->length;
          row.witness    = sw->witness;
          row.witness_ok = CykParser(g).member(sw->witness) && red(sw->witness) == red(w) && nfa.accepts(sw->witness);
          row.no_repeats = sw->tree.has_no_repeated_nonterminal();
          row.rightmost_fact = rightmost_path_fact(sw->tree, g, pda);
          try {
            auto factors    = decompose_tree_run(p, d, sw->tree.steps(g));
            row.num_factors = factors.size();
            Word product;
            for (auto const& f : factors) {
              product = concat(product, f.word());
            }
            row.decomposition_ok = red(product) == red(sw->witness) && factors.size() <= sw->length;
          } catch (InvalidArgument const&) {
            row.decomposition_ok = false;
          }
          if (row.area.status == Status::exact) {
            row.area_le_ell = *row.area.value <= sw->length;
          }
          row.ell_le_bound = row.bound.admits(sw->length, n);
        }
        out.push_back(std::move(row));
      });
    }
    return out;
  }

  std::string bound_csv(std::vector<BoundReport> const& rows) {
    std::ostringstream out;
    out << "word,n,d,ell,witness,P_min,P_status,C,c,bound,witness_ok,decomposition_ok,factors,"
           "P_le_ell,ell_le_bound\n";
    auto tf = [](bool b) { return b ? "true" : "false"; };
    for (auto const& r : rows) {
      out << to_string(r.word) << ',' << r.n << ',' << r.d << ',';
      if (r.ell) {
        out << *r.ell;
      }
      out << ',' << (r.ell ? to_string(r.witness) : "") << ',';
      if (r.area.value) {
        out << *r.area.value;
      }
      out << ',' << to_string(r.area.status) << ',' << r.bound.C << ',' << r.bound.c << ',' << r.bound.text(r.n) << ','
          << tf(r.witness_ok) << ',' << tf(r.decomposition_ok) << ',' << r.num_factors << ','
          << (r.area_le_ell ? tf(*r.area_le_ell) : "") << ',' << tf(r.ell_le_bound) << '\n';
    }
    return out.str();
  }

}  // namespace fillings
