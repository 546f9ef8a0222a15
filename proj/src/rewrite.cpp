#include "fillings/rewrite.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "fillings/errors.hpp"

namespace fillings {

  std::string to_string(Status s) {
    switch (s) {
      case Status::exact:
        return "exact";
      case Status::lower_bound_only:
        return "lower_bound_only";
      case Status::budget_exceeded:
        return "budget_exceeded";
    }
    return "unknown";
  }

  RewriteSystem::RewriteSystem(Presentation p)
      : _presentation(std::move(p)), _relators_pm(), _rules(), _num_relator_rules(0) {
    std::set<Word> seen_rel;
    for (auto const& r : _presentation.relators()) {
      for (auto const& x : {r, invert(r)}) {
        if (seen_rel.insert(x).second) {
          _relators_pm.push_back(x);
        }
      }
    }
    std::set<std::pair<Word, Word>> seen_rule;
    for (auto const& r : _relators_pm) {
      for (std::size_t k = 0; k <= r.size(); ++k) {
        Word u(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(k));
        Word v = invert(Word(r.begin() + static_cast<std::ptrdiff_t>(k), r.end()));
        if (seen_rule.emplace(u, v).second) {
          _rules.push_back({std::move(u), std::move(v), RuleOrigin::relator});
        }
      }
    }
    _num_relator_rules = _rules.size();
    auto const k = 2 * _presentation.num_generators();
    for (std::uint32_t c = 0; c < k; ++c) {
      Letter x = Letter::from_code(c);
      _rules.push_back({Word{x, x.inverse()}, Word{}, RuleOrigin::free_group});
    }
    for (std::uint32_t c = 0; c < k; ++c) {
      Letter x = Letter::from_code(c);
      _rules.push_back({Word{}, Word{x, x.inverse()}, RuleOrigin::free_group});
    }
  }

  std::vector<RewriteStep> apply_rule_positions(Word const& w, RewriteSystem const& rs) {
    std::vector<RewriteStep> out;
    auto const&              rules = rs.rules();
    for (std::size_t i = 0; i < rules.size(); ++i) {
      auto const& u = rules[i].lhs;
      if (u.size() > w.size()) {
        continue;
      }
      for (std::size_t p = 0; p + u.size() <= w.size(); ++p) {
        if (!std::equal(u.begin(), u.end(), w.begin() + static_cast<std::ptrdiff_t>(p))) {
          continue;
        }
        Word result(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p));
        result.insert(result.end(), rules[i].rhs.begin(), rules[i].rhs.end());
        result.insert(result.end(),
                      w.begin() + static_cast<std::ptrdiff_t>(p + u.size()),
                      w.end());
        out.push_back({i, p, std::move(result), rules[i].origin});
      }
    }
    return out;
  }

  namespace detail {

    constexpr std::size_t kMaxSearchLength = 64;

    // Dense numbering of all words of length <= max_len over k letter codes:
    // shorter words first, then base-k value of the letter sequence.
    class WordSpace {
     public:
      WordSpace(std::size_t k, std::size_t max_len) : _k(k), _max_len(max_len) {
        if (k == 0 || k > 255) {
          throw InvalidArgument("unsupported alphabet size for word search");
        }
        if (max_len >= kMaxSearchLength) {
          throw ResourceLimitExceeded("word-length cap too large for search");
        }
        _offset.assign(max_len + 2, 0);
        _pow.assign(max_len + 1, 1);
        constexpr auto limit = std::numeric_limits<std::uint64_t>::max() / 4;
        for (std::size_t i = 1; i <= max_len; ++i) {
          if (_pow[i - 1] > limit / k) {
            throw ResourceLimitExceeded("word space does not fit in 64-bit indices");
          }
          _pow[i] = _pow[i - 1] * k;
        }
        for (std::size_t len = 0; len <= max_len; ++len) {
          if (_offset[len] > limit - _pow[len]) {
            throw ResourceLimitExceeded("word space does not fit in 64-bit indices");
          }
          _offset[len + 1] = _offset[len] + _pow[len];
        }
      }

      [[nodiscard]] std::uint64_t size() const noexcept {
        return _offset[_max_len + 1];
      }
      [[nodiscard]] std::size_t max_len() const noexcept {
        return _max_len;
      }
      [[nodiscard]] std::size_t alphabet() const noexcept {
        return _k;
      }

      [[nodiscard]] std::uint64_t index(std::uint8_t const* w, std::size_t n) const noexcept {
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < n; ++i) {
          v = v * _k + w[i];
        }
        return _offset[n] + v;
      }

      std::size_t decode(std::uint64_t idx, std::uint8_t* out) const noexcept {
        std::size_t n = 0;
        while (idx >= _offset[n + 1]) {
          ++n;
        }
        std::uint64_t v = idx - _offset[n];
        for (std::size_t i = n; i-- > 0;) {
          out[i] = static_cast<std::uint8_t>(v % _k);
          v /= _k;
        }
        return n;
      }

     private:
      std::size_t                _k;
      std::size_t                _max_len;
      std::vector<std::uint64_t> _offset;
      std::vector<std::uint64_t> _pow;
    };

    // Prefix tree over the left-hand sides of the relator rules. The node
    // for prefix u holds every v with u -> v in U_R, shortest first.
    class RuleTrie {
     public:
      RuleTrie(RewriteSystem const& rs)
          : _k(2 * rs.presentation().num_generators()), _children(), _rhs() {
        new_node();
        for (std::size_t i = 0; i < rs.num_relator_rules(); ++i) {
          auto const& rule = rs.rules()[i];
          std::int32_t node = 0;
          for (Letter x : rule.lhs) {
            auto& child = _children[node * _k + x.code()];
            if (child < 0) {
              std::int32_t fresh = new_node();
              _children[node * _k + x.code()] = fresh;
              node = fresh;
            } else {
              node = child;
            }
          }
          std::vector<std::uint8_t> v;
          for (Letter x : rule.rhs) {
            v.push_back(static_cast<std::uint8_t>(x.code()));
          }
          _rhs[node].push_back(std::move(v));
        }
        for (auto& list : _rhs) {
          std::stable_sort(list.begin(), list.end(), [](auto const& a, auto const& b) {
            return a.size() < b.size();
          });
        }
      }

      [[nodiscard]] std::int32_t child(std::int32_t node, std::uint8_t c) const noexcept {
        return _children[static_cast<std::size_t>(node) * _k + c];
      }
      [[nodiscard]] std::vector<std::vector<std::uint8_t>> const& rhs(std::int32_t node) const {
        return _rhs[static_cast<std::size_t>(node)];
      }

     private:
      std::int32_t new_node() {
        _children.resize(_children.size() + _k, -1);
        _rhs.emplace_back();
        return static_cast<std::int32_t>(_rhs.size() - 1);
      }

      std::size_t                                         _k;
      std::vector<std::int32_t>                           _children;
      std::vector<std::vector<std::vector<std::uint8_t>>> _rhs;
    };

    // Calls f(buffer, length, costly) for every one-step rewrite of w whose
    // result has length <= cap. costly is true for U_R steps.
    template <typename F>
    void for_each_neighbor(RuleTrie const&     trie,
                           std::size_t         k,
                           std::uint8_t const* w,
                           std::size_t         n,
                           std::size_t         cap,
                           F&&                 f) {
      std::array<std::uint8_t, 2 * kMaxSearchLength + 2> buf{};
      // free cancellation
      for (std::size_t i = 0; i + 1 < n; ++i) {
        if ((w[i] ^ 1) == w[i + 1]) {
          std::copy(w, w + i, buf.data());
          std::copy(w + i + 2, w + n, buf.data() + i);
          f(buf.data(), n - 2, false);
        }
      }
      // free insertion
      if (n + 2 <= cap) {
        for (std::size_t pos = 0; pos <= n; ++pos) {
          std::copy(w, w + pos, buf.data());
          std::copy(w + pos, w + n, buf.data() + pos + 2);
          for (std::size_t c = 0; c < k; ++c) {
            buf[pos]     = static_cast<std::uint8_t>(c);
            buf[pos + 1] = static_cast<std::uint8_t>(c ^ 1);
            f(buf.data(), n + 2, false);
          }
        }
      }
      // relator rules u -> v, u matched as a factor starting at i
      for (std::size_t i = 0; i <= n; ++i) {
        std::int32_t node = 0;
        std::size_t  len  = 0;
        while (true) {
          for (auto const& v : trie.rhs(node)) {
            std::size_t out_len = n - len + v.size();
            if (out_len > cap) {
              break;
            }
            std::copy(w, w + i, buf.data());
            std::copy(v.begin(), v.end(), buf.data() + i);
            std::copy(w + i + len, w + n, buf.data() + i + v.size());
            f(buf.data(), out_len, true);
          }
          if (i + len >= n) {
            break;
          }
          node = trie.child(node, w[i + len]);
          if (node < 0) {
            break;
          }
          ++len;
        }
      }
    }

    bool freely_trivial(std::uint8_t const* w, std::size_t n) {
      std::array<std::uint8_t, kMaxSearchLength> st{};
      std::size_t                                top = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (top > 0 && (st[top - 1] ^ 1) == w[i]) {
          --top;
        } else {
          st[top++] = w[i];
        }
      }
      return top == 0;
    }

    std::vector<std::uint8_t> encode(Word const& w) {
      std::vector<std::uint8_t> out;
      out.reserve(w.size());
      for (Letter x : w) {
        out.push_back(static_cast<std::uint8_t>(x.code()));
      }
      return out;
    }

    struct SearchOutcome {
      std::optional<std::size_t> value;
      bool                       budget_hit = false;
    };

    // 0-1 BFS from w towards any freely trivial word, within cap.
    SearchOutcome area_search(RuleTrie const&  trie,
                              WordSpace const& space,
                              Word const&      w,
                              std::size_t      cap,
                              std::size_t      max_states) {
      auto const  k     = space.alphabet();
      auto const  start = encode(w);
      if (freely_trivial(start.data(), start.size())) {
        return {0, false};
      }
      std::unordered_map<std::uint64_t, std::uint32_t> dist;
      std::vector<std::uint64_t>                       layer{space.index(start.data(), start.size())};
      dist[layer[0]] = 0;
      std::array<std::uint8_t, kMaxSearchLength> cur{};
      for (std::uint32_t cost = 0; !layer.empty(); ++cost) {
        std::vector<std::uint64_t> next;
        for (std::size_t i = 0; i < layer.size(); ++i) {
          std::uint64_t idx = layer[i];
          if (dist[idx] != cost) {
            continue;
          }
          std::size_t n = space.decode(idx, cur.data());
          if (freely_trivial(cur.data(), n)) {
            return {cost, false};
          }
          if (dist.size() > max_states) {
            return {std::nullopt, true};
          }
          for_each_neighbor(trie, k, cur.data(), n, cap, [&](std::uint8_t const* b, std::size_t m, bool costly) {
            std::uint64_t nb = space.index(b, m);
            std::uint32_t d  = costly ? cost + 1 : cost;
            auto [it, inserted] = dist.try_emplace(nb, d);
            if (!inserted) {
              if (it->second <= d) {
                return;
              }
              it->second = d;
            }
            if (costly) {
              next.push_back(nb);
            } else {
              layer.push_back(nb);
            }
          });
        }
        layer = std::move(next);
      }
      return {std::nullopt, false};
    }

    // Plain reachability from w to a freely trivial word within cap.
    SearchOutcome reach_search(RuleTrie const&  trie,
                               WordSpace const& space,
                               Word const&      w,
                               std::size_t      cap,
                               std::size_t      max_states) {
      auto const k     = space.alphabet();
      auto const start = encode(w);
      if (freely_trivial(start.data(), start.size())) {
        return {0, false};
      }
      std::unordered_set<std::uint64_t> seen;
      std::vector<std::uint64_t>        stack{space.index(start.data(), start.size())};
      seen.insert(stack[0]);
      std::array<std::uint8_t, kMaxSearchLength> cur{};
      bool                                      found = false;
      while (!stack.empty() && !found) {
        if (seen.size() > max_states) {
          return {std::nullopt, true};
        }
        std::uint64_t idx = stack.back();
        stack.pop_back();
        std::size_t n = space.decode(idx, cur.data());
        for_each_neighbor(trie, k, cur.data(), n, cap, [&](std::uint8_t const* b, std::size_t m, bool) {
          if (found) {
            return;
          }
          if (freely_trivial(b, m)) {
            found = true;
            return;
          }
          std::uint64_t nb = space.index(b, m);
          if (seen.insert(nb).second) {
            stack.push_back(nb);
          }
        });
      }
      if (found) {
        return {0, false};
      }
      return {std::nullopt, false};
    }

  }  // namespace detail

  namespace {
    std::size_t effective_cap(Word const& w, SearchBudget const& budget) {
      return std::max(budget.max_word_length, w.size());
    }
  }  // namespace

  OracleResult min_isoperimetric(Word const&          w,
                                 RewriteSystem const& rs,
                                 SearchBudget const&  budget) {
    std::size_t const       cap = effective_cap(w, budget);
    detail::RuleTrie const  trie(rs);
    detail::WordSpace const space(2 * rs.presentation().num_generators(), cap + 2);
    auto low  = detail::area_search(trie, space, w, cap, budget.max_states);
    auto high = detail::area_search(trie, space, w, cap + 2, budget.max_states);
    if (low.budget_hit || high.budget_hit) {
      auto v = high.value ? high.value : low.value;
      return {v, Status::budget_exceeded};
    }
    if (low.value == high.value) {
      return {high.value, high.value ? Status::exact : Status::lower_bound_only};
    }
    return {high.value, Status::lower_bound_only};
  }

  TrivialityResult is_trivial(Word const&          w,
                              RewriteSystem const& rs,
                              SearchBudget const&  budget) {
    std::size_t const       cap = effective_cap(w, budget);
    detail::RuleTrie const  trie(rs);
    detail::WordSpace const space(2 * rs.presentation().num_generators(), cap);
    auto out = detail::reach_search(trie, space, w, cap, budget.max_states);
    if (out.value) {
      return {true, Status::exact};
    }
    return {false, out.budget_hit ? Status::budget_exceeded : Status::lower_bound_only};
  }

  OracleResult filling_length(Word const&          w,
                              RewriteSystem const& rs,
                              SearchBudget const&  budget) {
    std::size_t const       cap = effective_cap(w, budget);
    detail::RuleTrie const  trie(rs);
    detail::WordSpace const space(2 * rs.presentation().num_generators(), cap);
    auto top = detail::reach_search(trie, space, w, cap, budget.max_states);
    if (!top.value) {
      return {std::nullopt, top.budget_hit ? Status::budget_exceeded : Status::lower_bound_only};
    }
    // reachability is monotone in the cap
    std::size_t lo = w.size();
    std::size_t hi = cap;
    while (lo < hi) {
      std::size_t mid = lo + (hi - lo) / 2;
      auto        out = detail::reach_search(trie, space, w, mid, budget.max_states);
      if (out.budget_hit) {
        return {hi, Status::budget_exceeded};
      }
      if (out.value) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    return {lo, Status::exact};
  }

  RewriteTable::RewriteTable(RewriteSystem const& rs, std::size_t cap, std::size_t max_states)
      : _cap(cap), _space(), _area(), _filling() {
    auto const k = 2 * rs.presentation().num_generators();
    _space       = std::make_unique<detail::WordSpace>(k, cap);
    if (_space->size() > max_states) {
      throw ResourceLimitExceeded("rewrite table would need " + std::to_string(_space->size())
                                  + " states, more than the cap of "
                                  + std::to_string(max_states));
    }
    detail::RuleTrie const trie(rs);
    auto const             size = static_cast<std::size_t>(_space->size());
    std::array<std::uint8_t, detail::kMaxSearchLength> cur{};

    constexpr std::uint16_t kUnset = std::numeric_limits<std::uint16_t>::max();
    _area.assign(size, kUnset);
    _area[0] = 0;
    std::vector<std::uint64_t> layer{0};
    for (std::uint16_t cost = 0; !layer.empty(); ++cost) {
      std::vector<std::uint64_t> next;
      for (std::size_t i = 0; i < layer.size(); ++i) {
        std::uint64_t idx = layer[i];
        if (_area[idx] != cost) {
          continue;
        }
        std::size_t n = _space->decode(idx, cur.data());
        detail::for_each_neighbor(trie, k, cur.data(), n, cap, [&](std::uint8_t const* b, std::size_t m, bool costly) {
          std::uint64_t nb = _space->index(b, m);
          std::uint16_t d  = costly ? static_cast<std::uint16_t>(cost + 1) : cost;
          if (_area[nb] <= d) {
            return;
          }
          _area[nb] = d;
          (costly ? next : layer).push_back(nb);
        });
      }
      layer = std::move(next);
    }

    constexpr std::uint8_t kNoFill = std::numeric_limits<std::uint8_t>::max();
    _filling.assign(size, kNoFill);
    std::vector<std::vector<std::uint64_t>> bucket(cap + 1);
    _filling[0] = 0;
    bucket[0].push_back(0);
    for (std::size_t level = 0; level <= cap; ++level) {
      auto& queue = bucket[level];
      while (!queue.empty()) {
        std::uint64_t idx = queue.back();
        queue.pop_back();
        std::size_t n = _space->decode(idx, cur.data());
        detail::for_each_neighbor(trie, k, cur.data(), n, cap, [&](std::uint8_t const* b, std::size_t m, bool) {
          std::uint64_t nb = _space->index(b, m);
          if (_filling[nb] != kNoFill) {
            return;
          }
          if (m <= level) {
            _filling[nb] = static_cast<std::uint8_t>(level);
            queue.push_back(nb);
          } else {
            _filling[nb] = static_cast<std::uint8_t>(m);
            bucket[m].push_back(nb);
          }
        });
      }
    }
  }

  RewriteTable::~RewriteTable()                                  = default;
  RewriteTable::RewriteTable(RewriteTable&&) noexcept            = default;
  RewriteTable& RewriteTable::operator=(RewriteTable&&) noexcept = default;

  std::size_t RewriteTable::num_states() const noexcept {
    return _area.size();
  }

  std::optional<std::size_t> RewriteTable::area(Word const& w) const {
    if (w.size() > _cap) {
      return std::nullopt;
    }
    auto const code = detail::encode(w);
    auto       d    = _area[_space->index(code.data(), code.size())];
    if (d == std::numeric_limits<std::uint16_t>::max()) {
      return std::nullopt;
    }
    return d;
  }

  std::optional<std::size_t> RewriteTable::filling(Word const& w) const {
    if (w.size() > _cap) {
      return std::nullopt;
    }
    auto const code = detail::encode(w);
    auto       f    = _filling[_space->index(code.data(), code.size())];
    if (f == std::numeric_limits<std::uint8_t>::max()) {
      return std::nullopt;
    }
    return f;
  }

  RewriteOracle::RewriteOracle(RewriteSystem const& rs, SearchBudget const& budget)
      : _rs(rs), _budget(budget), _cap(budget.max_word_length), _low(), _high() {
    try {
      _low.emplace(_rs, _cap, budget.max_states);
      _high.emplace(_rs, _cap + 2, budget.max_states);
    } catch (ResourceLimitExceeded const&) {
      _high.reset();
    }
  }

  OracleResult RewriteOracle::area(Word const& w) const {
    if (!_high || w.size() > _cap) {
      return min_isoperimetric(w, _rs, _budget);
    }
    auto low  = _low->area(w);
    auto high = _high->area(w);
    if (low == high) {
      return {high, high ? Status::exact : Status::lower_bound_only};
    }
    return {high, Status::lower_bound_only};
  }

  OracleResult RewriteOracle::filling(Word const& w) const {
    if (!_low || w.size() > _cap) {
      return filling_length(w, _rs, _budget);
    }
    // the cap-L table is the one matching the per-word search
    auto f = _low->filling(w);
    return {f, f ? Status::exact : Status::lower_bound_only};
  }

  TrivialityResult RewriteOracle::trivial(Word const& w) const {
    if (!_low || w.size() > _cap) {
      return is_trivial(w, _rs, _budget);
    }
    if (_low->reachable(w)) {
      return {true, Status::exact};
    }
    return {false, Status::lower_bound_only};
  }

}  // namespace fillings
