#include "fillings/compression.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

#include "fillings/errors.hpp"

namespace fillings {

  CompressedPresentation compress(Presentation const& p, std::uint64_t max_tuples) {
    if (p.relators().empty()) {
      throw EmptyRelatorSet();
    }
    auto const        sym = symmetrize(p);
    auto const&       rs  = sym.relators();
    std::size_t const m   = p.max_relator_length();

    std::uint64_t total = 0;
    std::uint64_t level = rs.size();
    for (std::size_t i = 2; i <= m; ++i) {
      if (level > max_tuples / rs.size()) {
        throw CombinatorialBlowup("compression would enumerate more than "
                                  + std::to_string(max_tuples) + " tuples");
      }
      level *= rs.size();
      total += level;
      if (total > max_tuples) {
        throw CombinatorialBlowup("compression would enumerate more than "
                                  + std::to_string(max_tuples) + " tuples");
      }
    }

    std::vector<Word> fused;
    std::set<Word>    seen;
    // odometer over index tuples, the last index varying fastest
    for (std::size_t i = 2; i <= m; ++i) {
      std::vector<std::size_t> idx(i, 0);
      while (true) {
        Word product;
        for (std::size_t t : idx) {
          product.insert(product.end(), rs[t].begin(), rs[t].end());
        }
        product = red(product);
        if (!product.empty() && seen.insert(product).second) {
          fused.push_back(std::move(product));
        }
        std::size_t pos = i;
        while (pos > 0 && ++idx[pos - 1] == rs.size()) {
          idx[pos - 1] = 0;
          --pos;
        }
        if (pos == 0) {
          break;
        }
      }
    }

    std::vector<Word> all(rs.begin(), rs.end());
    all.insert(all.end(), fused.begin(), fused.end());
    return {p, rs, fused, Presentation(p.num_generators(), std::move(all)), m};
  }

  bool CompressionReport::all_hold() const {
    return std::all_of(rows.begin(), rows.end(), [](CompressionRow const& r) {
      return r.holds.value_or(true);
    });
  }

  std::size_t CompressionReport::num_skipped() const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](CompressionRow const& r) {
      return !r.holds.has_value();
    }));
  }

  namespace {
    void merge(OracleResult& acc, OracleResult const& r) {
      if (r.value) {
        acc.value = std::max(acc.value.value_or(0), *r.value);
      }
      if (r.status == Status::budget_exceeded) {
        acc.status = Status::budget_exceeded;
      } else if ((r.status != Status::exact || !r.value) && acc.status == Status::exact) {
        acc.status = Status::lower_bound_only;
      }
    }
  }  // namespace

  CompressionReport verify_compression(CompressedPresentation const& c,
                                       std::size_t                   n_max,
                                       SearchBudget const&           budget) {
    RewriteOracle const base(RewriteSystem(c.base), budget);
    RewriteOracle const comb(RewriteSystem(c.combined), budget);
    CompressionReport   out;
    OracleResult        pb{0, Status::exact};
    OracleResult        pc{0, Status::exact};
    for (std::size_t n = 0; n <= n_max; ++n) {
      for_each_word(c.base.num_generators(), n, [&](Word const& w) {
        if (base.trivial(w).trivial) {
          merge(pb, base.area(w));
          merge(pc, comb.area(w));
        }
      });
      CompressionRow row{n, pb, pc, 0, std::nullopt};
      row.bound = (pb.value.value_or(0) + n + 1) / 2;
      if (pb.status == Status::exact && pc.status == Status::exact) {
        row.holds = *pc.value <= row.bound;
      }
      out.rows.push_back(row);
    }
    return out;
  }

  std::vector<Word> group_mismatches(Presentation const& a,
                                     Presentation const& b,
                                     std::size_t         max_len,
                                     SearchBudget const& budget) {
    RewriteOracle const oa(RewriteSystem(a), budget);
    RewriteOracle const ob(RewriteSystem(b), budget);
    std::vector<Word>   out;
    for (std::size_t n = 0; n <= max_len; ++n) {
      for_each_word(a.num_generators(), n, [&](Word const& w) {
        if (oa.trivial(w).trivial != ob.trivial(w).trivial) {
          out.push_back(w);
        }
      });
    }
    return out;
  }

  std::string compression_csv(CompressionReport const& report) {
    std::ostringstream out;
    out << "n,P_base,P_base_status,P_combined,P_combined_status,bound,holds\n";
    for (auto const& r : report.rows) {
      out << r.n << ',' << (r.base.value ? std::to_string(*r.base.value) : "") << ','
          << to_string(r.base.status) << ','
          << (r.combined.value ? std::to_string(*r.combined.value) : "") << ','
          << to_string(r.combined.status) << ',' << r.bound << ','
          << (r.holds ? (*r.holds ? "true" : "false") : "skipped") << '\n';
    }
    return out.str();
  }

}  // namespace fillings
