#ifndef FILLINGS_COMPRESSION_HPP_
#define FILLINGS_COMPRESSION_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fillings/core.hpp"
#include "fillings/rewrite.hpp"

namespace fillings {

  // <A; R_s ∪ R_2> where R_2 holds red(r_1 ... r_i) over all i-tuples of
  // R_s with 2 <= i <= m, m the longest relator of R.
  struct CompressedPresentation {
    Presentation      base;
    std::vector<Word> symmetrized;
    std::vector<Word> fused;
    Presentation      combined;
    std::size_t       m;
  };

  // Throws EmptyRelatorSet if R is empty, CombinatorialBlowup if more than
  // max_tuples tuples would be enumerated.
  [[nodiscard]] CompressedPresentation compress(Presentation const& p,
                                                std::uint64_t       max_tuples = 2'000'000);

  struct CompressionRow {
    std::size_t         n;
    OracleResult        base;
    OracleResult        combined;
    std::size_t         bound;  // ceil(P_base / 2 + n / 2)
    std::optional<bool> holds;  // nullopt when either side is not exact
  };

  struct CompressionReport {
    std::vector<CompressionRow> rows;

    [[nodiscard]] bool all_hold() const;
    [[nodiscard]] std::size_t num_skipped() const;
  };

  // P over the words of length <= n that are trivial according to the
  // base presentation's rewrite oracle.
  [[nodiscard]] CompressionReport verify_compression(CompressedPresentation const& c,
                                                     std::size_t                   n_max,
                                                     SearchBudget const&           budget);

  // Words of length <= max_len on which the two rewrite oracles disagree
  // about triviality.
  [[nodiscard]] std::vector<Word> group_mismatches(Presentation const& a,
                                                   Presentation const& b,
                                                   std::size_t         max_len,
                                                   SearchBudget const& budget);

  [[nodiscard]] std::string compression_csv(CompressionReport const& report);

}  // namespace fillings

#endif  // FILLINGS_COMPRESSION_HPP_
