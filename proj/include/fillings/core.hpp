#ifndef FILLINGS_CORE_HPP_
#define FILLINGS_CORE_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace fillings {

  using generator_type = std::uint32_t;

  // A letter of A^{±1}. Encoded as 2 * generator + (1 if inverse), so the
  // formal inverse of a letter is obtained by flipping the lowest bit and
  // letters of a word sort as a1, a1^-1, a2, a2^-1, ...
  class Letter {
   public:
    constexpr Letter() noexcept = default;

    static constexpr Letter positive(generator_type g) noexcept {
      return Letter(2 * g);
    }
    static constexpr Letter negative(generator_type g) noexcept {
      return Letter(2 * g + 1);
    }
    static constexpr Letter from_code(std::uint32_t code) noexcept {
      return Letter(code);
    }

    [[nodiscard]] constexpr generator_type generator() const noexcept {
      return _code >> 1;
    }
    [[nodiscard]] constexpr bool is_inverse() const noexcept {
      return (_code & 1) != 0;
    }
    [[nodiscard]] constexpr int sign() const noexcept {
      return is_inverse() ? -1 : 1;
    }
    [[nodiscard]] constexpr Letter inverse() const noexcept {
      return Letter(_code ^ 1);
    }
    [[nodiscard]] constexpr std::uint32_t code() const noexcept {
      return _code;
    }

    constexpr auto operator<=>(Letter const&) const noexcept = default;

   private:
    explicit constexpr Letter(std::uint32_t code) noexcept : _code(code) {}
    std::uint32_t _code = 0;
  };

  using Word = std::vector<Letter>;

  struct WordHash {
    std::size_t operator()(Word const& w) const noexcept;
  };

  // Free reduction by a single stack pass.
  [[nodiscard]] Word red(Word const& w);
  [[nodiscard]] bool is_reduced(Word const& w) noexcept;
  [[nodiscard]] Word invert(Word const& w);
  // The literal word h^-1 g h.
  [[nodiscard]] Word conjugate(Word const& g, Word const& h);
  [[nodiscard]] Word concat(Word const& u, Word const& v);
  // Cyclic permutation starting at position k.
  [[nodiscard]] Word rotate(Word const& w, std::size_t k);

  // Text form: generator i is the i-th lowercase letter, its inverse the
  // matching uppercase letter; the empty word prints as "1".
  [[nodiscard]] std::string to_string(Word const& w);
  [[nodiscard]] std::string to_string(Letter x);

  // Accepts "" and "1" for the empty word. Letters must belong to the first
  // num_generators letters of the alphabet.
  [[nodiscard]] Word parse_word(std::string_view text,
                                std::size_t      num_generators);

  // A finite presentation <A; R>. Relators are kept as given (no reduction)
  // but are validated: nonempty, letters in range, no literal duplicates.
  class Presentation {
   public:
    Presentation(std::size_t num_generators, std::vector<Word> relators);

    [[nodiscard]] std::size_t num_generators() const noexcept {
      return _num_generators;
    }
    [[nodiscard]] std::vector<Word> const& relators() const noexcept {
      return _relators;
    }
    // |R|
    [[nodiscard]] std::size_t num_relators() const noexcept {
      return _relators.size();
    }
    // ||R||, the sum of the relator lengths.
    [[nodiscard]] std::size_t total_length() const noexcept;
    [[nodiscard]] std::size_t max_relator_length() const noexcept;

    bool operator==(Presentation const&) const = default;

   private:
    std::size_t       _num_generators;
    std::vector<Word> _relators;
  };

  // Adds r^-1 and every cyclic permutation of r and r^-1; keeps the first
  // occurrence of each literal word.
  [[nodiscard]] Presentation symmetrize(Presentation const& p);

  // Two-line text format:
  //   gens: a b
  //   rels: abAB aab
  // Blank lines and lines starting with '#' are ignored. Relators are
  // freely reduced on load; a relator reducing to 1 is an error.
  [[nodiscard]] Presentation parse_presentation(std::string_view text);
  [[nodiscard]] Presentation read_presentation_file(std::string const& path);
  [[nodiscard]] std::string  format_presentation(Presentation const& p);

  // Calls f on every word of length exactly len over A^{±1}, in
  // lexicographic letter-code order.
  void for_each_word(std::size_t                             num_generators,
                     std::size_t                             len,
                     std::function<void(Word const&)> const& f);
  // Same, restricted to freely reduced words.
  void for_each_reduced_word(std::size_t                             num_generators,
                             std::size_t                             len,
                             std::function<void(Word const&)> const& f);
  // All freely reduced words of length <= max_len, shortest first.
  [[nodiscard]] std::vector<Word> reduced_words_up_to(std::size_t num_generators,
                                                      std::size_t max_len);
  // Number of freely reduced words of length <= max_len.
  [[nodiscard]] std::uint64_t num_reduced_words_up_to(std::size_t num_generators,
                                                      std::size_t max_len);

}  // namespace fillings

#endif  // FILLINGS_CORE_HPP_
