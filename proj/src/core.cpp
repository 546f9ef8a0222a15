#include "fillings/core.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "fillings/errors.hpp"

namespace fillings {

  std::size_t WordHash::operator()(Word const& w) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (Letter x : w) {
      h ^= x.code() + 1;
      h *= 0x100000001b3ULL;
    }
    return h;
  }

  Word red(Word const& w) {
    Word out;
    out.reserve(w.size());
    for (Letter x : w) {
      if (!out.empty() && out.back() == x.inverse()) {
        out.pop_back();
      } else {
        out.push_back(x);
      }
    }
    return out;
  }

  bool is_reduced(Word const& w) noexcept {
    for (std::size_t i = 1; i < w.size(); ++i) {
      if (w[i] == w[i - 1].inverse()) {
        return false;
      }
    }
    return true;
  }

  Word invert(Word const& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      out.push_back(it->inverse());
    }
    return out;
  }

  Word concat(Word const& u, Word const& v) {
    Word out;
    out.reserve(u.size() + v.size());
    out.insert(out.end(), u.begin(), u.end());
    out.insert(out.end(), v.begin(), v.end());
    return out;
  }

  Word conjugate(Word const& g, Word const& h) {
    return concat(concat(invert(h), g), h);
  }

  Word rotate(Word const& w, std::size_t k) {
    if (w.empty()) {
      return w;
    }
    k %= w.size();
    Word out(w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
    out.insert(out.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
    return out;
  }

  std::string to_string(Letter x) {
    char c = static_cast<char>((x.is_inverse() ? 'A' : 'a') + x.generator());
    return std::string(1, c);
  }

  std::string to_string(Word const& w) {
    if (w.empty()) {
      return "1";
    }
    std::string out;
    out.reserve(w.size());
    for (Letter x : w) {
      out += static_cast<char>((x.is_inverse() ? 'A' : 'a') + x.generator());
    }
    return out;
  }

  namespace {
    // Returns false if c is not a letter of the first n generators.
    bool decode_letter(char c, std::size_t n, Letter& out) {
      if (c >= 'a' && c <= 'z' && static_cast<std::size_t>(c - 'a') < n) {
        out = Letter::positive(static_cast<generator_type>(c - 'a'));
        return true;
      }
      if (c >= 'A' && c <= 'Z' && static_cast<std::size_t>(c - 'A') < n) {
        out = Letter::negative(static_cast<generator_type>(c - 'A'));
        return true;
      }
      return false;
    }

    Word parse_word_at(std::string_view text,
                       std::size_t      n,
                       std::size_t      line,
                       std::size_t      column) {
      Word w;
      if (text == "1") {
        return w;
      }
      for (std::size_t i = 0; i < text.size(); ++i) {
        Letter x;
        if (!decode_letter(text[i], n, x)) {
          throw ParseError(line,
                           column + i,
                           std::string("invalid letter '") + text[i] + "'");
        }
        w.push_back(x);
      }
      return w;
    }
  }  // namespace

  Word parse_word(std::string_view text, std::size_t num_generators) {
    return parse_word_at(text, num_generators, 1, 1);
  }

  Presentation::Presentation(std::size_t num_generators, std::vector<Word> relators)
      : _num_generators(num_generators), _relators() {
    if (num_generators == 0) {
      throw InvalidArgument("a presentation needs at least one generator");
    }
    std::unordered_set<Word, WordHash> seen;
    for (auto& r : relators) {
      if (r.empty()) {
        throw InvalidArgument("the empty word is not allowed as a relator");
      }
      for (Letter x : r) {
        if (x.generator() >= num_generators) {
          throw InvalidArgument("relator letter out of range");
        }
      }
      if (seen.insert(r).second) {
        _relators.push_back(std::move(r));
      }
    }
  }

  std::size_t Presentation::total_length() const noexcept {
    std::size_t total = 0;
    for (auto const& r : _relators) {
      total += r.size();
    }
    return total;
  }

  std::size_t Presentation::max_relator_length() const noexcept {
    std::size_t m = 0;
    for (auto const& r : _relators) {
      m = std::max(m, r.size());
    }
    return m;
  }

  Presentation symmetrize(Presentation const& p) {
    std::vector<Word> out;
    for (auto const& r : p.relators()) {
      for (auto const& base : {r, invert(r)}) {
        for (std::size_t k = 0; k < base.size(); ++k) {
          out.push_back(rotate(base, k));
        }
      }
    }
    // the constructor drops literal duplicates, keeping first occurrences
    return Presentation(p.num_generators(), std::move(out));
  }

  namespace {
    bool is_blank(char c) {
      return c == ' ' || c == '\t' || c == '\r';
    }

    struct Token {
      std::string_view text;
      std::size_t      column;
    };

    std::vector<Token> tokenize(std::string_view s, std::size_t first_column) {
      std::vector<Token> out;
      std::size_t        i = 0;
      while (i < s.size()) {
        while (i < s.size() && is_blank(s[i])) {
          ++i;
        }
        std::size_t start = i;
        while (i < s.size() && !is_blank(s[i])) {
          ++i;
        }
        if (i > start) {
          out.push_back({s.substr(start, i - start), first_column + start});
        }
      }
      return out;
    }
  }  // namespace

  Presentation parse_presentation(std::string_view text) {
    std::size_t               num_gens = 0;
    bool                      have_gens = false;
    bool                      have_rels = false;
    std::vector<Token>        rel_tokens;
    std::size_t               rel_line = 0;
    std::size_t               line_no  = 0;
    std::size_t               pos      = 0;

    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) {
        end = text.size();
      }
      std::string_view line = text.substr(pos, end - pos);
      ++line_no;
      pos = end + 1;

      std::size_t first = 0;
      while (first < line.size() && is_blank(line[first])) {
        ++first;
      }
      if (first == line.size() || line[first] == '#') {
        continue;
      }
      std::size_t colon = line.find(':', first);
      if (colon == std::string_view::npos) {
        throw ParseError(line_no, first + 1, "expected 'gens:' or 'rels:'");
      }
      std::string_view key  = line.substr(first, colon - first);
      while (!key.empty() && is_blank(key.back())) {
        key.remove_suffix(1);
      }
      auto tokens = tokenize(line.substr(colon + 1), colon + 2);
      if (key == "gens") {
        if (have_gens) {
          throw ParseError(line_no, first + 1, "duplicate 'gens:' line");
        }
        have_gens = true;
        for (std::size_t i = 0; i < tokens.size(); ++i) {
          auto const& t = tokens[i];
          char expected = static_cast<char>('a' + i);
          if (i >= 26 || t.text.size() != 1 || t.text[0] != expected) {
            throw ParseError(line_no,
                             t.column,
                             std::string("expected generator '") + expected + "'");
          }
        }
        if (tokens.empty()) {
          throw ParseError(line_no, colon + 2, "no generators listed");
        }
        num_gens = tokens.size();
      } else if (key == "rels") {
        if (have_rels) {
          throw ParseError(line_no, first + 1, "duplicate 'rels:' line");
        }
        have_rels  = true;
        rel_tokens = std::move(tokens);
        rel_line   = line_no;
      } else {
        throw ParseError(line_no, first + 1, "unknown key '" + std::string(key) + "'");
      }
    }
    if (!have_gens) {
      throw ParseError(line_no == 0 ? 1 : line_no, 1, "missing 'gens:' line");
    }
    std::vector<Word> rels;
    for (auto const& t : rel_tokens) {
      Word r = red(parse_word_at(t.text, num_gens, rel_line, t.column));
      if (r.empty()) {
        throw ParseError(rel_line, t.column, "relator reduces to the empty word");
      }
      rels.push_back(std::move(r));
    }
    return Presentation(num_gens, std::move(rels));
  }

  Presentation read_presentation_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw InvalidArgument("cannot open presentation file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_presentation(ss.str());
  }

  std::string format_presentation(Presentation const& p) {
    std::string out = "gens:";
    for (std::size_t i = 0; i < p.num_generators(); ++i) {
      out += ' ';
      out += static_cast<char>('a' + i);
    }
    out += "\nrels:";
    for (auto const& r : p.relators()) {
      out += ' ';
      out += to_string(r);
    }
    out += '\n';
    return out;
  }

  namespace {
    void words_rec(std::size_t                             k,
                   std::size_t                             len,
                   bool                                    reduced_only,
                   Word&                                   w,
                   std::function<void(Word const&)> const& f) {
      if (w.size() == len) {
        f(w);
        return;
      }
      for (std::uint32_t c = 0; c < k; ++c) {
        Letter x = Letter::from_code(c);
        if (reduced_only && !w.empty() && w.back() == x.inverse()) {
          continue;
        }
        w.push_back(x);
        words_rec(k, len, reduced_only, w, f);
        w.pop_back();
      }
    }
  }  // namespace

  void for_each_word(std::size_t                             num_generators,
                     std::size_t                             len,
                     std::function<void(Word const&)> const& f) {
    Word w;
    words_rec(2 * num_generators, len, false, w, f);
  }

  void for_each_reduced_word(std::size_t                             num_generators,
                             std::size_t                             len,
                             std::function<void(Word const&)> const& f) {
    Word w;
    words_rec(2 * num_generators, len, true, w, f);
  }

  std::vector<Word> reduced_words_up_to(std::size_t num_generators,
                                        std::size_t max_len) {
    std::vector<Word> out;
    for (std::size_t len = 0; len <= max_len; ++len) {
      for_each_reduced_word(
          num_generators, len, [&out](Word const& w) { out.push_back(w); });
    }
    return out;
  }

  std::uint64_t num_reduced_words_up_to(std::size_t num_generators,
                                        std::size_t max_len) {
    std::uint64_t const k     = 2 * num_generators;
    std::uint64_t       total = 1;
    std::uint64_t       level = k;
    for (std::size_t len = 1; len <= max_len; ++len) {
      total += level;
      level *= (k - 1);
    }
    return total;
  }

}  // namespace fillings
