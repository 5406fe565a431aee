#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace aiet {

using Letter = int;

/// Combinatorial data of an interval exchange: an alphabet together with the
/// order of the intervals before (top row) and after (bottom row) the
/// exchange. Letters are indices into the alphabet.
class Permutation {
 public:
  Permutation() = default;

  /// `top_row[k]` is the letter in position k before the exchange.
  /// Throws InputError unless both rows are bijections onto the alphabet.
  Permutation(std::vector<std::string> alphabet, std::vector<Letter> top_row,
              std::vector<Letter> bottom_row);

  /// Rows given as symbol names.
  static Permutation from_symbols(std::vector<std::string> alphabet,
                                  const std::vector<std::string>& top_row,
                                  const std::vector<std::string>& bottom_row);

  /// Top row in alphabet order, bottom row reversed.
  static Permutation symmetric(std::vector<std::string> alphabet);

  int size() const { return static_cast<int>(alphabet_.size()); }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::string& symbol(Letter a) const { return alphabet_[a]; }
  Letter letter(std::string_view symbol) const;

  const std::vector<Letter>& top_row() const { return top_; }
  const std::vector<Letter>& bottom_row() const { return bottom_; }
  int top_position(Letter a) const { return top_pos_[a]; }
  int bottom_position(Letter a) const { return bottom_pos_[a]; }
  Letter top_last() const { return top_.back(); }
  Letter bottom_last() const { return bottom_.back(); }

  /// No proper prefix of the top row is mapped onto the same prefix below.
  bool is_irreducible() const;

  /// "A B C / C B A".
  std::string to_string() const;

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.alphabet_ == b.alphabet_ && a.top_ == b.top_ && a.bottom_ == b.bottom_;
  }

 private:
  void index_rows();

  std::vector<std::string> alphabet_;
  std::vector<Letter> top_;
  std::vector<Letter> bottom_;
  std::vector<int> top_pos_;
  std::vector<int> bottom_pos_;
};

}  // namespace aiet
