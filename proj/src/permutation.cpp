#include "aiet/permutation.hpp"

#include <algorithm>
#include <set>

#include "aiet/errors.hpp"

namespace aiet {

Permutation::Permutation(std::vector<std::string> alphabet, std::vector<Letter> top_row,
                         std::vector<Letter> bottom_row)
    : alphabet_(std::move(alphabet)), top_(std::move(top_row)), bottom_(std::move(bottom_row)) {
  const auto d = alphabet_.size();
  if (d < 2) throw InputError("alphabet must have at least two symbols");
  if (std::set<std::string>(alphabet_.begin(), alphabet_.end()).size() != d)
    throw InputError("alphabet symbols must be distinct");
  if (top_.size() != d || bottom_.size() != d)
    throw InputError("permutation rows must list every symbol exactly once");
  index_rows();
}

Permutation Permutation::from_symbols(std::vector<std::string> alphabet,
                                      const std::vector<std::string>& top_row,
                                      const std::vector<std::string>& bottom_row) {
  auto lookup = [&](const std::string& s) -> Letter {
    const auto it = std::find(alphabet.begin(), alphabet.end(), s);
    if (it == alphabet.end()) throw InputError("unknown symbol '" + s + "' in permutation");
    return static_cast<Letter>(it - alphabet.begin());
  };
  std::vector<Letter> top, bottom;
  for (const auto& s : top_row) top.push_back(lookup(s));
  for (const auto& s : bottom_row) bottom.push_back(lookup(s));
  return Permutation(std::move(alphabet), std::move(top), std::move(bottom));
}

Permutation Permutation::symmetric(std::vector<std::string> alphabet) {
  const int d = static_cast<int>(alphabet.size());
  std::vector<Letter> top(d), bottom(d);
  for (int k = 0; k < d; ++k) {
    top[k] = k;
    bottom[k] = d - 1 - k;
  }
  return Permutation(std::move(alphabet), std::move(top), std::move(bottom));
}

void Permutation::index_rows() {
  const int d = size();
  top_pos_.assign(d, -1);
  bottom_pos_.assign(d, -1);
  for (int k = 0; k < d; ++k) {
    for (auto [row, pos] : {std::pair{&top_, &top_pos_}, std::pair{&bottom_, &bottom_pos_}}) {
      const Letter a = (*row)[k];
      if (a < 0 || a >= d || (*pos)[a] != -1)
        throw InputError("permutation rows must list every symbol exactly once");
      (*pos)[a] = k;
    }
  }
}

Letter Permutation::letter(std::string_view symbol) const {
  const auto it = std::find(alphabet_.begin(), alphabet_.end(), symbol);
  if (it == alphabet_.end()) throw InputError("unknown symbol '" + std::string(symbol) + "'");
  return static_cast<Letter>(it - alphabet_.begin());
}

bool Permutation::is_irreducible() const {
  // The first k top letters sit in bottom positions < k iff their maximal
  // bottom position is k-1.
  int max_bottom = -1;
  for (int k = 0; k + 1 < size(); ++k) {
    max_bottom = std::max(max_bottom, bottom_pos_[top_[k]]);
    if (max_bottom == k) return false;
  }
  return true;
}

std::string Permutation::to_string() const {
  std::string out;
  for (Letter a : top_) out += alphabet_[a] + " ";
  out += "/";
  for (Letter a : bottom_) out += " " + alphabet_[a];
  return out;
}

}  // namespace aiet
