#include "aiet/rauzy.hpp"

#include <algorithm>

#include "aiet/errors.hpp"

namespace aiet {

char to_char(StepKind kind) { return kind == StepKind::top ? 't' : 'b'; }

RauzyPath RauzyPath::parse(std::string_view word) {
  std::vector<StepKind> steps;
  steps.reserve(word.size());
  for (char c : word) {
    if (c == 't')
      steps.push_back(StepKind::top);
    else if (c == 'b')
      steps.push_back(StepKind::bottom);
    else
      throw InputError(std::string("rauzy path may only contain 't' and 'b', got '") + c + "'");
  }
  return RauzyPath(std::move(steps));
}

std::string RauzyPath::to_string() const {
  std::string out;
  for (StepKind k : steps_) out += to_char(k);
  return out;
}

RauzyStep rauzy_step(const Permutation& perm, StepKind kind) {
  if (!perm.is_irreducible()) throw InputError("rauzy step on reducible permutation " + perm.to_string());
  if (perm.top_last() == perm.bottom_last())
    throw InputError("degenerate permutation: both rows end with " + perm.symbol(perm.top_last()));

  std::vector<Letter> top = perm.top_row();
  std::vector<Letter> bottom = perm.bottom_row();
  RauzyStep step;
  step.kind = kind;
  auto reinsert = [](std::vector<Letter>& row, Letter winner, Letter loser) {
    row.erase(std::find(row.begin(), row.end(), loser));
    row.insert(std::find(row.begin(), row.end(), winner) + 1, loser);
  };
  if (kind == StepKind::top) {
    step.winner = perm.top_last();
    step.loser = perm.bottom_last();
    reinsert(bottom, step.winner, step.loser);
  } else {
    step.winner = perm.bottom_last();
    step.loser = perm.top_last();
    reinsert(top, step.winner, step.loser);
  }
  step.next = Permutation(perm.alphabet(), std::move(top), std::move(bottom));
  if (!step.next.is_irreducible())
    throw InputError("rauzy step produced reducible permutation " + step.next.to_string());

  const int d = perm.size();
  step.elementary = IntMatrix::Identity(d, d);
  step.elementary(step.loser, step.winner) += 1;
  return step;
}

std::vector<RauzyStep> rauzy_walk(const Permutation& perm, const RauzyPath& path) {
  std::vector<RauzyStep> walk;
  walk.reserve(path.steps().size());
  const Permutation* current = &perm;
  for (StepKind kind : path.steps()) {
    walk.push_back(rauzy_step(*current, kind));
    current = &walk.back().next;
  }
  return walk;
}

IntMatrix path_matrix(const Permutation& perm, const RauzyPath& path) {
  if (path.length() == 0) throw InputError("rauzy path is empty");
  const auto walk = rauzy_walk(perm, path);
  if (!(walk.back().next == perm)) throw InputError("path not closed");
  IntMatrix m = IntMatrix::Identity(perm.size(), perm.size());
  for (const RauzyStep& step : walk) m = step.elementary * m;
  return m;
}

}  // namespace aiet
