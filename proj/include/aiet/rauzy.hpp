#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "aiet/linalg.hpp"
#include "aiet/permutation.hpp"

namespace aiet {

enum class StepKind { top, bottom };

char to_char(StepKind kind);

/// A finite word over {top, bottom} driving Rauzy-Veech renormalization.
class RauzyPath {
 public:
  RauzyPath() = default;
  explicit RauzyPath(std::vector<StepKind> steps) : steps_(std::move(steps)) {}

  /// Parses a word over {t, b}; throws InputError otherwise.
  static RauzyPath parse(std::string_view word);

  const std::vector<StepKind>& steps() const { return steps_; }
  int length() const { return static_cast<int>(steps_.size()); }
  std::string to_string() const;

 private:
  std::vector<StepKind> steps_;
};

struct RauzyStep {
  Permutation next;
  StepKind kind = StepKind::top;
  Letter winner = 0;
  Letter loser = 0;
  /// Identity plus a single 1 at (loser, winner): lengths before the step are
  /// recovered from lengths after it as `before^T = after^T * elementary`.
  IntMatrix elementary;
};

/// One Rauzy move. The top move takes the last top letter as winner and
/// reinserts the last bottom letter right after the winner in the bottom row;
/// the bottom move is the mirror image.
///
/// Throws InputError if the permutation is reducible, if both rows end with
/// the same letter, or if the successor is reducible.
RauzyStep rauzy_step(const Permutation& perm, StepKind kind);

/// Every intermediate step of a path, in order.
std::vector<RauzyStep> rauzy_walk(const Permutation& perm, const RauzyPath& path);

/// Self-similarity matrix of a closed path: the product V_n ... V_1 of the
/// per-step elementary matrices, so that row a counts the visits of the
/// tower over the renormalized interval a to each original interval.
///
/// Throws InputError("path not closed") when the walk does not return to
/// `perm`.
IntMatrix path_matrix(const Permutation& perm, const RauzyPath& path);

}  // namespace aiet
