#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rmspec {

/// Canonical label of a pair partition of {1, ..., 2k}.
///
/// Letters are small integers assigned in order of first occurrence, so
/// "abab" is stored as {0, 1, 0, 1}.  Every letter occurs exactly twice.
/// The alphabetic form is only a display layer (see to_string / parse).
class PartitionWord {
public:
  using Letter = std::uint8_t;

  PartitionWord() = default;

  /// Validates canonical form; throws InvalidArgument otherwise.
  explicit PartitionWord(std::vector<Letter> letters);

  /// Parses "aabb"-style text. Letters need not be canonical ("bbaa" is
  /// accepted and relabelled to "aabb").
  static PartitionWord parse(std::string_view text);

  std::size_t size() const noexcept { return letters_.size(); }
  std::size_t half_length() const noexcept { return letters_.size() / 2; }
  Letter operator[](std::size_t pos) const { return letters_[pos]; }
  std::span<const Letter> letters() const noexcept { return letters_; }

  /// Position of the other occurrence of the letter at `pos`.
  std::size_t partner(std::size_t pos) const { return partner_[pos]; }

  /// (first, second) zero-based positions of each letter, indexed by letter.
  std::vector<std::pair<std::size_t, std::size_t>> occurrences() const;

  std::string to_string() const;

  friend bool operator==(const PartitionWord& a, const PartitionWord& b) {
    return a.letters_ == b.letters_;
  }
  friend std::strong_ordering operator<=>(const PartitionWord& a,
                                          const PartitionWord& b) {
    return a.letters_ <=> b.letters_;
  }

private:
  struct Trusted {};
  PartitionWord(std::vector<Letter> letters, Trusted);
  void index_partners();

  std::vector<Letter> letters_;
  std::vector<std::uint16_t> partner_;

  friend void for_each_word(std::size_t,
                            const std::function<void(const PartitionWord&)>&,
                            std::size_t);
};

inline constexpr std::size_t kDefaultWordCap = 8;

/// (2k-1)!!, the number of pair partitions of {1, ..., 2k}.
std::uint64_t word_count(std::size_t k);

/// Visits every partition word of length 2k in lexicographic order.
/// Throws InvalidArgument for k = 0 or k > cap.
void for_each_word(std::size_t k,
                   const std::function<void(const PartitionWord&)>& visit,
                   std::size_t cap = kDefaultWordCap);

std::vector<PartitionWord> enumerate_words(std::size_t k,
                                           std::size_t cap = kDefaultWordCap);

/// Number of encapsulated partition subwords x w1 x, w1 empty or closed.
std::size_t height(const PartitionWord& w);

/// True iff no proper nonempty contiguous substring is itself closed under
/// pairing.
bool is_irreducible(const PartitionWord& w);

/// True iff w reduces to the empty word by deleting adjacent doubled letters.
bool is_noncrossing(const PartitionWord& w);

/// w read from position `shift` cyclically, relabelled to canonical form.
PartitionWord rotate(const PartitionWord& w, std::size_t shift);
/// w read right to left, relabelled.
PartitionWord reverse(const PartitionWord& w);

/// Distinct words reachable from w by rotations and reversal, sorted.
/// Toeplitz and Hankel slab volumes are constant on these orbits.
std::vector<PartitionWord> dihedral_orbit(const PartitionWord& w);

}  // namespace rmspec
