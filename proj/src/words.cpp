#include "rmspec/words.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <sstream>

#include "rmspec/error.hpp"

namespace rmspec {

namespace {

// Each letter's interval [first, second]; a contiguous block [lo, hi] is a
// partition subword iff every position in it has its partner inside it.
bool is_closed_block(const PartitionWord& w, std::size_t lo, std::size_t hi) {
  if (lo > hi || (hi - lo + 1) % 2 != 0) return false;
  for (std::size_t p = lo; p <= hi; ++p) {
    const std::size_t q = w.partner(p);
    if (q < lo || q > hi) return false;
  }
  return true;
}

}  // namespace

PartitionWord::PartitionWord(std::vector<Letter> letters)
    : letters_(std::move(letters)) {
  if (letters_.empty() || letters_.size() % 2 != 0) {
    throw InvalidArgument("partition word must have positive even length");
  }
  if (letters_.size() / 2 > std::numeric_limits<Letter>::max()) {
    throw InvalidArgument("partition word too long");
  }
  const std::size_t k = letters_.size() / 2;
  std::vector<int> seen(k, 0);
  Letter next = 0;
  for (Letter c : letters_) {
    if (c >= k) throw InvalidArgument("letter id out of range");
    if (seen[c] == 0) {
      if (c != next) {
        throw InvalidArgument("letters must first occur in increasing order");
      }
      ++next;
    }
    if (++seen[c] > 2) throw InvalidArgument("letter occurs more than twice");
  }
  if (next != k) throw InvalidArgument("every letter must occur exactly twice");
  index_partners();
}

PartitionWord::PartitionWord(std::vector<Letter> letters, Trusted)
    : letters_(std::move(letters)) {
  index_partners();
}

void PartitionWord::index_partners() {
  partner_.assign(letters_.size(), 0);
  std::vector<int> first(letters_.size() / 2, -1);
  for (std::size_t p = 0; p < letters_.size(); ++p) {
    const Letter c = letters_[p];
    if (first[c] < 0) {
      first[c] = static_cast<int>(p);
    } else {
      partner_[p] = static_cast<std::uint16_t>(first[c]);
      partner_[first[c]] = static_cast<std::uint16_t>(p);
    }
  }
}

PartitionWord PartitionWord::parse(std::string_view text) {
  std::array<int, 256> relabel;
  relabel.fill(-1);
  std::vector<Letter> letters;
  letters.reserve(text.size());
  int next = 0;
  for (char ch : text) {
    auto& slot = relabel[static_cast<unsigned char>(ch)];
    if (slot < 0) {
      if (next > std::numeric_limits<Letter>::max()) {
        throw InvalidArgument("too many distinct letters");
      }
      slot = next++;
    }
    letters.push_back(static_cast<Letter>(slot));
  }
  return PartitionWord(std::move(letters));
}

std::vector<std::pair<std::size_t, std::size_t>> PartitionWord::occurrences()
    const {
  std::vector<std::pair<std::size_t, std::size_t>> occ(half_length());
  for (std::size_t p = 0; p < letters_.size(); ++p) {
    if (partner_[p] > p) occ[letters_[p]] = {p, partner_[p]};
  }
  return occ;
}

std::string PartitionWord::to_string() const {
  if (half_length() <= 26) {
    std::string s;
    s.reserve(letters_.size());
    for (Letter c : letters_) s.push_back(static_cast<char>('a' + c));
    return s;
  }
  std::ostringstream os;
  for (std::size_t p = 0; p < letters_.size(); ++p) {
    if (p) os << '.';
    os << static_cast<int>(letters_[p]);
  }
  return os.str();
}

std::uint64_t word_count(std::size_t k) {
  std::uint64_t n = 1;
  for (std::uint64_t j = 1; j <= k; ++j) n *= 2 * j - 1;
  return n;
}

void for_each_word(std::size_t k,
                   const std::function<void(const PartitionWord&)>& visit,
                   std::size_t cap) {
  if (k == 0) throw InvalidArgument("half-length k must be positive");
  if (k > cap) {
    throw InvalidArgument("half-length " + std::to_string(k) +
                          " exceeds word cap " + std::to_string(cap));
  }
  const std::size_t n = 2 * k;
  std::vector<PartitionWord::Letter> letters(n);
  std::vector<char> open(k, 0);

  // Position by position, trying letters in increasing value: first close an
  // open letter, then open the next new one. Positions used so far always
  // equal 2 * next - open_count, so every branch completes.
  std::function<void(std::size_t, std::size_t, std::size_t)> place =
      [&](std::size_t p, std::size_t next, std::size_t open_count) {
        if (p == n) {
          visit(PartitionWord(letters, PartitionWord::Trusted{}));
          return;
        }
        for (std::size_t c = 0; c < next; ++c) {
          if (!open[c]) continue;
          letters[p] = static_cast<PartitionWord::Letter>(c);
          open[c] = 0;
          place(p + 1, next, open_count - 1);
          open[c] = 1;
        }
        if (next < k) {
          letters[p] = static_cast<PartitionWord::Letter>(next);
          open[next] = 1;
          place(p + 1, next + 1, open_count + 1);
          open[next] = 0;
        }
      };
  place(0, 0, 0);
}

std::vector<PartitionWord> enumerate_words(std::size_t k, std::size_t cap) {
  std::vector<PartitionWord> out;
  if (k >= 1 && k <= cap) out.reserve(word_count(k));
  for_each_word(k, [&](const PartitionWord& w) { out.push_back(w); }, cap);
  return out;
}

std::size_t height(const PartitionWord& w) {
  std::size_t h = 0;
  for (std::size_t p = 0; p < w.size(); ++p) {
    const std::size_t q = w.partner(p);
    if (q < p) continue;
    if (q == p + 1 || is_closed_block(w, p + 1, q - 1)) ++h;
  }
  return h;
}

bool is_irreducible(const PartitionWord& w) {
  const std::size_t n = w.size();
  for (std::size_t lo = 0; lo < n; ++lo) {
    std::size_t min_partner = n;
    std::size_t max_partner = 0;
    for (std::size_t hi = lo; hi < n; ++hi) {
      min_partner = std::min(min_partner, w.partner(hi));
      max_partner = std::max(max_partner, w.partner(hi));
      if (hi - lo + 1 == n) break;
      if (min_partner >= lo && max_partner <= hi) return false;
    }
  }
  return true;
}

bool is_noncrossing(const PartitionWord& w) {
  std::vector<PartitionWord::Letter> stack;
  stack.reserve(w.size());
  for (auto c : w.letters()) {
    if (!stack.empty() && stack.back() == c) {
      stack.pop_back();
    } else {
      stack.push_back(c);
    }
  }
  return stack.empty();
}

namespace {

template <class Index>
PartitionWord relabel(std::size_t n, Index at) {
  std::vector<PartitionWord::Letter> out(n);
  std::vector<int> map(n / 2, -1);
  int next = 0;
  for (std::size_t p = 0; p < n; ++p) {
    auto& slot = map[at(p)];
    if (slot < 0) slot = next++;
    out[p] = static_cast<PartitionWord::Letter>(slot);
  }
  return PartitionWord(std::move(out));
}

}  // namespace

PartitionWord rotate(const PartitionWord& w, std::size_t shift) {
  const std::size_t n = w.size();
  return relabel(n, [&](std::size_t p) { return w[(p + shift) % n]; });
}

PartitionWord reverse(const PartitionWord& w) {
  const std::size_t n = w.size();
  return relabel(n, [&](std::size_t p) { return w[n - 1 - p]; });
}

std::vector<PartitionWord> dihedral_orbit(const PartitionWord& w) {
  std::vector<PartitionWord> orbit;
  orbit.reserve(2 * w.size());
  const PartitionWord r = reverse(w);
  for (std::size_t s = 0; s < w.size(); ++s) {
    orbit.push_back(rotate(w, s));
    orbit.push_back(rotate(r, s));
  }
  std::sort(orbit.begin(), orbit.end());
  orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
  return orbit;
}

}  // namespace rmspec
