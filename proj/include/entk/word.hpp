#pragma once

// Words over signed letters and their free-group normal form.

#include <cstddef>
#include <string>
#include <vector>

namespace entk {

struct Letter {
  int curve = 0;  // index into RepresentativeCurves::letters
  int sign = 1;   // +1 or -1

  Letter inverse() const { return {curve, -sign}; }
  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

inline bool cancels(const Letter& a, const Letter& b) { return a.curve == b.curve && a.sign == -b.sign; }

inline bool is_reduced(const Word& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (cancels(w[i], w[i + 1])) return false;
  return true;
}

/// Free-group normal form: single left-to-right stack pass.
inline Word reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (const auto& l : w) {
    if (!out.empty() && cancels(out.back(), l))
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

inline Word inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

inline Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

/// reduce(a · b) for already-reduced a and b, without copying a twice.
inline Word reduced_concat(const Word& a, const Word& b) {
  Word out = a;
  for (const auto& l : b) {
    if (!out.empty() && cancels(out.back(), l))
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

}  // namespace entk
