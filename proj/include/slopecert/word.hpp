#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "slopecert/mat2.hpp"

namespace slopecert {

enum class Gen : unsigned char { x = 0, y = 1 };

struct Syllable {
  Gen gen;
  long long exp;  // nonzero

  bool operator==(const Syllable&) const = default;
};

/// Reduced word in the free group on x and y: adjacent syllables have
/// distinct generators and every exponent is nonzero. Construction reduces
/// eagerly, so concatenations of long powers stay as short as they can.
class Word {
 public:
  Word() = default;

  static Word letter(Gen g, long long e) {
    Word w;
    w.append(g, e);
    return w;
  }

  const std::vector<Syllable>& syllables() const { return syls_; }

  bool empty() const { return syls_.empty(); }

  std::size_t syllable_count() const { return syls_.size(); }

  long long letter_length() const {
    long long n = 0;
    for (const auto& s : syls_) n += std::llabs(s.exp);
    return n;
  }

  Word& append(Gen g, long long e) {
    if (e == 0) return *this;
    if (!syls_.empty() && syls_.back().gen == g) {
      syls_.back().exp += e;
      if (syls_.back().exp == 0) syls_.pop_back();
    } else {
      syls_.push_back({g, e});
    }
    return *this;
  }

  Word& append(const Word& other) {
    for (const auto& s : other.syls_) append(s.gen, s.exp);
    return *this;
  }

  friend Word operator*(const Word& l, const Word& r) {
    Word out = l;
    out.append(r);
    return out;
  }

  Word inverse() const {
    Word out;
    for (std::size_t i = syls_.size(); i-- > 0;) out.append(syls_[i].gen, -syls_[i].exp);
    return out;
  }

  Word pow(long long k) const {
    const Word base = k >= 0 ? *this : inverse();
    Word out;
    for (long long i = 0, reps = std::llabs(k); i < reps; ++i) out.append(base);
    return out;
  }

  /// Letter order reversed, exponent signs kept.
  Word reversed_letters() const {
    Word out;
    for (std::size_t i = syls_.size(); i-- > 0;) out.append(syls_[i].gen, syls_[i].exp);
    return out;
  }

  long long exponent_sum(Gen g) const {
    long long sum = 0;
    for (const auto& s : syls_) {
      if (s.gen == g) sum += s.exp;
    }
    return sum;
  }

  bool operator==(const Word&) const = default;

  std::string str() const {
    if (syls_.empty()) return "1";
    std::string out;
    for (const auto& s : syls_) {
      if (!out.empty()) out += ' ';
      out += s.gen == Gen::x ? 'x' : 'y';
      if (s.exp != 1) out += "^" + std::to_string(s.exp);
    }
    return out;
  }

 private:
  std::vector<Syllable> syls_;
};

/// w = (x y^-1)^m (x^-1 y)^m, m != 0.
inline Word word_w(long long m) {
  if (m == 0) throw std::invalid_argument("word_w: m must be nonzero");
  const Word left = Word::letter(Gen::x, 1).append(Gen::y, -1);
  const Word right = Word::letter(Gen::x, -1).append(Gen::y, 1);
  return left.pow(m) * right.pow(m);
}

/// w_* = (y x^-1)^m (y^-1 x)^m, the letter reversal of w.
inline Word word_w_star(long long m) {
  if (m == 0) throw std::invalid_argument("word_w_star: m must be nonzero");
  const Word left = Word::letter(Gen::y, 1).append(Gen::x, -1);
  const Word right = Word::letter(Gen::y, -1).append(Gen::x, 1);
  return left.pow(m) * right.pow(m);
}

/// The longitude w_*^n w^n. Null-homologous: both exponent sums vanish.
/// Length grows like 8|mn|; |m|, |n| <= 64 is the supported envelope
/// (documented, not enforced).
inline Word word_longitude(long long m, long long n) {
  if (m == 0 || n == 0) throw std::invalid_argument("word_longitude: m, n must be nonzero");
  return word_w_star(m).pow(n) * word_w(m).pow(n);
}

/// Relator of the presentation <x, y | w^n x = y w^n>, as w^n x w^-n y^-1.
inline Word word_relator(long long m, long long n) {
  if (m == 0 || n == 0) throw std::invalid_argument("word_relator: m, n must be nonzero");
  const Word wn = word_w(m).pow(n);
  return wn * Word::letter(Gen::x, 1) * wn.inverse() * Word::letter(Gen::y, -1);
}

/// Ordered product substituting Mx for x and My for y. The brute-force
/// evaluation that every closed matrix formula is checked against.
template <typename Real>
Mat2<Real> eval_word(const Word& w, const Mat2<Real>& Mx, const Mat2<Real>& My) {
  Mat2<Real> acc = Mat2<Real>::identity();
  for (const auto& s : w.syllables()) {
    const Mat2<Real>& base = s.gen == Gen::x ? Mx : My;
    acc = acc * mat_pow(base, s.exp);
  }
  return acc;
}

}  // namespace slopecert
