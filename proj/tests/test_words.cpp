#include <doctest.h>

#include <random>
#include <vector>

#include "slopecert/rep.hpp"
#include "slopecert/word.hpp"

using namespace slopecert;

namespace {

Word build(std::initializer_list<Syllable> syls) {
  Word w;
  for (const auto& s : syls) w.append(s.gen, s.exp);
  return w;
}

constexpr Gen X = Gen::x;
constexpr Gen Y = Gen::y;

// Random reduced word of at most max_syllables syllables.
Word random_word(std::mt19937_64& rng, int max_syllables) {
  Word w;
  const int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_syllables));
  for (int i = 0; i < n; ++i) {
    const Gen g = (rng() & 1) ? X : Y;
    const long long e = static_cast<long long>(rng() % 5) - 2;
    w.append(g, e);
  }
  return w;
}

Mat2<double> random_unimodular(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> entry(-2.0, 2.0);
  double a = entry(rng), b = entry(rng), c = entry(rng);
  if (std::abs(a) < 0.1) a = 1.5;
  const double d = (1.0 + b * c) / a;
  return {a, b, c, d};
}

}  // namespace

TEST_SUITE("words") {

TEST_CASE("word_w at small indices") {
  CHECK(word_w(1) == build({{X, 1}, {Y, -1}, {X, -1}, {Y, 1}}));
  CHECK(word_w(-1) == build({{Y, 1}, {X, -1}, {Y, -1}, {X, 1}}));
  // literal concatenation of (x y^-1)^2 (x^-1 y)^2 needs no cancellation
  CHECK(word_w(2) == build({{X, 1}, {Y, -1}, {X, 1}, {Y, -1}, {X, -1}, {Y, 1}, {X, -1}, {Y, 1}}));
  CHECK_THROWS_AS(word_w(0), std::invalid_argument);
}

TEST_CASE("word_w_star at small indices") {
  CHECK(word_w_star(1) == build({{Y, 1}, {X, -1}, {Y, -1}, {X, 1}}));
  // (y x^-1)^-1 (y^-1 x)^-1 = (x y^-1)(x^-1 y)
  CHECK(word_w_star(-1) == build({{X, 1}, {Y, -1}, {X, -1}, {Y, 1}}));
  CHECK_THROWS_AS(word_w_star(0), std::invalid_argument);
}

TEST_CASE("word_w_star is the letter reversal of word_w") {
  for (long long m = -6; m <= 6; ++m) {
    if (m == 0) continue;
    CHECK(word_w_star(m) == word_w(m).reversed_letters());
  }
}

TEST_CASE("longitude structure") {
  // w_* w at m = n = 1: the seam merges x . x into x^2
  CHECK(word_longitude(1, 1) ==
        build({{Y, 1}, {X, -1}, {Y, -1}, {X, 2}, {Y, -1}, {X, -1}, {Y, 1}}));
  // (1,-1): literal concatenation w_*^-1 w^-1, freely reduced
  CHECK(word_longitude(1, -1) == word_w_star(1).inverse() * word_w(1).inverse());
  CHECK_THROWS_AS(word_longitude(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(word_longitude(1, 0), std::invalid_argument);
}

TEST_CASE("longitude is null-homologous") {
  for (long long m : {-3LL, -1LL, 1LL, 2LL, 4LL}) {
    for (long long n : {-4LL, -1LL, 1LL, 3LL}) {
      const Word L = word_longitude(m, n);
      CHECK(L.exponent_sum(X) == 0);
      CHECK(L.exponent_sum(Y) == 0);
    }
  }
}

TEST_CASE("relator structure and abelianization") {
  const Word r11 = word_relator(1, 1);
  CHECK(r11 == word_w(1) * Word::letter(X, 1) * word_w(1).inverse() * Word::letter(Y, -1));
  for (long long m : {-2LL, 1LL, 3LL}) {
    for (long long n : {-3LL, 2LL}) {
      const Word r = word_relator(m, n);
      CHECK(r.exponent_sum(X) == 1);
      CHECK(r.exponent_sum(Y) == -1);
    }
  }
  CHECK_THROWS_AS(word_relator(0, 2), std::invalid_argument);
}

TEST_CASE("free reduction is confluent") {
  std::mt19937_64 rng(987654321);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Word> pieces;
    const int k = 2 + static_cast<int>(rng() % 6);
    for (int i = 0; i < k; ++i) pieces.push_back(random_word(rng, 6));
    // left fold
    Word left;
    for (const Word& p : pieces) left = left * p;
    // right fold
    Word right;
    for (std::size_t i = pieces.size(); i-- > 0;) right = pieces[i] * right;
    CHECK(left == right);
    // adjacent syllables stay reduced
    const auto& syls = left.syllables();
    for (std::size_t i = 0; i + 1 < syls.size(); ++i) {
      CHECK(syls[i].gen != syls[i + 1].gen);
      CHECK(syls[i].exp != 0);
    }
  }
}

TEST_CASE("inverse and power") {
  const Word w = word_w(2);
  CHECK((w * w.inverse()).empty());
  CHECK(w.pow(0).empty());
  CHECK(w.pow(3) == w * w * w);
  CHECK(w.pow(-2) == (w * w).inverse());
}

TEST_CASE("eval_word basics") {
  const Mat2<double> I = Mat2<double>::identity();
  std::mt19937_64 rng(55555);
  const Mat2<double> Mx = random_unimodular(rng);
  const Mat2<double> My = random_unimodular(rng);
  CHECK(max_abs_diff(eval_word(Word{}, Mx, My), I) == 0.0);
  const Word xxinv = Word::letter(X, 1) * Word::letter(X, -1);
  CHECK(xxinv.empty());
  // the same cancellation done numerically
  const Mat2<double> prod = mat_pow(Mx, 1) * mat_pow(Mx, -1);
  CHECK(rel_diff(prod, I) < 1e-12);
}

TEST_CASE("eval_word is a monoid homomorphism") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 200; ++trial) {
    const Mat2<double> Mx = random_unimodular(rng);
    const Mat2<double> My = random_unimodular(rng);
    const Word u = random_word(rng, 10);
    const Word v = random_word(rng, 10);
    if (u.letter_length() + v.letter_length() > 40) continue;
    const Mat2<double> uv = eval_word(u * v, Mx, My);
    const Mat2<double> split = eval_word(u, Mx, My) * eval_word(v, Mx, My);
    CHECK(rel_diff(uv, split) < 1e-10);
  }
}

TEST_CASE("eval_word preserves unimodularity") {
  std::mt19937_64 rng(13131);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat2<double> Mx = random_unimodular(rng);
    const Mat2<double> My = random_unimodular(rng);
    const Word w = random_word(rng, 12);
    const Mat2<double> M = eval_word(w, Mx, My);
    CHECK(std::abs(M.det() - 1.0) < 1e-9 * std::max(1.0, M.max_norm() * M.max_norm()));
  }
}

TEST_CASE("singular matrices are rejected") {
  const Mat2<double> singular{1.0, 2.0, 0.5, 1.0};  // det = 0
  const Mat2<double> ok{2.0, 0.0, 0.0, 0.5};
  CHECK_THROWS_AS(eval_word(Word::letter(X, -1), singular, ok), regime_error);
  CHECK_NOTHROW(eval_word(Word::letter(X, 1), singular, ok));  // no inverse needed
}

TEST_CASE("longitude at the top of the supported envelope") {
  const Word L = word_longitude(64, 64);
  // each of w^64 and w_*^64 carries 4 * 64 * 64 letters
  CHECK(L.letter_length() == 2 * 4 * 64 * 64);
  CHECK(L.exponent_sum(X) == 0);
  CHECK(L.exponent_sum(Y) == 0);
}

TEST_CASE("closed-form W matches the word product") {
  const auto rep = RepParams<double>::from_st(1.0, 3.0);
  const auto [Mx, My] = rho_matrices(rep);
  const Mat2<double> via_word = eval_word(word_w(2), Mx, My);
  const Mat2<double> via_closed = W_closed(2, rep);
  CHECK(rel_diff(via_word, via_closed) < 1e-9);
}

}  // TEST_SUITE
