#pragma once

// Bit-vector and GF(2) linear-algebra kernels.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace offsim {

using Word = std::uint32_t;

inline constexpr int kMaxWidth = 24;

class WidthError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Word width_mask(int width) {
  return width >= 32 ? ~Word{0} : ((Word{1} << width) - 1);
}

inline int parity(Word v) { return __builtin_parity(v); }

inline int dot(Word a, Word b) { return parity(a & b); }

void check_width(int width);

// An n-bit string with a declared width.
class BitWord {
 public:
  BitWord() = default;
  BitWord(Word bits, int width);

  Word bits() const { return bits_; }
  int width() const { return width_; }

  BitWord operator^(const BitWord& other) const;
  bool operator==(const BitWord&) const = default;

  // `*this` in the high bits, `low` in the low bits.
  BitWord concat(const BitWord& low) const;
  // Bits [offset, offset + width).
  BitWord slice(int offset, int width) const;

  std::string hex() const;

 private:
  Word bits_ = 0;
  int width_ = 1;
};

// Complete function table {0,1}^in_width -> {0,1}^out_width.
struct TruthTable {
  int in_width = 0;
  int out_width = 0;
  std::vector<Word> values;

  TruthTable() = default;
  TruthTable(int in, int out);
  TruthTable(int in, int out, std::vector<Word> vals);

  std::size_t size() const { return values.size(); }
  Word operator()(Word x) const { return values[x]; }
  bool complete() const { return values.size() == (std::size_t{1} << in_width); }
};

TruthTable xor_tables(const TruthTable& a, const TruthTable& b);

// F : {0,1}^index_width x {0,1}^in_width -> {0,1}^out_width, stored with the
// index in the high bits: values[(i << in_width) | x].
struct IndexedFamily {
  int index_width = 0;
  int in_width = 0;
  int out_width = 0;
  std::vector<Word> values;

  IndexedFamily() = default;
  IndexedFamily(int m, int n, int l);

  Word operator()(Word i, Word x) const { return values[(std::size_t{i} << in_width) | x]; }
  Word& at(Word i, Word x) { return values[(std::size_t{i} << in_width) | x]; }
  std::size_t index_count() const { return std::size_t{1} << index_width; }
  TruthTable branch(Word i) const;
};

// Incremental row-echelon basis over GF(2). Rows are kept reduced so that
// each pivot bit appears in exactly one row.
class Gf2Basis {
 public:
  explicit Gf2Basis(int width);

  int width() const { return width_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<Word>& rows() const { return rows_; }

  // Returns true iff `v` was independent of the current rows.
  bool insert(Word v);
  bool insert(const BitWord& v);

  // Reduce `v` against the basis; zero iff v is in the span.
  Word reduce(Word v) const;
  bool contains(Word v) const { return reduce(v) == 0; }

  // Basis of {t : t . r = 0 for every row r}.
  std::vector<Word> orthogonal_complement() const;

 private:
  int width_;
  std::vector<Word> rows_;
  std::vector<int> pivots_;
};

Gf2Basis rank_insert(Gf2Basis basis, const BitWord& v);

struct FullRank {};
struct Ambiguous {
  int rank = 0;
};
using PeriodSolution = std::variant<Word, FullRank, Ambiguous>;

// Rank n -> FullRank; rank n-1 -> the unique nonzero s orthogonal to every
// vector; lower rank -> Ambiguous.
PeriodSolution solve_period(std::span<const Word> vectors, int n);

int rank_of(std::span<const Word> vectors, int n);

// Solve rows[j] . u = rhs bit j. `rows` must be linearly independent.
// Returns a particular solution and a basis of the homogeneous solutions.
struct AffineSolution {
  Word particular = 0;
  std::vector<Word> kernel;
};
std::optional<AffineSolution> solve_affine(std::span<const Word> rows, Word rhs, int n);

// Unnormalized in-place Walsh-Hadamard transform.
void fwht(std::span<double> values);
std::vector<double> fwht_copy(std::span<const double> values);

}  // namespace offsim
