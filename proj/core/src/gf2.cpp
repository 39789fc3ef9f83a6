#include "offsim/gf2.hpp"

#include <bit>
#include <sstream>

namespace offsim {

void check_width(int width) {
  if (width < 0 || width > kMaxWidth) {
    throw WidthError("bit width " + std::to_string(width) + " outside [0, " +
                     std::to_string(kMaxWidth) + "]");
  }
}

BitWord::BitWord(Word bits, int width) : bits_(bits), width_(width) {
  check_width(width);
  if ((bits & ~width_mask(width)) != 0) {
    throw WidthError("value does not fit in " + std::to_string(width) + " bits");
  }
}

BitWord BitWord::operator^(const BitWord& other) const {
  if (width_ != other.width_) throw WidthError("xor of words with different widths");
  return {bits_ ^ other.bits_, width_};
}

BitWord BitWord::concat(const BitWord& low) const {
  return {(bits_ << low.width_) | low.bits_, width_ + low.width_};
}

BitWord BitWord::slice(int offset, int width) const {
  if (offset < 0 || width < 0 || offset + width > width_) {
    throw WidthError("slice out of range");
  }
  return {(bits_ >> offset) & width_mask(width), width};
}

std::string BitWord::hex() const {
  std::ostringstream os;
  os << std::hex << bits_;
  return os.str();
}

TruthTable::TruthTable(int in, int out)
    : in_width(in), out_width(out), values(std::size_t{1} << in, 0) {
  check_width(in);
  check_width(out);
}

TruthTable::TruthTable(int in, int out, std::vector<Word> vals)
    : in_width(in), out_width(out), values(std::move(vals)) {
  check_width(in);
  check_width(out);
  if (!complete()) throw WidthError("truth table has wrong length");
  const Word mask = width_mask(out);
  for (Word v : values) {
    if ((v & ~mask) != 0) throw WidthError("truth table value exceeds output width");
  }
}

TruthTable xor_tables(const TruthTable& a, const TruthTable& b) {
  if (a.in_width != b.in_width || a.out_width != b.out_width) {
    throw WidthError("xor of tables with different signatures");
  }
  TruthTable out(a.in_width, a.out_width);
  for (std::size_t x = 0; x < a.size(); ++x) out.values[x] = a.values[x] ^ b.values[x];
  return out;
}

IndexedFamily::IndexedFamily(int m, int n, int l)
    : index_width(m), in_width(n), out_width(l) {
  check_width(m);
  check_width(n);
  check_width(l);
  if (m + n > kMaxWidth) throw WidthError("indexed family exceeds width cap");
  values.assign(std::size_t{1} << (m + n), 0);
}

TruthTable IndexedFamily::branch(Word i) const {
  const auto first = values.begin() + static_cast<std::ptrdiff_t>(std::size_t{i} << in_width);
  return {in_width, out_width, std::vector<Word>(first, first + (std::ptrdiff_t{1} << in_width))};
}

Gf2Basis::Gf2Basis(int width) : width_(width) { check_width(width); }

Word Gf2Basis::reduce(Word v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if ((v >> pivots_[r]) & 1U) v ^= rows_[r];
  }
  return v;
}

bool Gf2Basis::insert(Word v) {
  if ((v & ~width_mask(width_)) != 0) throw WidthError("vector wider than basis");
  v = reduce(v);
  if (v == 0) return false;
  const int pivot = std::bit_width(v) - 1;
  for (auto& row : rows_) {
    if ((row >> pivot) & 1U) row ^= v;
  }
  rows_.push_back(v);
  pivots_.push_back(pivot);
  return true;
}

bool Gf2Basis::insert(const BitWord& v) {
  if (v.width() != width_) throw WidthError("vector width differs from basis width");
  return insert(v.bits());
}

std::vector<Word> Gf2Basis::orthogonal_complement() const {
  Word pivot_mask = 0;
  for (int p : pivots_) pivot_mask |= Word{1} << p;
  std::vector<Word> out;
  for (int f = 0; f < width_; ++f) {
    if ((pivot_mask >> f) & 1U) continue;
    Word t = Word{1} << f;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if ((rows_[r] >> f) & 1U) t |= Word{1} << pivots_[r];
    }
    out.push_back(t);
  }
  return out;
}

Gf2Basis rank_insert(Gf2Basis basis, const BitWord& v) {
  basis.insert(v);
  return basis;
}

int rank_of(std::span<const Word> vectors, int n) {
  Gf2Basis basis(n);
  for (Word v : vectors) {
    basis.insert(v);
    if (basis.dim() == n) break;
  }
  return basis.dim();
}

PeriodSolution solve_period(std::span<const Word> vectors, int n) {
  Gf2Basis basis(n);
  for (Word v : vectors) basis.insert(v);
  if (basis.dim() == n) return FullRank{};
  if (basis.dim() == n - 1) return basis.orthogonal_complement().front();
  return Ambiguous{basis.dim()};
}

std::optional<AffineSolution> solve_affine(std::span<const Word> rows, Word rhs, int n) {
  // Augmented rows: equation bits in [0, n), right-hand side in bit n.
  std::vector<Word> aug;
  std::vector<int> pivots;
  for (std::size_t j = 0; j < rows.size(); ++j) {
    Word v = rows[j] | (((rhs >> j) & 1U) << n);
    for (std::size_t r = 0; r < aug.size(); ++r) {
      if ((v >> pivots[r]) & 1U) v ^= aug[r];
    }
    if ((v & width_mask(n)) == 0) {
      if (v != 0) return std::nullopt;
      continue;
    }
    const int pivot = std::bit_width(v & width_mask(n)) - 1;
    for (auto& row : aug) {
      if ((row >> pivot) & 1U) row ^= v;
    }
    aug.push_back(v);
    pivots.push_back(pivot);
  }
  AffineSolution sol;
  Gf2Basis basis(n);
  for (std::size_t r = 0; r < aug.size(); ++r) {
    if ((aug[r] >> n) & 1U) sol.particular |= Word{1} << pivots[r];
    basis.insert(aug[r] & width_mask(n));
  }
  sol.kernel = basis.orthogonal_complement();
  return sol;
}

void fwht(std::span<double> values) {
  const std::size_t len = values.size();
  if (len == 0 || !std::has_single_bit(len)) {
    throw std::invalid_argument("fwht length must be a power of two");
  }
  for (std::size_t h = 1; h < len; h <<= 1) {
    for (std::size_t i = 0; i < len; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = values[j];
        const double b = values[j + h];
        values[j] = a + b;
        values[j + h] = a - b;
      }
    }
  }
}

std::vector<double> fwht_copy(std::span<const double> values) {
  std::vector<double> out(values.begin(), values.end());
  fwht(out);
  return out;
}

}  // namespace offsim
