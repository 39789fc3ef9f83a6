#pragma once

// Toy cryptographic targets with explicit tables and planted keys.

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "offsim/gf2.hpp"

namespace offsim {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Permutation {
 public:
  Permutation() = default;
  // Throws FormatError if `table` is not a bijection on n bits.
  Permutation(int n, std::vector<Word> table);

  static Permutation identity(int n);

  int width() const { return n_; }
  std::size_t size() const { return table_.size(); }
  Word operator()(Word x) const { return table_[x]; }
  Word inverse(Word y) const { return inverse_[y]; }
  const std::vector<Word>& table() const { return table_; }

  bool operator==(const Permutation& other) const { return table_ == other.table_; }

 private:
  int n_ = 0;
  std::vector<Word> table_;
  std::vector<Word> inverse_;
};

bool is_bijection(int n, const std::vector<Word>& table);

Permutation random_permutation(int n, std::uint64_t seed);

// E_k for k in {0,1}^m. Small key spaces keep every table in memory; larger
// ones regenerate a key's permutation from (seed, key) on demand.
class BlockCipherFamily {
 public:
  static constexpr int kMaxTabulatedKeyWidth = 12;

  BlockCipherFamily(int n, int m, std::vector<Permutation> tables);
  static BlockCipherFamily on_demand(int n, int m, std::uint64_t seed);

  int block_width() const { return n_; }
  int key_width() const { return m_; }
  bool tabulated() const { return !tables_.empty(); }

  Permutation permutation(Word key) const;
  Word encrypt(Word key, Word x) const;
  Word decrypt(Word key, Word y) const;

 private:
  BlockCipherFamily() = default;
  int n_ = 0;
  int m_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<Permutation> tables_;
};

BlockCipherFamily random_cipher_family(int n, int m, std::uint64_t seed);

struct EvenMansourInstance {
  Permutation perm;
  Word k1 = 0;
  Word k2 = 0;

  int width() const { return perm.width(); }
};

Word em_encrypt(const EvenMansourInstance& inst, Word x);
Word em_decrypt(const EvenMansourInstance& inst, Word y);

struct FxInstance {
  std::shared_ptr<const BlockCipherFamily> cipher;
  Word k = 0;
  Word k_in = 0;
  Word k_out = 0;

  int width() const { return cipher->block_width(); }
  int key_width() const { return cipher->key_width(); }
};

Word fx_encrypt(const FxInstance& inst, Word x);
Word fx_decrypt(const FxInstance& inst, Word y);

// Rounds of x -> E_{k2}(x ^ k1), followed by a final xor with k1.
struct IterFxInstance {
  std::shared_ptr<const BlockCipherFamily> cipher;
  Word k1 = 0;
  Word k2 = 0;
  int rounds = 2;

  int width() const { return cipher->block_width(); }
};

Word ifx_encrypt(const IterFxInstance& inst, Word x, int rounds);
Word ifx_encrypt(const IterFxInstance& inst, Word x);
Word ifx_decrypt(const IterFxInstance& inst, Word y);

// Two-block MAC pi(pi(K ^ m1) ^ m2 ^ K1) ^ K1 with a toy permutation pi and
// no tag truncation.
struct ChaskeyToy {
  Permutation pi;
  Word key = 0;
  Word k1 = 0;

  int width() const { return pi.width(); }
};

Word chaskey_tag(const ChaskeyToy& inst, Word m1, Word m2);

// Initialization f((K1 ^ N) || K2) with the rate part in the high bits.
struct BeetleToy {
  Permutation perm;
  int rate = 0;
  int capacity = 0;
  Word k1 = 0;
  Word k2 = 0;

  int state_width() const { return rate + capacity; }
};

Word beetle_init(const BeetleToy& inst, Word nonce);

struct RelatedKeyOracle {
  std::shared_ptr<const BlockCipherFamily> cipher;
  Word key = 0;

  int width() const { return cipher->block_width(); }
};

Word related_key_query(const RelatedKeyOracle& oracle, Word difference, Word msg);

// Text format: "n=<width>" then whitespace-separated hex table entries.
std::string save_permutation(const Permutation& perm);
Permutation load_permutation(std::string_view text);

// Codebook format: the permutation format with an extra "l=<width>" line.
std::string save_codebook(const TruthTable& table);
TruthTable load_codebook(std::string_view text);

// JSON descriptor {kind, n, m, seed, keys{name: hex}} from which a toy
// instance can be regenerated.
struct InstanceDescriptor {
  std::string kind;
  int n = 0;
  int m = 0;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, Word>> keys;

  nlohmann::json to_json() const;
  static InstanceDescriptor from_json(const nlohmann::json& j);
};

}  // namespace offsim
