#include "offsim/primitives.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "offsim/rng.hpp"

namespace offsim {

bool is_bijection(int n, const std::vector<Word>& table) {
  if (table.size() != (std::size_t{1} << n)) return false;
  std::vector<bool> seen(table.size(), false);
  for (Word v : table) {
    if (v >= table.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Permutation::Permutation(int n, std::vector<Word> table) : n_(n), table_(std::move(table)) {
  check_width(n);
  if (table_.size() != (std::size_t{1} << n)) {
    throw FormatError("permutation table must have 2^" + std::to_string(n) + " entries");
  }
  if (!is_bijection(n, table_)) throw FormatError("permutation table is not a bijection");
  inverse_.resize(table_.size());
  for (std::size_t x = 0; x < table_.size(); ++x) inverse_[table_[x]] = static_cast<Word>(x);
}

Permutation Permutation::identity(int n) {
  std::vector<Word> t(std::size_t{1} << n);
  std::iota(t.begin(), t.end(), Word{0});
  return {n, std::move(t)};
}

Permutation random_permutation(int n, std::uint64_t seed) {
  check_width(n);
  std::vector<Word> t(std::size_t{1} << n);
  std::iota(t.begin(), t.end(), Word{0});
  Rng rng = make_rng(seed, 0x5045524dULL);
  for (std::size_t i = t.size() - 1; i > 0; --i) {
    std::swap(t[i], t[random_below(rng, i + 1)]);
  }
  return {n, std::move(t)};
}

BlockCipherFamily::BlockCipherFamily(int n, int m, std::vector<Permutation> tables)
    : n_(n), m_(m), tables_(std::move(tables)) {
  check_width(n);
  check_width(m);
  if (tables_.size() != (std::size_t{1} << m)) {
    throw FormatError("cipher family needs one permutation per key");
  }
  for (const auto& p : tables_) {
    if (p.width() != n) throw WidthError("cipher family permutation width mismatch");
  }
}

BlockCipherFamily BlockCipherFamily::on_demand(int n, int m, std::uint64_t seed) {
  check_width(n);
  check_width(m);
  BlockCipherFamily fam;
  fam.n_ = n;
  fam.m_ = m;
  fam.seed_ = seed;
  return fam;
}

Permutation BlockCipherFamily::permutation(Word key) const {
  if (key >> m_) throw WidthError("key exceeds key width");
  if (tabulated()) return tables_[key];
  return random_permutation(n_, mix_seed(seed_, key));
}

Word BlockCipherFamily::encrypt(Word key, Word x) const {
  if (tabulated()) return tables_[key](x);
  return permutation(key)(x);
}

Word BlockCipherFamily::decrypt(Word key, Word y) const {
  if (tabulated()) return tables_[key].inverse(y);
  return permutation(key).inverse(y);
}

BlockCipherFamily random_cipher_family(int n, int m, std::uint64_t seed) {
  check_width(n);
  check_width(m);
  if (m > BlockCipherFamily::kMaxTabulatedKeyWidth || n + m > kMaxWidth) {
    return BlockCipherFamily::on_demand(n, m, seed);
  }
  std::vector<Permutation> tables;
  tables.reserve(std::size_t{1} << m);
  for (Word key = 0; key < (Word{1} << m); ++key) {
    tables.push_back(random_permutation(n, mix_seed(seed, key)));
  }
  return {n, m, std::move(tables)};
}

Word em_encrypt(const EvenMansourInstance& inst, Word x) { return inst.perm(x ^ inst.k1) ^ inst.k2; }

Word em_decrypt(const EvenMansourInstance& inst, Word y) {
  return inst.perm.inverse(y ^ inst.k2) ^ inst.k1;
}

Word fx_encrypt(const FxInstance& inst, Word x) {
  return inst.cipher->encrypt(inst.k, x ^ inst.k_in) ^ inst.k_out;
}

Word fx_decrypt(const FxInstance& inst, Word y) {
  return inst.cipher->decrypt(inst.k, y ^ inst.k_out) ^ inst.k_in;
}

Word ifx_encrypt(const IterFxInstance& inst, Word x, int rounds) {
  for (int r = 0; r < rounds; ++r) x = inst.cipher->encrypt(inst.k2, x ^ inst.k1);
  return x ^ inst.k1;
}

Word ifx_encrypt(const IterFxInstance& inst, Word x) { return ifx_encrypt(inst, x, inst.rounds); }

Word ifx_decrypt(const IterFxInstance& inst, Word y) {
  y ^= inst.k1;
  for (int r = 0; r < inst.rounds; ++r) y = inst.cipher->decrypt(inst.k2, y) ^ inst.k1;
  return y;
}

Word chaskey_tag(const ChaskeyToy& inst, Word m1, Word m2) {
  const Word state = inst.pi(inst.key ^ m1);
  return inst.pi(state ^ m2 ^ inst.k1) ^ inst.k1;
}

Word beetle_init(const BeetleToy& inst, Word nonce) {
  if (nonce >> inst.rate) throw WidthError("nonce exceeds rate width");
  return inst.perm((((inst.k1 ^ nonce) << inst.capacity)) | inst.k2);
}

Word related_key_query(const RelatedKeyOracle& oracle, Word difference, Word msg) {
  return oracle.cipher->encrypt(oracle.key ^ difference, msg);
}

namespace {

struct ParsedTable {
  int n = -1;
  int l = -1;
  std::vector<Word> values;
};

int parse_header(std::string_view line, std::string_view key) {
  auto eq = line.find('=');
  if (eq == std::string_view::npos || line.substr(0, eq) != key) {
    throw FormatError("expected header '" + std::string(key) + "=<width>'");
  }
  int w = 0;
  auto tail = line.substr(eq + 1);
  auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), w);
  if (ec != std::errc{} || ptr != tail.data() + tail.size()) throw FormatError("bad width in header");
  if (w < 0 || w > kMaxWidth) throw FormatError("width out of range in header");
  return w;
}

ParsedTable parse_table(std::string_view text, bool with_l) {
  std::istringstream in{std::string(text)};
  ParsedTable out;
  std::string line;
  auto next_line = [&]() {
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };
  if (!next_line()) throw FormatError("empty table file");
  out.n = parse_header(line, "n");
  if (with_l) {
    if (!next_line()) throw FormatError("missing l= header");
    out.l = parse_header(line, "l");
  }
  std::string tok;
  while (in >> tok) {
    Word v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v, 16);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw FormatError("bad hex value '" + tok + "'");
    }
    out.values.push_back(v);
  }
  if (out.values.size() != (std::size_t{1} << out.n)) {
    throw FormatError("expected " + std::to_string(std::size_t{1} << out.n) + " entries, got " +
                      std::to_string(out.values.size()));
  }
  return out;
}

void write_values(std::ostringstream& os, const std::vector<Word>& values) {
  os << std::hex;
  for (std::size_t i = 0; i < values.size(); ++i) {
    os << values[i] << ((i + 1) % 16 == 0 || i + 1 == values.size() ? '\n' : ' ');
  }
}

}  // namespace

std::string save_permutation(const Permutation& perm) {
  std::ostringstream os;
  os << "n=" << perm.width() << '\n';
  write_values(os, perm.table());
  return os.str();
}

Permutation load_permutation(std::string_view text) {
  auto parsed = parse_table(text, false);
  for (Word v : parsed.values) {
    if (v >> parsed.n) throw FormatError("value exceeds declared width");
  }
  if (!is_bijection(parsed.n, parsed.values)) throw FormatError("table is not a bijection");
  return {parsed.n, std::move(parsed.values)};
}

std::string save_codebook(const TruthTable& table) {
  std::ostringstream os;
  os << "n=" << table.in_width << '\n' << "l=" << table.out_width << '\n';
  write_values(os, table.values);
  return os.str();
}

TruthTable load_codebook(std::string_view text) {
  auto parsed = parse_table(text, true);
  try {
    return {parsed.n, parsed.l, std::move(parsed.values)};
  } catch (const WidthError& e) {
    throw FormatError(e.what());
  }
}

nlohmann::json InstanceDescriptor::to_json() const {
  nlohmann::json keys_json = nlohmann::json::object();
  for (const auto& [name, value] : keys) keys_json[name] = BitWord(value, kMaxWidth).hex();
  return {{"kind", kind}, {"n", n}, {"m", m}, {"seed", seed}, {"keys", keys_json}};
}

InstanceDescriptor InstanceDescriptor::from_json(const nlohmann::json& j) {
  InstanceDescriptor d;
  d.kind = j.at("kind").get<std::string>();
  d.n = j.at("n").get<int>();
  d.m = j.at("m").get<int>();
  d.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& [name, value] : j.at("keys").items()) {
    const auto s = value.get<std::string>();
    Word v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, 16);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw FormatError("bad hex key " + name);
    d.keys.emplace_back(name, v);
  }
  return d;
}

}  // namespace offsim
