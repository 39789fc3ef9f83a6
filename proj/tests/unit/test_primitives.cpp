#include <doctest.h>

#include <memory>

#include "offsim/primitives.hpp"

using namespace offsim;

TEST_SUITE("primitives") {
  TEST_CASE("em and fx degenerate keys") {
    const EvenMansourInstance em{Permutation::identity(5), 0, 0};
    for (Word x = 0; x < 32; ++x) CHECK(em_encrypt(em, x) == x);

    auto family = std::make_shared<const BlockCipherFamily>(random_cipher_family(4, 2, 9));
    const FxInstance fx{family, 2, 0, 0};
    for (Word x = 0; x < 16; ++x) CHECK(fx_encrypt(fx, x) == family->encrypt(2, x));
  }

  TEST_CASE("round trips on seeded instances") {
    const EvenMansourInstance em{random_permutation(4, 77), 0x9, 0x3};
    for (Word x = 0; x < 16; ++x) CHECK(em_decrypt(em, em_encrypt(em, x)) == x);

    auto family = std::make_shared<const BlockCipherFamily>(random_cipher_family(5, 3, 4));
    const FxInstance fx{family, 5, 0x11, 0x07};
    for (Word x = 0; x < 32; ++x) CHECK(fx_decrypt(fx, fx_encrypt(fx, x)) == x);
    const IterFxInstance ifx{family, 0x0c, 3, 3};
    for (Word x = 0; x < 32; ++x) CHECK(ifx_decrypt(ifx, ifx_encrypt(ifx, x)) == x);
  }

  TEST_CASE("construction formulas by hand") {
    const auto p = random_permutation(6, 5);
    const ChaskeyToy ch{p, 0x2a, 0x15};
    for (Word m1 : {0u, 7u, 63u}) {
      for (Word m2 = 0; m2 < 64; ++m2) CHECK(chaskey_tag(ch, m1, m2) == (p(p(0x2a ^ m1) ^ m2 ^ 0x15) ^ 0x15));
    }
    const BeetleToy b{random_permutation(7, 6), 4, 3, 0x9, 0x5};
    for (Word nonce = 0; nonce < 16; ++nonce) CHECK(beetle_init(b, nonce) == b.perm(((0x9 ^ nonce) << 3) | 0x5));

    auto family = std::make_shared<const BlockCipherFamily>(random_cipher_family(5, 5, 8));
    const RelatedKeyOracle rk{family, 0x13};
    CHECK(related_key_query(rk, 0x04, 3) == family->encrypt(0x17, 3));

    const IterFxInstance ifx{family, 0x0c, 3, 2};
    for (Word x = 0; x < 32; ++x) {
      const Word r1 = family->encrypt(3, x ^ 0x0c);
      const Word r2 = family->encrypt(3, r1 ^ 0x0c);
      CHECK(ifx_encrypt(ifx, x) == (r2 ^ 0x0c));
    }
  }

  TEST_CASE("random permutations") {
    const auto p1 = random_permutation(1, 3);
    CHECK((p1 == Permutation::identity(1) || p1.table() == std::vector<Word>{1, 0}));
    CHECK(random_permutation(8, 42) == random_permutation(8, 42));
    auto t = random_permutation(8, 42).table();
    std::sort(t.begin(), t.end());
    for (Word x = 0; x < 256; ++x) CHECK(t[x] == x);
  }

  TEST_CASE("on-demand cipher family is deterministic") {
    const auto a = BlockCipherFamily::on_demand(6, 16, 5);
    const auto b = BlockCipherFamily::on_demand(6, 16, 5);
    CHECK_FALSE(a.tabulated());
    for (Word k : {0u, 1u, 40000u}) {
      CHECK(a.permutation(k) == b.permutation(k));
      for (Word x = 0; x < 64; ++x) CHECK(a.decrypt(k, a.encrypt(k, x)) == x);
    }
  }

  TEST_CASE("permutation file format") {
    CHECK(load_permutation("n=1\n0 1\n") == Permutation::identity(1));
    const auto p = random_permutation(6, 12);
    CHECK(load_permutation(save_permutation(p)) == p);
    CHECK_THROWS_AS(load_permutation("n=1\n0 0\n"), FormatError);
    CHECK_THROWS_AS(load_permutation("n=2\n0 1 2\n"), FormatError);

    TruthTable cb(3, 5, {1, 2, 3, 4, 5, 6, 7, 31});
    const auto back = load_codebook(save_codebook(cb));
    CHECK(back.values == cb.values);
    CHECK(back.out_width == 5);
  }

  TEST_CASE("instance descriptor round trip") {
    InstanceDescriptor d{"em", 8, 0, 99, {{"k1", 0x3c}, {"k2", 0x81}}};
    const auto back = InstanceDescriptor::from_json(d.to_json());
    CHECK(back.kind == "em");
    CHECK(back.seed == 99);
    CHECK(back.keys == d.keys);
  }
}
