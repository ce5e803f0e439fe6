#pragma once

// Compact oscillator monomials and lattice exponents.  A monomial is a
// sorted multiset of up to 16 factors (generator, mode) packed into four
// words; an exponent packs up to 16 small signed coordinates.  Keys built
// from these are trivially copyable and compare without touching the heap.

#include <array>
#include <cstdint>
#include <stdexcept>

#include "toroidal/root_system.hpp"

namespace toroidal {

struct engine_limit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// factor = (gen << 8) | mode, gen in [0,256), mode in [1,256)
using Factor = std::uint16_t;

inline Factor make_factor(int gen, int mode) {
  if (gen < 0 || gen > 255) throw engine_limit("generator index out of range");
  if (mode < 1 || mode > 255) throw engine_limit("oscillator mode out of range");
  return static_cast<Factor>((gen << 8) | mode);
}
inline int factor_gen(Factor f) { return f >> 8; }
inline int factor_mode(Factor f) { return f & 0xff; }

constexpr int kMaxFactors = 16;

struct PackedMonomial {
  std::array<std::uint64_t, 4> w{0, 0, 0, 0};

  friend bool operator==(const PackedMonomial&, const PackedMonomial&) = default;
  friend auto operator<=>(const PackedMonomial&, const PackedMonomial&) = default;

  bool empty() const { return w[0] == 0; }

  int unpack(Factor out[kMaxFactors]) const {
    int cnt = 0;
    for (int blk = 0; blk < 4; ++blk) {
      std::uint64_t v = w[blk];
      for (int s = 48; s >= 0; s -= 16) {
        Factor f = static_cast<Factor>((v >> s) & 0xffff);
        if (f == 0) return cnt;
        out[cnt++] = f;
      }
    }
    return cnt;
  }

  static PackedMonomial pack(const Factor* f, int cnt) {
    if (cnt > kMaxFactors) throw engine_limit("monomial exceeds 16 factors");
    PackedMonomial m;
    for (int k = 0; k < cnt; ++k) {
      int blk = k / 4, s = 48 - 16 * (k % 4);
      m.w[blk] |= static_cast<std::uint64_t>(f[k]) << s;
    }
    return m;
  }

  int count() const {
    Factor buf[kMaxFactors];
    return unpack(buf);
  }

  int energy() const {
    Factor buf[kMaxFactors];
    int cnt = unpack(buf);
    int e = 0;
    for (int k = 0; k < cnt; ++k) e += factor_mode(buf[k]);
    return e;
  }

  PackedMonomial inserted(Factor f) const {
    Factor buf[kMaxFactors + 1];
    int cnt = unpack(buf);
    int pos = cnt;
    for (int k = 0; k < cnt; ++k)
      if (buf[k] > f) {
        pos = k;
        break;
      }
    for (int k = cnt; k > pos; --k) buf[k] = buf[k - 1];
    buf[pos] = f;
    return pack(buf, cnt + 1);
  }
};

// Lattice exponent with |coordinate| <= 127, rank <= 16.
struct PackedExponent {
  std::array<std::uint64_t, 2> w{0, 0};

  friend bool operator==(const PackedExponent&, const PackedExponent&) = default;
  friend auto operator<=>(const PackedExponent&, const PackedExponent&) = default;

  static PackedExponent pack(const LatticeVector& v) {
    if (v.c.size() > 16) throw engine_limit("lattice rank exceeds 16");
    PackedExponent e;
    for (std::size_t a = 0; a < v.c.size(); ++a) {
      int x = v.c[a];
      if (x < -127 || x > 127) throw engine_limit("exponent coordinate overflow");
      int blk = static_cast<int>(a) / 8, s = 56 - 8 * (static_cast<int>(a) % 8);
      e.w[blk] |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(x + 128)) << s;
    }
    return e;
  }

  LatticeVector unpack(int rank) const {
    LatticeVector v(rank);
    for (int a = 0; a < rank; ++a) {
      int blk = a / 8, s = 56 - 8 * (a % 8);
      v.c[a] = static_cast<int>((w[blk] >> s) & 0xff) - 128;
    }
    return v;
  }

  int coord(int a) const {
    int blk = a / 8, s = 56 - 8 * (a % 8);
    return static_cast<int>((w[blk] >> s) & 0xff) - 128;
  }
};

inline long long packed_form(const PackedExponent& e, const LatticeVector& alpha) {
  long long s = 0;
  for (std::size_t a = 0; a < alpha.c.size(); ++a)
    if (alpha.c[a] != 0) s += static_cast<long long>(alpha.c[a]) * e.coord(static_cast<int>(a));
  return s;
}

}  // namespace toroidal
