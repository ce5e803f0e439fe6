#pragma once

// The Weyl algebra of modes u(k), u in C, acting on the bosonic Fock space.
// Mode convention: [u(k), v(l)] = <u,v> delta_{k+l,-1}, so annihilators are
// exactly u(k) with k >= 0 and creators u(-k) with k >= 1, matching the
// polynomial basis of the space.

#include <map>
#include <utility>
#include <vector>

#include "toroidal/packed_factors.hpp"

namespace toroidal {

// Multiset of creation factors u_g(-k); creators commute, so the sorted
// packed form is canonical.
using WeylMonomial = PackedMonomial;

inline WeylMonomial weyl_monomial(const std::vector<std::pair<int, int>>& factors) {
  Factor buf[kMaxFactors];
  int cnt = 0;
  for (auto [gen, mode] : factors) buf[cnt++] = make_factor(gen, mode);
  std::sort(buf, buf + cnt);
  return PackedMonomial::pack(buf, cnt);
}

inline int weyl_energy(const WeylMonomial& mono) { return mono.energy(); }

struct WeylState {
  std::map<WeylMonomial, GaussRational> terms;

  static WeylState vacuum() {
    WeylState s;
    s.terms[WeylMonomial{}] = GaussRational(1);
    return s;
  }
  void add(const WeylMonomial& mono, const GaussRational& c) {
    if (c.is_zero()) return;
    auto it = terms.find(mono);
    if (it == terms.end()) {
      terms.emplace(mono, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const WeylState& a, const WeylState& b) {
    return a.terms == b.terms;
  }
};

// <u, basis_g> for a CVector u, via the precomputed basis table.
inline GaussRational weyl_pairing_with_basis(const RootSystemData& sys,
                                             const CVector& u, int g) {
  GaussRational s;
  int off = u.star ? sys.p_dim() : 0;
  for (int a = 0; a < sys.p_dim(); ++a) {
    if (u.p[a].is_zero()) continue;
    int t = sys.c_pairing_table[off + a][g];
    if (t == 0) continue;
    s += t > 0 ? u.p[a] : -u.p[a];
  }
  return s;
}

// Action of the mode u(k) on a single monomial; results are appended to
// `out` scaled by `scale`.
template <typename Emit>
inline void weyl_apply_term(const RootSystemData& sys, const CVector& u, int k,
                            const WeylMonomial& mono, const GaussRational& scale,
                            Emit&& out) {
  if (k <= -1) {
    // creation: multiply by each basis component of u
    int off = u.star ? sys.p_dim() : 0;
    for (int a = 0; a < sys.p_dim(); ++a) {
      if (u.p[a].is_zero()) continue;
      out(mono.inserted(make_factor(off + a, -k)), scale * u.p[a]);
    }
    return;
  }
  // annihilation: contract against factors of mode -(k+1)
  int want = k + 1;
  if (want > 255) return;
  Factor buf[kMaxFactors];
  int cnt = mono.unpack(buf);
  for (int pos = 0; pos < cnt; ++pos) {
    if (pos > 0 && buf[pos] == buf[pos - 1]) continue;  // distinct factors only
    if (factor_mode(buf[pos]) != want) continue;
    GaussRational pr = weyl_pairing_with_basis(sys, u, factor_gen(buf[pos]));
    if (pr.is_zero()) continue;
    long long mult = 1;
    for (int t = pos + 1; t < cnt && buf[t] == buf[pos]; ++t) ++mult;
    Factor rest[kMaxFactors];
    for (int t = 0, w = 0; t < cnt; ++t)
      if (t != pos) rest[w++] = buf[t];
    out(PackedMonomial::pack(rest, cnt - 1), scale * pr * GaussRational(mult));
  }
}

inline WeylState weyl_apply(const RootSystemData& sys, const CVector& u, int k,
                            const WeylState& s) {
  WeylState r;
  for (const auto& [mono, c] : s.terms)
    weyl_apply_term(sys, u, k, mono, c,
                    [&](const WeylMonomial& m, const GaussRational& cc) { r.add(m, cc); });
  return r;
}

// Splits a state by energy (sum of |mode| over factors).
inline std::map<int, WeylState> weyl_grade(const WeylState& s) {
  std::map<int, WeylState> g;
  for (const auto& [mono, c] : s.terms) g[weyl_energy(mono)].add(mono, c);
  return g;
}

}  // namespace toroidal
