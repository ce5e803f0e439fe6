#pragma once

// The Heisenberg algebra on L, the twisted group algebra C[L], the module
// V[L] = S(h_-) (x) C[L], and exact vertex-operator component actions.
//
// Vertex operators are never materialized as series: for a fixed target
// power of z only finitely many annihilation/creation splittings of
// E^-(-a,z) E^+(-a,z) contribute, bounded by the Heisenberg energy of the
// term being acted on.

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "toroidal/packed_factors.hpp"

namespace toroidal {

using HeisMonomial = PackedMonomial;

inline HeisMonomial heis_monomial(const std::vector<std::pair<int, int>>& factors) {
  Factor buf[kMaxFactors];
  int cnt = 0;
  for (auto [color, mode] : factors) buf[cnt++] = make_factor(color, mode);
  std::sort(buf, buf + cnt);
  return PackedMonomial::pack(buf, cnt);
}

inline int heis_energy(const HeisMonomial& mono) { return mono.energy(); }

// Basis vector of V[L]: lattice exponent plus Heisenberg monomial.
struct LatticeBasisVector {
  PackedExponent exponent;
  HeisMonomial heis;

  friend bool operator==(const LatticeBasisVector&, const LatticeBasisVector&) = default;
  friend auto operator<=>(const LatticeBasisVector&, const LatticeBasisVector&) = default;
};

struct LatticeState {
  std::map<LatticeBasisVector, GaussRational> terms;

  static LatticeState vacuum(int rank) {
    LatticeState s;
    s.terms[{PackedExponent::pack(LatticeVector(rank)), {}}] = GaussRational(1);
    return s;
  }
  void add(const LatticeBasisVector& v, const GaussRational& c) {
    if (c.is_zero()) return;
    auto it = terms.find(v);
    if (it == terms.end()) {
      terms.emplace(v, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const LatticeState& a, const LatticeState& b) {
    return a.terms == b.terms;
  }
};

// Action of the Heisenberg mode alpha(k) on one basis vector: k < 0
// multiplies, k > 0 differentiates with alpha(k).beta(-k) = k (alpha,beta),
// k = 0 reads the exponent, and the canonical central element acts as one.
template <typename Emit>
inline void heis_apply_term(const LatticeVector& alpha, int k,
                            const LatticeBasisVector& v, const GaussRational& scale,
                            Emit&& out) {
  if (k == 0) {
    long long w = packed_form(v.exponent, alpha);
    if (w != 0) out(v, scale * GaussRational(w));
    return;
  }
  if (k < 0) {
    for (std::size_t a = 0; a < alpha.c.size(); ++a) {
      if (alpha.c[a] == 0) continue;
      LatticeBasisVector next{v.exponent,
                              v.heis.inserted(make_factor(static_cast<int>(a), -k))};
      out(next, scale * GaussRational(alpha.c[a]));
    }
    return;
  }
  if (k > 255) return;
  Factor buf[kMaxFactors];
  int cnt = v.heis.unpack(buf);
  for (int pos = 0; pos < cnt; ++pos) {
    if (pos > 0 && buf[pos] == buf[pos - 1]) continue;
    if (factor_mode(buf[pos]) != k) continue;
    int color = factor_gen(buf[pos]);
    if (alpha.c[color] == 0) continue;
    long long mult = 1;
    for (int t = pos + 1; t < cnt && buf[t] == buf[pos]; ++t) ++mult;
    Factor rest[kMaxFactors];
    for (int t = 0, w = 0; t < cnt; ++t)
      if (t != pos) rest[w++] = buf[t];
    out({v.exponent, PackedMonomial::pack(rest, cnt - 1)},
        scale * GaussRational(static_cast<long long>(k) * alpha.c[color] * mult));
  }
}

inline LatticeState heis_apply(const RootSystemData&, const LatticeVector& alpha,
                               int k, const LatticeState& s) {
  LatticeState r;
  for (const auto& [v, c] : s.terms)
    heis_apply_term(alpha, k, v, c,
                    [&](const LatticeBasisVector& vv, const GaussRational& cc) {
                      r.add(vv, cc);
                    });
  return r;
}

// Left multiplication by e^alpha in the twisted group algebra.
inline LatticeState group_apply(const RootSystemData& sys, const LatticeVector& alpha,
                                const LatticeState& s) {
  LatticeState r;
  for (const auto& [v, c] : s.terms) {
    LatticeVector old = v.exponent.unpack(sys.rank);
    int sign = sys.cocycle(alpha, old);
    r.add({PackedExponent::pack(alpha + old), v.heis}, sign > 0 ? c : -c);
  }
  return r;
}

namespace lattice_detail {

inline void partitions_rec(int N, int max_part,
                           std::vector<std::pair<int, int>>& current,
                           std::vector<std::vector<std::pair<int, int>>>& out) {
  if (N == 0) {
    out.push_back(current);
    return;
  }
  for (int part = std::min(N, max_part); part >= 1; --part) {
    int used = part;
    int count = 1;
    while (used <= N) {
      current.emplace_back(part, count);
      partitions_rec(N - used, part - 1, current, out);
      current.pop_back();
      ++count;
      used += part;
    }
  }
}

inline const std::vector<std::vector<std::pair<int, int>>>& partitions_of(int N) {
  static std::vector<std::vector<std::vector<std::pair<int, int>>>> cache;
  if (N >= static_cast<int>(cache.size())) {
    for (int v = static_cast<int>(cache.size()); v <= N; ++v) {
      std::vector<std::vector<std::pair<int, int>>> res;
      std::vector<std::pair<int, int>> cur;
      partitions_rec(v, v, cur, res);
      cache.push_back(std::move(res));
    }
  }
  return cache[N];
}

}  // namespace lattice_detail

// Exact coefficient of z^{-j-1} in the vertex operator for alpha applied to
// one basis vector.  With `shifted` the operator carries the extra
// z^{(alpha,alpha)/2} power for even alpha; without it this is the plain
// operator Y(alpha, z).
template <typename Emit>
inline void vertex_apply_term(const RootSystemData& sys, const LatticeVector& alpha,
                              int j, bool shifted, const LatticeBasisVector& v,
                              const GaussRational& scale, Emit&& out) {
  long long s0 = packed_form(v.exponent, alpha);
  if (shifted && lattice_parity(alpha) == 0) s0 += lattice_form(alpha, alpha) / 2;

  LatticeVector old_exp = v.exponent.unpack(sys.rank);
  int cocycle_sign = sys.cocycle(alpha, old_exp);
  PackedExponent new_exp = PackedExponent::pack(alpha + old_exp);

  // E^+(-alpha, z): expand the exponential of annihilators mode by mode.
  struct Partial {
    HeisMonomial heis;
    GaussRational coeff;
    int removed;
  };
  // this kernel never re-enters itself, so expansion scratch persists
  static thread_local std::vector<Partial> partials;
  partials.clear();
  partials.push_back({v.heis, scale, 0});

  Factor fbuf[kMaxFactors];
  int fcnt = v.heis.unpack(fbuf);
  int modes_present[kMaxFactors];
  int nmodes = 0;
  for (int t = 0; t < fcnt; ++t) {
    int mode = factor_mode(fbuf[t]);
    bool seen = false;
    for (int q = 0; q < nmodes; ++q) seen |= modes_present[q] == mode;
    if (!seen) modes_present[nmodes++] = mode;
  }
  std::sort(modes_present, modes_present + nmodes);

  using Layer = std::vector<std::pair<HeisMonomial, GaussRational>>;
  for (int mi = 0; mi < nmodes; ++mi) {
    int k = modes_present[mi];
    std::size_t limit = partials.size();
    for (std::size_t idx = 0; idx < limit; ++idx) {
      Layer layer{{partials[idx].heis, partials[idx].coeff}};
      int removed = partials[idx].removed;
      for (int t = 1; !layer.empty(); ++t) {
        Layer next_layer;
        for (auto& [mono, c] : layer) {
          LatticeBasisVector tmp{v.exponent, mono};
          heis_apply_term(alpha, k, tmp, c,
                          [&](const LatticeBasisVector& vv, const GaussRational& cc) {
                            next_layer.emplace_back(vv.heis, cc);
                          });
        }
        std::sort(next_layer.begin(), next_layer.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        Layer merged;
        for (auto& e : next_layer) {
          if (!merged.empty() && merged.back().first == e.first)
            merged.back().second += e.second;
          else
            merged.push_back(std::move(e));
        }
        merged.erase(std::remove_if(merged.begin(), merged.end(),
                                    [](const auto& e) { return e.second.is_zero(); }),
                     merged.end());
        layer = std::move(merged);
        GaussRational factor(Rat(-1, static_cast<std::int64_t>(k) * t));
        for (auto& [mono, c] : layer) {
          c = c * factor;
          partials.push_back({mono, c, removed + t * k});
        }
      }
    }
  }

  // E^-(-alpha, z): for each E^+ outcome the creation energy is forced.
  for (const auto& part : partials) {
    long long N = static_cast<long long>(part.removed) - j - 1 - s0;
    if (N < 0) continue;
    for (const auto& lambda : lattice_detail::partitions_of(static_cast<int>(N))) {
      Layer states{{part.heis, part.coeff}};
      for (auto [r, cnt] : lambda) {
        GaussRational denom(1);
        for (int t = 1; t <= cnt; ++t)
          denom = denom * GaussRational(Rat(1, static_cast<std::int64_t>(r) * t));
        for (auto& [mono, c] : states) c = c * denom;
        for (int t = 0; t < cnt; ++t) {
          Layer next;
          for (auto& [mono, c] : states) {
            LatticeBasisVector tmp{v.exponent, mono};
            heis_apply_term(alpha, -r, tmp, c,
                            [&](const LatticeBasisVector& vv, const GaussRational& cc) {
                              next.emplace_back(vv.heis, cc);
                            });
          }
          states = std::move(next);
        }
      }
      for (auto& [mono, c] : states)
        out(LatticeBasisVector{new_exp, mono}, cocycle_sign > 0 ? c : -c);
    }
  }
}

// Component X(alpha, j) of the shifted vertex operator on a state.
inline LatticeState vertex_component_apply(const RootSystemData& sys,
                                           const LatticeVector& alpha, int j,
                                           const LatticeState& s) {
  LatticeState r;
  for (const auto& [v, c] : s.terms)
    vertex_apply_term(sys, alpha, j, /*shifted=*/true, v, c,
                      [&](const LatticeBasisVector& vv, const GaussRational& cc) {
                        r.add(vv, cc);
                      });
  return r;
}

// Vanishing bound: the component at j kills the basis vector for all j
// strictly above this value.
inline long long vertex_component_bound(const LatticeVector& alpha, bool shifted,
                                        const LatticeBasisVector& v) {
  long long b = heis_energy(v.heis) - 1 - packed_form(v.exponent, alpha);
  if (shifted && lattice_parity(alpha) == 0) b -= lattice_form(alpha, alpha) / 2;
  return b;
}

}  // namespace toroidal
