#pragma once

// Field expressions and their exact mode actions on tensor states, exact
// super-brackets of modes, the symbolic contraction/Wick engine for the
// free-field closure, and the delta-calculus bridge turning singular parts
// into mode commutators.
//
// Mode conventions are uniform weight-1 loop components: every field a(z)
// is read as sum a(k) z^{-k-1}, and the mode of a vertex expression is the
// plain (unshifted) vertex-operator component.  The z^{(a,a)/2}-shifted
// components of lattice_fock are reachable through the shift bridge
// X(a, j) = Y(a, j + (a,a)/2) for even a.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "toroidal/lattice_fock.hpp"
#include "toroidal/root_system.hpp"
#include "toroidal/weyl_fock.hpp"

namespace toroidal {

struct outside_symbolic_closure : std::runtime_error {
  outside_symbolic_closure()
      : std::runtime_error("atom pair outside the symbolic closure") {}
};

// ---------------------------------------------------------------------------
// Tensor states on V[L] (x) F

struct TensorKey {
  LatticeBasisVector lat;
  WeylMonomial weyl;

  friend bool operator==(const TensorKey&, const TensorKey&) = default;
  friend auto operator<=>(const TensorKey&, const TensorKey&) = default;
};

using TermBuf = std::vector<std::pair<TensorKey, GaussRational>>;

struct TensorState {
  // sorted by key, coefficients nonzero
  TermBuf terms;

  static TensorState vacuum(const RootSystemData& sys) {
    TensorState s;
    s.terms.emplace_back(
        TensorKey{{PackedExponent::pack(LatticeVector(sys.rank)), {}}, {}},
        GaussRational(1));
    return s;
  }
  static TensorState single(const TensorKey& k, GaussRational c) {
    TensorState s;
    if (!c.is_zero()) s.terms.emplace_back(k, std::move(c));
    return s;
  }
  // Sorts and combines a raw term buffer; the buffer keeps its capacity.
  static TensorState finalize_from(TermBuf& buf) {
    std::sort(buf.begin(), buf.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    TensorState s;
    s.terms.reserve(buf.size());
    for (auto& e : buf) {
      if (e.second.is_zero()) continue;
      if (!s.terms.empty() && s.terms.back().first == e.first) {
        s.terms.back().second += e.second;
        if (s.terms.back().second.is_zero()) s.terms.pop_back();
      } else {
        s.terms.push_back(std::move(e));
      }
    }
    buf.clear();
    return s;
  }
  static TensorState finalize(TermBuf&& buf) { return finalize_from(buf); }

  void add_state(const TensorState& o) { merge(o, false); }
  void sub_state(const TensorState& o) { merge(o, true); }

  TensorState scaled(const GaussRational& s) const {
    TensorState r;
    if (s.is_zero()) return r;
    r.terms.reserve(terms.size());
    for (const auto& [k, c] : terms) r.terms.emplace_back(k, c * s);
    return r;
  }
  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const TensorState& a, const TensorState& b) {
    return a.terms == b.terms;
  }

  // homogeneous exponent parity; -1 for the zero state, -2 if mixed
  int parity(int rank) const {
    int p = -1;
    for (const auto& [k, c] : terms) {
      int tp = lattice_parity(k.lat.exponent.unpack(rank));
      if (p == -1) p = tp;
      else if (p != tp) return -2;
    }
    return p;
  }

 private:
  void merge(const TensorState& o, bool negate) {
    if (o.terms.empty()) return;
    static thread_local TermBuf merged;
    merged.clear();
    merged.reserve(terms.size() + o.terms.size());
    std::size_t a = 0, b = 0;
    while (a < terms.size() && b < o.terms.size()) {
      if (terms[a].first < o.terms[b].first) {
        merged.push_back(std::move(terms[a++]));
      } else if (o.terms[b].first < terms[a].first) {
        merged.emplace_back(o.terms[b].first,
                            negate ? -o.terms[b].second : o.terms[b].second);
        ++b;
      } else {
        GaussRational c =
            negate ? terms[a].second - o.terms[b].second
                   : terms[a].second + o.terms[b].second;
        if (!c.is_zero()) merged.emplace_back(terms[a].first, std::move(c));
        ++a;
        ++b;
      }
    }
    while (a < terms.size()) merged.push_back(std::move(terms[a++]));
    while (b < o.terms.size()) {
      merged.emplace_back(o.terms[b].first,
                          negate ? -o.terms[b].second : o.terms[b].second);
      ++b;
    }
    terms.swap(merged);  // old storage stays behind as reusable capacity
  }
};

// ---------------------------------------------------------------------------
// Field expressions

struct WeylAtom {
  CVector u;
};
struct HeisCurrent {
  LatticeVector alpha;
};
struct VertexOp {
  LatticeVector alpha;
};

using FieldAtom = std::variant<WeylAtom, HeisCurrent, VertexOp>;

inline int atom_parity(const FieldAtom& a) {
  if (std::holds_alternative<VertexOp>(a))
    return lattice_parity(std::get<VertexOp>(a).alpha);
  return 0;
}

struct FieldExpr;
using FieldExprPtr = std::shared_ptr<const FieldExpr>;

struct NormalQuad {
  FieldAtom a, b;
};
struct ScalarMul {
  GaussRational c;
  FieldExprPtr e;
};
struct Sum {
  std::vector<FieldExprPtr> terms;
};
struct CentralK {
  GaussRational value{-1};
};

struct FieldExpr {
  std::variant<WeylAtom, HeisCurrent, VertexOp, NormalQuad, ScalarMul, Sum,
               CentralK>
      node;
};

inline FieldExprPtr make_weyl(CVector u) {
  return std::make_shared<FieldExpr>(FieldExpr{WeylAtom{std::move(u)}});
}
inline FieldExprPtr make_heis(LatticeVector a) {
  return std::make_shared<FieldExpr>(FieldExpr{HeisCurrent{std::move(a)}});
}
inline FieldExprPtr make_vertex(LatticeVector a) {
  return std::make_shared<FieldExpr>(FieldExpr{VertexOp{std::move(a)}});
}
inline FieldExprPtr make_quad(FieldAtom a, FieldAtom b) {
  return std::make_shared<FieldExpr>(
      FieldExpr{NormalQuad{std::move(a), std::move(b)}});
}
inline FieldExprPtr make_scaled(GaussRational c, FieldExprPtr e) {
  return std::make_shared<FieldExpr>(FieldExpr{ScalarMul{std::move(c), std::move(e)}});
}
inline FieldExprPtr make_sum(std::vector<FieldExprPtr> terms) {
  return std::make_shared<FieldExpr>(FieldExpr{Sum{std::move(terms)}});
}
inline FieldExprPtr make_central(GaussRational v = GaussRational(-1)) {
  return std::make_shared<FieldExpr>(FieldExpr{CentralK{std::move(v)}});
}

struct parity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline int expr_parity(const FieldExpr& e) {
  return std::visit(
      [](const auto& node) -> int {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, WeylAtom> ||
                      std::is_same_v<T, HeisCurrent> ||
                      std::is_same_v<T, CentralK>) {
          return 0;
        } else if constexpr (std::is_same_v<T, VertexOp>) {
          return lattice_parity(node.alpha);
        } else if constexpr (std::is_same_v<T, NormalQuad>) {
          return (atom_parity(node.a) + atom_parity(node.b)) % 2;
        } else if constexpr (std::is_same_v<T, ScalarMul>) {
          return expr_parity(*node.e);
        } else {  // Sum
          int p = -1;
          for (const auto& t : node.terms) {
            int tp = expr_parity(*t);
            if (p == -1) p = tp;
            else if (p != tp)
              throw parity_error("sum of fields with mixed parity");
          }
          return p == -1 ? 0 : p;
        }
      },
      e.node);
}

// ---------------------------------------------------------------------------
// Atom actions and annihilator bounds

namespace calc_detail {

// Largest mode k for which atom(k) can act non-trivially on the state; the
// annihilator-side mode sums in normal products stop above it.
inline long long ann_bound(const RootSystemData&, const FieldAtom& atom,
                           const TensorState& s) {
  long long bound = -1;
  Factor buf[kMaxFactors];
  for (const auto& [key, c] : s.terms) {
    if (std::holds_alternative<WeylAtom>(atom)) {
      int cnt = key.weyl.unpack(buf);
      for (int t = 0; t < cnt; ++t)
        bound = std::max(bound, static_cast<long long>(factor_mode(buf[t])) - 1);
    } else if (std::holds_alternative<HeisCurrent>(atom)) {
      bound = std::max(bound, static_cast<long long>(0));
      int cnt = key.lat.heis.unpack(buf);
      for (int t = 0; t < cnt; ++t)
        bound = std::max(bound, static_cast<long long>(factor_mode(buf[t])));
    } else {
      const auto& a = std::get<VertexOp>(atom).alpha;
      bound = std::max(bound, vertex_component_bound(a, /*shifted=*/false, key.lat));
    }
  }
  return bound;
}

// Value-transparent cache for unshifted vertex components: the action on a
// basis vector of V[L] is deterministic in (alpha, k, vector), and relation
// checks revisit the same triples across many mode pairs and states.
struct VertexCacheKey {
  PackedExponent alpha;
  int k = 0;
  LatticeBasisVector lat;
  friend bool operator==(const VertexCacheKey&, const VertexCacheKey&) = default;
};

struct VertexCacheHash {
  std::size_t operator()(const VertexCacheKey& key) const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    mix(key.alpha.w[0]);
    mix(key.alpha.w[1]);
    mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(key.k)));
    mix(key.lat.exponent.w[0]);
    mix(key.lat.exponent.w[1]);
    for (auto w : key.lat.heis.w) mix(w);
    return static_cast<std::size_t>(h);
  }
};

using VertexResult = std::vector<std::pair<LatticeBasisVector, GaussRational>>;

inline const VertexResult& vertex_apply_cached(const RootSystemData& sys,
                                               const LatticeVector& alpha, int k,
                                               const LatticeBasisVector& lat) {
  static thread_local std::unordered_map<VertexCacheKey, VertexResult,
                                         VertexCacheHash>
      cache;
  VertexCacheKey key{PackedExponent::pack(alpha), k, lat};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  VertexResult res;
  vertex_apply_term(sys, alpha, k, /*shifted=*/false, lat, GaussRational(1),
                    [&](const LatticeBasisVector& v, const GaussRational& c) {
                      res.emplace_back(v, c);
                    });
  if (cache.size() > (1u << 22)) cache.clear();
  return cache.emplace(key, std::move(res)).first->second;
}

template <typename Emit>
inline void atom_apply_emit(const RootSystemData& sys, const FieldAtom& atom, int k,
                            const TensorKey& key, const GaussRational& c,
                            Emit&& emit) {
  if (std::holds_alternative<WeylAtom>(atom)) {
    weyl_apply_term(sys, std::get<WeylAtom>(atom).u, k, key.weyl, c,
                    [&](const WeylMonomial& m, const GaussRational& cc) {
                      emit(TensorKey{key.lat, m}, cc);
                    });
  } else if (std::holds_alternative<HeisCurrent>(atom)) {
    heis_apply_term(std::get<HeisCurrent>(atom).alpha, k, key.lat, c,
                    [&](const LatticeBasisVector& v, const GaussRational& cc) {
                      emit(TensorKey{v, key.weyl}, cc);
                    });
  } else {
    const VertexResult& res =
        vertex_apply_cached(sys, std::get<VertexOp>(atom).alpha, k, key.lat);
    for (const auto& [v, cc] : res) emit(TensorKey{v, key.weyl}, c * cc);
  }
}

inline TensorState atom_mode_apply(const RootSystemData& sys, const FieldAtom& atom,
                                   int k, const TensorState& s) {
  TermBuf buf;
  for (const auto& [key, c] : s.terms)
    atom_apply_emit(sys, atom, k, key, c,
                    [&](const TensorKey& kk, const GaussRational& cc) {
                      buf.emplace_back(kk, cc);
                    });
  return TensorState::finalize(std::move(buf));
}

}  // namespace calc_detail

// ---------------------------------------------------------------------------
// Mode evaluation

// Exact action of the z^{-k-1} coefficient of the field expression on s.
inline TensorState eval_mode(const RootSystemData& sys, const FieldExpr& e, int k,
                             const TensorState& s) {
  using calc_detail::ann_bound;
  using calc_detail::atom_mode_apply;
  return std::visit(
      [&](const auto& node) -> TensorState {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, WeylAtom> ||
                      std::is_same_v<T, HeisCurrent> ||
                      std::is_same_v<T, VertexOp>) {
          FieldAtom atom{node};
          return atom_mode_apply(sys, atom, k, s);
        } else if constexpr (std::is_same_v<T, CentralK>) {
          // constant field: only the z^0 coefficient acts
          return k == -1 ? s.scaled(node.value) : TensorState{};
        } else if constexpr (std::is_same_v<T, ScalarMul>) {
          return eval_mode(sys, *node.e, k, s).scaled(node.c);
        } else if constexpr (std::is_same_v<T, Sum>) {
          TensorState r;
          for (const auto& t : node.terms) r.add_state(eval_mode(sys, *t, k, s));
          return r;
        } else {  // NormalQuad: creation part left, annihilators right
          bool koszul = atom_parity(node.a) * atom_parity(node.b) != 0;
          // quad evaluation never re-enters itself (atoms only), so scratch
          // storage can persist across calls
          static thread_local TermBuf acc, scratch;
          acc.clear();
          auto into_scratch = [&](const TensorKey& kk, const GaussRational& cc) {
            scratch.emplace_back(kk, cc);
          };
          long long bq = ann_bound(sys, node.b, s);
          for (int p = -1; k - 1 - p <= bq; --p) {
            scratch.clear();
            for (const auto& [key, c] : s.terms)
              calc_detail::atom_apply_emit(sys, node.b, k - 1 - p, key, c,
                                           into_scratch);
            for (const auto& [key, c] : scratch)
              calc_detail::atom_apply_emit(
                  sys, node.a, p, key, c,
                  [&](const TensorKey& kk, const GaussRational& cc) {
                    acc.emplace_back(kk, cc);
                  });
          }
          long long ba = ann_bound(sys, node.a, s);
          for (int p = 0; p <= ba; ++p) {
            scratch.clear();
            for (const auto& [key, c] : s.terms)
              calc_detail::atom_apply_emit(sys, node.a, p, key, c, into_scratch);
            for (const auto& [key, c] : scratch)
              calc_detail::atom_apply_emit(
                  sys, node.b, k - 1 - p, key, c,
                  [&](const TensorKey& kk, const GaussRational& cc) {
                    acc.emplace_back(kk, koszul ? -cc : cc);
                  });
          }
          return TensorState::finalize_from(acc);
        }
      },
      e.node);
}

// [a(p), b(q)] s with the super sign fixed by the expressions' parities.
inline TensorState bracket_apply(const RootSystemData& sys, const FieldExpr& a,
                                 int p, const FieldExpr& b, int q,
                                 const TensorState& s) {
  bool anti = expr_parity(a) != 0 && expr_parity(b) != 0;
  TensorState r = eval_mode(sys, a, p, eval_mode(sys, b, q, s));
  TensorState t = eval_mode(sys, b, q, eval_mode(sys, a, p, s));
  if (anti) r.add_state(t);
  else r.sub_state(t);
  return r;
}

// Right-nested super-bracket [a1(k1), [a2(k2), ... [an-1, an] ...]] s.
inline TensorState nested_bracket_apply(
    const RootSystemData& sys,
    const std::vector<std::pair<FieldExprPtr, int>>& chain, const TensorState& s) {
  if (chain.size() < 2)
    throw std::invalid_argument("nested bracket needs at least two factors");
  struct Op {
    static TensorState run(const RootSystemData& sys,
                           const std::vector<std::pair<FieldExprPtr, int>>& ch,
                           std::size_t i, const TensorState& s) {
      if (i + 1 == ch.size()) return eval_mode(sys, *ch[i].first, ch[i].second, s);
      int p_head = expr_parity(*ch[i].first);
      int p_tail = 0;
      for (std::size_t j = i + 1; j < ch.size(); ++j)
        p_tail = (p_tail + expr_parity(*ch[j].first)) % 2;
      TensorState inner = run(sys, ch, i + 1, s);
      TensorState lhs = eval_mode(sys, *ch[i].first, ch[i].second, inner);
      TensorState head_first = eval_mode(sys, *ch[i].first, ch[i].second, s);
      TensorState rhs = run(sys, ch, i + 1, head_first);
      if (p_head != 0 && p_tail != 0) lhs.add_state(rhs);
      else lhs.sub_state(rhs);
      return lhs;
    }
  };
  return Op::run(sys, chain, 0, s);
}

// ---------------------------------------------------------------------------
// Symbolic singular parts

// Coefficient of d_w^{(j)} delta(z-w) in a bracket: a constant multiple of
// the identity, a constant multiple of the central element, and/or a field.
struct OpeCoeff {
  GaussRational const_id;
  GaussRational const_central;
  FieldExprPtr field;  // may be null

  bool is_zero() const {
    return const_id.is_zero() && const_central.is_zero() && field == nullptr;
  }
};

struct OpeSingularPart {
  std::map<int, OpeCoeff> coeff;  // j -> coefficient of d^{(j)} delta

  void add_const_id(int j, const GaussRational& c) {
    if (c.is_zero()) return;
    coeff[j].const_id += c;
    prune(j);
  }
  void add_const_central(int j, const GaussRational& c) {
    if (c.is_zero()) return;
    coeff[j].const_central += c;
    prune(j);
  }
  void add_field(int j, FieldExprPtr f) {
    auto& slot = coeff[j];
    if (!slot.field) {
      slot.field = std::move(f);
    } else {
      slot.field = make_sum({slot.field, std::move(f)});
    }
  }
  void prune(int j) {
    auto it = coeff.find(j);
    if (it != coeff.end() && it->second.is_zero()) coeff.erase(it);
  }
};

// Contraction of two atoms per the free-field dictionary:
//   weyl x weyl                   -> <u,v>/(z-w)
//   heis x heis                   -> (a,b)/(z-w)^2
//   weyl x heis, weyl x vertex    -> 0
//   vertex(+-e_i) x vertex(-+e_j) -> delta_ij F /(z-w); other unit pairs 0
// Anything else is outside the symbolic closure.
inline OpeSingularPart contract(const RootSystemData& sys, const FieldAtom& a,
                                const FieldAtom& b) {
  OpeSingularPart r;
  if (std::holds_alternative<WeylAtom>(a) && std::holds_alternative<WeylAtom>(b)) {
    r.add_const_id(0, sys.c_pairing(std::get<WeylAtom>(a).u, std::get<WeylAtom>(b).u));
    return r;
  }
  if (std::holds_alternative<HeisCurrent>(a) &&
      std::holds_alternative<HeisCurrent>(b)) {
    r.add_const_id(1, GaussRational(lattice_form(std::get<HeisCurrent>(a).alpha,
                                                 std::get<HeisCurrent>(b).alpha)));
    return r;
  }
  if (std::holds_alternative<WeylAtom>(a) || std::holds_alternative<WeylAtom>(b))
    return r;  // the two tensor factors never contract
  if (std::holds_alternative<VertexOp>(a) && std::holds_alternative<VertexOp>(b)) {
    const auto& x = std::get<VertexOp>(a).alpha;
    const auto& y = std::get<VertexOp>(b).alpha;
    auto is_unit = [](const LatticeVector& v) {
      long long nz = 0;
      for (int c : v.c) nz += static_cast<long long>(c) * c;
      return nz == 1;
    };
    if (is_unit(x) && is_unit(y)) {
      if ((x + y).is_zero())
        r.add_const_id(0, GaussRational(sys.cocycle(x, y)));
      return r;  // non-conjugate unit pairs contract to zero
    }
    throw outside_symbolic_closure{};
  }
  throw outside_symbolic_closure{};
}

namespace wick_detail {

// Linearized symbolic field: scalar multiples of atoms or ordered pairs of
// atoms.  Only Weyl and Heisenberg atoms are admitted; vertex factors fall
// outside the closure.
struct SymTerm {
  GaussRational coeff;
  std::vector<FieldAtom> atoms;  // size 1 or 2
};

inline void flatten(const FieldExpr& e, GaussRational scale,
                    std::vector<SymTerm>& out) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, WeylAtom> || std::is_same_v<T, HeisCurrent>) {
          out.push_back({scale, {FieldAtom{node}}});
        } else if constexpr (std::is_same_v<T, VertexOp>) {
          throw outside_symbolic_closure{};
        } else if constexpr (std::is_same_v<T, NormalQuad>) {
          if (std::holds_alternative<VertexOp>(node.a) ||
              std::holds_alternative<VertexOp>(node.b))
            throw outside_symbolic_closure{};
          out.push_back({scale, {node.a, node.b}});
        } else if constexpr (std::is_same_v<T, ScalarMul>) {
          flatten(*node.e, scale * node.c, out);
        } else if constexpr (std::is_same_v<T, Sum>) {
          for (const auto& t : node.terms) flatten(*t, scale, out);
        } else {
          // the central scalar has zero bracket with everything
        }
      },
      e.node);
}

// c-number contraction of two closure atoms: (value, pole order j).
inline std::optional<std::pair<GaussRational, int>> pair_value(
    const RootSystemData& sys, const FieldAtom& a, const FieldAtom& b) {
  OpeSingularPart p = contract(sys, a, b);
  if (p.coeff.empty()) return std::nullopt;
  auto it = p.coeff.begin();
  return std::make_pair(it->second.const_id, it->first);
}

}  // namespace wick_detail

// Singular part of the super-bracket of two fields from the free-field
// closure (sums of scalars times atoms or normally ordered quadratics in
// Weyl/Heisenberg atoms), computed by Wick's theorem.  All closure atoms
// are even, so no sign rearrangements arise.
inline OpeSingularPart wick_ope(const RootSystemData& sys, const FieldExpr& ea,
                                const FieldExpr& eb) {
  using wick_detail::SymTerm;
  std::vector<SymTerm> A, B;
  wick_detail::flatten(ea, GaussRational(1), A);
  wick_detail::flatten(eb, GaussRational(1), B);

  OpeSingularPart out;
  auto add_field = [&](int j, const GaussRational& c, std::vector<FieldAtom> atoms) {
    if (c.is_zero()) return;
    FieldExprPtr f;
    if (atoms.size() == 1) {
      if (std::holds_alternative<WeylAtom>(atoms[0]))
        f = make_weyl(std::get<WeylAtom>(atoms[0]).u);
      else
        f = make_heis(std::get<HeisCurrent>(atoms[0]).alpha);
    } else {
      f = make_quad(atoms[0], atoms[1]);
    }
    out.add_field(j, make_scaled(c, std::move(f)));
  };

  for (const auto& ta : A) {
    for (const auto& tb : B) {
      GaussRational c = ta.coeff * tb.coeff;
      const auto& fa = ta.atoms;
      const auto& fb = tb.atoms;
      if (fa.size() == 1 && fb.size() == 1) {
        auto pv = wick_detail::pair_value(sys, fa[0], fb[0]);
        if (pv) out.add_const_id(pv->second, c * pv->first);
      } else if (fa.size() == 1 && fb.size() == 2) {
        // [u(z), :cd:(w)] = <u,c> d(w) delta + <u,d> c(w) delta
        auto p1 = wick_detail::pair_value(sys, fa[0], fb[0]);
        auto p2 = wick_detail::pair_value(sys, fa[0], fb[1]);
        if ((p1 && p1->second > 0) || (p2 && p2->second > 0))
          throw outside_symbolic_closure{};
        if (p1) add_field(0, c * p1->first, {fb[1]});
        if (p2) add_field(0, c * p2->first, {fb[0]});
      } else if (fa.size() == 2 && fb.size() == 1) {
        auto p1 = wick_detail::pair_value(sys, fa[0], fb[0]);
        auto p2 = wick_detail::pair_value(sys, fa[1], fb[0]);
        if ((p1 && p1->second > 0) || (p2 && p2->second > 0))
          throw outside_symbolic_closure{};
        if (p1) add_field(0, c * p1->first, {fa[1]});
        if (p2) add_field(0, c * p2->first, {fa[0]});
      } else {
        // quadratic x quadratic: four single contractions, two doubles
        const FieldAtom &a0 = fa[0], &a1 = fa[1], &b0 = fb[0], &b1 = fb[1];
        auto p00 = wick_detail::pair_value(sys, a0, b0);
        auto p01 = wick_detail::pair_value(sys, a0, b1);
        auto p10 = wick_detail::pair_value(sys, a1, b0);
        auto p11 = wick_detail::pair_value(sys, a1, b1);
        for (const auto& p : {p00, p01, p10, p11})
          if (p && p->second != 0) throw outside_symbolic_closure{};
        if (p00) add_field(0, c * p00->first, {a1, b1});
        if (p01) add_field(0, c * p01->first, {a1, b0});
        if (p10) add_field(0, c * p10->first, {a0, b1});
        if (p11) add_field(0, c * p11->first, {a0, b0});
        GaussRational dbl;
        if (p00 && p11) dbl += p00->first * p11->first;
        if (p01 && p10) dbl += p01->first * p10->first;
        out.add_const_id(1, c * dbl);
      }
    }
  }
  return out;
}

// Mode bridge: [a(p), b(q)] = sum_j binom(p, j) c^j(p + q - j), with the
// constant coefficients contributing exactly when p + q = j - 1.
inline TensorState modes_from_ope(const RootSystemData& sys,
                                  const OpeSingularPart& ope, int p, int q,
                                  const TensorState& s,
                                  const GaussRational& central_value = GaussRational(-1)) {
  TensorState r;
  for (const auto& [j, co] : ope.coeff) {
    GaussRational bin = binomial_scalar(p, j);
    if (bin.is_zero()) continue;
    if (!co.const_id.is_zero() || !co.const_central.is_zero()) {
      if (p + q == j - 1) {
        GaussRational c = co.const_id + co.const_central * central_value;
        r.add_state(s.scaled(bin * c));
      }
    }
    if (co.field) {
      TensorState t = eval_mode(sys, *co.field, p + q - j, s);
      r.add_state(t.scaled(bin));
    }
  }
  return r;
}

}  // namespace toroidal
