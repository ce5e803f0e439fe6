#pragma once

// The generator assignment for the level -1 representation: one field
// expression per (node, role).  Two built-in variants ship: "as-printed",
// a faithful transcription of the source table, and "corrected", the
// variant that passes the full relation suite.  The differences between
// them are listed entry by entry in the discrepancy manifest, each with a
// forcing relation instance that fails if that single entry is reverted.

#include <array>
#include <string>
#include <vector>

#include "toroidal/field_calculus.hpp"

namespace toroidal {

enum class Role { plus = 0, minus = 1, cartan = 2 };

inline const char* role_name(Role r) {
  switch (r) {
    case Role::plus: return "plus";
    case Role::minus: return "minus";
    default: return "cartan";
  }
}

enum class Variant { as_printed, corrected };

inline const char* variant_name(Variant v) {
  return v == Variant::as_printed ? "as-printed" : "corrected";
}

struct GeneratorTable {
  int m = 0, n = 0;
  std::string variant;
  GaussRational central_value{-1};
  // entries[node][role]
  std::vector<std::array<FieldExprPtr, 3>> entries;

  const FieldExprPtr& at(int node, Role r) const {
    return entries[node][static_cast<int>(r)];
  }
  FieldExprPtr& at(int node, Role r) {
    return entries[node][static_cast<int>(r)];
  }
};

namespace table_detail {

inline LatticeVector eps(const RootSystemData& sys, int a) {  // a in 1..rank
  return LatticeVector::unit(sys.rank, a - 1);
}

inline FieldAtom weyl_eps(const RootSystemData& sys, int a, bool star) {
  return WeylAtom{sys.eps_cvector(a, star)};
}
inline FieldAtom weyl_beta(const RootSystemData& sys, bool star) {
  return WeylAtom{sys.beta_cvector(star)};
}

inline FieldExprPtr quad(FieldAtom a, FieldAtom b) {
  return make_quad(std::move(a), std::move(b));
}

}  // namespace table_detail

// Builds the generator table for the requested variant.
inline GeneratorTable generator_table(const RootSystemData& sys, Variant variant) {
  using namespace table_detail;
  const int n = sys.n, m = sys.m;
  GeneratorTable t;
  t.m = m;
  t.n = n;
  t.variant = variant_name(variant);
  t.central_value = GaussRational(-1);
  t.entries.resize(sys.num_nodes);

  const GaussRational half{Rat(1, 2)};
  const GaussRational iu = GaussRational::unit_i();
  const bool printed = variant == Variant::as_printed;

  // node 0
  if (printed) {
    t.at(0, Role::plus) = make_scaled(half, quad(weyl_beta(sys, true), weyl_eps(sys, 1, true)));
    t.at(0, Role::minus) = make_scaled(half, quad(weyl_beta(sys, false), weyl_eps(sys, 1, false)));
    t.at(0, Role::cartan) = make_sum({
        make_scaled(-half, quad(weyl_eps(sys, 1, false), weyl_eps(sys, 1, true))),
        make_scaled(-half, quad(weyl_eps(sys, 1, false), weyl_beta(sys, true))),
        make_scaled(-half, quad(weyl_beta(sys, false), weyl_eps(sys, 1, true))),
        make_scaled(-half, quad(weyl_beta(sys, false), weyl_beta(sys, true))),
    });
  } else {
    t.at(0, Role::plus) = make_scaled(half, quad(weyl_eps(sys, 1, false), weyl_eps(sys, 1, false)));
    t.at(0, Role::minus) = make_scaled(half, quad(weyl_eps(sys, 1, true), weyl_eps(sys, 1, true)));
    t.at(0, Role::cartan) =
        make_scaled(GaussRational(2), quad(weyl_eps(sys, 1, false), weyl_eps(sys, 1, true)));
  }

  // nodes 1 .. n-1
  for (int i = 1; i <= n - 1; ++i) {
    if (printed) {
      t.at(i, Role::plus) =
          make_scaled(iu, quad(weyl_eps(sys, i, false), weyl_eps(sys, i + 1, true)));
      t.at(i, Role::minus) =
          make_scaled(iu, quad(weyl_eps(sys, i, true), weyl_eps(sys, i + 1, false)));
      t.at(i, Role::cartan) = make_sum({
          quad(weyl_eps(sys, i, false), weyl_eps(sys, i, false)),
          make_scaled(GaussRational(-1),
                      quad(weyl_eps(sys, i + 1, false), weyl_eps(sys, i + 1, false))),
      });
    } else {
      t.at(i, Role::plus) =
          make_scaled(iu, quad(weyl_eps(sys, i, true), weyl_eps(sys, i + 1, false)));
      t.at(i, Role::minus) =
          make_scaled(iu, quad(weyl_eps(sys, i, false), weyl_eps(sys, i + 1, true)));
      t.at(i, Role::cartan) = make_sum({
          quad(weyl_eps(sys, i + 1, false), weyl_eps(sys, i + 1, true)),
          make_scaled(GaussRational(-1),
                      quad(weyl_eps(sys, i, false), weyl_eps(sys, i, true))),
      });
    }
  }

  // node n
  {
    LatticeVector e = eps(sys, n + 1);
    if (printed) {
      t.at(n, Role::plus) = quad(VertexOp{e}, weyl_eps(sys, n, true));
      t.at(n, Role::minus) = quad(VertexOp{-e}, weyl_eps(sys, n, false));
      t.at(n, Role::cartan) = make_sum({
          make_scaled(GaussRational(-1), make_heis(e)),
          make_scaled(GaussRational(-1),
                      quad(weyl_eps(sys, n, false), weyl_eps(sys, n, true))),
      });
    } else {
      t.at(n, Role::plus) = quad(VertexOp{-e}, weyl_eps(sys, n, true));
      t.at(n, Role::minus) = quad(VertexOp{e}, weyl_eps(sys, n, false));
      t.at(n, Role::cartan) = make_sum({
          make_heis(e),
          make_scaled(GaussRational(-1),
                      quad(weyl_eps(sys, n, false), weyl_eps(sys, n, true))),
      });
    }
  }

  // nodes n+1 .. n+m-1
  for (int i = n + 1; i <= n + m - 1; ++i) {
    LatticeVector lam = eps(sys, i) - eps(sys, i + 1);
    t.at(i, Role::plus) = make_vertex(lam);
    t.at(i, Role::minus) = make_vertex(-lam);
    t.at(i, Role::cartan) = printed
                                ? make_heis(lam)
                                : make_scaled(GaussRational(-1), make_heis(lam));
  }

  // node n+m
  {
    LatticeVector lam = eps(sys, n + m - 1) + eps(sys, n + m);
    t.at(n + m, Role::plus) = make_vertex(lam);
    t.at(n + m, Role::minus) = make_vertex(-lam);
    if (printed) {
      // literal transcription, including the stray first index
      LatticeVector typo = eps(sys, n) + eps(sys, n + m);
      t.at(n + m, Role::cartan) = make_heis(typo);
    } else {
      t.at(n + m, Role::cartan) = make_scaled(GaussRational(-1), make_heis(lam));
    }
  }

  return t;
}

// Evaluates the k-th loop mode of a generator entry on a state.  All table
// entries use weight-1 components; this is eval_mode verbatim and exists as
// the single place relation checks go through.
inline TensorState generator_mode(const RootSystemData& sys, const GeneratorTable& t,
                                  int node, Role role, int k, const TensorState& s) {
  return eval_mode(sys, *t.at(node, role), k, s);
}

// One row of the discrepancy manifest: a table entry whose printed and
// corrected forms differ, plus a relation instance that fails when the
// printed form is substituted into the otherwise corrected table.
struct ForcingInstance {
  int relation = 0;   // 2, 3 or 4
  int i = 0, j = 0;
  int sign = +1;      // +1 / -1 for relation 3
  int p = 0, q = -1;  // modes; checked on the vacuum
};

struct ManifestRow {
  int node = 0;
  Role role = Role::plus;
  ForcingInstance forcing;
};

inline std::vector<ManifestRow> discrepancy_rows(const RootSystemData& sys) {
  const int n = sys.n, m = sys.m;
  std::vector<ManifestRow> rows;
  rows.push_back({0, Role::plus, {4, 0, 0, +1, 0, -1}});
  rows.push_back({0, Role::minus, {4, 0, 0, +1, 0, -1}});
  rows.push_back({0, Role::cartan, {3, 0, 0, +1, 0, -1}});
  for (int i = 1; i <= n - 1; ++i) {
    rows.push_back({i, Role::plus, {4, i, i, +1, 0, -1}});
    rows.push_back({i, Role::minus, {4, i, i, +1, 0, -1}});
    rows.push_back({i, Role::cartan, {3, i, i, +1, 0, -1}});
  }
  rows.push_back({n, Role::plus, {3, n + 1, n, +1, 0, -1}});
  rows.push_back({n, Role::minus, {4, n, n, +1, 0, -1}});
  rows.push_back({n, Role::cartan, {3, n, n + 1, +1, 0, -1}});
  for (int i = n + 1; i <= n + m - 1; ++i)
    rows.push_back({i, Role::cartan, {3, i, i, +1, 0, -1}});
  rows.push_back({n + m, Role::cartan, {3, n + m, n + m, +1, 0, -1}});
  return rows;
}

}  // namespace toroidal
