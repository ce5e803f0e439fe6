#pragma once

// The full defining-relation verification suite: deterministic test-state
// generation, per-instance exact checks of relations 1-5, and the suite
// driver with aggregated reports.

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "toroidal/generator_table.hpp"

namespace toroidal {

struct SuiteConfig {
  int m = 2, n = 1;
  int mode_bound = 2;  // modes range over [-B, B]
  int energy_cap = 3;
  int charge_cap = 4;
  int word_depth = 2;
  std::set<int> relations{1, 2, 3, 4, 5};
};

struct NamedState {
  std::string id;
  TensorState state;
  bool in_chain_panel = false;
};

// One checkable relation instance.  For relation 5, `family` distinguishes
// the four shapes; `modes` has one entry per chain slot.
struct RelationInstance {
  int relation = 0;
  char family = ' ';
  int sign = +1;  // +1: x^+ side (or [h, x^+]); -1: x^- side
  int i = 0, j = 0;
  std::vector<int> modes;
};

struct RelationReport {
  RelationInstance inst;
  bool pass = true;
  long long states_checked = 0;
  std::string fail_state;
  TensorState lhs, rhs;  // retained only on failure
};

struct SuiteSummary {
  long long checked = 0, passed = 0, failed = 0;
};

struct SuiteResult {
  std::vector<RelationReport> reports;
  SuiteSummary summary;
};

namespace suite_detail {

inline void enumerate_exponents(int rank, int cap, LatticeVector& cur, int pos,
                                long long norm, std::vector<LatticeVector>& out) {
  if (pos == rank) {
    out.push_back(cur);
    return;
  }
  int bound = 0;
  while ((bound + 1) * (bound + 1) + norm <= cap) ++bound;
  for (int v = -bound; v <= bound; ++v) {
    cur.c[pos] = v;
    enumerate_exponents(rank, cap, cur, pos + 1,
                        norm + static_cast<long long>(v) * v, out);
  }
  cur.c[pos] = 0;
}

// monomials of exact energy e over `gens` generators, factors nondecreasing
inline void enumerate_monomials(int gens, int e, Factor min_factor,
                                std::vector<Factor>& cur,
                                std::vector<PackedMonomial>& out) {
  if (e == 0) {
    out.push_back(PackedMonomial::pack(cur.data(), static_cast<int>(cur.size())));
    return;
  }
  for (int g = 0; g < gens; ++g) {
    for (int k = 1; k <= e; ++k) {
      Factor f = make_factor(g, k);
      if (f < min_factor) continue;
      cur.push_back(f);
      enumerate_monomials(gens, e - k, f, cur, out);
      cur.pop_back();
    }
  }
}

inline std::string key_string(const RootSystemData& sys, const TensorKey& k) {
  std::ostringstream os;
  LatticeVector exp = k.lat.exponent.unpack(sys.rank);
  os << "e[";
  for (std::size_t a = 0; a < exp.c.size(); ++a) {
    if (a) os << ",";
    os << exp.c[a];
  }
  os << "]";
  Factor buf[kMaxFactors];
  int cnt = k.lat.heis.unpack(buf);
  for (int t = 0; t < cnt; ++t)
    os << "|h" << factor_gen(buf[t]) + 1 << "(-" << factor_mode(buf[t]) << ")";
  cnt = k.weyl.unpack(buf);
  for (int t = 0; t < cnt; ++t)
    os << "|w" << factor_gen(buf[t]) << "(-" << factor_mode(buf[t]) << ")";
  return os.str();
}

inline std::string state_signature(const RootSystemData& sys, const TensorState& s) {
  std::ostringstream os;
  for (const auto& [k, c] : s.terms)
    os << key_string(sys, k) << "*" << c.re.str() << "," << c.im.str() << ";";
  return os.str();
}

inline TensorState normalized(const TensorState& s) {
  if (s.terms.empty()) return s;
  const GaussRational lead = s.terms.front().second;
  TensorState r;
  r.terms.reserve(s.terms.size());
  for (const auto& [k, c] : s.terms) r.terms.emplace_back(k, c / lead);
  return r;
}

}  // namespace suite_detail

// Deterministic test-state list: the vacuum; monomial basis states with the
// lattice exponent in the charge ball and combined degree (oscillator
// energy + |exponent|^2) within the energy cap, pure exponents always
// included up to the charge cap; plus normalized states reached from the
// vacuum by generator words.  States reused by the long nested-chain checks
// are flagged via in_chain_panel.
inline void validate_config(const SuiteConfig& cfg) {
  if (cfg.m < 2 || cfg.n < 1) throw config_error("type D(m,n) requires m > 1, n >= 1");
  if (cfg.mode_bound < 0 || cfg.energy_cap < 0 || cfg.charge_cap < 0 ||
      cfg.word_depth < 0)
    throw config_error("suite bounds must be non-negative");
}

inline std::vector<NamedState> test_states(const RootSystemData& sys,
                                           const GeneratorTable& table,
                                           const SuiteConfig& cfg) {
  using namespace suite_detail;
  validate_config(cfg);
  std::vector<NamedState> out;
  std::set<std::string> seen;

  auto push = [&](std::string id, TensorState s, bool panel) {
    if (s.is_zero()) return;
    TensorState ns = normalized(s);
    std::string sig = state_signature(sys, ns);
    if (!seen.insert(sig).second) return;
    out.push_back({std::move(id), std::move(ns), panel});
  };

  push("vacuum", TensorState::vacuum(sys), true);

  std::vector<LatticeVector> exponents;
  LatticeVector cur(sys.rank);
  enumerate_exponents(sys.rank, cfg.charge_cap, cur, 0, 0, exponents);
  std::sort(exponents.begin(), exponents.end());

  std::vector<std::vector<PackedMonomial>> heis_by_e(cfg.energy_cap + 1);
  std::vector<std::vector<PackedMonomial>> weyl_by_e(cfg.energy_cap + 1);
  for (int e = 0; e <= cfg.energy_cap; ++e) {
    std::vector<Factor> c1, c2;
    enumerate_monomials(sys.rank, e, 0, c1, heis_by_e[e]);
    enumerate_monomials(sys.c_basis_count, e, 0, c2, weyl_by_e[e]);
  }

  for (const auto& exp : exponents) {
    long long nrm = lattice_form(exp, exp);
    long long budget = cfg.energy_cap - nrm;
    PackedExponent pexp = PackedExponent::pack(exp);
    if (budget < 0) {
      TensorKey k{{pexp, {}}, {}};
      push("b:" + key_string(sys, k), TensorState::single(k, GaussRational(1)),
           false);
      continue;
    }
    for (int eh = 0; eh <= budget; ++eh) {
      for (int ew = 0; eh + ew <= budget; ++ew) {
        for (const auto& hm : heis_by_e[eh]) {
          for (const auto& wm : weyl_by_e[ew]) {
            TensorKey k{{pexp, hm}, wm};
            bool panel = eh + ew + nrm <= 2;
            push("b:" + key_string(sys, k), TensorState::single(k, GaussRational(1)),
                 panel);
          }
        }
      }
    }
  }

  // generator words on the vacuum
  struct Word {
    std::string id;
    TensorState s;
  };
  std::vector<Word> level{{"", TensorState::vacuum(sys)}};
  for (int depth = 1; depth <= cfg.word_depth; ++depth) {
    std::vector<Word> next;
    for (const auto& w : level) {
      for (int node = 0; node < sys.num_nodes; ++node) {
        for (int r = 0; r < 3; ++r) {
          for (int k = -cfg.mode_bound; k <= cfg.mode_bound; ++k) {
            TensorState t =
                generator_mode(sys, table, node, static_cast<Role>(r), k, w.s);
            if (t.is_zero()) continue;
            std::ostringstream id;
            id << w.id << (w.id.empty() ? "" : ",") << node << "."
               << role_name(static_cast<Role>(r)) << "(" << k << ")";
            next.push_back({id.str(), std::move(t)});
          }
        }
      }
    }
    for (const auto& w : next) push("w:" + w.id, w.s, depth == 1);
    level = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Relation semantics

// Right-hand side singular part for relations 2 and 4 (i = j); the other
// right-hand sides are a plain scaled mode (relation 3) or zero.
inline OpeSingularPart relation_rhs_ope(const RootSystemData& sys,
                                        const GeneratorTable& t,
                                        const RelationInstance& inst) {
  OpeSingularPart ope;
  if (inst.relation == 2) {
    ope.add_const_central(1, GaussRational(sys.form_ij[inst.i][inst.j]));
  } else if (inst.relation == 4 && inst.i == inst.j) {
    int aa = sys.form_ij[inst.i][inst.i];
    GaussRational norm = aa == 0 ? GaussRational(-1) : GaussRational(Rat(-2, aa));
    ope.add_field(0, make_scaled(norm, t.at(inst.i, Role::cartan)));
    ope.add_const_central(1, norm);
  }
  return ope;
}

inline TensorState relation_rhs(const RootSystemData& sys, const GeneratorTable& t,
                                const RelationInstance& inst, const TensorState& s) {
  switch (inst.relation) {
    case 2:
    case 4: {
      if (inst.relation == 4 && inst.i != inst.j) return {};
      OpeSingularPart ope = relation_rhs_ope(sys, t, inst);
      return modes_from_ope(sys, ope, inst.modes[0], inst.modes[1], s,
                            t.central_value);
    }
    case 3: {
      const Role role = inst.sign > 0 ? Role::plus : Role::minus;
      GaussRational c =
          GaussRational(inst.sign) * GaussRational(sys.form_ij[inst.i][inst.j]);
      TensorState r =
          generator_mode(sys, t, inst.j, role, inst.modes[0] + inst.modes[1], s);
      return r.scaled(c);
    }
    default:
      return {};
  }
}

inline TensorState relation_lhs(const RootSystemData& sys, const GeneratorTable& t,
                                const RelationInstance& inst, const TensorState& s) {
  switch (inst.relation) {
    case 1: {
      FieldExprPtr K = make_central(t.central_value);
      Role role = static_cast<Role>(inst.j);
      return bracket_apply(sys, *K, inst.modes[0], *t.at(inst.i, role),
                           inst.modes[1], s);
    }
    case 2:
      return bracket_apply(sys, *t.at(inst.i, Role::cartan), inst.modes[0],
                           *t.at(inst.j, Role::cartan), inst.modes[1], s);
    case 3: {
      const Role role = inst.sign > 0 ? Role::plus : Role::minus;
      return bracket_apply(sys, *t.at(inst.i, Role::cartan), inst.modes[0],
                           *t.at(inst.j, role), inst.modes[1], s);
    }
    case 4:
      return bracket_apply(sys, *t.at(inst.i, Role::plus), inst.modes[0],
                           *t.at(inst.j, Role::minus), inst.modes[1], s);
    default: {  // relation 5 chains
      const Role role = inst.sign > 0 ? Role::plus : Role::minus;
      std::vector<std::pair<FieldExprPtr, int>> chain;
      for (std::size_t k = 0; k + 1 < inst.modes.size(); ++k)
        chain.emplace_back(t.at(inst.i, role), inst.modes[k]);
      chain.emplace_back(t.at(inst.j, role), inst.modes.back());
      return nested_bracket_apply(sys, chain, s);
    }
  }
}

// Checks one instance on one state.
inline RelationReport check_relation(const RootSystemData& sys,
                                     const GeneratorTable& t,
                                     const RelationInstance& inst,
                                     const NamedState& state) {
  RelationReport rep;
  rep.inst = inst;
  rep.states_checked = 1;
  TensorState lhs = relation_lhs(sys, t, inst, state.state);
  TensorState rhs = relation_rhs(sys, t, inst, state.state);
  if (lhs == rhs) return rep;
  rep.pass = false;
  rep.fail_state = state.id;
  rep.lhs = std::move(lhs);
  rep.rhs = std::move(rhs);
  return rep;
}

// Deterministic enumeration of every instance selected by the config.
inline std::vector<RelationInstance> enumerate_instances(const RootSystemData& sys,
                                                         const SuiteConfig& cfg) {
  std::vector<RelationInstance> out;
  const int B = cfg.mode_bound;
  const int N = sys.num_nodes;
  auto want = [&](int r) { return cfg.relations.count(r) > 0; };

  if (want(1)) {
    for (int i = 0; i < N; ++i)
      for (int r = 0; r < 3; ++r)
        for (int p = -B; p <= B; ++p)
          for (int q = -B; q <= B; ++q)
            out.push_back({1, ' ', +1, i, r, {p, q}});
  }
  if (want(2)) {
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        for (int p = -B; p <= B; ++p)
          for (int q = -B; q <= B; ++q)
            out.push_back({2, ' ', +1, i, j, {p, q}});
  }
  if (want(3)) {
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        for (int sign : {+1, -1})
          for (int p = -B; p <= B; ++p)
            for (int q = -B; q <= B; ++q)
              out.push_back({3, ' ', sign, i, j, {p, q}});
  }
  if (want(4)) {
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        for (int p = -B; p <= B; ++p)
          for (int q = -B; q <= B; ++q)
            out.push_back({4, ' ', +1, i, j, {p, q}});
  }
  if (want(5)) {
    for (int i = 0; i < N; ++i)
      for (int sign : {+1, -1})
        for (int p = -B; p <= B; ++p)
          for (int q = -B; q <= B; ++q)
            out.push_back({5, 'a', sign, i, i, {p, q}});
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) {
        if (i == j) continue;
        int aii = sys.cartan[i][i];
        int aij = sys.cartan[i][j];
        char family;
        int depth;  // number of x_i factors in the chain
        if (aii == 0 && aij == 0) {
          family = 'b';
          depth = 1;
        } else if (aii == 0) {
          family = 'c';
          depth = 2;
        } else {
          family = 'd';
          depth = 1 - aij;
        }
        std::vector<int> modes(static_cast<std::size_t>(depth) + 1, -B);
        for (int sign : {+1, -1}) {
          std::fill(modes.begin(), modes.end(), -B);
          while (true) {
            out.push_back({5, family, sign, i, j, modes});
            int pos = static_cast<int>(modes.size()) - 1;
            while (pos >= 0 && modes[pos] == B) modes[pos--] = -B;
            if (pos < 0) break;
            ++modes[pos];
          }
        }
      }
    }
  }
  return out;
}

namespace suite_detail {

// Two-mode instances within one (relation, family, sign, i, j) group share
// the same pair of field expressions, so single-mode actions on each state
// are computed once and reused across the whole (p, q) grid.
struct GroupPlan {
  const FieldExpr* A = nullptr;
  const FieldExpr* B = nullptr;
  int super_sign = 0;  // p(A) p(B)
  // rhs: 0 zero, 2 central only, 3 scaled generator mode, 4 cartan + central
  int rhs_kind = 0;
  GaussRational rhs_scale;          // relation 3 / 4 field coefficient
  const FieldExpr* rhs_field = nullptr;
  GaussRational rhs_central;        // coefficient of p delta_{p+q,0}
};

inline GroupPlan plan_group(const RootSystemData& sys, const GeneratorTable& t,
                            const RelationInstance& inst,
                            const FieldExprPtr& central) {
  GroupPlan g;
  switch (inst.relation) {
    case 1:
      g.A = central.get();
      g.B = t.at(inst.i, static_cast<Role>(inst.j)).get();
      break;
    case 2:
      g.A = t.at(inst.i, Role::cartan).get();
      g.B = t.at(inst.j, Role::cartan).get();
      g.rhs_kind = 2;
      g.rhs_central = GaussRational(sys.form_ij[inst.i][inst.j]) * t.central_value;
      break;
    case 3: {
      g.A = t.at(inst.i, Role::cartan).get();
      g.B = t.at(inst.j, inst.sign > 0 ? Role::plus : Role::minus).get();
      g.rhs_kind = 3;
      g.rhs_scale =
          GaussRational(inst.sign) * GaussRational(sys.form_ij[inst.i][inst.j]);
      g.rhs_field = g.B;
      break;
    }
    case 4: {
      g.A = t.at(inst.i, Role::plus).get();
      g.B = t.at(inst.j, Role::minus).get();
      if (inst.i == inst.j) {
        int aa = sys.form_ij[inst.i][inst.i];
        GaussRational norm =
            aa == 0 ? GaussRational(-1) : GaussRational(Rat(-2, aa));
        g.rhs_kind = 4;
        g.rhs_scale = norm;
        g.rhs_field = t.at(inst.i, Role::cartan).get();
        g.rhs_central = norm * t.central_value;
      }
      break;
    }
    default: {  // relation 5 pairs (chains are handled separately)
      const Role role = inst.sign > 0 ? Role::plus : Role::minus;
      g.A = t.at(inst.i, role).get();
      g.B = t.at(inst.j, role).get();
      break;
    }
  }
  g.super_sign = expr_parity(*g.A) * expr_parity(*g.B);
  return g;
}

}  // namespace suite_detail

// Runs the suite: every instance over the test states (chains of three or
// more factors over the flagged panel), aggregating one report per instance
// with the first failing state retained.
inline SuiteResult run_suite(const RootSystemData& sys, const GeneratorTable& t,
                             const SuiteConfig& cfg,
                             const std::vector<NamedState>& states) {
  using suite_detail::GroupPlan;
  validate_config(cfg);
  SuiteResult res;
  std::vector<RelationInstance> instances = enumerate_instances(sys, cfg);
  res.reports.resize(instances.size());
  for (std::size_t k = 0; k < instances.size(); ++k)
    res.reports[k].inst = instances[k];
  FieldExprPtr central = make_central(t.central_value);

  auto same_group = [](const RelationInstance& a, const RelationInstance& b) {
    return a.relation == b.relation && a.family == b.family && a.sign == b.sign &&
           a.i == b.i && a.j == b.j && a.modes.size() == b.modes.size();
  };

  std::size_t g0 = 0;
  while (g0 < instances.size()) {
    std::size_t g1 = g0 + 1;
    while (g1 < instances.size() && same_group(instances[g0], instances[g1])) ++g1;

    const bool chain = instances[g0].relation == 5 && instances[g0].modes.size() >= 3;
    if (chain) {
      for (std::size_t k = g0; k < g1; ++k) {
        RelationReport& rep = res.reports[k];
        for (const auto& st : states) {
          if (!st.in_chain_panel) continue;
          TensorState lhs = relation_lhs(sys, t, instances[k], st.state);
          ++rep.states_checked;
          if (!lhs.is_zero()) {
            rep.pass = false;
            rep.fail_state = st.id;
            rep.lhs = std::move(lhs);
            break;
          }
        }
      }
      g0 = g1;
      continue;
    }

    GroupPlan plan = suite_detail::plan_group(sys, t, instances[g0], central);
    const int B = cfg.mode_bound;
    std::size_t live = g1 - g0;
    // cached single-mode actions, reset per state
    std::vector<TensorState> evalA(2 * B + 1), evalB(2 * B + 1);
    std::vector<char> haveA(2 * B + 1, 0), haveB(2 * B + 1, 0);
    std::vector<TensorState> rhsField(4 * B + 1);
    std::vector<char> haveRhs(4 * B + 1, 0);
    for (const auto& st : states) {
      if (live == 0) break;
      std::fill(haveA.begin(), haveA.end(), 0);
      std::fill(haveB.begin(), haveB.end(), 0);
      std::fill(haveRhs.begin(), haveRhs.end(), 0);
      auto getA = [&](int p) -> const TensorState& {
        if (!haveA[p + B]) {
          evalA[p + B] = eval_mode(sys, *plan.A, p, st.state);
          haveA[p + B] = 1;
        }
        return evalA[p + B];
      };
      auto getB = [&](int q) -> const TensorState& {
        if (!haveB[q + B]) {
          evalB[q + B] = eval_mode(sys, *plan.B, q, st.state);
          haveB[q + B] = 1;
        }
        return evalB[q + B];
      };
      auto getRhsField = [&](int m) -> const TensorState& {
        if (!haveRhs[m + 2 * B]) {
          rhsField[m + 2 * B] =
              eval_mode(sys, *plan.rhs_field, m, st.state).scaled(plan.rhs_scale);
          haveRhs[m + 2 * B] = 1;
        }
        return rhsField[m + 2 * B];
      };

      for (std::size_t k = g0; k < g1; ++k) {
        RelationReport& rep = res.reports[k];
        if (!rep.pass) continue;
        int p = instances[k].modes[0], q = instances[k].modes[1];
        TensorState lhs = eval_mode(sys, *plan.A, p, getB(q));
        TensorState other = eval_mode(sys, *plan.B, q, getA(p));
        if (plan.super_sign) lhs.add_state(other);
        else lhs.sub_state(other);

        TensorState rhs;
        switch (plan.rhs_kind) {
          case 2:
            if (p + q == 0 && p != 0)
              rhs = st.state.scaled(GaussRational(p) * plan.rhs_central);
            break;
          case 3:
            rhs = getRhsField(p + q);
            break;
          case 4:
            rhs = getRhsField(p + q);
            if (p + q == 0 && p != 0)
              rhs.add_state(st.state.scaled(GaussRational(p) * plan.rhs_central));
            break;
          default:
            break;
        }
        ++rep.states_checked;
        if (!(lhs == rhs)) {
          rep.pass = false;
          rep.fail_state = st.id;
          rep.lhs = std::move(lhs);
          rep.rhs = std::move(rhs);
          --live;
        }
      }
    }
    g0 = g1;
  }

  for (const auto& rep : res.reports) {
    ++res.summary.checked;
    if (rep.pass) ++res.summary.passed;
    else ++res.summary.failed;
  }
  return res;
}

inline SuiteResult run_suite(const RootSystemData& sys, const GeneratorTable& t,
                             const SuiteConfig& cfg) {
  return run_suite(sys, t, cfg, test_states(sys, t, cfg));
}

}  // namespace toroidal
