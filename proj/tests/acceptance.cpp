// Acceptance suite: runs every acceptance criterion at its pinned
// parameters and prints one pass/fail line per criterion.  Exits nonzero
// if any criterion fails.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "toroidal/expr_io.hpp"

using namespace toroidal;

namespace {

struct Outcome {
  bool ok = true;
  void line(int crit, const std::string& what, bool pass,
            const std::string& extra = "") {
    std::cout << "criterion " << crit << ": " << what << ": "
              << (pass ? "PASS" : "FAIL");
    if (!extra.empty()) std::cout << " [" << extra << "]";
    std::cout << std::endl;
    ok = ok && pass;
  }
};

SuiteConfig grid_config(int m, int n) {
  SuiteConfig cfg;
  cfg.m = m;
  cfg.n = n;
  cfg.mode_bound = 2;
  cfg.energy_cap = 3;
  cfg.charge_cap = 4;
  cfg.word_depth = 2;
  return cfg;
}

LatticeVector eps(const RootSystemData& sys, int a) {
  return LatticeVector::unit(sys.rank, a - 1);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// lattice-side states (trivial Weyl factor) with osc energy + |charge|^2
// within the cap
std::vector<TensorState> lattice_states(const RootSystemData& sys, int cap) {
  std::vector<TensorState> out;
  std::vector<LatticeVector> exps;
  LatticeVector cur(sys.rank);
  suite_detail::enumerate_exponents(sys.rank, cap, cur, 0, 0, exps);
  std::sort(exps.begin(), exps.end());
  for (const auto& g : exps) {
    long long nrm = lattice_form(g, g);
    std::vector<PackedMonomial> monos;
    for (int e = 0; e + nrm <= cap; ++e) {
      std::vector<Factor> scratch;
      suite_detail::enumerate_monomials(sys.rank, e, 0, scratch, monos);
    }
    for (const auto& hm : monos)
      out.push_back(TensorState::single({{PackedExponent::pack(g), hm}, {}},
                                        GaussRational(1)));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::string data_dir = argc > 1 ? argv[1] : "data";
  Outcome out;

  // the grid is pinned by the committed configuration file
  std::vector<std::pair<int, int>> grid;
  {
    std::string cfg_text = read_file(data_dir + "/acceptance_grid.json");
    if (cfg_text.empty()) {
      std::cerr << "cannot read " << data_dir << "/acceptance_grid.json\n";
      return 1;
    }
    auto j = nlohmann::json::parse(cfg_text);
    for (const auto& s : j["systems"])
      grid.emplace_back(s[0].get<int>(), s[1].get<int>());
    if (j["mode_bound"] != 2 || j["energy_cap"] != 3 || j["charge_cap"] != 4 ||
        j["word_depth"] != 2) {
      std::cerr << "acceptance_grid.json caps differ from the pinned ones\n";
      return 1;
    }
  }

  // ------------------------------------------------------------------ 1, 7
  std::vector<std::string> first_reports, second_reports;
  for (auto [m, n] : grid) {
    auto t0 = std::chrono::steady_clock::now();
    RootSystemData sys = build_system(m, n);
    GeneratorTable table = generator_table(sys, Variant::corrected);
    SuiteConfig cfg = grid_config(m, n);
    auto states = test_states(sys, table, cfg);
    SuiteResult res = run_suite(sys, table, cfg, states);
    first_reports.push_back(render_report(sys, table, cfg, res, "json"));
    std::ostringstream extra;
    extra << "instances=" << res.summary.checked << " states=" << states.size()
          << " time=" << static_cast<int>(seconds_since(t0)) << "s";
    out.line(1, "relation suite D(" + std::to_string(m) + "," + std::to_string(n) +
                    "), corrected, exact",
             res.summary.failed == 0, extra.str());
  }

  // ------------------------------------------------------------------ 2
  {
    bool ok = true;
    long long harvested = 0;
    for (auto [m, n] : grid) {
      RootSystemData sys = build_system(m, n);
      GeneratorTable t = generator_table(sys, Variant::corrected);
      TensorState vac = TensorState::vacuum(sys);
      // relation 2: symbolic central coefficients for every cartan pair
      for (int i = 0; i < sys.num_nodes; ++i)
        for (int j = 0; j < sys.num_nodes; ++j) {
          OpeSingularPart ope =
              wick_ope(sys, *t.at(i, Role::cartan), *t.at(j, Role::cartan));
          GaussRational got;
          if (ope.coeff.count(1)) got = ope.coeff.at(1).const_id;
          ok = ok && got == GaussRational(sys.form_ij[i][j]) * GaussRational(-1);
          ++harvested;
        }
      // relation 4: the delta' coefficient of [x_i^+, x_i^-] equals
      // norm_i * K with K = -1, extracted on the vacuum at modes (1,-1)
      for (int i = 0; i < sys.num_nodes; ++i) {
        int aa = sys.form_ij[i][i];
        GaussRational norm = aa == 0 ? GaussRational(-1) : GaussRational(Rat(-2, aa));
        TensorState lhs = bracket_apply(sys, *t.at(i, Role::plus), 1,
                                        *t.at(i, Role::minus), -1, vac);
        // the field part of the right side vanishes on the vacuum at mode 0
        TensorState expect = vac.scaled(norm * GaussRational(-1));
        ok = ok && lhs == expect;
        ++harvested;
      }
      // the explicit display: [a_0(1), a_0(-1)] acts as -4 id on the vacuum
      TensorState disp = bracket_apply(sys, *t.at(0, Role::cartan), 1,
                                       *t.at(0, Role::cartan), -1, vac);
      ok = ok && disp == vac.scaled(GaussRational(-4));
    }
    out.line(2, "level -1 central coefficients", ok,
             "harvested=" + std::to_string(harvested));
  }

  // ------------------------------------------------------------------ 3
  {
    bool ok = true;
    long long instances = 0, mismatches = 0;
    for (auto [m, n] : grid) {
      RootSystemData sys = build_system(m, n);
      GeneratorTable t = generator_table(sys, Variant::corrected);
      // generator entries inside the free-field closure, nodes 0..n
      std::vector<FieldExprPtr> closure;
      for (int node = 0; node <= sys.n; ++node)
        for (Role r : {Role::plus, Role::minus, Role::cartan}) {
          try {
            wick_ope(sys, *t.at(node, r), *t.at(node, r));
            closure.push_back(t.at(node, r));
          } catch (const outside_symbolic_closure&) {
          }
        }
      SuiteConfig scfg = grid_config(m, n);
      scfg.energy_cap = 3;
      scfg.charge_cap = 1;
      scfg.word_depth = 0;
      auto states = test_states(sys, t, scfg);
      std::size_t nstates = std::min<std::size_t>(states.size(), 12);
      for (const auto& a : closure)
        for (const auto& b : closure) {
          OpeSingularPart ope = wick_ope(sys, *a, *b);
          for (int p = -3; p <= 3; ++p)
            for (int q = -3; q <= 3; ++q)
              for (std::size_t si = 0; si < nstates; ++si) {
                TensorState viaw =
                    modes_from_ope(sys, ope, p, q, states[si].state);
                TensorState direct =
                    bracket_apply(sys, *a, p, *b, q, states[si].state);
                ++instances;
                if (!(viaw == direct)) ++mismatches;
              }
        }
    }
    ok = instances >= 5000 && mismatches == 0;
    out.line(3, "Wick oracle equals direct brackets", ok,
             "instances=" + std::to_string(instances) +
                 " mismatches=" + std::to_string(mismatches));
  }

  // ------------------------------------------------------------------ 4
  {
    bool ok = true;
    long long checked = 0;
    for (auto [m, n] : grid) {
      RootSystemData sys = build_system(m, n);
      auto states = lattice_states(sys, 2);
      for (int i = n + 1; i <= n + m; ++i) {
        for (int j = n + 1; j <= n + m; ++j) {
          FieldExprPtr xi = make_vertex(eps(sys, i));
          FieldExprPtr xmj = make_vertex(-eps(sys, j));
          int Fij = sys.cocycle(eps(sys, i), -eps(sys, j));
          for (int k = n + 1; k <= n + m; ++k) {
            if (j == k) continue;
            FieldExprPtr xjk = make_vertex(eps(sys, j) - eps(sys, k));
            FieldExprPtr xj = make_vertex(eps(sys, j));
            int F1 = sys.cocycle(eps(sys, i), eps(sys, j) - eps(sys, k));
            for (int p = -2; p <= 2; ++p)
              for (int q = -2; q <= 2; ++q)
                for (const auto& s : states) {
                  // item 1
                  TensorState lhs = bracket_apply(sys, *xi, p, *xjk, q, s);
                  TensorState rhs;
                  if (i == k)
                    rhs = eval_mode(sys, *xj, p + q, s).scaled(GaussRational(F1));
                  ok = ok && lhs == rhs;
                  ++checked;
                }
          }
          // items 2 and 3 on a state sample
          for (int p = -2; p <= 2; ++p)
            for (int q = -2; q <= 2; ++q) {
              const TensorState& s = states[(5 * p + q + 13) % states.size()];
              TensorState l2 = bracket_apply(sys, *xi, p, *xmj, q, s);
              TensorState r2;
              if (i == j && p + q == -1) r2 = s.scaled(GaussRational(Fij));
              ok = ok && l2 == r2;
              ++checked;
              if (i != j) {
                LatticeVector lam = eps(sys, i) - eps(sys, j);
                FieldExprPtr a3 = make_vertex(lam);
                FieldExprPtr b3 = make_vertex(-lam);
                FieldExprPtr h3 = make_heis(lam);
                int F3 = sys.cocycle(lam, -lam);
                TensorState l3 = bracket_apply(sys, *a3, p, *b3, q, s);
                TensorState r3 = eval_mode(sys, *h3, p + q, s);
                if (p + q == 0) r3.add_state(s.scaled(GaussRational(p)));
                ok = ok && l3 == r3.scaled(GaussRational(F3));
                ++checked;
              }
            }
        }
      }
      // item 4 over current/vertex samples
      std::vector<LatticeVector> alphas{eps(sys, 1), eps(sys, n + 1),
                                        eps(sys, n + 1) - eps(sys, n + 2)};
      std::vector<LatticeVector> betas{eps(sys, n + 1), -eps(sys, n + 1),
                                       eps(sys, n + 1) + eps(sys, n + 2)};
      for (const auto& al : alphas)
        for (const auto& be : betas) {
          FieldExprPtr a = make_heis(al);
          FieldExprPtr b = make_vertex(be);
          long long form = lattice_form(al, be);
          for (int p = -2; p <= 2; ++p)
            for (int q = -2; q <= 2; ++q) {
              const TensorState& s = states[(3 * p + 2 * q + 17) % states.size()];
              TensorState lhs = bracket_apply(sys, *a, p, *b, q, s);
              TensorState rhs =
                  eval_mode(sys, *b, p + q, s).scaled(GaussRational(form));
              ok = ok && lhs == rhs;
              ++checked;
            }
        }
      // normalized conjugate-pair instance and the refuted transcription:
      // the anticommutator is a plain delta, so modes (0,-1) give the
      // identity on the vacuum while modes (1,-1) annihilate it
      TensorState vac = TensorState::vacuum(sys);
      FieldExprPtr x1 = make_vertex(eps(sys, 1));
      FieldExprPtr xm1 = make_vertex(-eps(sys, 1));
      ok = ok && bracket_apply(sys, *x1, 0, *xm1, -1, vac) == vac;
      ok = ok && bracket_apply(sys, *x1, 1, *xm1, -1, vac).is_zero();
      checked += 2;
    }
    out.line(4, "vertex bracket identities in component form", ok,
             "checked=" + std::to_string(checked) +
                 "; conjugate pair gives delta, not delta-prime");
  }

  // ------------------------------------------------------------------ 5
  {
    bool ok = true;
    // Pascal's rule
    for (long long p = -10; p <= 10 && ok; ++p)
      for (long long j = 1; j <= 10 && ok; ++j)
        ok = binomial(p, j) == binomial(p - 1, j) + binomial(p - 1, j - 1);
    bool pascal = ok;

    bool cocycle_ok = true, skew_ok = true, order_ok = true, bound_ok = true;
    for (auto [m, n] : grid) {
      RootSystemData sys = build_system(m, n);
      // cocycle bimultiplicativity, exhaustive on the charge ball <= 6
      std::vector<LatticeVector> ball;
      LatticeVector cur(sys.rank);
      suite_detail::enumerate_exponents(sys.rank, 6, cur, 0, 0, ball);
      for (const auto& x : ball) {
        for (const auto& y : ball) {
          for (const auto& z : ball) {
            if (sys.cocycle(x + y, z) != sys.cocycle(x, z) * sys.cocycle(y, z) ||
                sys.cocycle(z, x + y) != sys.cocycle(z, x) * sys.cocycle(z, y)) {
              cocycle_ok = false;
              break;
            }
          }
          if (!cocycle_ok) break;
        }
        if (!cocycle_ok) break;
      }

      // super skew-symmetry over every table-entry pair
      GeneratorTable t = generator_table(sys, Variant::corrected);
      TensorState vac = TensorState::vacuum(sys);
      std::vector<TensorState> sts{vac};
      sts.push_back(generator_mode(sys, t, n, Role::plus, -1, vac));
      sts.push_back(generator_mode(sys, t, n + 1, Role::minus, -2, vac));
      std::vector<FieldExprPtr> entries;
      for (int node = 0; node < sys.num_nodes; ++node)
        for (Role r : {Role::plus, Role::minus, Role::cartan})
          entries.push_back(t.at(node, r));
      for (std::size_t a = 0; a < entries.size() && skew_ok; ++a)
        for (std::size_t b = 0; b < entries.size() && skew_ok; ++b) {
          int sgn = expr_parity(*entries[a]) * expr_parity(*entries[b]);
          for (int p = -2; p <= 2 && skew_ok; ++p)
            for (int q = -2; q <= 2 && skew_ok; ++q) {
              const TensorState& s = sts[(p + 2 * q + 9) % sts.size()];
              TensorState lhs = bracket_apply(sys, *entries[a], p, *entries[b], q, s);
              TensorState rhs = bracket_apply(sys, *entries[b], q, *entries[a], p, s)
                                    .scaled(GaussRational(sgn ? 1 : -1));
              skew_ok = lhs == rhs;
            }
        }

      // normal-order symmetry on mixed atom pairs
      std::vector<std::pair<FieldAtom, FieldAtom>> pairs = {
          {WeylAtom{sys.eps_cvector(1, false)}, WeylAtom{sys.eps_cvector(1, true)}},
          {VertexOp{eps(sys, n + 1)}, WeylAtom{sys.eps_cvector(n, true)}},
          {HeisCurrent{eps(sys, n + 1)}, WeylAtom{sys.eps_cvector(1, false)}},
      };
      for (const auto& [a, b] : pairs) {
        FieldExprPtr ab = make_quad(a, b);
        FieldExprPtr ba = make_quad(b, a);
        int sgn = atom_parity(a) * atom_parity(b);
        for (int k = -3; k <= 3; ++k)
          for (const auto& s : sts) {
            TensorState lhs = eval_mode(sys, *ab, k, s);
            TensorState rhs =
                eval_mode(sys, *ba, k, s).scaled(GaussRational(sgn ? -1 : 1));
            order_ok = order_ok && lhs == rhs;
          }
      }

      // component vanishing bound, three indices past the bound
      auto lstates = lattice_states(sys, 2);
      std::vector<LatticeVector> vecs{eps(sys, 1), -eps(sys, n + 1),
                                      eps(sys, n + 1) - eps(sys, n + 2)};
      for (const auto& al : vecs)
        for (const auto& s : lstates)
          for (const auto& [key, c] : s.terms) {
            long long bnd = vertex_component_bound(al, true, key.lat);
            LatticeState one;
            one.add(key.lat, GaussRational(1));
            for (int extra = 1; extra <= 3; ++extra)
              bound_ok = bound_ok &&
                         vertex_component_apply(sys, al,
                                                static_cast<int>(bnd) + extra, one)
                             .is_zero();
          }
    }
    ok = pascal && cocycle_ok && skew_ok && order_ok && bound_ok;
    std::ostringstream detail;
    detail << "pascal=" << pascal << " cocycle=" << cocycle_ok
           << " skew=" << skew_ok << " order=" << order_ok
           << " bound=" << bound_ok;
    out.line(5, "module-level invariants", ok, detail.str());
  }

  // ------------------------------------------------------------------ 6
  {
    bool ok = true;
    long long fail_count = 0, rows_total = 0;
    for (auto [m, n] : grid) {
      RootSystemData sys = build_system(m, n);
      GeneratorTable printed = generator_table(sys, Variant::as_printed);
      GeneratorTable corrected = generator_table(sys, Variant::corrected);
      SuiteConfig cfg = grid_config(m, n);
      SuiteResult res = run_suite(sys, printed, cfg);
      ok = ok && res.summary.failed > 0;
      fail_count += res.summary.failed;

      auto rows = discrepancy_rows(sys);
      rows_total += static_cast<long long>(rows.size());
      auto row_covers = [&](int node, Role role) {
        for (const auto& r : rows)
          if (r.node == node && r.role == role) return true;
        return false;
      };
      // failing instances touch only manifest entries
      for (const auto& rep : res.reports) {
        if (rep.pass) continue;
        const auto& inst = rep.inst;
        bool covered = false;
        switch (inst.relation) {
          case 2:
            covered = row_covers(inst.i, Role::cartan) ||
                      row_covers(inst.j, Role::cartan);
            break;
          case 3:
            covered = row_covers(inst.i, Role::cartan) ||
                      row_covers(inst.j, inst.sign > 0 ? Role::plus : Role::minus);
            break;
          case 4:
            covered = row_covers(inst.i, Role::plus) ||
                      row_covers(inst.j, Role::minus) ||
                      (inst.i == inst.j && row_covers(inst.i, Role::cartan));
            break;
          case 5:
            covered = row_covers(inst.i, inst.sign > 0 ? Role::plus : Role::minus) ||
                      row_covers(inst.j, inst.sign > 0 ? Role::plus : Role::minus);
            break;
          default:
            covered = false;
        }
        ok = ok && covered;
      }
      // each manifest row: entries differ, the forcing instance passes when
      // corrected and fails when just that entry is reverted
      NamedState vac{"vacuum", TensorState::vacuum(sys), true};
      std::set<std::pair<int, int>> in_manifest;
      for (const auto& row : rows) {
        in_manifest.insert({row.node, static_cast<int>(row.role)});
        ok = ok && render_expr(sys, *printed.at(row.node, row.role)) !=
                      render_expr(sys, *corrected.at(row.node, row.role));
        RelationInstance inst{row.forcing.relation, ' ', row.forcing.sign,
                              row.forcing.i, row.forcing.j,
                              {row.forcing.p, row.forcing.q}};
        ok = ok && check_relation(sys, corrected, inst, vac).pass;
        GeneratorTable reverted = corrected;
        reverted.at(row.node, row.role) = printed.at(row.node, row.role);
        ok = ok && !check_relation(sys, reverted, inst, vac).pass;
      }
      // entries outside the manifest agree between the variants
      for (int node = 0; node < sys.num_nodes; ++node)
        for (int r = 0; r < 3; ++r)
          if (!in_manifest.count({node, r}))
            ok = ok && render_expr(sys, *printed.at(node, static_cast<Role>(r))) ==
                          render_expr(sys, *corrected.at(node, static_cast<Role>(r)));
      // shipped manifest file matches the generated one
      std::string shipped = read_file(data_dir + "/manifest_m" + std::to_string(m) +
                                      "n" + std::to_string(n) + ".json");
      ok = ok && shipped == manifest_json(sys).dump(2) + "\n";
    }
    out.line(6, "typo-resolution audit against the manifest", ok,
             "as-printed failures=" + std::to_string(fail_count) +
                 " manifest rows=" + std::to_string(rows_total));
  }

  // ------------------------------------------------------------------ 7
  {
    bool ok = true;
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
      auto [m, n] = grid[gi];
      RootSystemData sys = build_system(m, n);
      GeneratorTable table = generator_table(sys, Variant::corrected);
      SuiteConfig cfg = grid_config(m, n);
      SuiteResult res = run_suite(sys, table, cfg);
      second_reports.push_back(render_report(sys, table, cfg, res, "json"));
      ok = ok && second_reports[gi] == first_reports[gi];
    }
    out.line(7, "byte-identical reports across grid reruns", ok);
  }

  // shipped reference tables match the built-in variants
  {
    bool ok = true;
    for (auto [m, n] : grid) {
      RootSystemData sys = build_system(m, n);
      for (Variant v : {Variant::corrected, Variant::as_printed}) {
        GeneratorTable t = generator_table(sys, v);
        std::string name = std::string(variant_name(v)) + "_m" +
                           std::to_string(m) + "n" + std::to_string(n) + ".txt";
        std::string shipped = read_file(data_dir + "/tables/" + name);
        RootSystemData sys2;
        if (shipped.empty()) {
          ok = false;
          continue;
        }
        GeneratorTable t2 = parse_table(shipped, sys2);
        for (int node = 0; node < sys.num_nodes; ++node)
          for (Role r : {Role::plus, Role::minus, Role::cartan})
            ok = ok && expr_equal(*t2.at(node, r), *t.at(node, r));
      }
    }
    out.line(0, "shipped reference tables parse back to the built-ins", ok);
  }

  std::cout << (out.ok ? "ACCEPTANCE: all criteria passed"
                       : "ACCEPTANCE: FAILURES PRESENT")
            << std::endl;
  return out.ok ? 0 : 1;
}
