#include <catch2/catch_amalgamated.hpp>

#include "toroidal/expr_io.hpp"

using namespace toroidal;

TEST_CASE("parsing the table shapes") {
  RootSystemData sys = build_system(2, 2);

  FieldExprPtr e1 = parse_expr("1/2 * :b* e*1:", sys);
  FieldExprPtr want1 =
      make_scaled(GaussRational(Rat(1, 2)),
                  make_quad(WeylAtom{sys.beta_cvector(true)},
                            WeylAtom{sys.eps_cvector(1, true)}));
  CHECK(expr_equal(*e1, *want1));

  FieldExprPtr e2 = parse_expr("X(0,0,1,-1)", sys);
  CHECK(expr_equal(*e2, *make_vertex(LatticeVector{0, 0, 1, -1})));

  FieldExprPtr e3 = parse_expr("i * :e1 e*2:", sys);
  FieldExprPtr want3 =
      make_scaled(GaussRational::unit_i(),
                  make_quad(WeylAtom{sys.eps_cvector(1, false)},
                            WeylAtom{sys.eps_cvector(2, true)}));
  CHECK(expr_equal(*e3, *want3));

  FieldExprPtr e4 = parse_expr("H(1,0,0,0) - :e2 e*2:", sys);
  CHECK(std::holds_alternative<Sum>(e4->node));

  CHECK(expr_equal(*parse_expr("K", sys), *make_central()));
}

TEST_CASE("diagnostics carry positions") {
  RootSystemData sys = build_system(2, 1);
  auto fails = [&](const std::string& text) {
    try {
      parse_expr(text, sys);
      return false;
    } catch (const parse_error&) {
      return true;
    }
  };
  CHECK(fails("e9"));                // index out of range
  CHECK(fails(":e1 e2 e3:"));        // arity violation
  CHECK(fails(":e1:"));              // arity violation
  CHECK(fails("1/2 :e1 e1:"));       // missing '*'
  CHECK(fails("X(1,0)"));            // wrong coordinate count
  CHECK(fails("Q(1,0,0)"));          // unknown atom
  CHECK(fails("e1 + "));             // dangling operator
  CHECK(fails("e1 garbage"));        // trailing input
  CHECK(fails("X(0,0,0)"));          // zero vector
  try {
    parse_expr("1/2 * :e1\n e$1:", sys);
    CHECK(false);
  } catch (const parse_error& e) {
    CHECK(e.line == 2);
    CHECK(e.col >= 2);
  }
}

TEST_CASE("round trip through canonical text") {
  for (auto [m, n] : {std::pair{2, 1}, {2, 2}, {3, 1}}) {
    RootSystemData sys = build_system(m, n);
    for (Variant v : {Variant::corrected, Variant::as_printed}) {
      GeneratorTable t = generator_table(sys, v);
      for (int node = 0; node < sys.num_nodes; ++node) {
        for (Role r : {Role::plus, Role::minus, Role::cartan}) {
          std::string text = render_expr(sys, *t.at(node, r));
          FieldExprPtr back = parse_expr(text, sys);
          INFO("entry " << node << " " << role_name(r) << ": " << text);
          CHECK(expr_equal(*back, *t.at(node, r)));
          // idempotent on canonical text
          CHECK(render_expr(sys, *back) == text);
        }
      }
    }
  }
}

TEST_CASE("mixed scalar literals round trip") {
  RootSystemData sys = build_system(2, 1);
  FieldExprPtr e = make_scaled(GaussRational{Rat(1, 2), Rat(-3, 4)},
                               make_quad(WeylAtom{sys.eps_cvector(1, false)},
                                         WeylAtom{sys.eps_cvector(1, true)}));
  std::string text = render_expr(sys, *e);
  CHECK(text == "1/2 - 3/4 i * :e1 e*1:");
  CHECK(expr_equal(*parse_expr(text, sys), *e));
}

TEST_CASE("table files round trip and validate") {
  RootSystemData sys = build_system(2, 1);
  GeneratorTable t = generator_table(sys, Variant::corrected);
  std::string text = render_table(sys, t);
  RootSystemData sys2;
  GeneratorTable t2 = parse_table(text, sys2);
  CHECK(sys2.m == 2);
  CHECK(sys2.n == 1);
  CHECK(t2.central_value == GaussRational(-1));
  for (int node = 0; node < sys.num_nodes; ++node)
    for (Role r : {Role::plus, Role::minus, Role::cartan})
      CHECK(expr_equal(*t2.at(node, r), *t.at(node, r)));

  // missing entries are rejected
  std::string broken = "m 2\nn 1\ncentral -1\n0 plus :e1 e1:\n";
  CHECK_THROWS_AS(parse_table(broken, sys2), table_file_error);

  // parity coherence is enforced
  std::string bad_parity = text;
  auto pos = bad_parity.find("1 plus");
  bad_parity.replace(pos, bad_parity.find('\n', pos) - pos, "1 plus H(0,1,0)");
  CHECK_THROWS_AS(parse_table(bad_parity, sys2), table_file_error);
}

TEST_CASE("report schema") {
  RootSystemData sys = build_system(2, 1);
  GeneratorTable t = generator_table(sys, Variant::corrected);
  SuiteConfig cfg;
  cfg.m = 2;
  cfg.n = 1;
  cfg.mode_bound = 1;
  cfg.energy_cap = 0;
  cfg.charge_cap = 0;
  cfg.word_depth = 0;
  cfg.relations = {2};

  SuiteResult empty;
  nlohmann::ordered_json j0 = report_json(sys, t, cfg, empty);
  CHECK(j0["summary"]["checked"] == 0);
  CHECK(j0["summary"]["passed"] == 0);
  CHECK(j0["summary"]["failed"] == 0);

  SuiteResult res = run_suite(sys, t, cfg);
  nlohmann::ordered_json j = report_json(sys, t, cfg, res);
  CHECK(j["summary"]["failed"] == 0);
  for (const auto& e : j["results"]) {
    CHECK(e["status"] == "pass");
    CHECK(e["state"] == "*");
    CHECK(!e.contains("lhs"));
    CHECK(!e.contains("rhs"));
  }

  // a failing instance renders both sides
  GeneratorTable bad = generator_table(sys, Variant::as_printed);
  SuiteConfig cfg2 = cfg;
  cfg2.relations = {3};
  SuiteResult res2 = run_suite(sys, bad, cfg2);
  nlohmann::ordered_json j2 = report_json(sys, bad, cfg2, res2);
  bool saw_fail = false;
  for (const auto& e : j2["results"]) {
    if (e["status"] == "fail") {
      saw_fail = true;
      CHECK(e.contains("lhs"));
      CHECK(e.contains("rhs"));
      CHECK(e["state"] != "*");
    }
  }
  CHECK(saw_fail);

  // byte determinism of the rendered report
  CHECK(render_report(sys, t, cfg, res, "json") ==
        render_report(sys, t, cfg, run_suite(sys, t, cfg), "json"));
}

TEST_CASE("scalar literal forms accepted by the expression grammar") {
  RootSystemData sys = build_system(2, 1);
  CHECK(expr_equal(*parse_expr("-1 * H(0,1,0)", sys),
                   *make_scaled(GaussRational(-1), make_heis(LatticeVector{0, 1, 0}))));
  CHECK(expr_equal(*parse_expr("- H(0,1,0)", sys),
                   *make_scaled(GaussRational(-1), make_heis(LatticeVector{0, 1, 0}))));
  CHECK(expr_equal(*parse_expr("2 * :e1 e*1:", sys),
                   *make_scaled(GaussRational(2),
                                make_quad(WeylAtom{sys.eps_cvector(1, false)},
                                          WeylAtom{sys.eps_cvector(1, true)}))));
  CHECK(expr_equal(*parse_expr("-i * :e1 e*1:", sys),
                   *make_scaled(-GaussRational::unit_i(),
                                make_quad(WeylAtom{sys.eps_cvector(1, false)},
                                          WeylAtom{sys.eps_cvector(1, true)}))));
}
