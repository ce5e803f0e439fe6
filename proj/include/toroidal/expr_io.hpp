#pragma once

// Text format for field expressions and generator tables, and report
// serialization.  The grammar is deliberately tiny: sums of optionally
// scaled factors, where a factor is a named atom or a binary normal
// product.
//
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := [scalar '*'] factor
//   factor := atom | ':' atom atom ':'
//   atom   := e<k> | e*<k> | b | b* | c | c* | H(c1,..,cr) | X(c1,..,cr) | K
//   scalar := rational | 'i' | rational 'i' | rational ('+'|'-') rational 'i'

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "toroidal/relations.hpp"

namespace toroidal {

struct parse_error : std::runtime_error {
  int line, col;
  parse_error(int l, int c, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(l) + ":" +
                           std::to_string(c) + ": " + msg),
        line(l),
        col(c) {}
};

namespace io_detail {

struct Token {
  enum Kind { Int, Name, Star, Slash, Plus, Minus, Colon, LParen, RParen, Comma, End };
  Kind kind;
  std::string text;
  int line, col;
};

inline std::vector<Token> tokenize(const std::string& src, int line0 = 1) {
  std::vector<Token> out;
  int line = line0, col = 1;
  std::size_t i = 0;
  auto push = [&](Token::Kind k, std::string t) {
    out.push_back({k, std::move(t), line, col});
  };
  while (i < src.size()) {
    char ch = src[i];
    if (ch == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++col;
      ++i;
      continue;
    }
    int startcol = col;
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::string num;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
        num += src[i++];
        ++col;
      }
      out.push_back({Token::Int, num, line, startcol});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      std::string name;
      while (i < src.size() && std::isalpha(static_cast<unsigned char>(src[i]))) {
        name += src[i++];
        ++col;
      }
      out.push_back({Token::Name, name, line, startcol});
      continue;
    }
    Token::Kind k;
    switch (ch) {
      case '*': k = Token::Star; break;
      case '/': k = Token::Slash; break;
      case '+': k = Token::Plus; break;
      case '-': k = Token::Minus; break;
      case ':': k = Token::Colon; break;
      case '(': k = Token::LParen; break;
      case ')': k = Token::RParen; break;
      case ',': k = Token::Comma; break;
      default:
        throw parse_error(line, col, std::string("unexpected character '") + ch + "'");
    }
    push(k, std::string(1, ch));
    ++col;
    ++i;
  }
  out.push_back({Token::End, "", line, col});
  return out;
}

class Parser {
 public:
  Parser(const RootSystemData& sys, std::vector<Token> toks,
         GaussRational central)
      : sys_(sys), toks_(std::move(toks)), central_(std::move(central)) {}

  FieldExprPtr parse() {
    FieldExprPtr e = parse_expr();
    expect(Token::End, "trailing input after expression");
    return e;
  }

 private:
  const RootSystemData& sys_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  GaussRational central_;

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw parse_error(t.line, t.col, msg);
  }
  void expect(Token::Kind k, const std::string& msg) {
    if (peek().kind != k) fail(peek(), msg);
    next();
  }

  FieldExprPtr parse_expr() {
    std::vector<FieldExprPtr> terms;
    bool neg = false;
    if (peek().kind == Token::Minus) {
      next();
      neg = true;
    }
    terms.push_back(parse_term(neg));
    while (peek().kind == Token::Plus || peek().kind == Token::Minus) {
      bool minus = next().kind == Token::Minus;
      terms.push_back(parse_term(minus));
    }
    if (terms.size() == 1) return terms[0];
    return make_sum(std::move(terms));
  }

  bool starts_scalar() const {
    return peek().kind == Token::Int ||
           (peek().kind == Token::Name && peek().text == "i");
  }

  Rat parse_rational() {
    const Token& t = peek();
    if (t.kind != Token::Int) fail(t, "expected a number");
    std::int64_t num = std::stoll(next().text);
    if (peek().kind == Token::Slash) {
      next();
      if (peek().kind != Token::Int) fail(peek(), "expected a denominator");
      std::int64_t den = std::stoll(next().text);
      if (den == 0) fail(peek(), "zero denominator");
      return Rat(num, den);
    }
    return Rat(num);
  }

  // scalar := 'i' | rat ['i'] | rat ('+'|'-') [rat] 'i'
  GaussRational parse_scalar(bool negated) {
    GaussRational v;
    if (peek().kind == Token::Name && peek().text == "i") {
      next();
      v = GaussRational::unit_i();
    } else {
      Rat re = parse_rational();
      if (peek().kind == Token::Name && peek().text == "i") {
        next();
        v = GaussRational(Rat(0), re);
      } else if ((peek().kind == Token::Plus || peek().kind == Token::Minus) &&
                 is_imaginary_tail()) {
        bool minus = next().kind == Token::Minus;
        Rat im(1);
        if (peek().kind == Token::Int) im = parse_rational();
        expect(Token::Name, "expected 'i'");
        v = GaussRational(re, minus ? -im : im);
      } else {
        v = GaussRational(re);
      }
    }
    return negated ? -v : v;
  }

  // lookahead: [rat] 'i' followed by '*', so a sum sign is not consumed
  bool is_imaginary_tail() const {
    std::size_t k = pos_ + 1;  // token after '+'/'-'
    auto at = [&](std::size_t idx) -> const Token& {
      return toks_[std::min(idx, toks_.size() - 1)];
    };
    if (at(k).kind == Token::Int) {
      ++k;
      if (at(k).kind == Token::Slash) {
        if (at(k + 1).kind != Token::Int) return false;
        k += 2;
      }
    }
    if (!(at(k).kind == Token::Name && at(k).text == "i")) return false;
    return at(k + 1).kind == Token::Star;
  }

  FieldExprPtr parse_term(bool negated) {
    if (starts_scalar()) {
      GaussRational c = parse_scalar(negated);
      expect(Token::Star, "expected '*' after a scalar");
      return make_scaled(std::move(c), parse_factor());
    }
    FieldExprPtr f = parse_factor();
    if (negated) return make_scaled(GaussRational(-1), std::move(f));
    return f;
  }

  FieldExprPtr parse_factor() {
    if (peek().kind == Token::Colon) {
      next();
      FieldAtom a = parse_atom();
      if (peek().kind == Token::Colon)
        fail(peek(), "normal product requires exactly two atoms");
      FieldAtom b = parse_atom();
      if (peek().kind != Token::Colon)
        fail(peek(), "normal product requires exactly two atoms");
      next();
      return make_quad(std::move(a), std::move(b));
    }
    FieldAtom a = parse_atom();
    if (std::holds_alternative<WeylAtom>(a))
      return make_weyl(std::get<WeylAtom>(a).u);
    if (std::holds_alternative<HeisCurrent>(a))
      return make_heis(std::get<HeisCurrent>(a).alpha);
    return make_vertex(std::get<VertexOp>(a).alpha);
  }

  LatticeVector parse_coords() {
    expect(Token::LParen, "expected '('");
    LatticeVector v(sys_.rank);
    for (int a = 0; a < sys_.rank; ++a) {
      if (a > 0) expect(Token::Comma, "expected ','");
      bool minus = false;
      if (peek().kind == Token::Minus) {
        next();
        minus = true;
      }
      if (peek().kind != Token::Int) fail(peek(), "expected an integer coordinate");
      int val = std::stoi(next().text);
      v.c[a] = minus ? -val : val;
    }
    expect(Token::RParen, "expected ')'");
    return v;
  }

  FieldAtom parse_atom() {
    const Token& t = peek();
    if (t.kind != Token::Name) fail(t, "expected an atom");
    std::string name = next().text;
    if (name == "K") {
      fail(t, "K cannot appear inside a factor position here");
    }
    if (name == "H" || name == "X") {
      LatticeVector v = parse_coords();
      if (v.is_zero()) fail(t, "zero lattice vector");
      if (name == "H") return HeisCurrent{std::move(v)};
      return VertexOp{std::move(v)};
    }
    bool star = false;
    if (peek().kind == Token::Star) {
      next();
      star = true;
    }
    if (name == "b") return WeylAtom{sys_.beta_cvector(star)};
    if (name == "c") return WeylAtom{sys_.cbar_cvector(star)};
    if (name == "e") {
      if (peek().kind != Token::Int) fail(peek(), "expected an index after 'e'");
      int idx = std::stoi(next().text);
      if (idx < 1 || idx > sys_.rank)
        fail(t, "index out of range for 'e': " + std::to_string(idx));
      return WeylAtom{sys_.eps_cvector(idx, star)};
    }
    fail(t, "unknown atom '" + name + "'");
  }
};

}  // namespace io_detail

// Parses one field expression against a built system.
inline FieldExprPtr parse_expr(const std::string& text, const RootSystemData& sys,
                               GaussRational central = GaussRational(-1),
                               int line0 = 1) {
  // 'K' alone is allowed as a whole expression (the central element)
  io_detail::Parser p(sys, io_detail::tokenize(text, line0), central);
  std::string trimmed;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
  if (trimmed == "K") return make_central(central);
  return p.parse();
}

// ---------------------------------------------------------------------------
// Rendering

namespace io_detail {

inline std::string render_scalar(const GaussRational& c) { return c.str(); }

inline std::string render_atom(const RootSystemData& sys, const FieldAtom& a) {
  if (std::holds_alternative<WeylAtom>(a)) {
    const CVector& u = std::get<WeylAtom>(a).u;
    std::string star = u.star ? "*" : "";
    // match against the named vectors: eps_a, cbar, beta
    int nonzero = 0, idx = -1;
    for (int k = 0; k < static_cast<int>(u.p.size()); ++k)
      if (!u.p[k].is_zero()) {
        ++nonzero;
        idx = k;
      }
    if (nonzero == 1 && u.p[idx] == GaussRational(1))
      return idx == 0 ? "c" + star : "e" + star + std::to_string(idx);
    if (nonzero == 2 && u.p[0] == GaussRational(-1) && u.p[1] == GaussRational(1))
      return "b" + star;
    throw std::runtime_error("unrenderable Weyl atom");
  }
  std::ostringstream os;
  const LatticeVector& v = std::holds_alternative<HeisCurrent>(a)
                               ? std::get<HeisCurrent>(a).alpha
                               : std::get<VertexOp>(a).alpha;
  os << (std::holds_alternative<HeisCurrent>(a) ? "H(" : "X(");
  for (std::size_t k = 0; k < v.c.size(); ++k) {
    if (k) os << ",";
    os << v.c[k];
  }
  os << ")";
  (void)sys;
  return os.str();
}

inline std::string render_term(const RootSystemData& sys, const FieldExpr& e);

inline std::string render_factor(const RootSystemData& sys, const FieldExpr& e) {
  if (std::holds_alternative<NormalQuad>(e.node)) {
    const auto& q = std::get<NormalQuad>(e.node);
    return ":" + render_atom(sys, q.a) + " " + render_atom(sys, q.b) + ":";
  }
  if (std::holds_alternative<WeylAtom>(e.node))
    return render_atom(sys, FieldAtom{std::get<WeylAtom>(e.node)});
  if (std::holds_alternative<HeisCurrent>(e.node))
    return render_atom(sys, FieldAtom{std::get<HeisCurrent>(e.node)});
  if (std::holds_alternative<VertexOp>(e.node))
    return render_atom(sys, FieldAtom{std::get<VertexOp>(e.node)});
  if (std::holds_alternative<CentralK>(e.node)) return "K";
  throw std::runtime_error("not a factor");
}

inline std::string render_term(const RootSystemData& sys, const FieldExpr& e) {
  if (std::holds_alternative<ScalarMul>(e.node)) {
    const auto& sm = std::get<ScalarMul>(e.node);
    return render_scalar(sm.c) + " * " + render_factor(sys, *sm.e);
  }
  return render_factor(sys, e);
}

}  // namespace io_detail

inline std::string render_expr(const RootSystemData& sys, const FieldExpr& e) {
  if (std::holds_alternative<Sum>(e.node)) {
    const auto& terms = std::get<Sum>(e.node).terms;
    std::string out;
    for (std::size_t k = 0; k < terms.size(); ++k) {
      std::string t = io_detail::render_term(sys, *terms[k]);
      if (k == 0) {
        out = t;
      } else if (t.size() > 1 && t[0] == '-') {
        out += " - " + t.substr(1);
      } else {
        out += " + " + t;
      }
    }
    return out;
  }
  return io_detail::render_term(sys, e);
}

// Structural equality of expressions (used by round-trip checks).
inline bool expr_equal(const FieldExpr& a, const FieldExpr& b);

namespace io_detail {
inline bool atom_equal(const FieldAtom& a, const FieldAtom& b) {
  if (a.index() != b.index()) return false;
  if (std::holds_alternative<WeylAtom>(a))
    return std::get<WeylAtom>(a).u == std::get<WeylAtom>(b).u;
  if (std::holds_alternative<HeisCurrent>(a))
    return std::get<HeisCurrent>(a).alpha == std::get<HeisCurrent>(b).alpha;
  return std::get<VertexOp>(a).alpha == std::get<VertexOp>(b).alpha;
}
}  // namespace io_detail

inline bool expr_equal(const FieldExpr& a, const FieldExpr& b) {
  if (a.node.index() != b.node.index()) {
    // treat ScalarMul(-1, f) and the same f under a sum sign as distinct;
    // canonical text keeps structure aligned
    return false;
  }
  if (std::holds_alternative<WeylAtom>(a.node))
    return std::get<WeylAtom>(a.node).u == std::get<WeylAtom>(b.node).u;
  if (std::holds_alternative<HeisCurrent>(a.node))
    return std::get<HeisCurrent>(a.node).alpha == std::get<HeisCurrent>(b.node).alpha;
  if (std::holds_alternative<VertexOp>(a.node))
    return std::get<VertexOp>(a.node).alpha == std::get<VertexOp>(b.node).alpha;
  if (std::holds_alternative<NormalQuad>(a.node)) {
    const auto& qa = std::get<NormalQuad>(a.node);
    const auto& qb = std::get<NormalQuad>(b.node);
    return io_detail::atom_equal(qa.a, qb.a) && io_detail::atom_equal(qa.b, qb.b);
  }
  if (std::holds_alternative<ScalarMul>(a.node)) {
    const auto& sa = std::get<ScalarMul>(a.node);
    const auto& sb = std::get<ScalarMul>(b.node);
    return sa.c == sb.c && expr_equal(*sa.e, *sb.e);
  }
  if (std::holds_alternative<Sum>(a.node)) {
    const auto& ta = std::get<Sum>(a.node).terms;
    const auto& tb = std::get<Sum>(b.node).terms;
    if (ta.size() != tb.size()) return false;
    for (std::size_t k = 0; k < ta.size(); ++k)
      if (!expr_equal(*ta[k], *tb[k])) return false;
    return true;
  }
  return std::get<CentralK>(a.node).value == std::get<CentralK>(b.node).value;
}

// ---------------------------------------------------------------------------
// Table files

struct table_file_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Renders a generator table in the on-disk format.
inline std::string render_table(const RootSystemData& sys, const GeneratorTable& t,
                                const std::vector<std::string>& annotations = {}) {
  std::ostringstream os;
  os << "# generator table, type D(" << t.m << "," << t.n << ")\n";
  for (const auto& a : annotations) os << "# " << a << "\n";
  os << "m " << t.m << "\n";
  os << "n " << t.n << "\n";
  os << "variant " << t.variant << "\n";
  os << "central " << t.central_value.str() << "\n";
  for (int node = 0; node < sys.num_nodes; ++node) {
    for (Role r : {Role::plus, Role::minus, Role::cartan}) {
      os << node << " " << role_name(r) << " " << render_expr(sys, *t.at(node, r))
         << "\n";
    }
  }
  return os.str();
}

// Parses the on-disk table format; builds the system from the header.
inline GeneratorTable parse_table(const std::string& text, RootSystemData& sys_out) {
  std::istringstream is(text);
  std::string line;
  int m = -1, n = -1;
  std::string variant = "user-file";
  GaussRational central(-1);
  std::vector<std::tuple<int, std::string, std::string, int>> entry_lines;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string trimmed = line;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front())))
      trimmed.erase(trimmed.begin());
    if (trimmed.empty() || trimmed[0] == '#') continue;
    std::istringstream ls(trimmed);
    std::string head;
    ls >> head;
    if (head == "m") { ls >> m; continue; }
    if (head == "n") { ls >> n; continue; }
    if (head == "variant") { ls >> variant; continue; }
    if (head == "central") {
      std::string rest;
      std::getline(ls, rest);
      std::int64_t v = std::stoll(rest);
      central = GaussRational(v);
      continue;
    }
    int node = -1;
    try {
      node = std::stoi(head);
    } catch (...) {
      throw table_file_error("line " + std::to_string(lineno) +
                             ": expected a header key or node index");
    }
    std::string role;
    ls >> role;
    std::string expr;
    std::getline(ls, expr);
    entry_lines.emplace_back(node, role, expr, lineno);
  }
  if (m < 0 || n < 0) throw table_file_error("missing m/n header");
  sys_out = build_system(m, n);

  GeneratorTable t;
  t.m = m;
  t.n = n;
  t.variant = variant;
  t.central_value = central;
  t.entries.resize(sys_out.num_nodes);
  std::vector<std::array<bool, 3>> present(sys_out.num_nodes, {false, false, false});
  for (const auto& [node, role, expr, ln] : entry_lines) {
    if (node < 0 || node >= sys_out.num_nodes)
      throw table_file_error("line " + std::to_string(ln) + ": node out of range");
    int r;
    if (role == "plus") r = 0;
    else if (role == "minus") r = 1;
    else if (role == "cartan") r = 2;
    else
      throw table_file_error("line " + std::to_string(ln) + ": unknown role '" +
                             role + "'");
    t.entries[node][r] = parse_expr(expr, sys_out, central, ln);
    present[node][r] = true;
  }
  for (int node = 0; node < sys_out.num_nodes; ++node)
    for (int r = 0; r < 3; ++r)
      if (!present[node][r])
        throw table_file_error("missing entry: node " + std::to_string(node) +
                               " role " + role_name(static_cast<Role>(r)));
  // parity coherence across every entry
  for (int node = 0; node < sys_out.num_nodes; ++node) {
    if (expr_parity(*t.entries[node][0]) != sys_out.node_parity[node] ||
        expr_parity(*t.entries[node][1]) != sys_out.node_parity[node] ||
        expr_parity(*t.entries[node][2]) != 0)
      throw table_file_error("parity mismatch at node " + std::to_string(node));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Reports

inline nlohmann::ordered_json state_to_json(const RootSystemData& sys,
                                            const TensorState& s) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  Factor buf[kMaxFactors];
  for (const auto& [k, c] : s.terms) {
    nlohmann::ordered_json term;
    term["coeff"] = c.str();
    term["exp"] = k.lat.exponent.unpack(sys.rank).c;
    nlohmann::ordered_json heis = nlohmann::ordered_json::array();
    int cnt = k.lat.heis.unpack(buf);
    for (int t = 0; t < cnt; ++t)
      heis.push_back({factor_gen(buf[t]) + 1, factor_mode(buf[t])});
    term["heis"] = heis;
    nlohmann::ordered_json weyl = nlohmann::ordered_json::array();
    cnt = k.weyl.unpack(buf);
    for (int t = 0; t < cnt; ++t) {
      int g = factor_gen(buf[t]);
      bool star = g >= sys.p_dim();
      int idx = star ? g - sys.p_dim() : g;
      std::string name = idx == 0 ? "c" : "e" + std::to_string(idx);
      if (star) name += "*";
      weyl.push_back({name, factor_mode(buf[t])});
    }
    term["weyl"] = weyl;
    arr.push_back(term);
  }
  return arr;
}

inline nlohmann::ordered_json report_json(const RootSystemData& sys,
                                          const GeneratorTable& table,
                                          const SuiteConfig& cfg,
                                          const SuiteResult& res) {
  nlohmann::ordered_json j;
  j["config"]["m"] = cfg.m;
  j["config"]["n"] = cfg.n;
  j["config"]["variant"] = table.variant;
  j["config"]["mode_range"] = {-cfg.mode_bound, cfg.mode_bound};
  j["config"]["caps"]["energy"] = cfg.energy_cap;
  j["config"]["caps"]["charge"] = cfg.charge_cap;
  j["config"]["caps"]["word_depth"] = cfg.word_depth;
  j["config"]["relations"] = std::vector<int>(cfg.relations.begin(), cfg.relations.end());
  nlohmann::ordered_json results = nlohmann::ordered_json::array();
  for (const auto& r : res.reports) {
    nlohmann::ordered_json e;
    e["relation"] = r.inst.relation;
    if (r.inst.relation == 5) e["family"] = std::string(1, r.inst.family);
    if (r.inst.relation == 3 || r.inst.relation == 5) e["sign"] = r.inst.sign;
    e["i"] = r.inst.i;
    e["j"] = r.inst.j;
    e["modes"] = r.inst.modes;
    e["state"] = r.pass ? "*" : r.fail_state;
    e["states_checked"] = r.states_checked;
    e["status"] = r.pass ? "pass" : "fail";
    if (!r.pass) {
      e["lhs"] = state_to_json(sys, r.lhs);
      e["rhs"] = state_to_json(sys, r.rhs);
    }
    results.push_back(std::move(e));
  }
  j["results"] = std::move(results);
  j["summary"]["checked"] = res.summary.checked;
  j["summary"]["passed"] = res.summary.passed;
  j["summary"]["failed"] = res.summary.failed;
  return j;
}

inline std::string render_report(const RootSystemData& sys, const GeneratorTable& table,
                                 const SuiteConfig& cfg, const SuiteResult& res,
                                 const std::string& format) {
  if (format == "json") return report_json(sys, table, cfg, res).dump(2) + "\n";
  // text digest
  std::ostringstream os;
  os << "relation suite D(" << cfg.m << "," << cfg.n << ") variant=" << table.variant
     << " modes=[-" << cfg.mode_bound << "," << cfg.mode_bound << "]\n";
  for (const auto& r : res.reports) {
    if (r.pass) continue;
    os << "FAIL rel " << r.inst.relation;
    if (r.inst.relation == 5) os << r.inst.family;
    os << " i=" << r.inst.i << " j=" << r.inst.j << " sign=" << r.inst.sign
       << " modes=(";
    for (std::size_t k = 0; k < r.inst.modes.size(); ++k)
      os << (k ? "," : "") << r.inst.modes[k];
    os << ") state=" << r.fail_state << "\n";
  }
  os << "checked " << res.summary.checked << ", passed " << res.summary.passed
     << ", failed " << res.summary.failed << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Discrepancy manifest

inline nlohmann::ordered_json manifest_json(const RootSystemData& sys) {
  GeneratorTable printed = generator_table(sys, Variant::as_printed);
  GeneratorTable corrected = generator_table(sys, Variant::corrected);
  nlohmann::ordered_json j;
  j["m"] = sys.m;
  j["n"] = sys.n;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : discrepancy_rows(sys)) {
    nlohmann::ordered_json e;
    e["node"] = row.node;
    e["role"] = role_name(row.role);
    e["as_printed"] = render_expr(sys, *printed.at(row.node, row.role));
    e["corrected"] = render_expr(sys, *corrected.at(row.node, row.role));
    e["forcing"]["relation"] = row.forcing.relation;
    e["forcing"]["i"] = row.forcing.i;
    e["forcing"]["j"] = row.forcing.j;
    e["forcing"]["sign"] = row.forcing.sign;
    e["forcing"]["modes"] = {row.forcing.p, row.forcing.q};
    e["forcing"]["state"] = "vacuum";
    rows.push_back(std::move(e));
  }
  j["entries"] = std::move(rows);
  j["notes"] = {
      "weyl mode relation read as [u(k),v(l)] = <u,v> delta_{k+l,-1}, the "
      "component form of [u(z),v(w)] = <u,v> delta(z-w)",
      "normal ordering sign: :ab: = a_+ b + (-1)^{p(a)p(b)} b a_-",
      "conjugate unit vertex pair: [X(e_i,z), X(-e_j,w)]_+ = "
      "delta_ij F(e_i,-e_j) delta(z-w), matching the first-order contraction "
      "1/(z-w)",
      "generator fields use weight-1 loop components throughout; even-vector "
      "vertex entries act by the unshifted operator Y",
  };
  return j;
}

}  // namespace toroidal
