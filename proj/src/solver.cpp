#include "mga/solver.hpp"

#include <map>
#include <optional>

#include "mga/errors.hpp"

namespace mga {

SolverVerdict Solver::solve(const SolverRequest& req) {
  ++calls_;
  SolverRequest hard_only{req.declarations, req.hard, {}};
  return finish(req, check(hard_only, false));
}

SolverVerdict Solver::max_solve(const SolverRequest& req) {
  ++calls_;
  return finish(req, check(req, !req.soft.empty()));
}

SolverVerdict Solver::finish(const SolverRequest& req, SolverVerdict v) {
  if (!v.sat()) return v;
  complete_model(v.model, req.declarations);
  for (const auto& h : req.hard) {
    bool ok = false;
    try {
      ok = eval_formula(h, v.model);
    } catch (const UnassignedSymbol& e) {
      return SolverVerdict::make_error(std::string("model incomplete: ") + e.what());
    }
    if (!ok)
      return SolverVerdict::make_error("solver model violates a hard constraint: " +
                                       print_formula(h));
  }
  return v;
}

void complete_model(Model& m, const std::vector<Declaration>& decls) {
  for (const auto& d : decls) {
    switch (d.kind) {
      case DeclKind::Int: m.ints.try_emplace(d.name, 0); break;
      case DeclKind::Bool: m.bools.try_emplace(d.name, false); break;
      case DeclKind::Array:
      case DeclKind::Function: m.funcs.try_emplace(d.name, FuncValue(0)); break;
    }
  }
}

// ---------------------------------------------------------------------------
// Model parsing

namespace {

std::string excerpt(const SExpr& e) {
  if (!e.is_list()) return e.text;
  std::string s = "(";
  for (std::size_t i = 0; i < e.items.size() && i < 4; ++i) {
    if (i) s += ' ';
    s += excerpt(e.items[i]);
  }
  if (e.items.size() > 4) s += " ...";
  return s + ")";
}

[[noreturn]] void bad(const SExpr& e) { throw ModelParseError(excerpt(e)); }

std::optional<Int> numeral(const SExpr& e) {
  if (e.kind == SExpr::Kind::Numeral) return parse_int(e.text);
  if (e.is_list() && e.items.size() == 2 && e.items[0].is_symbol("-") &&
      e.items[1].kind == SExpr::Kind::Numeral)
    return -*parse_int(e.items[1].text);
  return std::nullopt;
}

struct Definition {
  std::string param;  // empty for constants
  const SExpr* body;
};

class ModelReader {
 public:
  explicit ModelReader(const SExpr& root) {
    const SExpr* list = &root;
    std::size_t start = 0;
    if (!root.is_list()) bad(root);
    if (!root.items.empty() && root.items[0].is_symbol("model")) start = 1;
    for (std::size_t i = start; i < list->items.size(); ++i) {
      const SExpr& d = list->items[i];
      if (!d.is_list() || d.items.size() != 5 || !d.items[0].is_symbol("define-fun"))
        bad(d);
      const SExpr& params = d.items[2];
      if (!params.is_list() || params.items.size() > 1) bad(d);
      Definition def{"", &d.items[4]};
      if (params.items.size() == 1) {
        const SExpr& p = params.items[0];
        if (!p.is_list() || p.items.size() != 2) bad(d);
        def.param = p.items[0].text;
      }
      defs_[d.items[1].text] = def;
    }
  }

  bool has(const std::string& name) const { return defs_.count(name) != 0; }

  Int int_value(const std::string& name) {
    const Definition& d = defs_.at(name);
    if (auto v = numeral(*d.body)) return *v;
    bad(*d.body);
  }

  bool bool_value(const std::string& name) {
    const Definition& d = defs_.at(name);
    if (d.body->is_symbol("true")) return true;
    if (d.body->is_symbol("false")) return false;
    bad(*d.body);
  }

  FuncValue func_value(const std::string& name, int depth = 0) {
    const Definition& d = defs_.at(name);
    if (depth > 64) bad(*d.body);
    if (d.param.empty()) return array_expr(*d.body, depth);
    return fun_body(*d.body, d.param, depth);
  }

 private:
  FuncValue array_expr(const SExpr& e, int depth) {
    if (e.kind == SExpr::Kind::Symbol && has(e.text)) return func_value(e.text, depth + 1);
    if (!e.is_list() || e.items.empty()) bad(e);
    const SExpr& head = e.items[0];
    // ((as const (Array Int Int)) v)
    if (head.is_list() && head.items.size() == 3 && head.items[0].is_symbol("as") &&
        head.items[1].is_symbol("const") && e.items.size() == 2) {
      auto v = numeral(e.items[1]);
      if (!v) bad(e);
      return FuncValue(*v);
    }
    // (_ as-array f)
    if (head.is_symbol("_") && e.items.size() == 3 && e.items[1].is_symbol("as-array")) {
      if (!has(e.items[2].text)) bad(e);
      return func_value(e.items[2].text, depth + 1);
    }
    if (head.is_symbol("store") && e.items.size() == 4) {
      FuncValue base = array_expr(e.items[1], depth + 1);
      auto i = numeral(e.items[2]);
      auto v = numeral(e.items[3]);
      if (!i || !v) bad(e);
      base.set(*i, *v);
      return base;
    }
    if (head.is_symbol("lambda") && e.items.size() == 3 && e.items[1].is_list() &&
        e.items[1].items.size() == 1 && e.items[1].items[0].is_list() &&
        !e.items[1].items[0].items.empty())
      return fun_body(e.items[2], e.items[1].items[0].items[0].text, depth + 1);
    bad(e);
  }

  // Indices k such that cond is (= x k), (= k x) or a disjunction of those.
  bool equality_points(const SExpr& cond, const std::string& param,
                       std::vector<Int>& pts) {
    if (!cond.is_list() || cond.items.empty()) return false;
    const SExpr& head = cond.items[0];
    if ((head.is_symbol("or") || head.is_symbol("and")) && cond.items.size() == 2)
      return equality_points(cond.items[1], param, pts);
    if (head.is_symbol("or")) {
      for (std::size_t i = 1; i < cond.items.size(); ++i)
        if (!equality_points(cond.items[i], param, pts)) return false;
      return true;
    }
    if (head.is_symbol("=") && cond.items.size() == 3) {
      const SExpr& a = cond.items[1];
      const SExpr& b = cond.items[2];
      if (a.is_symbol(param)) {
        if (auto k = numeral(b)) { pts.push_back(*k); return true; }
      } else if (b.is_symbol(param)) {
        if (auto k = numeral(a)) { pts.push_back(*k); return true; }
      }
    }
    return false;
  }

  FuncValue fun_body(const SExpr& e, const std::string& param, int depth) {
    if (depth > 256) bad(e);
    if (auto v = numeral(e)) return FuncValue(*v);
    if (e.is_list() && e.items.size() == 4 && e.items[0].is_symbol("ite")) {
      std::vector<Int> pts;
      const SExpr* c = &e.items[1];
      bool negated = false;
      if (c->is_list() && c->items.size() == 2 && c->items[0].is_symbol("not")) {
        c = &c->items[1];
        negated = true;
      }
      if (!equality_points(*c, param, pts)) bad(e.items[1]);
      FuncValue on = fun_body(e.items[negated ? 3 : 2], param, depth + 1);
      FuncValue off = fun_body(e.items[negated ? 2 : 3], param, depth + 1);
      for (const auto& k : pts) off.set(k, on.apply(k));
      return off;
    }
    // (g x) with g another definition
    if (e.is_list() && e.items.size() == 2 && e.items[0].kind == SExpr::Kind::Symbol &&
        has(e.items[0].text) && e.items[1].is_symbol(param))
      return func_value(e.items[0].text, depth + 1);
    // (select A x)
    if (e.is_list() && e.items.size() == 3 && e.items[0].is_symbol("select") &&
        e.items[2].is_symbol(param))
      return array_expr(e.items[1], depth + 1);
    bad(e);
  }

  std::map<std::string, Definition> defs_;
};

}  // namespace

Model parse_model(std::string_view text, const std::vector<Declaration>& decls) {
  std::vector<SExpr> exprs;
  try {
    exprs = read_sexprs(text);
  } catch (const SyntaxError& e) {
    throw ModelParseError(std::string(text.substr(0, 80)));
  }
  if (exprs.size() != 1) throw ModelParseError(std::string(text.substr(0, 80)));
  ModelReader reader(exprs[0]);
  Model m;
  for (const auto& d : decls) {
    if (!reader.has(d.name)) continue;
    switch (d.kind) {
      case DeclKind::Int: m.ints[d.name] = reader.int_value(d.name); break;
      case DeclKind::Bool: m.bools[d.name] = reader.bool_value(d.name); break;
      case DeclKind::Array:
      case DeclKind::Function: m.funcs[d.name] = reader.func_value(d.name); break;
    }
  }
  complete_model(m, decls);
  return m;
}

}  // namespace mga
