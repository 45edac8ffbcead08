/*
 * Copyright 2026 The gcolombeau Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "expr.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "gcm/error.hpp"

namespace gcm {

namespace {

enum class Op { Const, Var, Eps, Add, Sub, Mul, Div, Neg, Pow, Sin, Cos, Tanh, Exp, Log, Sqrt, Atan, Bump, HEps };

struct OpInfo {
  Op op;
  int min_args;
  int max_args;
};

const std::map<std::string, OpInfo>& op_table() {
  static const std::map<std::string, OpInfo> table = {
      {"add", {Op::Add, 1, 64}},  {"sub", {Op::Sub, 2, 2}},    {"mul", {Op::Mul, 1, 64}},
      {"div", {Op::Div, 2, 2}},   {"neg", {Op::Neg, 1, 1}},    {"pow", {Op::Pow, 2, 2}},
      {"sin", {Op::Sin, 1, 1}},   {"cos", {Op::Cos, 1, 1}},    {"tanh", {Op::Tanh, 1, 1}},
      {"exp", {Op::Exp, 1, 1}},   {"log", {Op::Log, 1, 1}},    {"sqrt", {Op::Sqrt, 1, 1}},
      {"atan", {Op::Atan, 1, 1}}, {"bump", {Op::Bump, 1, 1}},  {"h_eps", {Op::HEps, 1, 1}},
  };
  return table;
}

[[noreturn]] void spec_error(const std::string& where, const std::string& msg) {
  throw Error(ErrorCode::SpecError, where + ": " + msg);
}

double zero_like(double) { return 0.0; }
Jet zero_like(const Jet& t) { return t * 0.0; }

}  // namespace

struct Expr::Node {
  Op op = Op::Const;
  double value = 0.0;
  int var = 0;
  std::vector<std::shared_ptr<const Node>> args;

  int max_var() const {
    int m = op == Op::Var ? var : -1;
    for (const auto& a : args) m = std::max(m, a->max_var());
    return m;
  }

  template <class T>
  T eval(std::span<const T> x, double eps) const {
    auto arg = [&](std::size_t i) { return args[i]->eval(x, eps); };
    switch (op) {
      case Op::Const:
        if constexpr (std::is_same_v<T, double>) {
          return value;
        } else {
          return x.empty() ? Jet::constant(value) : zero_like(x[0]) + value;
        }
      case Op::Var:
        if (static_cast<std::size_t>(var) >= x.size())
          throw Error(ErrorCode::Domain, "expression uses x" + std::to_string(var) + " but the chart has " +
                                             std::to_string(x.size()) + " coordinates");
        return x[var];
      case Op::Eps:
        return Node{Op::Const, eps, 0, {}}.eval(x, eps);
      case Op::Add: {
        T r = arg(0);
        for (std::size_t i = 1; i < args.size(); ++i) r = r + arg(i);
        return r;
      }
      case Op::Sub:
        return arg(0) - arg(1);
      case Op::Mul: {
        T r = arg(0);
        for (std::size_t i = 1; i < args.size(); ++i) r = r * arg(i);
        return r;
      }
      case Op::Div:
        return arg(0) / arg(1);
      case Op::Neg:
        return -arg(0);
      case Op::Pow: {
        const double p = args[1]->eval(std::span<const double>{}, eps);
        using std::pow;
        return pow(arg(0), p);
      }
      case Op::Sin: { using std::sin; return sin(arg(0)); }
      case Op::Cos: { using std::cos; return cos(arg(0)); }
      case Op::Tanh: { using std::tanh; return tanh(arg(0)); }
      case Op::Exp: { using std::exp; return exp(arg(0)); }
      case Op::Log: { using std::log; return log(arg(0)); }
      case Op::Sqrt: { using std::sqrt; return sqrt(arg(0)); }
      case Op::Atan: { using std::atan; return atan(arg(0)); }
      case Op::Bump: {
        const T t = arg(0);
        double tv;
        if constexpr (std::is_same_v<T, double>) tv = t; else tv = t.value();
        if (!(std::abs(tv) < 1.0)) return zero_like(t);
        using std::exp;
        return exp(-1.0 / (1.0 - t * t));
      }
      case Op::HEps: {
        const T t = arg(0);
        using std::tanh;
        return 0.5 * (1.0 + eps) * (tanh(t) + tanh(t * (1.0 / eps)));
      }
    }
    return T{};
  }
};

Expr Expr::parse(const nlohmann::json& j, const std::string& where) {
  auto node = std::make_shared<Node>();
  if (j.is_number()) {
    node->op = Op::Const;
    node->value = j.get<double>();
  } else if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "eps") {
      node->op = Op::Eps;
    } else if (s == "pi") {
      node->value = std::numbers::pi;
    } else if (s == "x") {
      node->op = Op::Var;
    } else if (s.size() > 1 && s[0] == 'x' && s.find_first_not_of("0123456789", 1) == std::string::npos) {
      node->op = Op::Var;
      node->var = std::stoi(s.substr(1));
    } else {
      spec_error(where, "unknown symbol '" + s + "'");
    }
  } else if (j.is_array() && !j.empty() && j[0].is_string()) {
    const auto name = j[0].get<std::string>();
    const auto it = op_table().find(name);
    if (it == op_table().end()) spec_error(where, "unknown operation '" + name + "'");
    const int nargs = static_cast<int>(j.size()) - 1;
    if (nargs < it->second.min_args || nargs > it->second.max_args)
      spec_error(where, "wrong number of arguments to '" + name + "'");
    node->op = it->second.op;
    for (int i = 1; i <= nargs; ++i) {
      Expr e = parse(j[i], where + "[" + std::to_string(i) + "]");
      node->args.push_back(e.root_);
    }
    if (node->op == Op::Pow && node->args[1]->max_var() >= 0)
      spec_error(where, "exponent of 'pow' may depend only on eps");
  } else {
    spec_error(where, "expected a number, symbol or [op, args...]");
  }
  Expr e;
  e.root_ = node;
  return e;
}

Jet Expr::eval(std::span<const Jet> x, double eps) const { return root_->eval(x, eps); }
double Expr::eval(std::span<const double> x, double eps) const { return root_->eval(x, eps); }
int Expr::max_var() const { return root_ ? root_->max_var() : -1; }

std::vector<Expr> parse_exprs(const nlohmann::json& j, const std::string& where) {
  std::vector<Expr> out;
  if (!j.is_array() || (!j.empty() && j[0].is_string() && op_table().count(j[0].get<std::string>())))
    return {Expr::parse(j, where)};
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(Expr::parse(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace gcm
