// Copyright 2026 The netsched Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "netsched/error.h"
#include "netsched/exact.h"

namespace netsched {

namespace {

std::string num(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string x_name(std::size_t i, std::size_t u) {
  return "x_" + std::to_string(i) + "_" + std::to_string(u);
}
std::string c_name(std::size_t i, std::size_t u, std::size_t r) {
  return "c_" + std::to_string(i) + "_" + std::to_string(u) + "_" + std::to_string(r);
}
std::string xl_name(const VirtualLink &vl, const LogicalEdge &e) {
  return "xl_" + std::to_string(vl.i) + "_" + std::to_string(vl.j) + "_" + std::to_string(e.a) + "_" +
         std::to_string(e.b);
}
std::string bw_name(const VirtualLink &vl, const LogicalEdge &e) {
  return "bw_" + std::to_string(vl.i) + "_" + std::to_string(vl.j) + "_" + std::to_string(e.a) + "_" +
         std::to_string(e.b);
}
std::string f_name(std::size_t u) { return "f_" + std::to_string(u); }
std::string fl_name(const LogicalEdge &e) {
  return "fl_" + std::to_string(e.a) + "_" + std::to_string(e.b);
}

// Accumulates "+ 2 x - y" style expressions.
class Expr {
 public:
  void add(double coef, const std::string &var) {
    if (coef == 0.0) return;
    if (!text_.empty() || coef < 0.0) text_ += coef < 0.0 ? " - " : " + ";
    double mag = std::abs(coef);
    if (mag != 1.0) text_ += num(mag) + " ";
    text_ += var;
  }
  void constant(double value) {
    if (value == 0.0) return;
    if (!text_.empty() || value < 0.0) text_ += value < 0.0 ? " - " : " + ";
    text_ += num(std::abs(value));
  }
  const std::string &str() const { return text_; }
  bool empty() const { return text_.empty(); }

 private:
  std::string text_;
};

void row(std::ostringstream &out, const std::string &name, const Expr &lhs, const char *sense,
         double rhs) {
  out << " " << name << ": " << (lhs.empty() ? "0" : lhs.str()) << " " << sense << " " << num(rhs)
      << "\n";
}

}  // namespace

std::string export_lp(const MilpModel &m) {
  const auto &req = m.request;
  const std::size_t n = req.containers.size();
  const std::size_t num_s = m.num_servers;
  const std::size_t num_r = m.num_resources;
  const double alpha = m.alpha;
  const double edge_count = static_cast<double>(m.edges.size());

  std::ostringstream out;
  out << "\\ netsched single-request model\n";
  out << "\\ request " << req.id << ", containers " << n << ", servers " << num_s
      << ", logical edges " << m.edges.size() << ", alpha " << num(alpha) << "\n";

  Expr obj;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t u = 0; u < num_s; ++u) {
      for (std::size_t r = 0; r < num_r; ++r) {
        obj.add(-alpha / (static_cast<double>(num_r) * req.containers[i].c_max[r]), c_name(i, u, r));
      }
    }
  }
  for (int e : m.routed_vlinks) {
    const auto &vl = req.vlinks[static_cast<std::size_t>(e)];
    for (const auto &edge : m.edges) obj.add(-alpha / vl.bw_max, bw_name(vl, edge));
  }
  for (std::size_t u = 0; u < num_s; ++u) obj.add((1.0 - alpha) / static_cast<double>(num_s), f_name(u));
  for (const auto &edge : m.edges) obj.add((1.0 - alpha) / edge_count, fl_name(edge));
  obj.constant(alpha * static_cast<double>(n + m.routed_vlinks.size()));
  out << "Minimize\n obj: " << (obj.empty() ? "0" : obj.str()) << "\n";

  out << "Subject To\n";
  for (std::size_t i = 0; i < n; ++i) {
    Expr e;
    for (std::size_t u = 0; u < num_s; ++u) e.add(1.0, x_name(i, u));
    row(out, "assign_" + std::to_string(i), e, "=", 1.0);
  }
  for (std::size_t u = 0; u < num_s; ++u) {
    for (std::size_t r = 0; r < num_r; ++r) {
      Expr e;
      for (std::size_t i = 0; i < n; ++i) e.add(1.0, c_name(i, u, r));
      row(out, "cap_" + std::to_string(u) + "_" + std::to_string(r), e, "<=",
          m.server_residual[u][r]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto &spec = req.containers[i];
    for (std::size_t u = 0; u < num_s; ++u) {
      for (std::size_t r = 0; r < num_r; ++r) {
        std::string suffix = std::to_string(i) + "_" + std::to_string(u) + "_" + std::to_string(r);
        Expr lo;
        lo.add(1.0, c_name(i, u, r));
        lo.add(-spec.c_min[r], x_name(i, u));
        row(out, "cmin_" + suffix, lo, ">=", 0.0);
        Expr hi;
        hi.add(1.0, c_name(i, u, r));
        hi.add(-spec.c_max[r], x_name(i, u));
        row(out, "cmax_" + suffix, hi, "<=", 0.0);
      }
    }
  }
  for (std::size_t g = 0; g < req.pods.size(); ++g) {
    const auto &pod = req.pods[g];
    for (std::size_t k = 1; k < pod.size(); ++k) {
      for (std::size_t u = 0; u < num_s; ++u) {
        Expr e;
        e.add(1.0, x_name(static_cast<std::size_t>(pod.front()), u));
        e.add(-1.0, x_name(static_cast<std::size_t>(pod[k]), u));
        row(out, "pod_" + std::to_string(g) + "_" + std::to_string(pod[k]) + "_" + std::to_string(u), e,
            "=", 0.0);
      }
    }
  }
  if (!m.routed_vlinks.empty()) {
    for (const auto &edge : m.edges) {
      Expr e;
      for (int v : m.routed_vlinks) e.add(1.0, bw_name(req.vlinks[static_cast<std::size_t>(v)], edge));
      row(out, "ecap_" + std::to_string(edge.a) + "_" + std::to_string(edge.b), e, "<=", edge.capacity);
    }
  }
  for (int v : m.routed_vlinks) {
    const auto &vl = req.vlinks[static_cast<std::size_t>(v)];
    for (const auto &edge : m.edges) {
      std::string suffix = std::to_string(vl.i) + "_" + std::to_string(vl.j) + "_" +
                           std::to_string(edge.a) + "_" + std::to_string(edge.b);
      Expr lo;
      lo.add(1.0, bw_name(vl, edge));
      lo.add(-vl.bw_min, xl_name(vl, edge));
      row(out, "bwmin_" + suffix, lo, ">=", 0.0);
      Expr hi;
      hi.add(1.0, bw_name(vl, edge));
      hi.add(-vl.bw_max, xl_name(vl, edge));
      row(out, "bwmax_" + suffix, hi, "<=", 0.0);
    }
  }
  for (int v : m.routed_vlinks) {
    const auto &vl = req.vlinks[static_cast<std::size_t>(v)];
    for (std::size_t u = 0; u < num_s; ++u) {
      Expr e;
      for (const auto &edge : m.edges) {
        if (static_cast<std::size_t>(edge.a) == u || static_cast<std::size_t>(edge.b) == u) {
          e.add(1.0, xl_name(vl, edge));
        }
      }
      e.add(-1.0, x_name(static_cast<std::size_t>(vl.i), u));
      e.add(-1.0, x_name(static_cast<std::size_t>(vl.j), u));
      row(out, "flow_" + std::to_string(vl.i) + "_" + std::to_string(vl.j) + "_" + std::to_string(u), e,
          "=", 0.0);
    }
  }
  if (n > 0) {
    for (std::size_t u = 0; u < num_s; ++u) {
      Expr e;
      e.add(1.0, f_name(u));
      for (std::size_t i = 0; i < n; ++i) e.add(-1.0 / static_cast<double>(n), x_name(i, u));
      row(out, "act_" + std::to_string(u), e, ">=", 0.0);
    }
  }
  if (!req.vlinks.empty() && !m.routed_vlinks.empty()) {
    const double links = static_cast<double>(req.vlinks.size());
    for (const auto &edge : m.edges) {
      Expr e;
      e.add(1.0, fl_name(edge));
      for (int v : m.routed_vlinks) {
        e.add(-1.0 / links, xl_name(req.vlinks[static_cast<std::size_t>(v)], edge));
      }
      row(out, "actl_" + std::to_string(edge.a) + "_" + std::to_string(edge.b), e, ">=", 0.0);
    }
  }

  out << "Bounds\n";
  for (std::size_t u = 0; u < num_s; ++u) {
    if (m.server_active[u]) out << " " << f_name(u) << " = 1\n";
  }
  for (const auto &edge : m.edges) {
    if (edge.active) out << " " << fl_name(edge) << " = 1\n";
  }

  out << "Binary\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t u = 0; u < num_s; ++u) out << " " << x_name(i, u) << "\n";
  }
  for (int v : m.routed_vlinks) {
    for (const auto &edge : m.edges) {
      out << " " << xl_name(req.vlinks[static_cast<std::size_t>(v)], edge) << "\n";
    }
  }
  for (std::size_t u = 0; u < num_s; ++u) out << " " << f_name(u) << "\n";
  for (const auto &edge : m.edges) out << " " << fl_name(edge) << "\n";
  out << "End\n";
  return out.str();
}

namespace {

bool parse_number(const std::string &token, double &value) {
  std::string t = token;
  if (t == "inf" || t == "+inf" || t == "infinity" || t == "+infinity") {
    value = std::numeric_limits<double>::infinity();
    return true;
  }
  if (t == "-inf" || t == "-infinity") {
    value = -std::numeric_limits<double>::infinity();
    return true;
  }
  auto res = std::from_chars(t.data(), t.data() + t.size(), value);
  return res.ec == std::errc() && res.ptr == t.data() + t.size();
}

bool is_sense(const std::string &t) {
  return t == "<=" || t == ">=" || t == "=" || t == "<" || t == ">" || t == "=<" || t == "=>";
}

char sense_char(const std::string &t) {
  if (t == "<=" || t == "<" || t == "=<") return '<';
  if (t == ">=" || t == ">" || t == "=>") return '>';
  return '=';
}

// Linear expression tokens -> terms plus a constant.
void parse_expr(const std::vector<std::string> &tokens, std::size_t line,
                std::vector<std::pair<std::string, double>> &terms, double &constant) {
  double sign = 1.0;
  bool have_coef = false;
  double coef = 1.0;
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    const auto &t = tokens[k];
    if (t == "+" || t == "-") {
      if (have_coef) {
        constant += sign * coef;
        have_coef = false;
      }
      sign = t == "-" ? -1.0 : 1.0;
      continue;
    }
    double value = 0.0;
    if (parse_number(t, value)) {
      if (have_coef) throw Error(ErrorCode::kInvalidInput, "lp line " + std::to_string(line) + ": two numbers in a row");
      coef = value;
      have_coef = true;
      continue;
    }
    terms.emplace_back(t, sign * (have_coef ? coef : 1.0));
    sign = 1.0;
    have_coef = false;
    coef = 1.0;
  }
  if (have_coef) constant += sign * coef;
}

std::vector<std::string> split(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

LpDocument parse_lp(const std::string &text) {
  enum class Section { kNone, kObjective, kRows, kBounds, kBinary, kEnd };
  LpDocument doc;
  Section section = Section::kNone;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::string pending;
  std::size_t pending_line = 0;
  std::vector<std::string> objective_tokens;

  auto flush_row = [&]() {
    if (pending.empty()) return;
    auto colon = pending.find(':');
    LpRow r;
    std::string body = pending;
    if (colon != std::string::npos) {
      r.name = split(pending.substr(0, colon)).empty() ? "" : split(pending.substr(0, colon))[0];
      body = pending.substr(colon + 1);
    }
    auto tokens = split(body);
    auto it = std::find_if(tokens.begin(), tokens.end(), is_sense);
    if (it == tokens.end() || it + 2 != tokens.end()) {
      throw Error(ErrorCode::kInvalidInput, "lp line " + std::to_string(pending_line) + ": malformed row");
    }
    r.sense = sense_char(*it);
    if (!parse_number(*(it + 1), r.rhs)) {
      throw Error(ErrorCode::kInvalidInput, "lp line " + std::to_string(pending_line) + ": bad right-hand side");
    }
    double constant = 0.0;
    parse_expr(std::vector<std::string>(tokens.begin(), it), pending_line, r.terms, constant);
    r.rhs -= constant;
    doc.rows.push_back(std::move(r));
    pending.clear();
  };

  while (std::getline(in, line)) {
    ++line_no;
    auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '\\') continue;
    std::string trimmed = line.substr(start);
    while (!trimmed.empty() && (trimmed.back() == '\r' || trimmed.back() == ' ')) trimmed.pop_back();
    std::string key = lower(trimmed);
    if (key == "minimize" || key == "minimise" || key == "min") {
      section = Section::kObjective;
      continue;
    }
    if (key == "subject to" || key == "st" || key == "s.t." || key == "such that") {
      section = Section::kRows;
      continue;
    }
    if (key == "bounds") {
      flush_row();
      section = Section::kBounds;
      continue;
    }
    if (key == "binary" || key == "binaries" || key == "bin") {
      flush_row();
      section = Section::kBinary;
      continue;
    }
    if (key == "end") {
      flush_row();
      section = Section::kEnd;
      continue;
    }
    switch (section) {
      case Section::kObjective: {
        std::string body = trimmed;
        auto colon = body.find(':');
        if (colon != std::string::npos) body = body.substr(colon + 1);
        for (auto &t : split(body)) objective_tokens.push_back(t);
        break;
      }
      case Section::kRows: {
        if (pending.empty()) pending_line = line_no;
        pending += " " + trimmed;
        auto tokens = split(pending);
        if (tokens.size() >= 2 && is_sense(tokens[tokens.size() - 2])) flush_row();
        break;
      }
      case Section::kBounds: {
        auto tokens = split(trimmed);
        LpBound b{0.0, std::numeric_limits<double>::infinity()};
        std::string var;
        double v = 0.0;
        if (tokens.size() == 2 && lower(tokens[1]) == "free") {
          var = tokens[0];
          b.lower = -std::numeric_limits<double>::infinity();
        } else if (tokens.size() == 3 && parse_number(tokens[2], v)) {
          var = tokens[0];
          char s = sense_char(tokens[1]);
          if (s == '=') b = {v, v};
          else if (s == '<') b.upper = v;
          else b.lower = v;
        } else if (tokens.size() == 5 && parse_number(tokens[0], b.lower) &&
                   parse_number(tokens[4], b.upper)) {
          var = tokens[2];
        } else {
          throw Error(ErrorCode::kInvalidInput, "lp line " + std::to_string(line_no) + ": malformed bound");
        }
        doc.bounds[var] = b;
        break;
      }
      case Section::kBinary:
        for (auto &t : split(trimmed)) doc.binaries.push_back(t);
        break;
      case Section::kNone:
      case Section::kEnd:
        throw Error(ErrorCode::kInvalidInput, "lp line " + std::to_string(line_no) + ": text outside a section");
    }
  }
  if (!pending.empty()) {
    throw Error(ErrorCode::kInvalidInput, "lp line " + std::to_string(pending_line) + ": unterminated row");
  }
  parse_expr(objective_tokens, 0, doc.objective, doc.objective_constant);
  return doc;
}

LpSolution lp_solution_from_placement(const MilpModel &m, const Placement &p) {
  const auto &req = m.request;
  const std::size_t n = req.containers.size();
  if (p.container_to_server.size() != n || p.allocated_caps.size() != n ||
      p.allocated_bw.size() != req.vlinks.size()) {
    throw Error(ErrorCode::kInvalidInput, "placement does not match the model's request");
  }
  LpSolution sol;
  std::vector<bool> used(m.num_servers, false);
  for (std::size_t i = 0; i < n; ++i) {
    auto host = static_cast<std::size_t>(p.container_to_server[i]);
    if (host >= m.num_servers) throw Error(ErrorCode::kInvalidInput, "placement names an unknown server");
    used[host] = true;
    for (std::size_t u = 0; u < m.num_servers; ++u) {
      sol[x_name(i, u)] = u == host ? 1.0 : 0.0;
      for (std::size_t r = 0; r < m.num_resources; ++r) {
        sol[c_name(i, u, r)] = u == host ? p.allocated_caps[i][r] : 0.0;
      }
    }
  }
  std::set<std::pair<ServerId, ServerId>> pairs;
  for (int v : m.routed_vlinks) {
    const auto &vl = req.vlinks[static_cast<std::size_t>(v)];
    ServerId a = p.container_to_server[static_cast<std::size_t>(vl.i)];
    ServerId b = p.container_to_server[static_cast<std::size_t>(vl.j)];
    auto key = std::make_pair(std::min(a, b), std::max(a, b));
    pairs.insert(key);
    for (const auto &edge : m.edges) {
      bool on = edge.a == key.first && edge.b == key.second;
      sol[xl_name(vl, edge)] = on ? 1.0 : 0.0;
      sol[bw_name(vl, edge)] = on ? p.allocated_bw[static_cast<std::size_t>(v)] : 0.0;
    }
  }
  for (std::size_t u = 0; u < m.num_servers; ++u) {
    sol[f_name(u)] = used[u] || m.server_active[u] ? 1.0 : 0.0;
  }
  for (const auto &edge : m.edges) {
    sol[fl_name(edge)] = edge.active || pairs.count({edge.a, edge.b}) != 0 ? 1.0 : 0.0;
  }
  return sol;
}

std::string dump_lp_solution(const LpSolution &solution) {
  std::ostringstream out;
  for (const auto &[name, value] : solution) out << name << " " << num(value) << "\n";
  return out.str();
}

LpSolution parse_lp_solution(const std::string &text) {
  LpSolution sol;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = split(line);
    if (tokens.empty() || tokens[0][0] == '#' || tokens[0][0] == '\\') continue;
    double v = 0.0;
    if (tokens.size() != 2 || !parse_number(tokens[1], v)) {
      throw Error(ErrorCode::kInvalidInput, "solution line " + std::to_string(line_no) + ": expected 'name value'");
    }
    sol[tokens[0]] = v;
  }
  return sol;
}

LpCheckResult check_lp_solution(const LpDocument &doc, const LpSolution &solution, double tolerance) {
  LpCheckResult out;
  out.min_slack = std::numeric_limits<double>::infinity();
  auto value = [&](const std::string &name) {
    auto it = solution.find(name);
    return it == solution.end() ? 0.0 : it->second;
  };
  auto note = [&](const std::string &what, double slack) {
    out.min_slack = std::min(out.min_slack, slack);
    if (slack < -tolerance) out.violations.push_back(what + " (slack " + num(slack) + ")");
  };
  std::set<std::string> vars;
  for (const auto &row : doc.rows) {
    double lhs = 0.0;
    for (const auto &[name, coef] : row.terms) {
      lhs += coef * value(name);
      vars.insert(name);
    }
    double slack = row.sense == '<' ? row.rhs - lhs
                   : row.sense == '>' ? lhs - row.rhs
                                      : -std::abs(lhs - row.rhs);
    note("row " + row.name, slack);
  }
  for (const auto &[name, coef] : doc.objective) {
    out.objective_value += coef * value(name);
    vars.insert(name);
  }
  out.objective_value += doc.objective_constant;
  for (const auto &name : vars) {
    auto it = doc.bounds.find(name);
    LpBound b = it == doc.bounds.end() ? LpBound{0.0, std::numeric_limits<double>::infinity()} : it->second;
    double v = value(name);
    if (std::isfinite(b.lower)) note("lower bound " + name, v - b.lower);
    if (std::isfinite(b.upper)) note("upper bound " + name, b.upper - v);
  }
  for (const auto &name : doc.binaries) {
    double v = value(name);
    double gap = std::min(std::abs(v), std::abs(v - 1.0));
    if (gap > tolerance) out.violations.push_back("binary " + name + " = " + num(v));
  }
  if (!std::isfinite(out.min_slack)) out.min_slack = 0.0;
  return out;
}

}  // namespace netsched
