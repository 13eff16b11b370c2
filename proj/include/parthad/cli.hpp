#pragma once

// Command-line front end. `run` never writes to the process streams; main()
// forwards the returned report and diagnostics.

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "parthad/error.hpp"
#include "parthad/hcompletion.hpp"
#include "parthad/pperm.hpp"
#include "parthad/pre_latin.hpp"
#include "parthad/submagic.hpp"
#include "parthad/torus_matrix.hpp"
#include "parthad/verify.hpp"

namespace parthad::cli {

enum ExitCode : int { kOk = 0, kCriterionFails = 1, kUsage = 2, kNumerical = 3 };

struct RunResult {
  int exit_code = kOk;
  std::string report;
  std::string diagnostics;
};

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHadamard:
    case ErrorKind::NotSubmagic:
    case ErrorKind::NotCommuting:
    case ErrorKind::NotCompletable:
    case ErrorKind::RankError:
      return kCriterionFails;
    case ErrorKind::IllConditioned:
    case ErrorKind::DegenerateSplit:
      return kNumerical;
    default:
      return kUsage;
  }
}

namespace detail {

using nlohmann::ordered_json;

struct Options {
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  bool json = false;
  std::size_t limit = kDefaultEnumerationLimit;
};

/// A command result: text for humans, the same content as JSON.
struct Output {
  int code = kOk;
  std::string text;
  ordered_json data = ordered_json::object();
};

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline ordered_json points_json(const std::vector<PartialPermutation>& pts) {
  ordered_json a = ordered_json::array();
  for (const auto& p : pts) a.push_back(to_string(p));
  return a;
}

inline Output cmd_check(const std::string& path, const Options& o) {
  const auto h = read_phm(path, o.tol);
  const auto rep = is_partial_hadamard(h, o.tol);
  Output out;
  out.code = rep.ok ? kOk : kCriterionFails;
  out.data["partial_hadamard"] = rep.ok;
  out.data["rows"] = h.rows();
  out.data["cols"] = h.cols();
  out.data["exact"] = rep.exact;
  out.data["worst_value"] = rep.worst_value;
  out.text = "partial_hadamard: " + yes_no(rep.ok) + "\nshape: " + std::to_string(h.rows()) + " x " +
             std::to_string(h.cols()) + "\nexact: " + yes_no(rep.exact) + "\n";
  if (rep.worst_pair) {
    out.data["worst_pair"] = {rep.worst_pair->first, rep.worst_pair->second};
    out.text += "worst_pair: rows " + std::to_string(rep.worst_pair->first) + " and " +
                std::to_string(rep.worst_pair->second) + "\n";
  }
  out.text += "worst_inner_product: " + parthad::detail::format_double(rep.worst_value) + "\n";
  return out;
}

inline Output cmd_grid(const std::string& path, const Options& o) {
  const auto h = read_phm(path, o.tol);
  const auto g = grid_from_hadamard(h, o.tol);
  const auto rep = check_grid(g, o.tol);
  Output out;
  out.data["submagic"] = rep.submagic;
  out.data["magic"] = rep.magic;
  out.data["commuting"] = rep.commuting;
  out.data["commutator"] = rep.violation("commutator");
  out.text = "submagic: " + yes_no(rep.submagic) + "\nmagic: " + yes_no(rep.magic) + "\ncommuting: " +
             yes_no(rep.commuting) + "\ncommutator_norm: " + parthad::detail::format_double(rep.violation("commutator")) + "\n";
  if (!rep.commuting) return out;
  try {
    const auto l = pre_latin_from_rank_one(g, h.cols(), o.tol);
    out.data["pre_latin"] = to_pls(l);
    out.text += to_pls(l);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::RankError) throw;
    out.data["pre_latin"] = nullptr;
    out.text += "pre_latin: none (blocks are not rank one)\n";
  }
  const auto pts = distinct_points(classical_points(g, o.tol, o.seed));
  const auto sg = generate_semigroup(pts);
  out.data["classical_points"] = points_json(pts);
  out.data["semigroup_order"] = sg.order();
  out.data["semigroup"] = points_json(sg.elements());
  out.text += to_text(sg);
  return out;
}

inline Output cmd_complete_row(const std::string& path, const Options& o) {
  const auto c = complete_row(read_phm(path, o.tol), o.tol);
  Output out;
  out.text = to_phm(c);
  out.data["matrix"] = out.text;
  return out;
}

inline Output cmd_complete_grid(const std::string& path, std::size_t size, const std::string& method, const Options& o) {
  const auto g = read_pgrid(path);
  ProjGrid c = g;
  if (method == "last") {
    c = complete_last(g, o.tol);
  } else if (method == "commuting") {
    c = complete_commuting(g, size == 0 ? g.size() + 1 : size, o.tol, o.seed);
  } else if (method == "2x2") {
    c = complete_2x2_to_4x4(g, o.tol);
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown method '" + method + "'");
  }
  if (size != 0 && c.size() != size)
    throw Error(ErrorKind::InvalidArgument, "method '" + method + "' produces size " + std::to_string(c.size()));
  Output out;
  out.text = to_pgrid(c);
  out.data["grid"] = out.text;
  return out;
}

inline Output cmd_criteria(const std::string& path, const Options& o) {
  const auto h = read_phm(path, o.tol);
  Output out;
  std::vector<bool> votes;
  auto record = [&](const std::string& key, bool v, const std::string& note) {
    votes.push_back(v);
    out.data[key] = v;
    out.text += key + ": " + yes_no(v) + (note.empty() ? "" : "  (" + note + ")") + "\n";
  };
  const auto profile = modulus_profile(h, o.tol);
  std::string moduli;
  for (double m : profile.moduli) moduli += (moduli.empty() ? "" : " ") + parthad::detail::format_double(m);
  record("modulus_profile_constant", profile.constant, "moduli " + moduli);
  record("gram_criterion", gram_criterion(h, o.tol), "");
  const auto w = weighted_criterion(h, o.tol);
  record("weighted_criterion", w.passes, "c = " + parthad::detail::format_double(w.c));
  bool grid_ok = false;
  std::string why;
  try {
    complete_last(grid_from_hadamard(h, o.tol), o.tol);
    grid_ok = true;
  } catch (const Error& e) {
    if (exit_code_for(e.kind()) != kCriterionFails) throw;
    why = std::string(to_string(e.kind()));
  }
  record("grid_completes", grid_ok, why);
  const bool all = std::all_of(votes.begin(), votes.end(), [](bool v) { return v; });
  const bool none = std::none_of(votes.begin(), votes.end(), [](bool v) { return v; });
  out.data["agree"] = all || none;
  out.text += std::string("agree: ") + yes_no(all || none) + "\n";
  out.code = all ? kOk : kCriterionFails;
  return out;
}

inline Output cmd_semigroup(const std::string& path) {
  const auto sg = semigroup_of(read_pls(path));
  Output out;
  out.text = to_text(sg);
  out.data["order"] = sg.order();
  out.data["is_group"] = sg.is_group();
  out.data["elements"] = points_json(sg.elements());
  return out;
}

inline Output cmd_count(unsigned n) {
  Output out;
  const auto c = count_all(n).str();
  out.text = c + "\n";
  out.data["n"] = n;
  out.data["count"] = c;
  return out;
}

inline Output cmd_enumerate(std::size_t n, const Options& o) {
  Output out;
  ordered_json a = ordered_json::array();
  for_each_partial_permutation(
      n,
      [&](const PartialPermutation& p) {
        out.text += to_string(p) + "\n";
        a.push_back(to_string(p));
      },
      o.limit);
  out.data["n"] = n;
  out.data["elements"] = std::move(a);
  return out;
}

inline Output cmd_fourier(const std::vector<int>& orders) {
  for (int n : orders)
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "Fourier orders must be positive");
  Output out;
  out.text = to_phm(fourier(orders));
  out.data["matrix"] = out.text;
  return out;
}

inline Output cmd_tensor(const std::string& a, const std::string& b, const Options& o) {
  Output out;
  out.text = to_phm(tensor(read_phm(a, o.tol), read_phm(b, o.tol)));
  out.data["matrix"] = out.text;
  return out;
}

inline Output cmd_verify(const Options& o) {
  Output out;
  ordered_json a = ordered_json::array();
  for (const auto& r : verify::run_all(o.seed)) {
    out.text += verify::format_line(r) + "\n";
    a.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    if (!r.pass) out.code = kCriterionFails;
  }
  out.data["criteria"] = std::move(a);
  return out;
}

}  // namespace detail

inline RunResult run(const std::vector<std::string>& args) {
  detail::Options o;
  CLI::App app{"Partial Hadamard matrices, projection grids and partial permutation semigroups", "parthad"};
  app.require_subcommand(1);
  app.add_option("--tol", o.tol, "numerical tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "random seed");
  app.add_flag("--json", o.json, "emit one JSON object");
  app.add_option("--limit", o.limit, "largest N accepted by enumerate");

  std::string path, path_b, method = "last";
  std::size_t size = 0;
  unsigned n = 0;
  std::vector<int> orders;
  auto sub = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  auto* check = sub("check", "test a .phm matrix for pairwise orthogonal rows");
  check->add_option("file", path)->required();
  auto* grid = sub("grid", "build the projection grid of a .phm matrix");
  grid->add_option("file", path)->required();
  auto* crow = sub("complete-row", "complete an (N-1) x N matrix to N x N");
  crow->add_option("file", path)->required();
  auto* cgrid = sub("complete-grid", "complete a .pgrid grid to a magic grid");
  cgrid->add_option("file", path)->required();
  cgrid->add_option("--size", size, "target grid size");
  cgrid->add_option("--method", method, "last | commuting | 2x2")->check(CLI::IsMember({"last", "commuting", "2x2"}));
  auto* crit = sub("criteria", "evaluate the completability criteria side by side");
  crit->add_option("file", path)->required();
  auto* semi = sub("semigroup", "semigroup generated by a .pls pre-Latin square");
  semi->add_option("file", path)->required();
  auto* count = sub("count", "number of partial permutations of {1..N}");
  count->add_option("N", n)->required();
  auto* en = sub("enumerate", "list partial permutations of {1..N} in canonical order");
  en->add_option("N", n)->required();
  auto* four = sub("fourier", "generalized Fourier matrix F_n1 x F_n2 x ...");
  four->add_option("orders", orders)->required();
  auto* tens = sub("tensor", "tensor product of two .phm matrices");
  tens->add_option("A", path)->required();
  tens->add_option("B", path_b)->required();
  auto* ver = sub("verify", "run the acceptance suite");

  std::vector<const char*> argv{"parthad"};
  for (const auto& a : args) argv.push_back(a.c_str());
  RunResult result;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    const int code = app.exit(e, out, err);
    result.report = out.str();
    result.diagnostics = err.str();
    result.exit_code = code == 0 ? kOk : kUsage;
    return result;
  }

  detail::Output out;
  try {
    if (check->parsed()) out = detail::cmd_check(path, o);
    else if (grid->parsed()) out = detail::cmd_grid(path, o);
    else if (crow->parsed()) out = detail::cmd_complete_row(path, o);
    else if (cgrid->parsed()) out = detail::cmd_complete_grid(path, size, method, o);
    else if (crit->parsed()) out = detail::cmd_criteria(path, o);
    else if (semi->parsed()) out = detail::cmd_semigroup(path);
    else if (count->parsed()) out = detail::cmd_count(n);
    else if (en->parsed()) out = detail::cmd_enumerate(n, o);
    else if (four->parsed()) out = detail::cmd_fourier(orders);
    else if (tens->parsed()) out = detail::cmd_tensor(path, path_b, o);
    else if (ver->parsed()) out = detail::cmd_verify(o);
  } catch (const Error& e) {
    result.exit_code = exit_code_for(e.kind());
    result.diagnostics = std::string("error: ") + e.what() + "\n";
    if (o.json) {
      detail::ordered_json j{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
      result.report = j.dump() + "\n";
    }
    return result;
  }
  result.exit_code = out.code;
  result.report = o.json ? out.data.dump() + "\n" : out.text;
  return result;
}

}  // namespace parthad::cli
