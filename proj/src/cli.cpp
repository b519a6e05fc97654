#include "k3lat/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "k3lat/error.hpp"
#include "k3lat/expression.hpp"
#include "k3lat/fibration.hpp"
#include "k3lat/report_json.hpp"
#include "k3lat/roots.hpp"
#include "k3lat/scenarios.hpp"

namespace k3lat {

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string tuple_string(const IntVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].get_str();
  return out + ")";
}

IntVector parse_tuple(const std::string& text, std::size_t line_no) {
  const std::string t = trim(text);
  if (t.size() < 2 || t.front() != '(' || t.back() != ')')
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected an integer tuple");
  IntVector out;
  for (const auto& item : split_names(t.substr(1, t.size() - 2))) {
    mpz_class x;
    if (x.set_str(item[0] == '+' ? item.substr(1) : item, 10) != 0)
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad integer '" + item + "'");
    out.push_back(x);
  }
  return out;
}

// Plain-text description of a lattice and a pencil on it.
struct FibrationInput {
  Lattice lattice;
  std::map<std::string, LatticeClass> classes;
  std::string e;
  std::vector<std::string> components;
  std::vector<std::string> sections;
};

FibrationInput read_fibration_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  std::string section, expression, line;
  std::vector<std::pair<std::string, std::pair<std::string, std::size_t>>> class_lines;
  std::map<std::string, std::string> fibration;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw Error(ErrorCode::ParseError, "line " + std::to_string(no) + ": bad section header");
      section = line.substr(1, line.size() - 2);
      if (section != "lattice" && section != "classes" && section != "fibration")
        throw Error(ErrorCode::ParseError, "line " + std::to_string(no) + ": unknown section [" + section + "]");
      continue;
    }
    if (section == "lattice") {
      expression += line;
      continue;
    }
    const auto eq = line.find('=');
    if (section.empty() || eq == std::string::npos)
      throw Error(ErrorCode::ParseError, "line " + std::to_string(no) + ": expected 'name = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section == "classes")
      class_lines.push_back({key, {value, no}});
    else
      fibration[key] = value;
  }
  if (expression.empty()) throw Error(ErrorCode::ParseError, path + ": missing [lattice] section");

  FibrationInput input{parse_lattice_expression(expression), {}, {}, {}, {}};
  for (std::size_t i = 0; i < input.lattice.rank(); ++i)
    input.classes.insert_or_assign(input.lattice.labels()[i], input.lattice.basis(i));
  for (const auto& [name, value] : class_lines) {
    IntVector coords = parse_tuple(value.first, value.second);
    if (coords.size() != input.lattice.rank())
      throw Error(ErrorCode::ParseError, "line " + std::to_string(value.second) + ": tuple length " +
                                             std::to_string(coords.size()) + " != rank " +
                                             std::to_string(input.lattice.rank()));
    input.classes.insert_or_assign(name, input.lattice.element(std::move(coords)));
  }
  if (!fibration.count("e")) throw Error(ErrorCode::ParseError, path + ": [fibration] needs e = <name>");
  input.e = fibration["e"];
  input.components = split_names(fibration["components"]);
  input.sections = split_names(fibration["sections"]);
  return input;
}

const LatticeClass& lookup(const FibrationInput& input, const std::string& name) {
  const auto it = input.classes.find(name);
  if (it == input.classes.end()) throw Error(ErrorCode::ParseError, "unknown class '" + name + "'");
  return it->second;
}

std::string signature_string(const Signature& s) {
  return "(" + std::to_string(s.plus) + "," + std::to_string(s.zero) + "," + std::to_string(s.minus) + ")";
}

int cmd_lattice_info(const std::vector<std::string>& words, bool json, std::ostream& out) {
  const LatticeInfo info = lattice_info(parse_lattice_expression(join(words, " ")));
  if (json) {
    out << to_json(info).dump(2) << "\n";
    return kExitOk;
  }
  out << "rank " << info.rank << "\n";
  out << "signature " << signature_string(info.signature) << "\n";
  out << "even " << (info.even ? "true" : "false") << "\n";
  out << "det " << info.det << "\n";
  out << "invariant factors";
  if (info.invariant_factors.empty()) out << " none";
  for (const auto& d : info.invariant_factors) out << " " << d;
  out << "\n";
  if (info.invariants)
    out << "2-elementary r=" << info.invariants->r << " a=" << info.invariants->a
        << " delta=" << info.invariants->delta << "\n";
  else
    out << "2-elementary no\n";
  return kExitOk;
}

int cmd_roots(const std::vector<std::string>& words, const std::string& norm_text, bool json, std::ostream& out) {
  mpz_class norm;
  if (norm.set_str(norm_text, 10) != 0) throw Error(ErrorCode::ParseError, "bad norm '" + norm_text + "'");
  const RootList roots = enumerate_norm_vectors(parse_lattice_expression(join(words, " ")), norm);
  if (json) {
    out << to_json(roots).dump(2) << "\n";
    return kExitOk;
  }
  out << roots.vectors.size() << " vectors of norm " << norm << " (one per +/- pair";
  if (roots.radical_rank) out << ", modulo a radical of rank " << roots.radical_rank;
  out << ")\n";
  for (const auto& v : roots.vectors) out << tuple_string(v.coords()) << "\n";
  return kExitOk;
}

int cmd_fibration(const std::string& path, bool json, std::ostream& out) {
  const FibrationInput input = read_fibration_file(path);
  std::vector<LatticeClass> components, sections;
  for (const auto& n : input.components) components.push_back(lookup(input, n));
  for (const auto& n : input.sections) sections.push_back(lookup(input, n));
  const FibrationReport rep = analyze_fibration(input.lattice, lookup(input, input.e), components, sections);
  if (json) {
    out << to_json(rep).dump(2) << "\n";
    return kExitOk;
  }
  auto name_of = [&](const LatticeClass& x) {
    for (const auto& n : input.components)
      if (lookup(input, n) == x) return n;
    for (const auto& n : input.sections)
      if (lookup(input, n) == x) return n;
    return x.to_string();
  };
  out << "fiber class " << input.e << " = " << lookup(input, input.e).to_string() << "\n";
  out << "reducible fibers " << rep.fibers.size() << "\n";
  for (const auto& f : rep.fibers) {
    out << "  " << f.kind.to_string() << ":";
    for (std::size_t i = 0; i < f.members.size(); ++i) {
      out << (i ? " +" : "") << " ";
      if (i < f.marks.size() && f.marks[i] != 1) out << f.marks[i];
      out << name_of(f.members[i]);
    }
    out << "\n";
  }
  out << "sections";
  if (rep.sections.empty()) out << " none";
  for (const auto& s : rep.sections) out << " " << name_of(s);
  out << "\n";
  out << "shioda-tate rank " << rep.shioda_tate_rank << "\n";
  out << "mordell-weil rank " << rep.mw_rank << "\n";
  out << "mordell-weil lattice rootless " << (rep.mw_rootless ? "yes" : "no") << "\n";
  return kExitOk;
}

int cmd_verify(const std::vector<std::string>& filter, bool json, std::ostream& out) {
  const std::vector<CaseReport> reports = verify_all(filter);
  std::size_t passed = 0;
  for (const auto& r : reports) passed += r.pass ? 1 : 0;
  if (json) {
    out << reports_json(reports).dump(2) << "\n";
  } else {
    for (const auto& r : reports) {
      std::size_t ok = 0;
      for (const auto& c : r.checks) ok += c.pass ? 1 : 0;
      out << r.case_id << " " << (r.pass ? "PASS" : "FAIL") << " (" << ok << "/" << r.checks.size() << " checks)\n";
      for (const auto& c : r.checks) {
        out << "  " << (c.pass ? "ok  " : "FAIL") << " " << c.name << ": " << c.actual;
        if (!c.pass) out << " (expected " << c.expected << "; " << c.source << ")";
        out << "\n";
      }
    }
    out << passed << "/" << reports.size() << " cases pass\n";
  }
  return passed == reports.size() ? kExitOk : kExitVerificationFailed;
}

int cmd_triples(bool json, std::ostream& out) {
  const auto triples = admissible_triples();
  if (json) {
    out << triples_json(triples).dump(2) << "\n";
    return kExitOk;
  }
  out << "r a delta\n";
  for (const auto& t : triples) out << t.r << " " << t.a << " " << t.delta << "\n";
  out << triples.size() << " admissible triples\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact lattice computations for 2-elementary K3 Picard lattices", "k3lat"};
  app.require_subcommand(1, 1);
  bool json = false;
  app.add_flag("--json", json, "Print JSON instead of text");

  auto* lattice_cmd = app.add_subcommand("lattice", "Lattice queries");
  lattice_cmd->require_subcommand(1, 1);
  auto* info_cmd = lattice_cmd->add_subcommand("info", "Rank, signature, parity, determinant, discriminant");
  std::vector<std::string> info_expr;
  info_cmd->add_option("expr", info_expr, "Lattice expression, e.g. \"U + E8(2)\"")->required();

  auto* roots_cmd = app.add_subcommand("roots", "Vectors of a given negative norm, up to sign");
  std::vector<std::string> roots_expr;
  std::string norm_text;
  roots_cmd->add_option("expr", roots_expr, "Lattice expression")->required();
  roots_cmd->add_option("--norm", norm_text, "Square of the vectors, e.g. -2")->required()->allow_extra_args(false);

  auto* fibration_cmd = app.add_subcommand("fibration", "Elliptic fibrations");
  fibration_cmd->require_subcommand(1, 1);
  auto* analyze_cmd = fibration_cmd->add_subcommand("analyze", "Analyze the pencil described in a file");
  std::string path;
  analyze_cmd->add_option("--file", path, "Description file with [lattice], [classes], [fibration]")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Re-verify the stored cases");
  std::vector<std::string> cases;
  verify_cmd->add_option("--case", cases, "Case id or 'all'")->required();

  auto* triples_cmd = app.add_subcommand("triples", "List admissible (r, a, delta)");

  for (auto* sub : {lattice_cmd, info_cmd, roots_cmd, fibration_cmd, analyze_cmd, verify_cmd, triples_cmd})
    sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "k3lat: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*lattice_cmd) return cmd_lattice_info(info_expr, json, out);
    if (*roots_cmd) return cmd_roots(roots_expr, norm_text, json, out);
    if (*fibration_cmd) return cmd_fibration(path, json, out);
    if (*verify_cmd) return cmd_verify(cases, json, out);
    return cmd_triples(json, out);
  } catch (const Error& e) {
    err << "k3lat: " << e.what() << "\n";
    return is_usage_error(e.code()) ? kExitUsage : kExitDomain;
  }
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace k3lat
