#pragma once

// Command-line front end. Exit codes: 0 success / passing verdict, 1 failing
// verdict, 2 bad input, 3 malformed or unreadable document.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "umeb/document.hpp"
#include "umeb/fixtures.hpp"

namespace umeb::cli {

enum ExitCode : int { kOk = 0, kFailingVerdict = 1, kBadInput = 2, kMalformed = 3 };

/// Flags shared by every subcommand; each can also come from the environment
/// as UMEB_TOL, UMEB_ORACLE_RESTARTS, UMEB_ORACLE_ITERS, UMEB_SEED.
struct GlobalOptions {
  double tol = 1e-9;
  std::size_t oracle_restarts = 64;
  std::size_t oracle_iters = 2000;
  std::uint64_t seed = 0;

  VerifyConfig verify_config() const {
    VerifyConfig c;
    c.tol = tol;
    c.oracle_restarts = oracle_restarts;
    c.oracle_iters = oracle_iters;
    c.seed = seed;
    return c;
  }
};

inline std::vector<std::size_t> parse_size_list(const std::string& text, const char* what) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw InvalidInput(std::string("bad ") + what + " entry '" + item + "'");
    }
    out.push_back(std::stoul(item));
  }
  if (out.empty()) throw InvalidInput(std::string("empty ") + what + " list");
  return out;
}

/// "row:col,row:col,..."
inline std::vector<Hole> parse_holes(const std::string& text) {
  std::vector<Hole> holes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw InvalidInput("hole '" + item + "' is not of the form row:col");
    const auto row = parse_size_list(item.substr(0, colon), "hole row");
    const auto col = parse_size_list(item.substr(colon + 1), "hole column");
    if (row.size() != 1 || col.size() != 1) throw InvalidInput("hole '" + item + "' is not of the form row:col");
    holes.push_back({row[0], col[0]});
  }
  if (holes.empty()) throw InvalidInput("no holes given");
  return holes;
}

inline std::string join(const std::vector<std::size_t>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

/// Writes the document to `out_path`, or to `out` when the path is empty.
inline void emit_document(const BasisSet& basis, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << io::save_basis(basis);
  } else {
    io::write_basis_file(out_path, basis);
  }
}

inline int cmd_construct_t1(std::size_t d, std::size_t d_prime, const std::string& holes, const std::string& out_path,
                            std::ostream& out, std::ostream& err) {
  try {
    const HolePattern pattern(d, d_prime, parse_holes(holes));
    const auto basis = theorem1_construct(pattern);
    emit_document(basis, out_path, out);
    auto& summary = out_path.empty() ? err : out;
    summary << "members: " << basis.size() << "\n";
    summary << "canonical b: " << join(basis.provenance().canonical->b, " ") << "\n";
    return kOk;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
}

inline int cmd_construct_t2(std::size_t d, std::size_t d_prime, const std::string& parts, const std::string& out_path,
                            std::ostream& out, std::ostream& err) {
  try {
    const PartitionSpec spec(d, d_prime, parse_size_list(parts, "part"));
    const auto basis = theorem2_construct(spec);
    emit_document(basis, out_path, out);
    auto& summary = out_path.empty() ? err : out;
    summary << "members: " << basis.size() << "\n";
    summary << "r: " << spec.r() << "\n";
    return kOk;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
}

inline int cmd_compose(const std::string& left_path, const std::string& right_path, std::size_t offset,
                       std::optional<std::size_t> width, const std::string& out_path, std::ostream& out,
                       std::ostream& err) {
  BasisSet left(1, 1), right(1, 1);
  try {
    left = io::read_basis_file(left_path);
    right = io::read_basis_file(right_path);
  } catch (const io::MalformedDocument& e) {
    err << "error: " << e.what() << "\n";
    return kMalformed;
  }
  try {
    const auto composed = compose_direct_sum(left, right, offset, width);
    emit_document(composed, out_path, out);
    (out_path.empty() ? err : out) << "members: " << composed.size() << "\n";
    return kOk;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
}

inline int cmd_verify(const std::string& in_path, const VerifyConfig& cfg, std::ostream& out, std::ostream& err) {
  BasisSet basis(1, 1);
  try {
    basis = io::read_basis_file(in_path);
  } catch (const io::MalformedDocument& e) {
    err << "error: " << e.what() << "\n";
    return kMalformed;
  }
  const auto report = verify_umeb(basis, cfg);
  out << io::report_to_json(report).dump(2) << "\n";
  return is_passing(report.verdict) ? kOk : kFailingVerdict;
}

inline std::string describe(const PartitionSpec& spec) {
  return "{" + join(spec.parts(), ",") + "}+" + std::to_string(spec.r());
}

inline int cmd_partitions(std::size_t d, std::size_t d_prime, bool ordered, std::ostream& out, std::ostream& err) {
  try {
    for (const auto& spec : enumerate_partitions(d, d_prime, ordered)) {
      out << describe(spec) << " members=" << spec.member_count() << "\n";
    }
    return kOk;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
}

inline int cmd_fixtures(const std::string& name, const std::string& out_path, std::ostream& out, std::ostream& err) {
  try {
    const auto basis = fixtures::by_name(name);
    emit_document(basis, out_path, out);
    return kOk;
  } catch (const InvalidInput& e) {
    std::string known;
    for (auto n : fixtures::names()) known += (known.empty() ? "" : ", ") + std::string(n);
    err << "error: " << e.what() << " (known: " << known << ")\n";
    return kBadInput;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
}

/// Full argument parsing and dispatch; argv[0] is the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Construct and verify unextendible maximally entangled bases in C^d (x) C^d'"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--tol", g.tol, "Tolerance for exact-construction checks")->envname("UMEB_TOL");
  app.add_option("--oracle-restarts", g.oracle_restarts, "Random restarts of the extension search")
      ->envname("UMEB_ORACLE_RESTARTS");
  app.add_option("--oracle-iters", g.oracle_iters, "Hill-climbing moves per restart")->envname("UMEB_ORACLE_ITERS");
  app.add_option("--seed", g.seed, "Seed for all randomized checks")->envname("UMEB_SEED");

  std::size_t d = 0, d_prime = 0;
  std::string holes, parts, out_path, in_path, left_path, right_path, fixture_name;
  std::size_t offset = 0;
  std::optional<std::size_t> width;
  bool ordered = false;

  auto* t1 = app.add_subcommand("construct-t1", "d(d'-1)-member UMEB avoiding a hole pattern");
  t1->add_option("--d", d)->required();
  t1->add_option("--dprime", d_prime)->required();
  t1->add_option("--holes", holes, "row:col,... one hole per row")->required();
  t1->add_option("--out", out_path, "Output document (default stdout)");

  auto* t2 = app.add_subcommand("construct-t2", "d(d'-r)-member UMEB from a partition of d'");
  t2->add_option("--d", d)->required();
  t2->add_option("--dprime", d_prime)->required();
  t2->add_option("--parts", parts, "a_1,a_2,... (r = d' - sum)")->required();
  t2->add_option("--out", out_path, "Output document (default stdout)");

  auto* comp = app.add_subcommand("compose", "Direct sum of two bases on disjoint column blocks");
  comp->add_option("--left", left_path)->required();
  comp->add_option("--right", right_path)->required();
  comp->add_option("--offset", offset, "Column shift applied to the right basis")->required();
  comp->add_option("--width", width, "Output d' (default: smallest that fits)");
  comp->add_option("--out", out_path, "Output document (default stdout)");

  auto* ver = app.add_subcommand("verify", "Certify a basis document; prints a JSON report");
  ver->add_option("in,--in", in_path, "Basis document")->required();

  auto* part = app.add_subcommand("partitions", "List partition specs of d'");
  part->add_option("--d", d)->required();
  part->add_option("--dprime", d_prime)->required();
  part->add_flag("--ordered", ordered, "Emit ordered compositions instead of multisets");

  auto* fix = app.add_subcommand("fixtures", "Write a reference basis");
  fix->add_option("name,--name", fixture_name, "upb3x3 | umeb2x3 | ex1 | ex1c | ex2 | ex3a | ex3b | bell2x2")
      ->required();
  fix->add_option("--out", out_path, "Output document (default stdout)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("umeb");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kBadInput;
  }

  if (*t1) return cmd_construct_t1(d, d_prime, holes, out_path, out, err);
  if (*t2) return cmd_construct_t2(d, d_prime, parts, out_path, out, err);
  if (*comp) return cmd_compose(left_path, right_path, offset, width, out_path, out, err);
  if (*ver) return cmd_verify(in_path, g.verify_config(), out, err);
  if (*part) return cmd_partitions(d, d_prime, ordered, out, err);
  if (*fix) return cmd_fixtures(fixture_name, out_path, out, err);
  return kBadInput;
}

}  // namespace umeb::cli
