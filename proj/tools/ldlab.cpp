// ldlab: command-line front end.
//   analyze   report for the residue field of one algebra
//   resolve   Betti numbers and differentials of a minimal resolution
//   upsilon   one map Tor_i(k, R/m^{n+1}) -> Tor_i(k, R/m^n)
//   scan      batch of random algebras to JSONL

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ldlab/lab.hpp"
#include "ldlab/structure_table.hpp"

namespace {

using namespace ldlab;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitViolation = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Input {
  std::string ring_file;
  std::string table_file;
};

void add_input_options(CLI::App* cmd, Input& in, bool allow_table) {
  auto* ring = cmd->add_option("--ring", in.ring_file, "presentation file (char/vars/ideal)");
  if (allow_table) {
    auto* table = cmd->add_option("--table", in.table_file, "structure-constant JSON file");
    ring->excludes(table);
    table->excludes(ring);
  } else {
    ring->required();
  }
}

// Loads the algebra named by `in` and calls fn(algebra, presentation_text).
template <typename Fn>
auto with_algebra(const Input& in, Fn&& fn) {
  if (in.ring_file.empty() == in.table_file.empty()) throw InvalidInput("give exactly one of --ring and --table");
  if (!in.ring_file.empty()) {
    const auto pres = parse_presentation(read_file(in.ring_file));
    return with_field(pres.field, [&](const auto& field) { return fn(build_algebra(pres, field), pres.to_text()); });
  }
  const auto doc = parse_table_document(read_file(in.table_file));
  return with_field(table_field(doc), [&](const auto& field) {
    return fn(load_structure_constants(doc, field), std::string());
  });
}

int run_analyze(const Input& in, std::size_t horizon, const std::string& format) {
  return with_algebra(in, [&](auto algebra, const std::string& text) {
    auto report = full_check(algebra, horizon);
    report.presentation = text;
    if (format == "json") {
      auto j = report_to_json(report);
      j["schema"] = 1;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << report_to_text(report);
    }
    return report.flags.any_violation() ? kExitViolation : kExitOk;
  });
}

// "k" or "R/m^n".
std::size_t parse_module_power(const std::string& spec) {
  if (spec == "k") return 1;
  const std::string prefix = "R/m^";
  if (spec.rfind(prefix, 0) == 0 && spec.size() > prefix.size()) {
    try {
      std::size_t pos = 0;
      const auto n = std::stoul(spec.substr(prefix.size()), &pos);
      if (pos + prefix.size() == spec.size() && n >= 1) return n;
    } catch (const std::exception&) {
    }
  }
  throw InvalidInput("--module must be k or R/m^n with n >= 1");
}

int run_resolve(const Input& in, const std::string& module_spec, std::size_t horizon, bool verbose) {
  const std::size_t power = parse_module_power(module_spec);
  return with_algebra(in, [&](auto algebra, const std::string&) {
    const auto& a = *algebra;
    if (power > a.nilpotency_index()) throw InvalidInput("m^" + std::to_string(power) + " is already zero; use a smaller power");
    const auto res = resolve(quotient_module(algebra, power), horizon);
    std::cout << "field   " << a.field().spec().name() << "\n";
    std::cout << "dim R   " << a.dim() << "\n";
    std::cout << "module  " << module_spec << " (dim " << res.module.dim() << ")\n";
    std::cout << "betti  ";
    for (auto b : res.betti) std::cout << " " << b;
    std::cout << "\n";
    if (res.graded) {
      for (std::size_t i = 0; i <= horizon; ++i) {
        std::cout << "  degrees of F_" << i << ":";
        for (int d : res.generator_degrees[i]) std::cout << " " << d;
        std::cout << "\n";
      }
    }
    if (verbose) {
      for (std::size_t i = 1; i <= horizon; ++i) {
        const auto& m = res.differential(i);
        std::cout << "d_" << i << " (" << m.rows() << " x " << m.cols() << "):\n";
        for (std::size_t r = 0; r < m.rows(); ++r) {
          std::cout << "  [";
          for (std::size_t c = 0; c < m.cols(); ++c) std::cout << (c ? ", " : "") << a.format_element(m.entry(r, c));
          std::cout << "]\n";
        }
      }
    }
    return kExitOk;
  });
}

int run_upsilon(const Input& in, std::size_t i, std::size_t n) {
  return with_algebra(in, [&](auto algebra, const std::string&) {
    const auto& a = *algebra;
    const auto res = resolve(residue_field(algebra), i + 1);
    const auto u = upsilon(res, n, i);
    std::cout << "upsilon^" << n << "_" << i << " : Tor_" << i << "(k, R/m^" << n + 1 << ") -> Tor_" << i
              << "(k, R/m^" << n << ")\n";
    std::cout << "dim source  " << u.source_dim << "\n";
    std::cout << "dim target  " << u.target_dim << "\n";
    std::cout << "matrix (" << u.matrix.rows() << " x " << u.matrix.cols() << ")\n";
    for (std::size_t r = 0; r < u.matrix.rows(); ++r) {
      std::cout << "  [";
      for (std::size_t c = 0; c < u.matrix.cols(); ++c) std::cout << (c ? " " : "") << a.field().format(u.matrix(r, c));
      std::cout << "]\n";
    }
    std::cout << "rank        " << u.rank << "\n";
    if (n == 0) {
      std::cout << "note: R/m^0 = 0, so the target vanishes\n";
    } else if (n + 1 > a.nilpotency_index() && i > 0) {
      std::cout << "note: m^" << n + 1 << " = 0, so R/m^" << n + 1 << " = R is free and Tor_" << i
                << " against it vanishes\n";
    }
    return kExitOk;
  });
}

int run_scan(const ScanConfig& cfg, const std::string& out_path) {
  cfg.validate();
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write " + out_path);
  const auto summary = scan(cfg, out);
  std::cout << summary.to_json(cfg).dump(2) << "\n";
  return summary.violations > 0 ? kExitViolation : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal resolutions, linear parts and linearity defect over Artinian local algebras"};
  app.require_subcommand(1);

  Input analyze_in;
  std::size_t analyze_horizon = 8;
  std::string format = "text";
  auto* analyze = app.add_subcommand("analyze", "full report for the residue field");
  add_input_options(analyze, analyze_in, true);
  analyze->add_option("--horizon", analyze_horizon, "homological horizon N")->check(CLI::Range(1, 64));
  analyze->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

  Input resolve_in;
  std::string module_spec = "k";
  std::size_t resolve_horizon = 8;
  bool verbose = false;
  auto* resolve_cmd = app.add_subcommand("resolve", "minimal free resolution");
  add_input_options(resolve_cmd, resolve_in, true);
  resolve_cmd->add_option("--module", module_spec, "k or R/m^n");
  resolve_cmd->add_option("--horizon", resolve_horizon, "homological horizon N")->check(CLI::Range(0, 64));
  resolve_cmd->add_flag("--verbose,-v", verbose, "print the differentials");

  Input upsilon_in;
  std::size_t index = 0, power = 1;
  auto* upsilon_cmd = app.add_subcommand("upsilon", "one upsilon map for the residue field");
  add_input_options(upsilon_cmd, upsilon_in, true);
  upsilon_cmd->add_option("-i", index, "homological index")->required()->check(CLI::Range(0, 64));
  upsilon_cmd->add_option("-n", power, "power n of m")->required()->check(CLI::Range(0, 64));

  ScanConfig cfg;
  std::string out_path;
  auto* scan_cmd = app.add_subcommand("scan", "check a batch of random algebras");
  scan_cmd->add_option("--vars", cfg.variables, "number of variables (1-4)");
  scan_cmd->add_option("--char", cfg.characteristic, "prime characteristic");
  scan_cmd->add_option("--nilpotency", cfg.nilpotency, "c with m^c = 0 (3, 4, or 5; 5 is exploratory)")
      ->check(CLI::IsMember({3, 4, 5}));
  scan_cmd->add_option("--count", cfg.count, "number of samples");
  scan_cmd->add_option("--seed", cfg.seed, "seed of the sample stream");
  scan_cmd->add_option("--horizon", cfg.horizon, "homological horizon N")->check(CLI::Range(1, 64));
  scan_cmd->add_option("--extra-min", cfg.extra_min, "fewest random forms per sample");
  scan_cmd->add_option("--extra-max", cfg.extra_max, "most random forms per sample");
  scan_cmd->add_option("--degree-min", cfg.degree_min, "lowest degree of a random form");
  scan_cmd->add_option("--degree-max", cfg.degree_max, "highest degree of a random form");
  scan_cmd->add_option("--max-dim", cfg.max_dim, "resample algebras of larger dimension");
  scan_cmd->add_flag("--timestamp", cfg.timestamp, "record wall-clock time in each line");
  scan_cmd->add_option("--out", out_path, "JSONL results file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*analyze) return run_analyze(analyze_in, analyze_horizon, format);
    if (*resolve_cmd) return run_resolve(resolve_in, module_spec, resolve_horizon, verbose);
    if (*upsilon_cmd) return run_upsilon(upsilon_in, index, power);
    if (*scan_cmd) return run_scan(cfg, out_path);
  } catch (const ldlab::ResourceLimit& e) {
    std::cerr << "error: resource limit: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ldlab::LogicFailure& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
