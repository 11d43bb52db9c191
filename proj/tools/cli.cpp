#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qme/commuting_case.hpp"
#include "qme/matrix_io.hpp"
#include "qme/reconstruct.hpp"
#include "qme/riccati_reduce.hpp"
#include "qme/spectral_solve.hpp"
#include "qme/symfun.hpp"
#include "qme/transfer_matrix.hpp"

namespace qme::cli {
namespace {

using Json = nlohmann::ordered_json;

struct GlobalOptions {
  bool json = false;
  std::optional<double> tol;
};

TolerancePolicy tolerance(const GlobalOptions& g) {
  TolerancePolicy t;
  if (g.tol) t.rel_residual = *g.tol;
  t.validate();
  return t;
}

Json matrix_json(const CMatrix& m) {
  return Json::parse(matrix_to_json(m));
}

// Non-finite doubles are not representable in JSON; they are reported as null.
Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string fmt(Complex z) {
  char buf[64];
  // Adding +0.0 turns negative zeros into positive ones for display.
  std::snprintf(buf, sizeof(buf), "%.6g%+.6gi", z.real() + 0.0, z.imag() + 0.0);
  return buf;
}

Complex parse_complex(const std::string& text, const char* what) {
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    if (comma == std::string::npos) {
      const double re = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {re, 0.0};
    }
    const std::string a = text.substr(0, comma);
    const std::string b = text.substr(comma + 1);
    const double re = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(text);
    const double im = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(text);
    return {re, im};
  } catch (const std::exception&) {
    fail(ErrorCode::kParseError,
         std::string(what) + ": expected re,im but got '" + text + "'");
  }
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::kIoError, "cannot create directory " + dir);
}

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void print_matrix(std::ostream& out, const std::string& label,
                  const CMatrix& m) {
  out << label << " (" << m.rows() << "x" << m.cols() << "):\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << "   ";
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << ' ' << fmt(m(i, j));
    out << '\n';
  }
}

// Each command fills `results` (JSON) and writes its human-readable report
// to `text`.
struct Outcome {
  Json inputs = Json::object();
  Json results = Json::object();
  std::ostringstream text;
};

// ----------------------------------------------------------------- solve ---

struct SolveArgs {
  std::string l0, l1, out_dir;
  unsigned workers = 1;
};

void cmd_solve(const SolveArgs& a, const GlobalOptions& g, Outcome& o) {
  o.inputs = {{"l0", a.l0}, {"l1", a.l1}};
  if (!a.out_dir.empty()) o.inputs["out"] = a.out_dir;
  const QmeProblem problem(load_matrix(a.l0), load_matrix(a.l1), tolerance(g));
  SolveOptions options;
  options.workers = a.workers;
  options.keep_diagnostics = false;
  const SolventSet set = enumerate_solvents(problem, options);
  const EisenfeldResult eis = eisenfeld_predicts_solvents(problem);

  if (!a.out_dir.empty()) ensure_dir(a.out_dir);
  Json solvents = Json::array();
  o.text << "solve: " << set.solvents.size() << " solvent(s) from "
         << set.candidates_tried << " candidate subset(s)\n"
         << "  haar_satisfied: " << (set.haar_satisfied ? "true" : "false")
         << "\n  infinite_family_flag: "
         << (set.infinite_family_flag ? "true" : "false")
         << "\n  eisenfeld: " << (eis.predicts_solvents ? "true" : "false")
         << " (value " << fmt(eis.value) << ")\n";
  for (std::size_t k = 0; k < set.solvents.size(); ++k) {
    const CMatrix& s = set.solvents[k];
    const SolventCheck check = is_solvent(problem, s);
    Json entry = {{"index", k + 1}, {"residual_norm", number(check.residual_norm)}};
    if (!a.out_dir.empty()) {
      const std::string path =
          join(a.out_dir, "solvent_" + std::to_string(k + 1) + ".json");
      store_matrix(s, path);
      entry["file"] = path;
    } else {
      entry["matrix"] = matrix_json(s);
    }
    solvents.push_back(std::move(entry));
    o.text << "  solvent " << (k + 1) << ": residual "
           << fmt(check.residual_norm) << '\n';
    if (a.out_dir.empty()) print_matrix(o.text, "    S", s);
  }
  o.results = {{"count", set.solvents.size()},
               {"candidates_tried", set.candidates_tried},
               {"haar_satisfied", set.haar_satisfied},
               {"infinite_family_flag", set.infinite_family_flag},
               {"eisenfeld", {{"predicts_solvents", eis.predicts_solvents},
                              {"value", number(eis.value)}}},
               {"solvents", std::move(solvents)}};
}

// ----------------------------------------------------------- reconstruct ---

struct ReconstructArgs {
  std::string s1, s2, out_dir;
};

void cmd_reconstruct(const ReconstructArgs& a, const GlobalOptions& g,
                     Outcome& o) {
  o.inputs = {{"s1", a.s1}, {"s2", a.s2}};
  if (!a.out_dir.empty()) o.inputs["out"] = a.out_dir;
  const TolerancePolicy tol = tolerance(g);
  const CMatrix s1 = load_matrix(a.s1);
  const CMatrix s2 = load_matrix(a.s2);
  const PairClassification c = classify_pair(s1, s2, tol);
  o.results["verdict"] = to_string(c.kind);
  o.results["consistency_residual"] = number(c.consistency_residual);
  o.text << "reconstruct: " << to_string(c.kind) << '\n';
  if (c.kind == PairKind::kImpossible) {
    o.text << "  L1 (S1 - S2) = S1^2 - S2^2 is inconsistent (residual "
           << fmt(c.consistency_residual) << " > " << fmt(c.consistency_bound)
           << ")\n";
    return;
  }
  const QmeProblem problem(c.coefficients->l0, c.coefficients->l1, tol);
  const SolventCheck r1 = is_solvent(problem, s1);
  const SolventCheck r2 = is_solvent(problem, s2);
  o.results["l1"] = matrix_json(c.coefficients->l1);
  o.results["l0"] = matrix_json(c.coefficients->l0);
  o.results["residual_norms"] = {number(r1.residual_norm),
                                 number(r2.residual_norm)};
  const char* label = c.kind == PairKind::kUnique ? "L1" : "L1 (particular)";
  print_matrix(o.text, std::string("  ") + label, c.coefficients->l1);
  print_matrix(o.text, c.kind == PairKind::kUnique ? "  L0" : "  L0 (particular)",
               c.coefficients->l0);
  if (c.freedom) {
    o.results["freedom_projector"] = matrix_json(*c.freedom);
    print_matrix(o.text, "  freedom projector P (L1 = L1_p + Z P)", *c.freedom);
  }
  o.text << "  residuals: S1 " << fmt(r1.residual_norm) << ", S2 "
         << fmt(r2.residual_norm) << '\n';
  if (!a.out_dir.empty()) {
    ensure_dir(a.out_dir);
    store_matrix(c.coefficients->l1, join(a.out_dir, "l1.json"));
    store_matrix(c.coefficients->l0, join(a.out_dir, "l0.json"));
    if (c.freedom) store_matrix(*c.freedom, join(a.out_dir, "freedom.json"));
  }
}

// ---------------------------------------------------------------- verify ---

struct VerifyArgs {
  std::string l0, l1, s1, s2;
  int pmax = 6;
};

void cmd_verify(const VerifyArgs& a, const GlobalOptions& g, Outcome& o) {
  o.inputs = {{"l0", a.l0}, {"l1", a.l1}, {"s1", a.s1}, {"s2", a.s2},
              {"pmax", a.pmax}};
  const QmeProblem problem(load_matrix(a.l0), load_matrix(a.l1), tolerance(g));
  const CMatrix s1 = load_matrix(a.s1);
  const CMatrix s2 = load_matrix(a.s2);
  const auto rows = verify_identities(problem, s1, s2, a.pmax);
  Json table = Json::array();
  double worst = 0.0;
  o.text << "verify: identity residuals (relative = residual / scale)\n";
  for (const IdentityRow& row : rows) {
    worst = std::max(worst, row.check.relative());
    table.push_back({{"identity", row.identity},
                     {"p", row.p},
                     {"residual", number(row.check.residual)},
                     {"scale", number(row.check.scale)},
                     {"relative", number(row.check.relative())}});
    char line[128];
    std::snprintf(line, sizeof(line), "  %-14s p=%-3d residual %-12.4g relative %.4g\n",
                  row.identity.c_str(), row.p, row.check.residual,
                  row.check.relative());
    o.text << line;
  }
  o.text << "  worst relative: " << fmt(worst) << '\n';
  o.results = {{"rows", std::move(table)}, {"worst_relative", number(worst)}};
}

// ----------------------------------------------------------------- power ---

struct PowerArgs {
  std::string l0, l1, s, out;
  int p = 0;
  bool closed = false;
};

void cmd_power(const PowerArgs& a, const GlobalOptions& g, Outcome& o) {
  o.inputs = {{"l0", a.l0}, {"l1", a.l1}, {"s", a.s}, {"p", a.p},
              {"closed", a.closed}};
  const QmeProblem problem(load_matrix(a.l0), load_matrix(a.l1), tolerance(g));
  const CMatrix s = load_matrix(a.s);
  const CMatrix result =
      a.closed ? power_closed(problem, s, a.p) : power_linearized(problem, s, a.p);
  o.results["method"] = a.closed ? "closed" : "linearized";
  if (!a.out.empty()) {
    store_matrix(result, a.out);
    o.results["file"] = a.out;
  }
  o.results["matrix"] = matrix_json(result);
  print_matrix(o.text, "power: S^" + std::to_string(a.p), result);
}

// -------------------------------------------------------------- transfer ---

struct TransferArgs {
  std::string t, r, spectrum, out;
  int n = 1;
};

void cmd_transfer(const TransferArgs& a, const GlobalOptions&, Outcome& o) {
  o.inputs = {{"n", a.n}};
  if (!a.spectrum.empty()) {
    o.inputs["spectrum"] = a.spectrum;
    const Spectrum sp = transmission_spectrum(read_samples_csv(a.spectrum), a.n);
    std::ostringstream csv;
    write_spectrum_csv(csv, sp);
    Json errors = Json::array();
    for (const SpectrumError& e : sp.errors) {
      errors.push_back({{"index", e.index}, {"message", e.message}});
    }
    o.results = {{"samples", sp.rows.size() + sp.errors.size()},
                 {"valid", sp.rows.size()},
                 {"errors", std::move(errors)}};
    if (!a.out.empty()) {
      std::ofstream f(a.out, std::ios::binary | std::ios::trunc);
      if (!f) fail(ErrorCode::kIoError, "cannot open " + a.out);
      f << csv.str();
      if (!f) fail(ErrorCode::kIoError, "cannot write " + a.out);
      o.results["file"] = a.out;
    } else {
      o.results["csv"] = csv.str();
    }
    if (a.out.empty()) {
      o.text << csv.str();
    } else {
      o.text << "transfer: " << sp.rows.size() << " row(s) written to " << a.out
             << '\n';
    }
    for (const SpectrumError& e : sp.errors) {
      o.text << "  sample " << e.index << " skipped: " << e.message << '\n';
    }
    return;
  }
  if (a.t.empty() || a.r.empty()) {
    fail(ErrorCode::kInvalidArgument, "transfer needs --t and --r, or --spectrum");
  }
  o.inputs["t"] = a.t;
  o.inputs["r"] = a.r;
  const UnitCell cell(parse_complex(a.t, "--t"), parse_complex(a.r, "--r"));
  const CMatrix mn = n_period(cell, a.n);
  o.results = {{"cos_beta", cell.cos_beta()},
               {"cell_qme_residual", cell.qme_residual()},
               {"transmittance", 1.0 / std::norm(mn(0, 0))},
               {"matrix", matrix_json(mn)}};
  if (!a.out.empty()) {
    store_matrix(mn, a.out);
    o.results["file"] = a.out;
  }
  o.text << "transfer: cos(beta) = " << fmt(cell.cos_beta())
         << ", N-period transmittance " << fmt(1.0 / std::norm(mn(0, 0)))
         << '\n';
  print_matrix(o.text, "  M^" + std::to_string(a.n), mn);
}

// ---------------------------------------------------------------- reduce ---

struct ReduceArgs {
  std::string form;
  std::string a, b, c, d;
  std::string l1t, l1pt, l0t;
  std::string out_dir;
};

void cmd_reduce(const ReduceArgs& a, const GlobalOptions& g, Outcome& o) {
  const TolerancePolicy tol = tolerance(g);
  o.inputs["form"] = a.form;
  auto need = [&](const std::string& path, const char* flag) {
    if (path.empty()) {
      fail(ErrorCode::kInvalidArgument,
           "form " + a.form + " needs " + std::string(flag));
    }
    o.inputs[flag + 2] = path;
    return load_matrix(path);
  };
  std::optional<ReductionTrace> trace;
  std::optional<SolventSet> roots;
  if (a.form == "riccati") {
    RiccatiProblem r{need(a.a, "--a"), need(a.b, "--b"), need(a.c, "--c"),
                     need(a.d, "--d")};
    trace = reduce_riccati(r, tol);
  } else if (a.form == "bqme") {
    trace = reduce_bqme(need(a.l1t, "--l1t"), need(a.l1pt, "--l1pt"),
                        need(a.l0t, "--l0t"), tol);
  } else if (a.form == "lqme") {
    trace = reduce_lqme(need(a.l1pt, "--l1pt"), need(a.l0t, "--l0t"), tol);
  } else if (a.form == "sbqme") {
    const CMatrix l1t = need(a.l1t, "--l1t");
    const CMatrix l0t = need(a.l0t, "--l0t");
    trace = reduce_bqme(l1t, l1t, l0t, tol);
    SolveOptions options;
    options.keep_diagnostics = false;
    roots = solve_sbqme(l1t, l0t, tol, options);
  } else {
    fail(ErrorCode::kInvalidArgument, "unknown form '" + a.form + "'");
  }
  const QmeProblem& canonical = trace->canonical();
  o.results["l1"] = matrix_json(canonical.l1());
  o.results["l0"] = matrix_json(canonical.l0());
  o.results["back_map"] = trace->describe();
  o.text << "reduce (" << a.form << "): canonical X^2 - L1 X - L0 = 0, back map "
         << trace->describe() << '\n';
  print_matrix(o.text, "  L1", canonical.l1());
  print_matrix(o.text, "  L0", canonical.l0());
  if (!a.out_dir.empty()) {
    ensure_dir(a.out_dir);
    store_matrix(canonical.l1(), join(a.out_dir, "l1.json"));
    store_matrix(canonical.l0(), join(a.out_dir, "l0.json"));
  }
  if (roots) {
    Json list = Json::array();
    o.text << "  " << roots->solvents.size() << " diagonalizable solution(s)"
           << (roots->infinite_family_flag ? ", continuum flagged" : "") << '\n';
    for (std::size_t k = 0; k < roots->solvents.size(); ++k) {
      if (!a.out_dir.empty()) {
        const std::string path =
            join(a.out_dir, "solution_" + std::to_string(k + 1) + ".json");
        store_matrix(roots->solvents[k], path);
        list.push_back({{"index", k + 1}, {"file", path}});
      } else {
        list.push_back({{"index", k + 1}, {"matrix", matrix_json(roots->solvents[k])}});
        print_matrix(o.text, "    Y" + std::to_string(k + 1), roots->solvents[k]);
      }
    }
    o.results["solutions"] = std::move(list);
    o.results["infinite_family_flag"] = roots->infinite_family_flag;
  }
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError:
    case ErrorCode::kIoError:
      return kExitParse;
    case ErrorCode::kDimensionMismatch:
      return kExitDimension;
    case ErrorCode::kSizeGuard:
      return kExitGuard;
    case ErrorCode::kNotASolvent:
      return kExitNotASolvent;
    case ErrorCode::kInvalidArgument:
      return kExitUsage;
    case ErrorCode::kEigFailure:
    case ErrorCode::kNotComplete:
    case ErrorCode::kNotDiagonalizable:
    case ErrorCode::kSingularMatrix:
    case ErrorCode::kNotCommuting:
    case ErrorCode::kSingularA:
    case ErrorCode::kNotUnitary:
    case ErrorCode::kZeroTransmission:
    case ErrorCode::kNumericalFailure:
      return kExitNumerical;
  }
  return kExitNumerical;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Quadratic matrix equation toolkit: X^2 - L1 X - L0 = 0", "qme"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  double tol_value = 0.0;
  app.add_flag("--json", global.json, "Emit a machine-readable JSON report");
  auto* tol_opt = app.add_option("--tol", tol_value, "Relative residual gate");

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Enumerate diagonalizable solvents");
  solve->add_option("--l0", solve_args.l0, "L0 matrix file")->required();
  solve->add_option("--l1", solve_args.l1, "L1 matrix file")->required();
  solve->add_option("--out", solve_args.out_dir, "Directory for solvent_k.json");
  solve->add_option("--workers", solve_args.workers, "Worker threads")
      ->check(CLI::PositiveNumber);

  ReconstructArgs rec_args;
  auto* rec = app.add_subcommand("reconstruct", "Classify a pair of matrices");
  rec->add_option("--s1", rec_args.s1, "S1 matrix file")->required();
  rec->add_option("--s2", rec_args.s2, "S2 matrix file")->required();
  rec->add_option("--out", rec_args.out_dir, "Directory for l1/l0/freedom.json");

  VerifyArgs ver_args;
  auto* ver = app.add_subcommand("verify", "Evaluate the symmetric-function identities");
  ver->add_option("--l0", ver_args.l0, "L0 matrix file")->required();
  ver->add_option("--l1", ver_args.l1, "L1 matrix file")->required();
  ver->add_option("--s1", ver_args.s1, "First solvent")->required();
  ver->add_option("--s2", ver_args.s2, "Second solvent")->required();
  ver->add_option("--pmax", ver_args.pmax, "Largest power")
      ->check(CLI::NonNegativeNumber);

  PowerArgs pow_args;
  auto* pow = app.add_subcommand("power", "S^p through the alpha/beta linearization");
  pow->add_option("--l0", pow_args.l0, "L0 matrix file")->required();
  pow->add_option("--l1", pow_args.l1, "L1 matrix file")->required();
  pow->add_option("--s", pow_args.s, "Solvent matrix file")->required();
  pow->add_option("--p", pow_args.p, "Power")->required()->check(CLI::NonNegativeNumber);
  pow->add_flag("--closed", pow_args.closed, "Use the commuting-case Chebyshev form");
  pow->add_option("--out", pow_args.out, "Output matrix file");

  TransferArgs tr_args;
  auto* tr = app.add_subcommand("transfer", "N-period transfer matrix of a unit cell");
  tr->add_option("--t", tr_args.t, "Transmission coefficient re,im");
  tr->add_option("--r", tr_args.r, "Reflection coefficient re,im");
  tr->add_option("--n", tr_args.n, "Number of periods")->check(CLI::PositiveNumber);
  tr->add_option("--spectrum", tr_args.spectrum, "CSV of samples t_re,t_im,r_re,r_im");
  tr->add_option("--out", tr_args.out, "Output file (matrix JSON or CSV)");

  ReduceArgs red_args;
  auto* red = app.add_subcommand("reduce", "Reduce a Riccati-type equation to canonical form");
  red->add_option("--form", red_args.form, "riccati | bqme | lqme | sbqme")
      ->required()
      ->check(CLI::IsMember({"riccati", "bqme", "lqme", "sbqme"}));
  red->add_option("--a", red_args.a, "Riccati A");
  red->add_option("--b", red_args.b, "Riccati B");
  red->add_option("--c", red_args.c, "Riccati C");
  red->add_option("--d", red_args.d, "Riccati D");
  red->add_option("--l1t", red_args.l1t, "Bilateral left coefficient");
  red->add_option("--l1pt", red_args.l1pt, "Bilateral right coefficient");
  red->add_option("--l0t", red_args.l0t, "Bilateral constant term");
  red->add_option("--out", red_args.out_dir, "Directory for l1/l0.json");

  std::vector<const char*> argv{"qme"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }
  if (*tol_opt) global.tol = tol_value;

  std::string command;
  Outcome outcome;
  int code = kExitOk;
  Json error = nullptr;
  try {
    if (*solve) {
      command = "solve";
      cmd_solve(solve_args, global, outcome);
    } else if (*rec) {
      command = "reconstruct";
      cmd_reconstruct(rec_args, global, outcome);
    } else if (*ver) {
      command = "verify";
      cmd_verify(ver_args, global, outcome);
    } else if (*pow) {
      command = "power";
      cmd_power(pow_args, global, outcome);
    } else if (*tr) {
      command = "transfer";
      cmd_transfer(tr_args, global, outcome);
    } else if (*red) {
      command = "reduce";
      cmd_reduce(red_args, global, outcome);
    }
  } catch (const Error& e) {
    code = exit_code_for(e.code());
    error = {{"code", to_string(e.code())}, {"message", e.what()}};
    if (!global.json) err << "qme " << command << ": " << e.what() << '\n';
  }

  if (global.json) {
    Json report = {{"command", command}, {"inputs", outcome.inputs}};
    if (error.is_null()) {
      report["results"] = outcome.results;
    } else {
      report["error"] = error;
    }
    report["exit_code"] = code;
    out << report.dump(2) << '\n';
  } else if (code == kExitOk) {
    out << outcome.text.str();
  }
  return code;
}

}  // namespace qme::cli
