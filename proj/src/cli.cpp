#include "symppt/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "symppt/ptrans.hpp"
#include "symppt/symstate.hpp"

namespace symppt::cli {

namespace {

using nlohmann::json;

std::string csv_line(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i != 0) line += ',';
    line += cells[i];
  }
  return line + '\n';
}

std::string dump(const json& j) { return j.dump(2) + '\n'; }

// json numbers printed through format_double so CSV and JSON agree digit for digit
json number(double v) { return json::parse(format_double(v)); }

std::string bool_str(bool b) { return b ? "true" : "false"; }

Witness load_witness(const RunConfig& cfg) {
  if (cfg.witness_file) {
    std::ifstream in(*cfg.witness_file);
    if (!in) throw UsageError("cannot open witness file '" + *cfg.witness_file + "'");
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw UsageError("witness file is not valid JSON: " + std::string(e.what()));
    }
    return witness_from_json(j);
  }
  if (cfg.witness) return builtin_witness(*cfg.witness);
  if (cfg.n && (*cfg.n == 5 || *cfg.n == 7 || *cfg.n == 9)) return builtin_witness("W" + std::to_string(*cfg.n));
  throw UsageError("no witness given: pass a name (W5, W7, W9) or --witness-file");
}

Bipartition bipartition_from(const RunConfig& cfg) {
  if (!cfg.n) throw UsageError("--n is required");
  const int n = *cfg.n;
  return Bipartition::make(n, cfg.k.value_or(n / 2), cfg.d);
}

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

ExactRational parse_probability(const std::string& text) {
  ExactRational p;
  if (text.find('/') != std::string::npos) {
    p = ExactRational::parse(text);
  } else {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &used);
    } catch (const std::exception&) {
      throw UsageError("cannot parse probability '" + text + "'");
    }
    if (used != text.size()) throw UsageError("cannot parse probability '" + text + "'");
    // decimal strings are read exactly, e.g. "0.97" -> 97/100
    const auto dot = text.find_first_of(".eE");
    if (dot == std::string::npos) {
      p = ExactRational::parse(text);
    } else if (text.find_first_of("eE") == std::string::npos) {
      std::string digits = text;
      digits.erase(dot, 1);
      const std::size_t decimals = text.size() - dot - 1;
      BigInt den = 1;
      for (std::size_t i = 0; i < decimals; ++i) den *= 10;
      p = ExactRational(BigInt(digits, 10), den);
    } else {
      p = ExactRational::from_double(v);
    }
  }
  if (p < ExactRational(0) || p > ExactRational(1)) throw UsageError("probability " + text + " outside [0, 1]");
  return p;
}

GridSize parse_grid(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw UsageError("--grid expects WxH, e.g. 721x360");
  try {
    GridSize g{std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
    if (g.theta_points < 3 || g.phi_points < 1) throw UsageError("--grid needs W >= 3 and H >= 1");
    return g;
  } catch (const std::logic_error&) {
    throw UsageError("--grid expects WxH, e.g. 721x360");
  }
}

std::optional<std::string> p_ent_reference(int n) {
  static const std::map<int, std::string> table = {
      {4, "15/16"}, {5, "0.96953"},   {6, "70/71"}, {7, "0.99329"},
      {8, "315/316"}, {9, "0.99849"}, {10, "1386/1387"},
  };
  const auto it = table.find(n);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

CommandOutput cmd_table1(const RunConfig& cfg) {
  if (cfg.nmax < 4 || cfg.nmax > 14) throw UsageError("table1: --nmax must lie in [4, 14]");
  const std::string ref_note = "reference (not reproduced)";
  std::string csv = csv_line({"n", "p_min", "p_min_value", "p_ent_witness", "p_ent_ref", "p_ent_ref_status"});
  json rows = json::array();
  for (int n = 4; n <= cfg.nmax; ++n) {
    const ExactRational pmin = p_min_qubits(n);
    std::optional<double> p_wit;
    if (n == 5 || n == 7 || n == 9) p_wit = detection_threshold(builtin_witness("W" + std::to_string(n)), n).p_star;
    const auto ref = p_ent_reference(n);
    csv += csv_line({std::to_string(n), pmin.str(), format_double(pmin.to_double()),
                     p_wit ? format_double(*p_wit) : "/", ref.value_or("/"), ref ? ref_note : "unavailable"});
    json row = {{"n", n}, {"p_min", pmin.str()}, {"p_min_value", number(pmin.to_double())}};
    row["p_ent_witness"] = p_wit ? number(*p_wit) : json(nullptr);
    row["p_ent_ref"] = ref ? json(*ref) : json(nullptr);
    row["p_ent_ref_status"] = ref ? ref_note : "unavailable";
    rows.push_back(row);
  }
  return {kExitOk, cfg.format == Format::Json ? dump({{"table1", rows}}) : csv};
}

CommandOutput cmd_spectrum(const RunConfig& cfg) {
  const Bipartition bip = bipartition_from(cfg);
  if (bip.d != 2) throw UsageError("spectrum: only qubits (--d 2) are supported");
  const bool want_exact = cfg.mode != SpectrumMode::Numeric;
  const bool want_numeric = cfg.mode != SpectrumMode::Analytic;

  const ExactSpectrum exact = rho0_pt_spectrum_analytic(bip);
  NumericSpectrum numeric;
  std::vector<double> numeric_values;
  if (want_numeric) {
    numeric_values = eigenvalues(rho0_pt(bip).matrix());
    numeric = group_eigenvalues(numeric_values);
  }

  int exit_code = kExitOk;
  std::vector<double> deviation(exact.entries.size(), 0.0);
  double max_dev = 0.0;
  if (want_exact && want_numeric) {
    const std::vector<double> analytic_values = expand(exact);
    std::size_t pos = 0;
    for (std::size_t e = 0; e < exact.entries.size(); ++e) {
      for (int r = 0; r < exact.entries[e].multiplicity; ++r, ++pos) {
        deviation[e] = std::max(deviation[e], std::abs(numeric_values[pos] - analytic_values[pos]));
      }
      max_dev = std::max(max_dev, deviation[e]);
    }
    if (max_dev > kSpectrumCheckTolerance) exit_code = kExitNumerical;
  }

  if (cfg.format == Format::Json) {
    json j;
    if (cfg.mode == SpectrumMode::Numeric) {
      j = to_json(numeric, bip.n, bip.k);
    } else {
      j = to_json(exact, bip.n, bip.k);
      if (want_numeric) {
        j["numeric"] = to_json(numeric, bip.n, bip.k)["entries"];
        j["max_deviation"] = number(max_dev);
      }
    }
    return {exit_code, dump(j)};
  }

  std::string csv;
  if (cfg.mode == SpectrumMode::Numeric) {
    csv = csv_line({"value", "multiplicity"});
    for (const auto& e : numeric.entries) csv += csv_line({format_double(e.value), std::to_string(e.multiplicity)});
  } else if (cfg.mode == SpectrumMode::Analytic) {
    csv = csv_line({"index", "value_exact", "value", "multiplicity"});
    for (std::size_t e = 0; e < exact.entries.size(); ++e) {
      const auto& en = exact.entries[e];
      csv += csv_line({std::to_string(e), en.value.str(), format_double(en.value.to_double()),
                       std::to_string(en.multiplicity)});
    }
  } else {
    csv = csv_line({"index", "value_exact", "value", "multiplicity", "max_deviation"});
    for (std::size_t e = 0; e < exact.entries.size(); ++e) {
      const auto& en = exact.entries[e];
      csv += csv_line({std::to_string(e), en.value.str(), format_double(en.value.to_double()),
                       std::to_string(en.multiplicity), format_double(deviation[e])});
    }
  }
  return {exit_code, csv};
}

CommandOutput cmd_scan(const RunConfig& cfg) {
  if (!cfg.n) throw UsageError("scan: --n is required");
  const Witness w = load_witness(cfg);
  if (w.n() != *cfg.n) throw UsageError("scan: witness " + w.name() + " does not act on N = " + std::to_string(*cfg.n));
  const Bipartition bip = bipartition_from(cfg);
  const ExactRational from = parse_probability(cfg.p_from);
  const ExactRational to = parse_probability(cfg.p_to);
  if (cfg.steps < 1) throw UsageError("scan: --steps must be >= 1");
  if (cfg.steps == 1 && !(from == to)) throw UsageError("scan: --steps 1 requires --p-from == --p-to");

  const ExactRational pmin = p_min_qubits(*cfg.n);
  const PureSymmetricState psi0 = ghz_state(*cfg.n, GhzPhase::Plus);
  std::string csv = csv_line({"p", "trace_rho_w", "lambda_min_pt", "sapt", "witness_detects"});
  json rows = json::array();
  for (int i = 0; i < cfg.steps; ++i) {
    ExactRational p = from;
    if (cfg.steps > 1) p += (to - from) * ExactRational(BigInt(i), BigInt(cfg.steps - 1));
    const double pd = p.to_double();
    const SymmetricDensityMatrix rho = rho_p(pd, psi0);
    const double tr = expectation(rho, w);
    const double lmin = min_eigenvalue(partial_transpose_A(embed_bipartite(rho, bip)));
    const bool sapt = p >= pmin;
    const bool detects = tr < 0.0;
    csv += csv_line({format_double(pd), format_double(tr), format_double(lmin), bool_str(sapt), bool_str(detects)});
    rows.push_back({{"p", number(pd)},
                    {"trace_rho_w", number(tr)},
                    {"lambda_min_pt", number(lmin)},
                    {"sapt", sapt},
                    {"witness_detects", detects}});
  }
  if (cfg.format == Format::Json) {
    return {kExitOk, dump({{"n", *cfg.n}, {"k", bip.k}, {"witness", w.name()}, {"p_min", pmin.str()}, {"rows", rows}})};
  }
  return {kExitOk, csv};
}

CommandOutput cmd_qudit_check(const RunConfig& cfg) {
  if (cfg.d < 2 || cfg.d > 8) throw UsageError("qudit-check: --d must lie in [2, 8]");
  if (cfg.nmax < 2 || cfg.nmax > 20) throw UsageError("qudit-check: --nmax must lie in [2, 20]");
  std::string csv = csv_line({"n", "k", "dim", "numeric", "conjectured", "conjectured_value", "abs_diff", "status"});
  json rows = json::array();
  int checked = 0;
  int skipped = 0;
  bool failed = false;
  for (int n = 2; n <= cfg.nmax; ++n) {
    for (int k = 1; k <= n / 2; ++k) {
      const BigInt dim = symmetric_dimension(k, cfg.d) * symmetric_dimension(n - k, cfg.d);
      const std::string dim_s = dim.get_str();
      if (dim > kQuditDimensionCap) {
        ++skipped;
        csv += csv_line({std::to_string(n), std::to_string(k), dim_s, "", "", "", "", "skipped (dimension cap)"});
        rows.push_back({{"n", n}, {"k", k}, {"dim", dim.get_si()}, {"status", "skipped"}});
        continue;
      }
      const QuditMinEig r = qudit_rho0_pt_min_eig(n, cfg.d, k);
      const double conj = r.conjectured.to_double();
      const double diff = std::abs(r.numeric - conj);
      const bool ok = diff <= kQuditCheckTolerance;
      failed = failed || !ok;
      ++checked;
      csv += csv_line({std::to_string(n), std::to_string(k), dim_s, format_double(r.numeric), r.conjectured.str(),
                       format_double(conj), format_double(diff), ok ? "ok" : "FAIL"});
      rows.push_back({{"n", n},
                      {"k", k},
                      {"dim", dim.get_si()},
                      {"numeric", number(r.numeric)},
                      {"conjectured", r.conjectured.str()},
                      {"abs_diff", number(diff)},
                      {"status", ok ? "ok" : "FAIL"}});
    }
  }
  const int code = failed ? kExitNumerical : kExitOk;
  if (cfg.format == Format::Json) {
    return {code, dump({{"d", cfg.d},
                        {"nmax", cfg.nmax},
                        {"dimension_cap", kQuditDimensionCap},
                        {"checked", checked},
                        {"skipped", skipped},
                        {"rows", rows}})};
  }
  return {code, csv};
}

CommandOutput cmd_witness(const RunConfig& cfg) {
  const Witness w = load_witness(cfg);
  const int n = cfg.n.value_or(w.n());
  if (n != w.n()) {
    throw UsageError("witness " + w.name() + " has dimension " + std::to_string(w.dim()) + ", not N+1 = " +
                     std::to_string(n + 1));
  }
  const bool all = !cfg.p && !cfg.validate && !cfg.threshold;
  json j = {{"witness", w.name()}, {"n", n}};
  std::string csv = csv_line({"quantity", "value"});
  int code = kExitOk;
  auto add = [&](const std::string& key, const json& value, const std::string& text) {
    j[key] = value;
    csv += csv_line({key, text});
  };

  if (cfg.p || all) {
    const ExactRational p = cfg.p ? parse_probability(*cfg.p) : p_min_qubits(n);
    const double tr = expectation(rho_p(p.to_double(), ghz_state(n, GhzPhase::Plus)), w);
    add("p", number(p.to_double()), format_double(p.to_double()));
    add("expectation", number(tr), format_double(tr));
    const std::string verdict = tr < 0.0 ? "entangled (witness)" : "not detected";
    add("verdict", verdict, verdict);
  }
  if (cfg.threshold || all) {
    const DetectionThreshold t = detection_threshold(w, n);
    add("threshold", number(t.p_star), format_double(t.p_star));
    add("p_min", t.p_min.str(), t.p_min.str());
    add("sappt_entangled_interval_nonempty", t.certifies_sappt_entanglement,
        bool_str(t.certifies_sappt_entanglement));
  }
  if (cfg.validate || all) {
    const ProductMinimum m = min_over_products(w, cfg.grid);
    add("product_min", number(m.value), format_double(m.value));
    add("argmin_theta", number(m.theta), format_double(m.theta));
    add("argmin_phi", number(m.phi), format_double(m.phi));
    add("grid_min", number(m.grid_value), format_double(m.grid_value));
    const bool valid = m.value >= 0.0 && m.grid_value >= 0.0;
    add("valid", valid, bool_str(valid));
    if (!valid) code = kExitNumerical;
  }
  return {code, cfg.format == Format::Json ? dump(j) : csv};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetric absolutely-PPT states: thresholds, spectra and witnesses", "symppt"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "csv";
  std::string mode = "both";
  std::string grid;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out, "Write output to PATH instead of stdout");
  };

  auto* table1 = app.add_subcommand("table1", "p_min and witness thresholds for N = 4..nmax");
  table1->add_option("--nmax", cfg.nmax, "Largest N (4..14)");
  add_format(table1);

  auto* spectrum = app.add_subcommand("spectrum", "Spectrum of the partially transposed symmetric identity");
  spectrum->add_option("--n", cfg.n, "Number of qubits")->required();
  spectrum->add_option("--k", cfg.k, "Size of party A (default floor(N/2))");
  spectrum->add_option("--mode", mode, "analytic, numeric or both")
      ->check(CLI::IsMember({"analytic", "numeric", "both"}));
  add_format(spectrum);

  auto* scan = app.add_subcommand("scan", "Witness expectation and PT minimum along rho(p)");
  scan->add_option("--n", cfg.n, "Number of qubits")->required();
  scan->add_option("--k", cfg.k, "Size of party A (default floor(N/2))");
  scan->add_option("--witness", cfg.witness, "Built-in witness name");
  scan->add_option("--witness-file", cfg.witness_file, "Witness JSON file");
  scan->add_option("--p-from", cfg.p_from, "First p (decimal or num/den)");
  scan->add_option("--p-to", cfg.p_to, "Last p (decimal or num/den)");
  scan->add_option("--steps", cfg.steps, "Number of p values, endpoints included");
  add_format(scan);

  auto* qudit = app.add_subcommand("qudit-check", "Numeric vs conjectured qudit PT minimum");
  qudit->add_option("--d", cfg.d, "Local dimension")->required();
  qudit->add_option("--nmax", cfg.nmax, "Largest N");
  add_format(qudit);

  auto* witness = app.add_subcommand("witness", "Evaluate and validate an entanglement witness");
  witness->add_option("name", cfg.witness, "W5, W7 or W9");
  witness->add_option("--witness", cfg.witness, "Built-in witness name");
  witness->add_option("--witness-file", cfg.witness_file, "Witness JSON file");
  witness->add_option("--n", cfg.n, "Number of qubits (must match the witness)");
  witness->add_option("--p", cfg.p, "Mixing probability (decimal or num/den)");
  witness->add_flag("--validate", cfg.validate, "Minimize over symmetric product states");
  witness->add_flag("--threshold", cfg.threshold, "Detection threshold p*");
  witness->add_option("--grid", grid, "Validation grid WxH (default 721x360)");
  add_format(witness);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  CommandOutput result;
  try {
    cfg.format = format == "json" ? Format::Json : Format::Csv;
    cfg.mode = mode == "analytic" ? SpectrumMode::Analytic
                                  : (mode == "numeric" ? SpectrumMode::Numeric : SpectrumMode::Both);
    if (!grid.empty()) cfg.grid = parse_grid(grid);
    if (cfg.witness && cfg.witness_file) throw UsageError("give either a witness name or --witness-file, not both");

    if (table1->parsed()) {
      result = cmd_table1(cfg);
    } else if (spectrum->parsed()) {
      result = cmd_spectrum(cfg);
    } else if (scan->parsed()) {
      result = cmd_scan(cfg);
    } else if (qudit->parsed()) {
      result = cmd_qudit_check(cfg);
    } else {
      result = cmd_witness(cfg);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }

  if (cfg.out) {
    std::ofstream file(*cfg.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << *cfg.out << "'\n";
      return kExitUsage;
    }
    file << result.text;
  } else {
    out << result.text;
  }
  if (result.exit_code == kExitNumerical) err << "check violation: see output\n";
  return result.exit_code;
}

}  // namespace symppt::cli
