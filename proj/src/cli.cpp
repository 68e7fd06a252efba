#include "rmspec/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "rmspec/error.hpp"
#include "rmspec/volumes.hpp"
#include "rmspec/words.hpp"

namespace rmspec::cli {

namespace {

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number_float()) {
    std::ostringstream os;
    os << std::setprecision(17) << v.get<double>();
    return os.str();
  }
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + '"';
  }
  return v.dump();
}

Json rational_fields(const std::optional<Rational>& q) {
  Json j = Json::object();
  if (q) {
    j["exact"] = q->get_str();
    j["numerator"] = q->get_num().get_str();
    j["denominator"] = q->get_den().get_str();
  } else {
    j["exact"] = nullptr;
    j["numerator"] = nullptr;
    j["denominator"] = nullptr;
  }
  return j;
}

Json distribution_json(const EntryDistribution& d) {
  return Json{{"name", d.name()}, {"mean", d.mean().get_d()}};
}

std::string hex_seed(std::uint64_t seed) {
  std::ostringstream os;
  os << "0x" << std::hex << seed;
  return os.str();
}

std::uint64_t parse_seed(const std::string& text) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(text, &used, 0);
    if (used != text.size()) throw InvalidArgument("bad seed");
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument("--seed must be a 64-bit integer (decimal or 0x hex), got '" + text + "'");
  }
}

MomentMethod parse_method(const std::string& s) {
  if (s == "exact") return MomentMethod::exact;
  if (s == "mc") return MomentMethod::mc;
  if (s == "formula") return MomentMethod::formula;
  throw InvalidArgument("unknown method '" + s + "'");
}

}  // namespace

Json to_json(const Artifact& a) {
  Json j;
  j["command"] = a.command;
  j["schema_version"] = kSchemaVersion;
  j["config"] = a.config;
  j["rows"] = a.rows;
  for (const auto& [key, value] : a.extra.items()) j[key] = value;
  return j;
}

void write_json(std::ostream& os, const Artifact& a) { os << to_json(a).dump(2) << '\n'; }

void write_csv(std::ostream& os, const Artifact& a) {
  for (std::size_t c = 0; c < a.columns.size(); ++c) os << (c ? "," : "") << a.columns[c];
  os << '\n';
  for (const auto& row : a.rows) {
    for (std::size_t c = 0; c < a.columns.size(); ++c) {
      os << (c ? "," : "") << csv_cell(row.contains(a.columns[c]) ? row[a.columns[c]] : Json());
    }
    os << '\n';
  }
}

Artifact cmd_words(const WordsOptions& opt) {
  Artifact a;
  a.command = "words";
  a.config = {{"k", opt.k},
              {"samples", opt.samples},
              {"seed", hex_seed(opt.seed)},
              {"word_cap", opt.word_cap},
              {"max_exact_dim", opt.max_exact_dim}};
  a.columns = {"index", "word", "height", "irreducible", "noncrossing"};
  for (const char* f : {"p_T", "p_H"}) {
    for (const char* suffix : {"_method", "", "_value", "_std_error"}) {
      a.columns.push_back(std::string(f) + suffix);
    }
  }
  VolumeLimits limits;
  limits.max_exact_dim = opt.max_exact_dim;
  const bool exact = opt.k + 1 <= opt.max_exact_dim;
  std::uint64_t index = 0;
  for_each_word(opt.k, [&](const PartitionWord& w) {
    Json row;
    row["index"] = index;
    row["word"] = w.to_string();
    row["height"] = height(w);
    row["irreducible"] = is_irreducible(w);
    row["noncrossing"] = is_noncrossing(w);
    const std::pair<const char*, SlabKind> kinds[] = {{"p_T", SlabKind::toeplitz},
                                                      {"p_H", SlabKind::hankel}};
    std::uint64_t tag = 0;
    for (const auto& [name, kind] : kinds) {
      const auto sys = build_system(w, kind);
      const VolumeEstimate est =
          exact ? volume_exact(sys, limits)
                : volume_mc(sys, opt.samples, derive_seed(derive_seed(opt.seed, tag), index));
      const std::string key = name;
      row[key + "_method"] = to_string(est.method);
      row[key] = est.exact ? Json(est.exact->get_str()) : Json();
      row[key + "_value"] = est.value;
      row[key + "_std_error"] = est.std_error;
      ++tag;
    }
    a.rows.push_back(std::move(row));
    ++index;
  }, opt.word_cap);
  a.extra["count"] = index;
  return a;
}

Artifact cmd_moments(const MomentsOptions& opt) {
  MomentOptions mo;
  mo.method = opt.method;
  mo.mc_samples = opt.samples;
  mo.seed = opt.seed;
  mo.word_cap = opt.word_cap;
  mo.volume_limits.max_exact_dim = opt.max_exact_dim;
  const MomentTable t = limit_moments(opt.family, opt.order, mo);

  Artifact a;
  a.command = "moments";
  a.config = {{"family", to_string(opt.family)},
              {"order", opt.order},
              {"method", to_string(t.method)},
              {"samples", opt.samples},
              {"seed", hex_seed(opt.seed)},
              {"word_cap", opt.word_cap},
              {"max_exact_dim", opt.max_exact_dim}};
  a.columns = {"order", "exact", "numerator", "denominator", "value", "std_error"};
  for (const auto& [order, e] : t.entries) {
    Json row;
    row["order"] = order;
    row.update(rational_fields(e.exact));
    row["value"] = e.value;
    row["std_error"] = e.std_error;
    a.rows.push_back(std::move(row));
  }
  return a;
}

SimulateOutput cmd_simulate(const SimulateOptions& opt) {
  SimulationConfig c;
  c.ensemble = opt.ensemble;
  c.n = opt.n;
  c.replicates = opt.replicates;
  c.dist = opt.dist;
  c.seed = opt.seed;
  c.scale = opt.scale;
  c.max_moment = opt.max_moment;
  c.threads = opt.threads;
  if (opt.bins == 0) throw InvalidArgument("--bins must be positive");
  SimulationResult r = simulate(c);

  SimulateOutput out;
  out.histogram = histogram(r.pooled, opt.bins);
  Artifact& a = out.moments;
  a.command = "simulate";
  a.config = {{"ensemble", to_string(opt.ensemble)},
              {"n", opt.n},
              {"replicates", opt.replicates},
              {"distribution", distribution_json(opt.dist)},
              {"seed", hex_seed(opt.seed)},
              {"scale", to_string(opt.scale)},
              {"bins", opt.bins},
              {"max_moment", opt.max_moment}};
  a.columns = {"order", "mean", "std_error"};
  for (const auto& s : r.summary) {
    a.rows.push_back(Json{{"order", s.order}, {"mean", s.mean}, {"std_error", s.std_error}});
  }
  const auto [norm_mean, norm_se] = mean_and_std_error(r.norms);
  a.extra["eigenvalue_count"] = r.pooled.eigenvalues.size();
  a.extra["modes"] = count_modes(out.histogram);
  a.extra["spectral_norm"] = Json{{"mean", norm_mean}, {"std_error", norm_se}};
  out.pooled = std::move(r.pooled);
  return out;
}

Artifact cmd_norm_scan(const NormScanOptions& opt) {
  const auto rows = norm_scan(opt.ns, opt.dist, opt.replicates, opt.seed, opt.threads);
  Artifact a;
  a.command = "norm-scan";
  a.config = {{"ns", opt.ns},
              {"distribution", distribution_json(opt.dist)},
              {"replicates", opt.replicates},
              {"seed", hex_seed(opt.seed)}};
  a.columns = {"n",          "replicates",      "norm_mean",  "norm_std_error",
               "ratio_mean", "ratio_std_error", "per_n_mean", "per_n_std_error"};
  auto opt_json = [](const std::optional<double>& x) { return x ? Json(*x) : Json(); };
  for (const auto& r : rows) {
    a.rows.push_back(Json{{"n", r.n},
                          {"replicates", r.replicates},
                          {"norm_mean", r.norm_mean},
                          {"norm_std_error", r.norm_std_error},
                          {"ratio_mean", opt_json(r.ratio_mean)},
                          {"ratio_std_error", opt_json(r.ratio_std_error)},
                          {"per_n_mean", r.per_n_mean},
                          {"per_n_std_error", r.per_n_std_error}});
  }
  a.extra["limits"] = Json{{"ratio", 1.0}, {"per_n", std::abs(opt.dist.mean().get_d())}};
  return a;
}

namespace {

struct Common {
  std::string format = "json";
  std::string out;
  std::string seed = "0x5eed20060001";
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", c.out, "Write the table to this file instead of stdout");
  cmd->add_option("--seed", c.seed, "Master seed (decimal or 0x hex)")->capture_default_str();
}

void emit(const Artifact& a, const std::string& format, std::ostream& os) {
  if (format == "csv") {
    write_csv(os, a);
  } else {
    write_json(os, a);
  }
}

void emit_to(const Artifact& a, const Common& c, std::ostream& out) {
  if (c.out.empty()) {
    emit(a, c.format, out);
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw InvalidArgument("cannot open '" + c.out + "' for writing");
  emit(a, c.format, f);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Limiting spectral moments of random Hankel, Toeplitz and Markov matrices"};
  app.name("rmspec");
  app.require_subcommand(1, 1);

  Common words_common, moments_common, sim_common, scan_common;

  WordsOptions wo;
  auto* words = app.add_subcommand("words", "List partition words with heights and volumes");
  words->add_option("k", wo.k, "Half-length of the words")->required();
  words->add_option("--samples", wo.samples, "Monte Carlo draws per volume beyond the exact cap")
      ->capture_default_str();
  words->add_option("--word-cap", wo.word_cap, "Largest k accepted")->capture_default_str();
  words->add_option("--max-exact-dim", wo.max_exact_dim, "Largest exact volume dimension")
      ->capture_default_str();
  add_common(words, words_common);

  MomentsOptions mo;
  std::string family = "toeplitz", method = "exact";
  auto* moments = app.add_subcommand("moments", "Limiting moments of orders 0..order");
  moments->add_option("family", family, "toeplitz, hankel, markov, semicircle or gaussian")
      ->required();
  moments->add_option("--order", mo.order, "Largest order")->capture_default_str();
  moments->add_option("--method", method, "exact or mc (reference laws use formula)")
      ->capture_default_str();
  moments->add_option("--samples", mo.samples, "Monte Carlo draws per word")
      ->capture_default_str();
  moments->add_option("--word-cap", mo.word_cap, "Largest half-length accepted")
      ->capture_default_str();
  moments->add_option("--max-exact-dim", mo.max_exact_dim, "Largest exact volume dimension")
      ->capture_default_str();
  add_common(moments, moments_common);

  SimulateOptions so;
  std::string sim_ensemble, sim_dist = "gaussian", sim_scale = "sqrt_n", out_dir;
  double sim_mean = 0.0;
  auto* sim = app.add_subcommand("simulate", "Sample an ensemble and summarize its spectrum");
  sim->add_option("ensemble", sim_ensemble,
                  "hankel, toeplitz, markov, wigner or wigner_plus_diag")
      ->required();
  sim->add_option("--n", so.n, "Matrix size")->capture_default_str();
  sim->add_option("--replicates", so.replicates, "Independent matrices")->capture_default_str();
  auto* sim_dist_opt =
      sim->add_option("--dist", sim_dist, "rademacher, gaussian, triangular or shifted_gaussian")
          ->capture_default_str();
  auto* sim_mean_opt =
      sim->add_option("--mean", sim_mean, "Entry mean (implies shifted_gaussian)");
  sim->add_option("--bins", so.bins, "Histogram bins")->capture_default_str();
  sim->add_option("--scale", sim_scale, "Divide eigenvalues by sqrt_n or n")
      ->capture_default_str();
  sim->add_option("--max-moment", so.max_moment, "Largest empirical moment")
      ->capture_default_str();
  sim->add_option("--threads", so.threads, "Worker threads")->capture_default_str();
  sim->add_option("--out-dir", out_dir,
                  "Also write eigenvalues.csv, histogram.csv and moments.<format> here");
  add_common(sim, sim_common);

  NormScanOptions no;
  std::string scan_dist = "gaussian";
  double scan_mean = 0.0;
  auto* scan = app.add_subcommand("norm-scan", "Markov spectral norms across sizes");
  scan->add_option("--ns", no.ns, "Comma-separated sizes")->delimiter(',')->capture_default_str();
  auto* scan_dist_opt =
      scan->add_option("--dist", scan_dist, "Entry distribution")->capture_default_str();
  auto* scan_mean_opt = scan->add_option("--mean", scan_mean, "Entry mean");
  scan->add_option("--replicates", no.replicates, "Matrices per size")->capture_default_str();
  scan->add_option("--threads", no.threads, "Worker threads")->capture_default_str();
  add_common(scan, scan_common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidArgument;
  }

  auto dist_from = [](const std::string& name, CLI::Option* dist_opt, CLI::Option* mean_opt,
                      double mean) {
    if (mean_opt->count() > 0 && dist_opt->count() == 0) {
      return parse_distribution("shifted_gaussian", mean);
    }
    return parse_distribution(name, mean);
  };

  try {
    if (*words) {
      wo.seed = parse_seed(words_common.seed);
      emit_to(cmd_words(wo), words_common, out);
    } else if (*moments) {
      mo.family = parse_family(family);
      mo.method = parse_method(method);
      mo.seed = parse_seed(moments_common.seed);
      emit_to(cmd_moments(mo), moments_common, out);
    } else if (*sim) {
      so.ensemble = parse_ensemble(sim_ensemble);
      so.dist = dist_from(sim_dist, sim_dist_opt, sim_mean_opt, sim_mean);
      so.scale = parse_scaling(sim_scale);
      so.seed = parse_seed(sim_common.seed);
      if (so.threads == 0) throw InvalidArgument("--threads must be positive");
      const SimulateOutput r = cmd_simulate(so);
      if (!out_dir.empty()) {
        const std::filesystem::path dir(out_dir);
        std::filesystem::create_directories(dir);
        std::ofstream eig(dir / "eigenvalues.csv", std::ios::binary);
        eig << "eigenvalue\n" << std::setprecision(17);
        for (double x : r.pooled.eigenvalues) eig << x << '\n';
        std::ofstream hist(dir / "histogram.csv", std::ios::binary);
        write_csv(hist, r.histogram);
        std::ofstream mom(dir / ("moments." + sim_common.format), std::ios::binary);
        emit(r.moments, sim_common.format, mom);
        if (!eig || !hist || !mom) throw InvalidArgument("cannot write to '" + out_dir + "'");
      }
      emit_to(r.moments, sim_common, out);
    } else if (*scan) {
      no.dist = dist_from(scan_dist, scan_dist_opt, scan_mean_opt, scan_mean);
      no.seed = parse_seed(scan_common.seed);
      if (no.threads == 0) throw InvalidArgument("--threads must be positive");
      emit_to(cmd_norm_scan(no), scan_common, out);
    }
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArgument;
  } catch (const CapacityError& e) {
    err << "capacity exceeded: " << e.what() << '\n';
    return kCapacity;
  } catch (const NumericError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kOk;
}

}  // namespace rmspec::cli
