#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fknne/classifier.hpp"
#include "fknne/csv.hpp"
#include "fknne/error.hpp"
#include "fknne/extract.hpp"
#include "fknne/mias.hpp"
#include "fknne/report.hpp"
#include "fknne/synthetic.hpp"
#include "fknne/validation.hpp"

namespace fknne::cli {
namespace {

namespace fs = std::filesystem;

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

fs::path default_out_dir() {
  const char* env = std::getenv(kOutDirEnv);
  return env && *env ? fs::path(env) : fs::path(".");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) items.push_back(item.substr(b, e - b + 1));
  }
  return items;
}

struct ExtractArgs {
  std::string images;
  std::string index;
  std::string out;
  int levels = 16;
  int distance = 1;
  bool symmetric = false;
  bool no_stretch = false;
  std::optional<int> side;
  int height = kMiasImageHeight;
  std::string ext = ".pgm";
  bool serial = false;
};

struct ModelArgs {
  std::string features;
  std::string method = "fknne";
  std::string methods = "knn,fknn,knne,fknne";
  int k = 3;
  std::vector<int> k_sweep;
  double m = 2.0;
  std::string init = "keller";
  std::optional<int> k_init;
  bool no_normalize = false;
  std::string protocol = "kfold";
  int folds = 10;
  double fraction = 0.3;
  std::uint64_t seed = 1;
  std::string mask;
  std::string positive{kDefaultPositive};
  std::string out_dir;
  std::string report;
  std::string roc;
  std::string out;
  std::string roc_dir;
  bool serial = false;
};

struct SynthArgs {
  std::string out;
  int per_class = 30;
  std::uint64_t seed = 7;
  double separation = 10.0;
  double spread = 0.5;
  std::optional<int> n_features;
};

Execution execution(bool serial) { return serial ? Execution::serial : Execution::parallel; }

void add_model_flags(CLI::App* cmd, ModelArgs& a) {
  cmd->add_option("--features", a.features, "Feature CSV (id,label,<features...>)")->required();
  cmd->add_option("--k", a.k, "Neighbours per query (per class for knne/fknne)")->check(CLI::PositiveNumber);
  cmd->add_option("--m", a.m, "Fuzzifier, > 1")->check([](const std::string& s) -> std::string {
    try {
      return std::stod(s) > 1.0 ? "" : "m must be > 1";
    } catch (...) {
      return "m must be a number";
    }
  });
  cmd->add_option("--init", a.init, "Training memberships")->check(CLI::IsMember({"crisp", "keller"}));
  cmd->add_option("--k-init", a.k_init, "Neighbourhood for Keller init (default k)")->check(CLI::PositiveNumber);
  cmd->add_flag("--no-normalize", a.no_normalize, "Skip per-feature min-max scaling");
  cmd->add_option("--protocol", a.protocol, "Validation protocol")
      ->check(CLI::IsMember({"kfold", "loocv", "holdout"}));
  cmd->add_option("--folds", a.folds, "Folds for kfold")->check(CLI::Range(2, 1000000));
  cmd->add_option("--fraction", a.fraction, "Test fraction for holdout")
      ->check([](const std::string& s) -> std::string {
        try {
          const double f = std::stod(s);
          return f > 0.0 && f < 1.0 ? "" : "fraction must be in (0, 1)";
        } catch (...) {
          return "fraction must be a number";
        }
      });
  cmd->add_option("--seed", a.seed, "Fold assignment seed");
  cmd->add_option("--mask", a.mask, "Comma-separated feature names to use");
  cmd->add_option("--positive", a.positive, "Positive class label");
  cmd->add_option("--out-dir", a.out_dir, std::string("Output directory (default $") + kOutDirEnv + " or .)");
  cmd->add_flag("--serial", a.serial, "Use the serial reference kernels");
}

ClassifierConfig make_config(const ModelArgs& a, Kind kind, int k) {
  ClassifierConfig cfg;
  cfg.kind = kind;
  cfg.k = k;
  cfg.m = a.m;
  cfg.init = parse_init(a.init);
  cfg.k_init = a.k_init;
  cfg.normalize = !a.no_normalize;
  cfg.validate();
  return cfg;
}

Protocol make_protocol(const ModelArgs& a) {
  Protocol p;
  if (a.protocol == "kfold") p = Protocol::kfold(a.folds, a.seed);
  else if (a.protocol == "loocv") p = Protocol::loocv();
  else p = Protocol::holdout(a.fraction, a.seed);
  p.validate();
  return p;
}

Dataset load_features(const ModelArgs& a) {
  auto data = read_feature_csv(read_text(a.features));
  if (!a.mask.empty()) data = data.select_features(split_list(a.mask));
  return data;
}

fs::path out_dir(const ModelArgs& a) { return a.out_dir.empty() ? default_out_dir() : fs::path(a.out_dir); }

int cmd_extract(const ExtractArgs& a, std::ostream& out, std::ostream& err) {
  RoiExtractionOptions options;
  options.texture.levels = a.levels;
  options.texture.distance = a.distance;
  options.texture.symmetric = a.symmetric;
  options.texture.stretch = !a.no_stretch;
  options.side = a.side;
  options.extension = a.ext;
  options.texture.validate();

  const fs::path out_path = a.out.empty() ? default_out_dir() / "features.csv" : fs::path(a.out);
  const auto rois = parse_mias_index(read_text(a.index), a.height);
  const auto result = extract_rois(a.images, rois, options, execution(a.serial));
  const auto text = write_feature_csv(feature_schema(), result.rows);

  if (!result.failures.empty()) {
    const fs::path partial = out_path.string() + ".partial";
    write_text(partial, text);
    err << result.failures.size() << " of " << rois.size() << " ROIs failed:\n";
    for (const auto& f : result.failures) err << "  " << f.id << ": " << f.message << '\n';
    err << "partial output written to " << partial.string() << '\n';
    return kExitInput;
  }
  write_text(out_path, text);
  out << "wrote " << result.rows.size() << " ROIs to " << out_path.string() << '\n';
  return kExitOk;
}

void print_averaged(const EvaluationReport& r, std::ostream& out) {
  const auto show = [&](const char* name, const std::optional<double>& v) {
    out << "  " << name << '=';
    if (v) out << format_double(*v);
    else out << "n/a";
  };
  out << "averaged over " << r.folds.size() << " folds:";
  show("sensitivity", r.averaged.sensitivity);
  show("specificity", r.averaged.specificity);
  show("accuracy", r.averaged.accuracy);
  show("auc", r.averaged.auc);
  out << '\n';
}

int cmd_eval(const ModelArgs& a, std::ostream& out) {
  const auto cfg = make_config(a, parse_kind(a.method), a.k);
  const auto protocol = make_protocol(a);
  const auto data = load_features(a);

  const auto report = evaluate(data, cfg, protocol, a.positive, execution(a.serial));
  const fs::path dir = out_dir(a);
  const fs::path report_path = a.report.empty() ? dir / "report.json" : fs::path(a.report);
  const fs::path roc_path = a.roc.empty() ? dir / "roc.csv" : fs::path(a.roc);
  write_text(report_path, report_to_json(report).dump(2) + "\n");
  write_text(roc_path, roc_to_csv(report.roc));

  ComparisonTable table{protocol, a.positive,
                        {ComparisonRow{to_string(cfg.kind), cfg, report.pooled.sensitivity, report.pooled.specificity,
                                       report.pooled.accuracy, report.auc}}};
  out << "pooled over " << report.n_samples << " samples, " << protocol.name() << ", "
      << report.features.size() << " features\n";
  out << render_table(table);
  print_averaged(report, out);
  return kExitOk;
}

int cmd_compare(const ModelArgs& a, std::ostream& out) {
  std::vector<Kind> kinds;
  for (const auto& name : split_list(a.methods)) kinds.push_back(parse_kind(name));
  if (kinds.empty()) throw Error("no classifiers requested");
  const std::vector<int> ks = a.k_sweep.empty() ? std::vector<int>{a.k} : a.k_sweep;
  for (int k : ks) {
    if (k < 1) throw Error("k must be >= 1, got " + std::to_string(k));
  }
  std::vector<ClassifierConfig> configs;
  for (Kind kind : kinds) {
    for (int k : ks) configs.push_back(make_config(a, kind, k));
  }
  const auto protocol = make_protocol(a);
  const auto data = load_features(a);

  std::vector<EvaluationReport> reports;
  const auto table =
      compare_classifiers(data, configs, protocol, a.positive, !a.k_sweep.empty(), execution(a.serial), &reports);
  const fs::path json_path = a.out.empty() ? out_dir(a) / "comparison.json" : fs::path(a.out);
  write_text(json_path, comparison_to_json(table).dump(2) + "\n");
  if (!a.roc_dir.empty()) {
    for (std::size_t i = 0; i < reports.size(); ++i) {
      write_text(fs::path(a.roc_dir) / (table.rows[i].method + "_roc.csv"), roc_to_csv(reports[i].roc));
    }
  }
  out << render_table(table);
  return kExitOk;
}

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  SyntheticConfig cfg;
  cfg.per_class = a.per_class;
  cfg.seed = a.seed;
  cfg.separation = a.separation;
  cfg.spread = a.spread;
  if (a.n_features) {
    for (int f = 0; f < *a.n_features; ++f) cfg.feature_names.push_back("f" + std::to_string(f));
  }
  const fs::path path = a.out.empty() ? default_out_dir() / "synthetic.csv" : fs::path(a.out);
  const auto data = make_two_clusters(cfg);
  write_text(path, write_feature_csv(data));
  out << "wrote " << data.size() << " samples to " << path.string() << '\n';
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Texture feature extraction and fuzzy nearest-neighbour mass classification"};
  app.require_subcommand(1);

  ExtractArgs ex;
  auto* extract = app.add_subcommand("extract", "Extract texture features for every annotated ROI");
  extract->add_option("--images", ex.images, "Directory holding <ref><ext> images")
      ->required()
      ->check(CLI::ExistingDirectory);
  extract->add_option("--index", ex.index, "MIAS-style annotation index")->required()->check(CLI::ExistingFile);
  extract->add_option("--out", ex.out, "Feature CSV path");
  extract->add_option("--levels", ex.levels, "Quantization levels")->check(CLI::Range(2, kMaxTextureLevels));
  extract->add_option("--distance", ex.distance, "Pixel offset distance")->check(CLI::PositiveNumber);
  extract->add_flag("--symmetric", ex.symmetric, "Symmetric co-occurrence counting");
  extract->add_flag("--no-stretch", ex.no_stretch, "Quantize against max_val instead of the ROI range");
  extract->add_option("--side", ex.side, "Crop side in pixels (default 2*radius+1)")->check(CLI::PositiveNumber);
  extract->add_option("--height", ex.height, "Image height for the y-origin flip")->check(CLI::PositiveNumber);
  extract->add_option("--ext", ex.ext, "Image file extension");
  extract->add_flag("--serial", ex.serial, "Use the serial reference path");

  ModelArgs ev;
  auto* eval = app.add_subcommand("eval", "Cross-validate one classifier on a feature CSV");
  add_model_flags(eval, ev);
  eval->add_option("--method", ev.method, "Classifier")->check(CLI::IsMember({"knn", "fknn", "knne", "fknne"}));
  eval->add_option("--report", ev.report, "Report JSON path (default <out-dir>/report.json)");
  eval->add_option("--roc", ev.roc, "ROC CSV path (default <out-dir>/roc.csv)");

  ModelArgs cmp;
  auto* compare = app.add_subcommand("compare", "Compare classifiers on a feature CSV");
  add_model_flags(compare, cmp);
  compare->add_option("--methods", cmp.methods, "Comma-separated classifiers");
  compare->add_option("--k-sweep", cmp.k_sweep, "Evaluate every listed k (one row per method and k)")
      ->delimiter(',');
  compare->add_option("--out", cmp.out, "Comparison JSON path (default <out-dir>/comparison.json)");
  compare->add_option("--roc-dir", cmp.roc_dir, "Write <method>_roc.csv per row into this directory");

  SynthArgs sy;
  auto* synth = app.add_subcommand("synth", "Write a seeded two-cluster feature CSV");
  synth->add_option("--out", sy.out, "Feature CSV path (default <out-dir>/synthetic.csv)");
  synth->add_option("--per-class", sy.per_class, "Samples per class")->check(CLI::PositiveNumber);
  synth->add_option("--seed", sy.seed, "Generator seed");
  synth->add_option("--separation", sy.separation, "Distance between cluster centres per axis");
  synth->add_option("--spread", sy.spread, "Cluster standard deviation")->check(CLI::NonNegativeNumber);
  synth->add_option("--n-features", sy.n_features, "Use f0..f<n-1> instead of the texture schema")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*extract) return cmd_extract(ex, out, err);
    if (*eval) return cmd_eval(ev, out);
    if (*compare) return cmd_compare(cmp, out);
    if (*synth) return cmd_synth(sy, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace fknne::cli
