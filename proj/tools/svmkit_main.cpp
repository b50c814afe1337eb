#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "svmkit/detail/num_text.hpp"
#include "svmkit/experiments.hpp"
#include "svmkit/generators.hpp"
#include "svmkit/model_io.hpp"
#include "svmkit/ovo.hpp"
#include "svmkit/svc.hpp"
#include "svmkit/svr.hpp"

namespace {

using namespace svmkit;
using detail::format_real;

constexpr int kExitOk = 0;
constexpr int kExitBandFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;

std::vector<double> parse_mean(const std::string& text) {
  std::vector<double> mean;
  std::stringstream parts(text);
  std::string cell;
  while (std::getline(parts, cell, ',')) {
    auto v = detail::try_parse_real(cell);
    if (!v) throw CLI::ValidationError("--means", "bad coordinate '" + cell + "'");
    mean.push_back(*v);
  }
  if (mean.empty()) throw CLI::ValidationError("--means", "empty mean");
  return mean;
}

struct GenBlobsArgs {
  std::vector<std::string> means;
  std::size_t count = 1000;
  double noise = 1.0;
  std::uint64_t seed = 1;
  std::string out;
};

void write_sidecar(const std::string& data_path, const std::string& line) {
  const std::string path = data_path + ".meta";
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << line << "\n";
}

int run_gen_blobs(const GenBlobsArgs& args) {
  BlobSpec spec;
  spec.seed = args.seed;
  spec.noise_sigma = args.noise;
  for (std::size_t k = 0; k < args.means.size(); ++k) {
    double label = args.means.size() == 2 ? (k == 0 ? -1.0 : 1.0)
                                          : static_cast<double>(k + 1);
    spec.classes.push_back({parse_mean(args.means[k]), args.count, label});
  }
  Dataset data = gen_blobs(spec);
  std::ostringstream meta;
  meta << "svmkit gen blobs means=";
  for (std::size_t k = 0; k < args.means.size(); ++k) meta << (k ? ";" : "") << args.means[k];
  meta << " n=" << args.count << " noise=" << format_real(args.noise)
       << " seed=" << args.seed << " rng=" << kRngId;
  write_sparse(data, args.out);
  write_sidecar(args.out, meta.str());
  std::cout << "wrote " << data.size() << " samples to " << args.out << "\n";
  return kExitOk;
}

struct GenWaveformArgs {
  std::size_t count = 5000;
  std::uint64_t seed = 1;
  std::string out;
};

int run_gen_waveform(const GenWaveformArgs& args) {
  Dataset data = gen_waveform({args.count, args.seed});
  std::ostringstream meta;
  meta << "svmkit gen waveform n=" << args.count << " seed=" << args.seed
       << " rng=" << kRngId;
  write_sparse(data, args.out);
  write_sidecar(args.out, meta.str());
  std::cout << "wrote " << data.size() << " samples to " << args.out << "\n";
  return kExitOk;
}

struct TrainArgs {
  std::string task = "svc";
  std::string data_path;
  std::string model_path;
  std::string kernel = "linear";
  double cost = 1.0;
  double epsilon = 0.1;
  double tol = 1e-3;
  std::uint64_t max_iter = 10'000'000;
  bool verbose = false;
};

int run_train(const TrainArgs& args) {
  Dataset data = read_dataset(args.data_path);
  KernelSpec kernel = KernelSpec::parse(args.kernel);
  SolverConfig config;
  config.tolerance = args.tol;
  config.max_iterations = args.max_iter;

  TrainingInfo info;
  if (args.task == "svc") {
    SvcModel model = train_svc(data, kernel, args.cost, config);
    save_model(model, args.model_path);
    info = model.info;
    std::cout << "trained svc: " << model.sv_count() << " support vectors\n";
  } else if (args.task == "svr") {
    SvrModel model = train_svr(data, kernel, args.cost, args.epsilon, config);
    save_model(model, args.model_path);
    info = model.info;
    std::cout << "trained svr: " << model.sv_count() << " support vectors\n";
  } else if (args.task == "ovo") {
    MulticlassModel model = train_ovo(data, kernel, args.cost, config);
    save_model(model, args.model_path);
    std::size_t nsv = 0;
    for (const auto& pw : model.pairs) {
      nsv += pw.model.sv_count();
      info.iterations += pw.model.info.iterations;
    }
    std::cout << "trained ovo: " << model.classes.size() << " classes, "
              << model.pairs.size() << " pairwise models, " << nsv
              << " support vectors\n";
    if (args.verbose) {
      for (const auto& pw : model.pairs) {
        std::cout << "solver " << format_real(pw.positive_class) << " vs "
                  << format_real(pw.negative_class) << ": " << pw.model.info.summary()
                  << "\n";
      }
    }
    return kExitOk;
  } else {
    throw CLI::ValidationError("--task", "expected svc, svr or ovo");
  }
  if (args.verbose) std::cout << "solver: " << info.summary() << "\n";
  return kExitOk;
}

struct PredictArgs {
  std::string model_path;
  std::string data_path;
  std::string out;
};

int run_predict(const PredictArgs& args) {
  AnyModel model = load_model(args.model_path);
  Dataset data = read_dataset(args.data_path);
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!args.out.empty()) {
    file.open(args.out);
    if (!file) throw std::runtime_error("cannot write '" + args.out + "'");
    out = &file;
  }
  for (const FeatureVector& x : data.samples) {
    double value = std::visit([&](const auto& m) { return m.predict(x); }, model);
    *out << format_real(value) << "\n";
  }
  return kExitOk;
}

struct EvalArgs {
  std::string model_path;
  std::string data_path;
  double cost = 1.0;
};

void print_line(const char* name, const experiments::Line2d& line) {
  std::cout << name << " " << format_real(line.a) << "x + " << format_real(line.b)
            << "y + " << format_real(line.c) << " = 0\n";
}

int run_eval(const EvalArgs& args) {
  AnyModel model = load_model(args.model_path);
  Dataset data = read_dataset(args.data_path);
  std::cout << "samples " << data.size() << "\n";

  if (const auto* svc = std::get_if<SvcModel>(&model)) {
    RiskReport risks = empirical_risks(*svc, data, args.cost);
    std::cout << "misclassification_pct " << format_real(100.0 * risks.misclassification_rate)
              << "\n";
    std::cout << "hinge_risk " << format_real(risks.hinge_risk) << "\n";
    std::cout << "regularized_objective " << format_real(risks.regularized_objective)
              << " (cost=" << format_real(args.cost) << ")\n";
    std::cout << "nsv " << svc->sv_count() << "\n";
    std::cout << "sv_fraction_pct_of_this_set "
              << format_real(100.0 * static_cast<double>(svc->sv_count()) /
                             static_cast<double>(data.size()))
              << "\n";
    if (svc->dim == 2 && svc->kernel.kind == KernelKind::linear) {
      const auto line = experiments::hyperplane_line(*svc);
      print_line("hyperplane_native", line);
      if (line.b != 0.0) print_line("hyperplane_y1", experiments::scale_y_to_one(line));
      if (line.c != 0.0) {
        print_line("hyperplane_cminus1", experiments::scale_constant_to_minus_one(line));
      }
    }
  } else if (const auto* svr = std::get_if<SvrModel>(&model)) {
    double risk = 0.0, se = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      const double f = svr->predict(data.samples[i]);
      risk += epsilon_loss(data.labels[i], f, svr->epsilon);
      se += (f - data.labels[i]) * (f - data.labels[i]);
    }
    const auto n = static_cast<double>(data.size());
    std::cout << "epsilon " << format_real(svr->epsilon) << "\n";
    std::cout << "epsilon_risk " << format_real(risk / n) << "\n";
    std::cout << "rmse " << format_real(std::sqrt(se / n)) << "\n";
    std::cout << "nsv " << svr->sv_count() << "\n";
  } else if (const auto* ovo = std::get_if<MulticlassModel>(&model)) {
    std::size_t wrong = 0, nsv = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (ovo->predict(data.samples[i]) != data.labels[i]) ++wrong;
    }
    for (const auto& pw : ovo->pairs) nsv += pw.model.sv_count();
    std::cout << "classes " << ovo->classes.size() << "\n";
    std::cout << "misclassification_pct "
              << format_real(100.0 * static_cast<double>(wrong) /
                             static_cast<double>(data.size()))
              << "\n";
    std::cout << "nsv " << nsv << "\n";
  }
  return kExitOk;
}

struct ExperimentArgs {
  std::string id;
  int reps = 0;
  std::uint64_t seed = 1;
  std::optional<double> tol;
  std::optional<double> cost;
  std::vector<double> cs;
  std::string kernel;
  std::string table_path;
  bool verbose = false;
};

int run_experiment_cmd(const ExperimentArgs& args) {
  experiments::ExperimentConfig config;
  config.id = args.id;
  config.replications = args.reps;
  config.seed = args.seed;
  config.tolerance = args.tol;
  config.cost = args.cost;
  config.cost_sweep = args.cs;
  config.verbose = args.verbose;
  if (!args.kernel.empty()) config.kernel = KernelSpec::parse(args.kernel);

  experiments::ExperimentReport report = experiments::run_experiment(config);
  std::cout << report.summary();
  if (args.table_path.empty()) {
    std::cout << report.table();
  } else {
    std::ofstream table(args.table_path);
    if (!table) throw std::runtime_error("cannot write '" + args.table_path + "'");
    table << report.table();
    std::cout << "table written to " << args.table_path << "\n";
  }
  return report.passed() ? kExitOk : kExitBandFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"svmkit: kernel support-vector machines for classification and regression"};
  app.require_subcommand(1);

  std::uint64_t global_seed = 0;
  double global_tol = 0.0;
  bool global_verbose = false;
  auto* global_seed_opt =
      app.add_option("--seed", global_seed, "seed applied to subcommands unless overridden");
  auto* global_tol_opt =
      app.add_option("--tol", global_tol, "solver tolerance applied unless overridden");
  app.add_flag("--verbose", global_verbose, "verbose diagnostics for all subcommands");

  GenBlobsArgs blobs;
  GenWaveformArgs waveform;
  auto* gen = app.add_subcommand("gen", "generate a synthetic dataset file");
  gen->require_subcommand(1);
  auto* gen_blobs_cmd = gen->add_subcommand("blobs", "normal clouds around class means");
  gen_blobs_cmd->add_option("--means", blobs.means, "per-class mean as x,y[,...]")
      ->required()
      ->expected(-1);
  gen_blobs_cmd->add_option("--n", blobs.count, "samples per class");
  gen_blobs_cmd->add_option("--noise", blobs.noise, "noise standard deviation");
  gen_blobs_cmd->add_option("--seed", blobs.seed, "generator seed");
  gen_blobs_cmd->add_option("-o,--out", blobs.out, "output file")->required();
  auto* gen_wave_cmd = gen->add_subcommand("waveform", "three-class waveform mixture");
  gen_wave_cmd->add_option("--n", waveform.count, "total sample count");
  gen_wave_cmd->add_option("--seed", waveform.seed, "generator seed");
  gen_wave_cmd->add_option("-o,--out", waveform.out, "output file")->required();

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "train a model from a dataset file");
  train_cmd->add_option("--task", train.task, "svc | svr | ovo");
  train_cmd->add_option("--data", train.data_path, "training data")->required();
  train_cmd->add_option("--model", train.model_path, "model output file")->required();
  train_cmd->add_option("--kernel", train.kernel, "linear | poly:c=..,d=.. | gauss:c=..");
  train_cmd->add_option("--c", train.cost, "soft-margin cost C");
  train_cmd->add_option("--epsilon", train.epsilon, "svr tube half-width");
  train_cmd->add_option("--tol", train.tol, "solver stopping tolerance");
  train_cmd->add_option("--max-iter", train.max_iter, "pair-update budget");
  train_cmd->add_flag("--verbose", train.verbose, "print solver diagnostics");

  PredictArgs predict;
  auto* predict_cmd = app.add_subcommand("predict", "predict labels or values");
  predict_cmd->add_option("--model", predict.model_path, "model file")->required();
  predict_cmd->add_option("--data", predict.data_path, "input data")->required();
  predict_cmd->add_option("-o,--out", predict.out, "output file (default stdout)");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a model on a dataset");
  eval_cmd->add_option("--model", eval.model_path, "model file")->required();
  eval_cmd->add_option("--data", eval.data_path, "evaluation data")->required();
  eval_cmd->add_option("--c", eval.cost, "cost used for the regularized objective");

  ExperimentArgs experiment;
  auto* exp_cmd = app.add_subcommand("experiment", "run a named benchmark experiment");
  exp_cmd->add_option("id", experiment.id,
                      "blobs-separable | blobs-overlap | blobs-outliers | c-sweep | waveform")
      ->required();
  exp_cmd->add_option("--reps", experiment.reps, "replication count (0 = default)");
  exp_cmd->add_option("--seed", experiment.seed, "master seed");
  exp_cmd->add_option("--tol", experiment.tol, "solver stopping tolerance");
  exp_cmd->add_option("--c", experiment.cost, "cost override");
  exp_cmd->add_option("--cs", experiment.cs, "cost sweep values")->delimiter(',');
  exp_cmd->add_option("--kernel", experiment.kernel, "kernel override");
  exp_cmd->add_option("--table", experiment.table_path, "write the TSV table here");
  exp_cmd->add_flag("--verbose", experiment.verbose, "include solver diagnostics");

  try {
    app.parse(argc, argv);
    if (*global_seed_opt) {
      if (!gen_blobs_cmd->count("--seed")) blobs.seed = global_seed;
      if (!gen_wave_cmd->count("--seed")) waveform.seed = global_seed;
      if (!exp_cmd->count("--seed")) experiment.seed = global_seed;
    }
    if (*global_tol_opt) {
      if (!train_cmd->count("--tol")) train.tol = global_tol;
      if (!exp_cmd->count("--tol")) experiment.tol = global_tol;
    }
    if (global_verbose) {
      train.verbose = true;
      experiment.verbose = true;
    }
    if (gen_blobs_cmd->parsed()) return run_gen_blobs(blobs);
    if (gen_wave_cmd->parsed()) return run_gen_waveform(waveform);
    if (train_cmd->parsed()) return run_train(train);
    if (predict_cmd->parsed()) return run_predict(predict);
    if (eval_cmd->parsed()) return run_eval(eval);
    if (exp_cmd->parsed()) return run_experiment_cmd(experiment);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
