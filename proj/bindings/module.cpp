#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "svmkit/dataset.hpp"
#include "svmkit/experiments.hpp"
#include "svmkit/generators.hpp"
#include "svmkit/model_io.hpp"
#include "svmkit/ovo.hpp"
#include "svmkit/svc.hpp"
#include "svmkit/svr.hpp"

namespace py = pybind11;
using namespace svmkit;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Kernel support-vector machines: binary classification, "
            "epsilon-insensitive regression and one-against-one multiclass.";

  py::class_<FeatureVector>(m, "FeatureVector")
      .def_static("dense", &FeatureVector::dense, py::arg("values"))
      .def_static("sparse", &FeatureVector::sparse, py::arg("indices"), py::arg("values"),
                  py::arg("dim") = 0)
      .def_property_readonly("dim", &FeatureVector::dim)
      .def_property_readonly("is_sparse", &FeatureVector::is_sparse)
      .def_property_readonly("nnz", &FeatureVector::nnz)
      .def("component", &FeatureVector::component, py::arg("index"))
      .def("to_dense", &FeatureVector::to_dense, py::arg("min_dim") = 0)
      .def("dot", &FeatureVector::dot)
      .def("squared_distance", &FeatureVector::squared_distance)
      .def("__eq__", [](const FeatureVector& a, const FeatureVector& b) { return a == b; });

  py::class_<KernelSpec>(m, "KernelSpec")
      .def_static("linear", &KernelSpec::linear)
      .def_static("polynomial", &KernelSpec::polynomial, py::arg("offset"), py::arg("degree"))
      .def_static("gaussian", &KernelSpec::gaussian, py::arg("width"))
      .def_static("parse", &KernelSpec::parse, py::arg("text"))
      .def("eval", &KernelSpec::eval, py::arg("x"), py::arg("y"))
      .def("__str__", &KernelSpec::to_string)
      .def("__repr__", [](const KernelSpec& spec) {
        return "KernelSpec('" + spec.to_string() + "')";
      });

  py::class_<Dataset>(m, "Dataset")
      .def(py::init<>())
      .def_readonly("samples", &Dataset::samples)
      .def_readonly("labels", &Dataset::labels)
      .def_readonly("dim", &Dataset::dim)
      .def("push_back", &Dataset::push_back, py::arg("sample"), py::arg("label"))
      .def("__len__", &Dataset::size);

  m.def("read_sparse", &read_sparse, py::arg("path"));
  m.def("write_sparse", &write_sparse, py::arg("data"), py::arg("path"),
        py::arg("metadata") = "");
  m.def("read_csv", &read_csv, py::arg("path"));
  m.def("write_csv", &write_csv, py::arg("data"), py::arg("path"), py::arg("metadata") = "");
  m.def("read_dataset", &read_dataset, py::arg("path"));
  m.def("split", &split, py::arg("data"), py::arg("train_fraction"), py::arg("seed"));
  m.def("split_count", &split_count, py::arg("data"), py::arg("train_count"), py::arg("seed"));

  py::class_<BlobClass>(m, "BlobClass")
      .def(py::init([](std::vector<double> mean, std::size_t count, double label) {
             return BlobClass{std::move(mean), count, label};
           }),
           py::arg("mean"), py::arg("count"), py::arg("label"));
  py::class_<BlobSpec>(m, "BlobSpec")
      .def(py::init([](std::vector<BlobClass> classes, std::uint64_t seed, double noise_sigma) {
             return BlobSpec{std::move(classes), seed, noise_sigma};
           }),
           py::arg("classes"), py::arg("seed") = 0, py::arg("noise_sigma") = 1.0);
  m.def("gen_blobs", &gen_blobs, py::arg("spec"));

  py::class_<WaveformSpec>(m, "WaveformSpec")
      .def(py::init([](std::size_t count, std::uint64_t seed) {
             return WaveformSpec{count, seed};
           }),
           py::arg("count"), py::arg("seed") = 0);
  m.def("waveform_basis", &waveform_basis, py::arg("i"));
  m.def(
      "gen_waveform",
      [](const WaveformSpec& spec) { return gen_waveform(spec); },
      py::arg("spec"));
  m.def("derive_seed", &derive_seed, py::arg("master"), py::arg("index"));

  py::class_<SolverConfig> solver_config(m, "SolverConfig");
  solver_config.def(py::init<>())
      .def_readwrite("tolerance", &SolverConfig::tolerance)
      .def_readwrite("max_iterations", &SolverConfig::max_iterations)
      .def_readwrite("cache_bytes", &SolverConfig::cache_bytes);

  py::class_<TrainingInfo>(m, "TrainingInfo")
      .def_readonly("cost", &TrainingInfo::cost)
      .def_readonly("tolerance", &TrainingInfo::tolerance)
      .def_readonly("sample_count", &TrainingInfo::sample_count)
      .def_readonly("iterations", &TrainingInfo::iterations)
      .def_readonly("kkt_violation", &TrainingInfo::kkt_violation)
      .def_readonly("dual_objective", &TrainingInfo::dual_objective)
      .def("summary", &TrainingInfo::summary);

  py::class_<RiskReport>(m, "RiskReport")
      .def_readonly("hinge_risk", &RiskReport::hinge_risk)
      .def_readonly("regularized_objective", &RiskReport::regularized_objective)
      .def_readonly("misclassification_rate", &RiskReport::misclassification_rate);

  py::class_<SvcModel>(m, "SvcModel")
      .def_readonly("kernel", &SvcModel::kernel)
      .def_readonly("bias", &SvcModel::bias)
      .def_readonly("coefficients", &SvcModel::coefficients)
      .def_readonly("support_vectors", &SvcModel::support_vectors)
      .def_readonly("dim", &SvcModel::dim)
      .def_readonly("info", &SvcModel::info)
      .def_property_readonly("sv_count", &SvcModel::sv_count)
      .def("decision_value", &SvcModel::decision_value, py::arg("x"))
      .def("predict", &SvcModel::predict, py::arg("x"));

  py::class_<SvrModel>(m, "SvrModel")
      .def_readonly("kernel", &SvrModel::kernel)
      .def_readonly("bias", &SvrModel::bias)
      .def_readonly("epsilon", &SvrModel::epsilon)
      .def_readonly("coefficients", &SvrModel::coefficients)
      .def_readonly("support_vectors", &SvrModel::support_vectors)
      .def_readonly("dim", &SvrModel::dim)
      .def_readonly("info", &SvrModel::info)
      .def_property_readonly("sv_count", &SvrModel::sv_count)
      .def("predict", &SvrModel::predict, py::arg("x"));

  py::class_<ClassVote>(m, "ClassVote")
      .def_readonly("label", &ClassVote::label)
      .def_readonly("votes", &ClassVote::votes)
      .def_readonly("score", &ClassVote::score);

  py::class_<MulticlassModel>(m, "MulticlassModel")
      .def_readonly("classes", &MulticlassModel::classes)
      .def_readonly("dim", &MulticlassModel::dim)
      .def_property_readonly("pair_count",
                             [](const MulticlassModel& m2) { return m2.pairs.size(); })
      .def("tally", &MulticlassModel::tally, py::arg("x"))
      .def("predict", &MulticlassModel::predict, py::arg("x"));

  m.def("train_svc", &train_svc, py::arg("data"), py::arg("kernel"), py::arg("cost"),
        py::arg("config") = SolverConfig{});
  m.def("train_svr", &train_svr, py::arg("data"), py::arg("kernel"), py::arg("cost"),
        py::arg("epsilon"), py::arg("config") = SolverConfig{});
  m.def("train_ovo", &train_ovo, py::arg("data"), py::arg("kernel"), py::arg("cost"),
        py::arg("config") = SolverConfig{});
  m.def("empirical_risks", &empirical_risks, py::arg("model"), py::arg("data"),
        py::arg("cost") = 0.0);
  m.def("epsilon_loss", &epsilon_loss, py::arg("target"), py::arg("predicted"),
        py::arg("epsilon"));
  m.def("linear_weights", &linear_weights, py::arg("model"));

  m.def("save_model", py::overload_cast<const SvcModel&, const std::string&>(&save_model));
  m.def("save_model", py::overload_cast<const SvrModel&, const std::string&>(&save_model));
  m.def("save_model",
        py::overload_cast<const MulticlassModel&, const std::string&>(&save_model));
  m.def("load_model", &load_model, py::arg("path"));

  m.def(
      "run_experiment",
      [](const std::string& id, int replications, std::uint64_t seed) {
        experiments::ExperimentConfig config;
        config.id = id;
        config.replications = replications;
        config.seed = seed;
        experiments::ExperimentReport report = experiments::run_experiment(config);
        return py::make_tuple(report.passed(), report.summary(), report.table());
      },
      py::arg("id"), py::arg("replications") = 0, py::arg("seed") = 1);
}
