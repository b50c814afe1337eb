#include "svmkit/model_io.hpp"

#include <fstream>
#include <sstream>

#include "svmkit/detail/num_text.hpp"

namespace svmkit {

using detail::format_real;
using detail::try_parse_int;
using detail::try_parse_real;

namespace {

void write_expansion(std::ostream& out, const KernelSpec& kernel,
                     const std::vector<FeatureVector>& svs,
                     const std::vector<double>& coefs, double bias, int dim,
                     const double* epsilon) {
  out << "kernel " << kernel.to_string() << "\n";
  out << "bias " << format_real(bias) << "\n";
  if (epsilon) out << "epsilon " << format_real(*epsilon) << "\n";
  out << "nsv " << svs.size() << "\n";
  out << "dim " << dim << "\n";
  for (std::size_t i = 0; i < svs.size(); ++i) {
    out << format_real(coefs[i]);
    const FeatureVector& sv = svs[i];
    if (sv.is_sparse()) {
      auto idx = sv.indices();
      auto val = sv.values();
      for (std::size_t k = 0; k < idx.size(); ++k) {
        out << ' ' << idx[k] << ':' << format_real(val[k]);
      }
    } else {
      auto val = sv.values();
      for (std::size_t k = 0; k < val.size(); ++k) {
        if (val[k] != 0.0) out << ' ' << k + 1 << ':' << format_real(val[k]);
      }
    }
    out << '\n';
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

struct Reader {
  std::ifstream in;
  std::string path;
  std::size_t lineno = 0;

  explicit Reader(const std::string& p) : in(p), path(p) {
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + message);
  }

  std::string next_line() {
    std::string line;
    if (!std::getline(in, line)) fail("unexpected end of model file");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }

  bool peek_keyword(const std::string& keyword) {
    auto pos = in.tellg();
    std::string line;
    if (!std::getline(in, line)) return false;
    in.seekg(pos);
    return line.rfind(keyword, 0) == 0;
  }

  // `keyword <value>` lines
  std::string keyword_value(const std::string& keyword) {
    std::string line = next_line();
    if (line.rfind(keyword + " ", 0) != 0) fail("expected '" + keyword + " ...'");
    return line.substr(keyword.size() + 1);
  }

  double real_value(const std::string& keyword) {
    auto v = try_parse_real(keyword_value(keyword));
    if (!v) fail("bad number after '" + keyword + "'");
    return *v;
  }

  int int_value(const std::string& keyword) {
    auto v = try_parse_int(keyword_value(keyword));
    if (!v || *v < 0) fail("bad count after '" + keyword + "'");
    return *v;
  }
};

void read_expansion(Reader& r, KernelSpec& kernel, std::vector<FeatureVector>& svs,
                    std::vector<double>& coefs, double& bias, int& dim, double* epsilon) {
  try {
    kernel = KernelSpec::parse(r.keyword_value("kernel"));
  } catch (const std::invalid_argument& e) {
    r.fail(e.what());
  }
  bias = r.real_value("bias");
  if (epsilon) *epsilon = r.real_value("epsilon");
  const int nsv = r.int_value("nsv");
  dim = r.int_value("dim");
  for (int s = 0; s < nsv; ++s) {
    std::istringstream fields(r.next_line());
    std::string token;
    if (!(fields >> token)) r.fail("empty support-vector line");
    auto coef = try_parse_real(token);
    if (!coef) r.fail("bad coefficient '" + token + "'");
    std::vector<int> indices;
    std::vector<double> values;
    while (fields >> token) {
      auto colon = token.find(':');
      auto idx = colon == std::string::npos
                     ? std::nullopt
                     : try_parse_int(token.substr(0, colon));
      auto val = colon == std::string::npos
                     ? std::nullopt
                     : try_parse_real(token.substr(colon + 1));
      if (!idx || !val) r.fail("bad feature entry '" + token + "'");
      indices.push_back(*idx);
      values.push_back(*val);
    }
    try {
      svs.push_back(FeatureVector::sparse(std::move(indices), std::move(values), dim));
    } catch (const std::invalid_argument& e) {
      r.fail(e.what());
    }
    coefs.push_back(*coef);
  }
}

}  // namespace

void save_model(const SvcModel& model, const std::string& path) {
  auto out = open_out(path);
  out << "SVMODEL 1 svc\n";
  write_expansion(out, model.kernel, model.support_vectors, model.coefficients,
                  model.bias, model.dim, nullptr);
}

void save_model(const SvrModel& model, const std::string& path) {
  auto out = open_out(path);
  out << "SVMODEL 1 svr\n";
  write_expansion(out, model.kernel, model.support_vectors, model.coefficients,
                  model.bias, model.dim, &model.epsilon);
}

void save_model(const MulticlassModel& model, const std::string& path) {
  auto out = open_out(path);
  out << "SVMODEL 1 ovo\n";
  out << "classes";
  for (double c : model.classes) out << ' ' << format_real(c);
  out << '\n';
  for (const PairwiseModel& pw : model.pairs) {
    out << "pair " << format_real(pw.positive_class) << ' '
        << format_real(pw.negative_class) << '\n';
    write_expansion(out, pw.model.kernel, pw.model.support_vectors,
                    pw.model.coefficients, pw.model.bias, pw.model.dim, nullptr);
  }
}

AnyModel load_model(const std::string& path) {
  Reader r(path);
  const std::string header = r.next_line();
  if (header == "SVMODEL 1 svc") {
    SvcModel model;
    read_expansion(r, model.kernel, model.support_vectors, model.coefficients,
                   model.bias, model.dim, nullptr);
    return model;
  }
  if (header == "SVMODEL 1 svr") {
    SvrModel model;
    read_expansion(r, model.kernel, model.support_vectors, model.coefficients,
                   model.bias, model.dim, &model.epsilon);
    return model;
  }
  if (header == "SVMODEL 1 ovo") {
    MulticlassModel model;
    std::istringstream classes(r.keyword_value("classes"));
    std::string token;
    while (classes >> token) {
      auto c = try_parse_real(token);
      if (!c) r.fail("bad class label '" + token + "'");
      model.classes.push_back(*c);
    }
    if (model.classes.size() < 2) r.fail("one-against-one model needs >= 2 classes");
    while (r.peek_keyword("pair ")) {
      std::istringstream pair_line(r.keyword_value("pair"));
      PairwiseModel pw;
      std::string a, b;
      if (!(pair_line >> a >> b)) r.fail("bad pair line");
      auto pa = try_parse_real(a), pb = try_parse_real(b);
      if (!pa || !pb) r.fail("bad pair classes");
      pw.positive_class = *pa;
      pw.negative_class = *pb;
      read_expansion(r, pw.model.kernel, pw.model.support_vectors,
                     pw.model.coefficients, pw.model.bias, pw.model.dim, nullptr);
      model.pairs.push_back(std::move(pw));
      model.dim = std::max(model.dim, model.pairs.back().model.dim);
    }
    const std::size_t k = model.classes.size();
    if (model.pairs.size() != k * (k - 1) / 2) {
      r.fail("expected one pairwise block per unordered class pair");
    }
    return model;
  }
  throw std::runtime_error(path + ": not a model file (bad header)");
}

}  // namespace svmkit
