#pragma once

#include <string>
#include <variant>

#include "svmkit/ovo.hpp"
#include "svmkit/svc.hpp"
#include "svmkit/svr.hpp"

namespace svmkit {

// Line-oriented model files. Binary classifier:
//   SVMODEL 1 svc
//   kernel <spec>
//   bias <real>
//   nsv <int>
//   dim <int>
//   <coef> <idx>:<val> ...        (one support vector per line)
// Regressors add `epsilon <real>` after the bias and use the svr tag.
// One-against-one files hold a `classes ...` line followed by the
// pairwise blocks, each introduced by `pair <i> <j>`.
//
// Coefficients and components are written in shortest round-trip decimal,
// so saving and loading preserves decision values exactly.
void save_model(const SvcModel& model, const std::string& path);
void save_model(const SvrModel& model, const std::string& path);
void save_model(const MulticlassModel& model, const std::string& path);

using AnyModel = std::variant<SvcModel, SvrModel, MulticlassModel>;
AnyModel load_model(const std::string& path);

}  // namespace svmkit
