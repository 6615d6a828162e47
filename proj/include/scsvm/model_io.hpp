#pragma once

#include "scsvm/types.hpp"

#include <optional>

namespace scsvm {

// Serialized model: user-space weights plus the constraint bookkeeping
// needed to reconstruct the internal (post-negation) representation.
struct ModelFile {
  int schema = 1;
  dvec w_user;
  std::vector<std::uint8_t> sigma;
  std::vector<std::uint8_t> negated;
  double lambda = 0.0;
  std::string solver;
  std::int64_t iterations = 0;
  std::optional<double> final_gap;
  bool certified = false;
  std::uint64_t dataset_fingerprint = 0;
};

ModelFile to_model_file(const PrimalModel& model, std::uint64_t fingerprint);
PrimalModel to_primal_model(const ModelFile& file);

void save_model(const std::string& path, const ModelFile& file);
ModelFile load_model(const std::string& path);

void write_trace_csv(const std::string& path,
                     const std::vector<TraceRecord>& trace);

}  // namespace scsvm
