#pragma once

#include "ionmap/config.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace ionmap {

struct RunArtifacts {
  std::vector<std::string> files;  ///< everything written, manifest last
};

/// Executes the configured task, writes result files next to output_prefix
/// and finishes with a manifest listing every output with a content hash.
/// Throws ConfigError for input problems, std::exception for runtime failures.
RunArtifacts run_experiment(const ExperimentConfig& config, std::ostream& log);

}  // namespace ionmap
