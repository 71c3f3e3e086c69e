#pragma once

#include <string>
#include <vector>

#include "shc/certificate.hpp"
#include "shc/harness.hpp"
#include "shc/linalg.hpp"
#include "shc/partition.hpp"

namespace shc::io {

/// {"n": 3, "kind": "sym" | "herm", "upper": [[re] | [re, im] | re, ...]}
/// with the packed upper triangle in row-major order. Throws ParseError.
DenseHermitian matrix_from_json(const std::string& text);
std::string matrix_to_json(const DenseHermitian& a);

/// A JSON array of numbers.
std::vector<double> vector_from_json(const std::string& text);
std::string vector_to_json(const std::vector<double>& v);

std::string certificate_to_json(const CorrectionCertificate& cert);
CorrectionCertificate certificate_from_json(const std::string& text);

std::string partition_to_json(const BlockPartition& p);

/// Fields mirror SweepConfig; missing fields keep their defaults.
SweepConfig sweep_config_from_json(const std::string& text);

/// Reads `arg` as inline JSON when it starts with '[' or '{', otherwise as a file path.
std::string read_json_arg(const std::string& arg);

}  // namespace shc::io
