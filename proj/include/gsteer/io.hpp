#pragma once

// JSON wire format. Matrices are row-major nested arrays of finite doubles in
// mode order (q1, p1, ..., qN, pN); complex vectors are interleaved
// [re0, im0, re1, im1, ...] arrays.

#include <string>
#include <string_view>

#include <json.hpp>

#include "gsteer/channels.hpp"
#include "gsteer/errors.hpp"
#include "gsteer/quantifier.hpp"
#include "gsteer/states.hpp"
#include "gsteer/superchannels.hpp"

namespace gsteer::io {

using Json = nlohmann::ordered_json;

/// Malformed document: parse failure or a structural mismatch at `path`.
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& message);
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

Json parse(std::string_view text);
Json read_file(const std::string& path);

ModePartition partition_from_json(const Json& j);
Matrix matrix_from_json(const Json& j, const std::string& path, Index rows, Index cols);
Vector vector_from_json(const Json& j, const std::string& path, Index size);
CVector complex_from_json(const Json& j, const std::string& path);

GaussianState state_from_json(const Json& j);
GaussianChannel channel_from_json(const Json& j);
GaussianSuperchannel superchannel_from_json(const Json& j);
/// Fields absent from `j` keep their value from `base`.
SolverConfig config_from_json(const Json& j, SolverConfig base = {});

Json to_json(const Matrix& a);
Json to_json(const Vector& v);
Json to_json(const CVector& w);
Json to_json(const GaussianState& s);
Json to_json(const GaussianChannel& c);
Json to_json(const GaussianSuperchannel& s);
Json to_json(const SolverConfig& cfg);
Json to_json(const PsdCheck& check);
Json to_json(const Verdict& v);
Json to_json(const ClassificationReport& r);
Json to_json(const UsSufficientReport& r);
Json to_json(const SuperchannelValidity& v);

}  // namespace gsteer::io
