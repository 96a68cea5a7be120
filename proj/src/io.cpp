#include "gsteer/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace gsteer::io {

SchemaError::SchemaError(std::string path, const std::string& message)
    : Error(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}

Json parse(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("", std::string("JSON parse error: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("", std::string("invalid JSON value: ") + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return parse(buf.str());
}

namespace {

const Json& field(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) throw SchemaError(path.empty() ? "$" : path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError((path.empty() ? "$" : path) + "." + key, "missing required field");
  return *it;
}

std::string child(const std::string& path, const char* key) { return (path.empty() ? "$" : path) + "." + key; }
std::string child(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(path, "non-finite number");
  return v;
}

int integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  const auto v = j.get<long long>();
  if (v < 0 || v > 64) throw SchemaError(path, "expected an integer in [0, 64]");
  return static_cast<int>(v);
}

void reject_unknown(const Json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* a : allowed) known = known || it.key() == a;
    if (!known) throw SchemaError(child(path, it.key().c_str()), "unknown field");
  }
}

}  // namespace

ModePartition partition_from_json(const Json& j) {
  const int m = integer(field(j, "", "m"), "$.m");
  const int n = integer(field(j, "", "n"), "$.n");
  if (n < 1) throw SchemaError("$.n", "must be at least 1");
  return ModePartition(m, n);
}

Matrix matrix_from_json(const Json& j, const std::string& path, Index rows, Index cols) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of rows");
  if (static_cast<Index>(j.size()) != rows) {
    throw SchemaError(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  }
  Matrix a(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    const std::string rp = child(path, static_cast<std::size_t>(r));
    if (!row.is_array()) throw SchemaError(rp, "expected an array");
    if (static_cast<Index>(row.size()) != cols) {
      throw SchemaError(rp, "expected " + std::to_string(cols) + " entries, got " + std::to_string(row.size()));
    }
    for (Index c = 0; c < cols; ++c) {
      a(r, c) = number(row[static_cast<std::size_t>(c)], child(rp, static_cast<std::size_t>(c)));
    }
  }
  return a;
}

Vector vector_from_json(const Json& j, const std::string& path, Index size) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  if (static_cast<Index>(j.size()) != size) {
    throw SchemaError(path, "expected " + std::to_string(size) + " entries, got " + std::to_string(j.size()));
  }
  Vector v(size);
  for (Index i = 0; i < size; ++i) v(i) = number(j[static_cast<std::size_t>(i)], child(path, static_cast<std::size_t>(i)));
  return v;
}

CVector complex_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() % 2 != 0) throw SchemaError(path, "expected an interleaved re/im array");
  const Index n = static_cast<Index>(j.size() / 2);
  const Vector flat = vector_from_json(j, path, 2 * n);
  CVector w(n);
  for (Index i = 0; i < n; ++i) w(i) = Complex(flat(2 * i), flat(2 * i + 1));
  return w;
}

GaussianState state_from_json(const Json& j) {
  const ModePartition p = partition_from_json(j);
  reject_unknown(j, "", {"m", "n", "cm", "d"});
  const Index dim = p.dim();
  Matrix cm = matrix_from_json(field(j, "", "cm"), "$.cm", dim, dim);
  Vector d = j.contains("d") ? vector_from_json(j["d"], "$.d", dim) : Vector::Zero(dim);
  return GaussianState(p, std::move(cm), std::move(d));
}

GaussianChannel channel_from_json(const Json& j) {
  const ModePartition p = partition_from_json(j);
  reject_unknown(j, "", {"m", "n", "K", "M", "d"});
  const Index dim = p.dim();
  Matrix k = matrix_from_json(field(j, "", "K"), "$.K", dim, dim);
  Matrix m = matrix_from_json(field(j, "", "M"), "$.M", dim, dim);
  Vector d = j.contains("d") ? vector_from_json(j["d"], "$.d", dim) : Vector::Zero(dim);
  return GaussianChannel(p, std::move(k), std::move(m), std::move(d));
}

GaussianSuperchannel superchannel_from_json(const Json& j) {
  const ModePartition p = partition_from_json(j);
  reject_unknown(j, "", {"m", "n", "A", "E", "Y", "nu"});
  const Index dim = p.dim();
  Matrix a = matrix_from_json(field(j, "", "A"), "$.A", dim, dim);
  Matrix e = matrix_from_json(field(j, "", "E"), "$.E", dim, dim);
  Matrix y = matrix_from_json(field(j, "", "Y"), "$.Y", dim, dim);
  Vector nu = j.contains("nu") ? vector_from_json(j["nu"], "$.nu", dim) : Vector::Zero(dim);
  return GaussianSuperchannel(p, std::move(a), std::move(e), std::move(y), std::move(nu));
}

SolverConfig config_from_json(const Json& j, SolverConfig base) {
  const std::string root = "$";
  if (!j.is_object()) throw SchemaError(root, "expected an object");
  reject_unknown(j, root, {"starts", "samples", "max_iters", "decision_margin", "seed", "polish_witness"});
  auto get_int = [&](const char* key, int& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_integer()) throw SchemaError(child(root, key), "expected an integer");
    out = j[key].get<int>();
  };
  get_int("starts", base.starts);
  get_int("samples", base.samples);
  get_int("max_iters", base.max_iters);
  if (j.contains("decision_margin")) base.decision_margin = number(j["decision_margin"], "$.decision_margin");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw SchemaError("$.seed", "expected a non-negative integer");
    base.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("polish_witness")) {
    if (!j["polish_witness"].is_boolean()) throw SchemaError("$.polish_witness", "expected a boolean");
    base.polish_witness = j["polish_witness"].get<bool>();
  }
  base.validate();
  return base;
}

Json to_json(const Matrix& a) {
  Json rows = Json::array();
  for (Index r = 0; r < a.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < a.cols(); ++c) row.push_back(a(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json to_json(const CVector& w) {
  Json out = Json::array();
  for (Index i = 0; i < w.size(); ++i) {
    out.push_back(w(i).real());
    out.push_back(w(i).imag());
  }
  return out;
}

Json to_json(const GaussianState& s) {
  return Json{{"m", s.partition().m()},
              {"n", s.partition().n()},
              {"cm", to_json(s.cm())},
              {"d", to_json(s.displacement())}};
}

Json to_json(const GaussianChannel& c) {
  return Json{{"m", c.partition().m()},
              {"n", c.partition().n()},
              {"K", to_json(c.transfer())},
              {"M", to_json(c.noise())},
              {"d", to_json(c.displacement())}};
}

Json to_json(const GaussianSuperchannel& s) {
  return Json{{"m", s.partition().m()},
              {"n", s.partition().n()},
              {"A", to_json(s.output_transfer())},
              {"E", to_json(s.input_rotation())},
              {"Y", to_json(s.noise())},
              {"nu", to_json(s.displacement())}};
}

Json to_json(const SolverConfig& cfg) {
  return Json{{"starts", cfg.starts},
              {"samples", cfg.samples},
              {"max_iters", cfg.max_iters},
              {"decision_margin", cfg.decision_margin},
              {"seed", cfg.seed},
              {"polish_witness", cfg.polish_witness}};
}

Json to_json(const PsdCheck& check) {
  Json out{{"holds", check.psd}, {"min_eigenvalue", check.min_eigenvalue}, {"threshold", check.threshold}};
  if (!check.psd) out["witness"] = to_json(check.witness);
  return out;
}

Json to_json(const Verdict& v) {
  Json out{{"state", std::string(to_string(v.state))}, {"value", v.value}};
  if (v.witness) out["witness"] = to_json(*v.witness);
  return out;
}

Json to_json(const ClassificationReport& r) {
  return Json{{"cp_valid", r.cp.psd},
              {"unsteerable", r.unsteerable.psd},
              {"sa_sufficient", r.sa_sufficient.psd},
              {"steering_annihilating", std::string(to_string(r.steering_annihilating.state))},
              {"maximal_unsteerable", std::string(to_string(r.maximal_unsteerable.state))},
              {"steering_breaking", r.steering_breaking.psd},
              {"consistency_adjusted", r.consistency_adjusted},
              {"evidence",
               Json{{"cp_valid", to_json(r.cp)},
                    {"unsteerable", to_json(r.unsteerable)},
                    {"sa_sufficient", to_json(r.sa_sufficient)},
                    {"steering_annihilating", to_json(r.steering_annihilating)},
                    {"maximal_unsteerable", to_json(r.maximal_unsteerable)},
                    {"steering_breaking", to_json(r.steering_breaking)}}}};
}

Json to_json(const UsSufficientReport& r) {
  return Json{{"holds", r.holds()},
              {"noise_condition", to_json(r.noise_condition)},
              {"form_residual", r.form_residual},
              {"form_preserved", r.form_preserved}};
}

Json to_json(const SuperchannelValidity& v) {
  return Json{{"valid", v.valid()},
              {"orthogonality_residual", v.orthogonality_residual},
              {"orthogonal", v.orthogonal},
              {"noise_condition", to_json(v.noise_condition)},
              {"rotation_condition", to_json(v.rotation_condition)}};
}

}  // namespace gsteer::io
