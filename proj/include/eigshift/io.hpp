#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "eigshift/error.hpp"
#include "eigshift/jordan.hpp"
#include "eigshift/matrix.hpp"

namespace eigshift::io {

using Json = nlohmann::ordered_json;

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::parse, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, path + ": " + e.what());
  }
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, e.what());
  }
}

inline const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw Error(ErrorKind::parse, std::string("missing field \"") + name + "\"");
  return j.at(name);
}

inline Json scalar_to_json(const Scalar& s) { return s.to_string(); }

inline Scalar scalar_from_json(const Json& j) {
  if (j.is_string()) return Scalar::parse(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.get<long>());
  throw Error(ErrorKind::parse, "scalars are exact strings such as \"3/4\" or \"1/2+1i\", got " + j.dump());
}

inline std::size_t count_from_json(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw Error(ErrorKind::parse, std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

inline Json vector_to_json(const Vector& v) {
  Json a = Json::array();
  for (const auto& x : v.entries()) a.push_back(scalar_to_json(x));
  return a;
}

inline Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::parse, "vector must be an array");
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = scalar_from_json(j[i]);
  return v;
}

inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(vector_to_json(m.row(i)));
  return rows;
}

template <typename T>
Json matrix_to_json_any(const DenseMatrix<T>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_traits<T>::to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::parse, "matrix must be an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? (j[0].is_array() ? j[0].size() : 0) : 0;
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw Error(ErrorKind::parse, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = scalar_from_json(j[i][c]);
  }
  return m;
}

inline Json segre_to_json(const SegreCharacteristic& s) {
  Json a = Json::array();
  const SegreCharacteristic c = s.canonical();
  for (const auto& b : c.blocks())
    a.push_back(Json{{"eigenvalue", scalar_to_json(b.eigenvalue)}, {"size", b.size}});
  return a;
}

inline SegreCharacteristic segre_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::parse, "segre must be an array of {eigenvalue, size}");
  std::vector<SegreBlock> blocks;
  for (const auto& b : j)
    blocks.push_back(SegreBlock{scalar_from_json(field(b, "eigenvalue")), count_from_json(field(b, "size"), "size")});
  return SegreCharacteristic(std::move(blocks));
}

inline Json chain_to_json(const ChainPair& c) {
  Json left = Json::array(), right = Json::array();
  for (const auto& u : c.left) left.push_back(vector_to_json(u));
  for (const auto& v : c.right) right.push_back(vector_to_json(v));
  return Json{{"lambda", scalar_to_json(c.lambda)}, {"left", left}, {"right", right}};
}

inline ChainPair chain_from_json(const Json& j) {
  ChainPair c{scalar_from_json(field(j, "lambda")), {}, {}};
  for (const auto& u : field(j, "left")) c.left.push_back(vector_from_json(u));
  for (const auto& v : field(j, "right")) c.right.push_back(vector_from_json(v));
  return c;
}

inline std::vector<Scalar> scalars_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::parse, "expected an array of scalars");
  std::vector<Scalar> out;
  for (const auto& x : j) out.push_back(scalar_from_json(x));
  return out;
}

inline Json scalars_to_json(const std::vector<Scalar>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(scalar_to_json(x));
  return a;
}

enum class Backend { exact, floating };

inline Backend backend_from_string(const std::string& s) {
  if (s == "exact") return Backend::exact;
  if (s == "float") return Backend::floating;
  throw Error(ErrorKind::parse, "backend must be exact or float, got \"" + s + "\"");
}

inline const char* to_string(Backend b) { return b == Backend::exact ? "exact" : "float"; }

/// Shift job: either a prescribed structure (optionally with a change of
/// basis and Hankel parameters for the left chain) or an explicit matrix with
/// its chain pair.
struct ShiftJob {
  struct Synthesized {
    SegreCharacteristic segre;
    std::optional<Matrix> change_of_basis;
    std::optional<std::vector<Scalar>> left_hankel;
  };
  struct Explicit {
    Matrix matrix;
    ChainPair chain;
    std::optional<std::vector<Scalar>> eigenvalues;  // of the untouched part
  };
  std::optional<Synthesized> synthesized;
  std::optional<Explicit> explicit_source;
  Scalar target_eigenvalue;
  Scalar new_eigenvalue;
  std::size_t k = 0;
  std::optional<Matrix> r_free;
  std::optional<Matrix> l_free;
  Backend backend = Backend::exact;
};

inline ShiftJob job_from_json(const Json& j) {
  ShiftJob job;
  const Json& src = field(j, "source");
  if (src.contains("segre")) {
    ShiftJob::Synthesized s{segre_from_json(src.at("segre")), std::nullopt, std::nullopt};
    if (src.contains("change_of_basis")) s.change_of_basis = matrix_from_json(src.at("change_of_basis"));
    if (src.contains("left_hankel")) s.left_hankel = scalars_from_json(src.at("left_hankel"));
    job.synthesized = std::move(s);
  } else if (src.contains("matrix")) {
    ShiftJob::Explicit e{matrix_from_json(src.at("matrix")), chain_from_json(field(src, "chains")), std::nullopt};
    if (src.contains("eigenvalues")) e.eigenvalues = scalars_from_json(src.at("eigenvalues"));
    job.explicit_source = std::move(e);
  } else {
    throw Error(ErrorKind::parse, "source needs either \"segre\" or \"matrix\"");
  }
  job.target_eigenvalue = scalar_from_json(field(j, "target_eigenvalue"));
  job.new_eigenvalue = scalar_from_json(field(j, "new_eigenvalue"));
  job.k = count_from_json(field(j, "k"), "k");
  if (j.contains("r_free") && !j.at("r_free").is_null()) job.r_free = matrix_from_json(j.at("r_free"));
  if (j.contains("l_free") && !j.at("l_free").is_null()) job.l_free = matrix_from_json(j.at("l_free"));
  if (j.contains("backend")) job.backend = backend_from_string(j.at("backend").get<std::string>());
  return job;
}

/// Normalized form; reading it back gives the same job.
inline Json job_to_json(const ShiftJob& job) {
  Json src = Json::object();
  if (job.synthesized) {
    // keep the user's block order: it fixes which columns of P form each chain
    src["segre"] = Json::array();
    for (const auto& b : job.synthesized->segre.blocks())
      src["segre"].push_back(Json{{"eigenvalue", scalar_to_json(b.eigenvalue)}, {"size", b.size}});
    if (job.synthesized->change_of_basis) src["change_of_basis"] = matrix_to_json(*job.synthesized->change_of_basis);
    if (job.synthesized->left_hankel) src["left_hankel"] = scalars_to_json(*job.synthesized->left_hankel);
  } else {
    src["matrix"] = matrix_to_json(job.explicit_source->matrix);
    src["chains"] = chain_to_json(job.explicit_source->chain);
    if (job.explicit_source->eigenvalues) src["eigenvalues"] = scalars_to_json(*job.explicit_source->eigenvalues);
  }
  Json j = Json::object();
  j["source"] = src;
  j["target_eigenvalue"] = scalar_to_json(job.target_eigenvalue);
  j["new_eigenvalue"] = scalar_to_json(job.new_eigenvalue);
  j["k"] = job.k;
  if (job.r_free) j["r_free"] = matrix_to_json(*job.r_free);
  if (job.l_free) j["l_free"] = matrix_to_json(*job.l_free);
  j["backend"] = to_string(job.backend);
  return j;
}

inline void write_output(const Json& report, const std::optional<std::string>& path) {
  const std::string text = report.dump(2) + "\n";
  if (!path) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(*path);
  if (!out) throw Error(ErrorKind::parse, "cannot write " + *path);
  out << text;
}

}  // namespace eigshift::io
