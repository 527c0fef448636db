#pragma once

#include <string>

#include "ncg/apps.hpp"
#include "ncg/decompose.hpp"

namespace ncg {
namespace io {

// Minimal JSON writer with deterministic formatting: every floating-point
// value is rendered with 17 significant digits so identical runs emit
// byte-identical output.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& name);
  JsonWriter& value(double v);
  JsonWriter& value(int v);
  JsonWriter& value(long long v);
  JsonWriter& value(std::uint64_t v);
  JsonWriter& value(const std::string& v);
  JsonWriter& value_bool(bool v);
  JsonWriter& value(const Matrix& m, bool as_complex);
  JsonWriter& value(const RMatrix& m);

  const std::string& str() const { return out_; }

 private:
  void separator();
  std::string out_;
  std::vector<bool> first_in_scope_;
  bool pending_key_ = false;
};

std::string format_double(double v);

// Tensor file format: {"n": int, "field": "real"|"complex",
// "entries": [[i, j, k, l, re, im], ...]}, 0-based indices, unlisted entries
// zero; duplicate index quadruples are rejected.
Tensor4 tensor_from_json_text(const std::string& text);
Tensor4 read_tensor(const std::string& path);
std::string tensor_to_json_text(const Tensor4& m);

// CSV points, one per row.
PointCloud read_points_csv(const std::string& path);

// JSON list of row-major matrices.
ProcrustesInstance read_matrices_json(const std::string& path);

// {"terms": [{"alpha": [re, im], "A": ..., "B": ...}], "residual": ...};
// each term contributes alpha * conj(A_ij) * B_kl to the reconstruction.
std::string decomposition_to_json_text(const Decomposition& dec);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace io
}  // namespace ncg
