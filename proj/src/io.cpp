#include "ncg/io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ncg {
namespace io {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void JsonWriter::separator() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (!first_in_scope_.empty()) {
    if (!first_in_scope_.back()) out_ += ',';
    first_in_scope_.back() = false;
  }
}

JsonWriter& JsonWriter::begin_object() {
  separator();
  out_ += '{';
  first_in_scope_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_ += '}';
  first_in_scope_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  separator();
  out_ += '[';
  first_in_scope_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ += ']';
  first_in_scope_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::key(const std::string& name) {
  if (!first_in_scope_.back()) out_ += ',';
  first_in_scope_.back() = false;
  out_ += '"';
  out_ += name;
  out_ += "\":";
  pending_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  separator();
  out_ += format_double(v);
  return *this;
}

JsonWriter& JsonWriter::value(int v) { return value(static_cast<long long>(v)); }

JsonWriter& JsonWriter::value(long long v) {
  separator();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t v) {
  separator();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
  separator();
  out_ += '"';
  for (char c : v) {
    if (c == '"' || c == '\\') out_ += '\\';
    out_ += c;
  }
  out_ += '"';
  return *this;
}

JsonWriter& JsonWriter::value_bool(bool v) {
  separator();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(const Matrix& m, bool as_complex) {
  begin_array();
  for (int r = 0; r < m.rows(); ++r) {
    begin_array();
    for (int c = 0; c < m.cols(); ++c) {
      if (as_complex) {
        begin_array();
        value(m(r, c).real());
        value(m(r, c).imag());
        end_array();
      } else {
        value(m(r, c).real());
      }
    }
    end_array();
  }
  end_array();
  return *this;
}

JsonWriter& JsonWriter::value(const RMatrix& m) {
  begin_array();
  for (int r = 0; r < m.rows(); ++r) {
    begin_array();
    for (int c = 0; c < m.cols(); ++c) value(m(r, c));
    end_array();
  }
  end_array();
  return *this;
}

Tensor4 tensor_from_json_text(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_object() || !j.contains("n") || !j.contains("field"))
    throw std::invalid_argument("tensor: need object with n and field");
  const int n = j.at("n").get<int>();
  const std::string field = j.at("field").get<std::string>();
  if (field != "real" && field != "complex")
    throw std::invalid_argument("tensor: field must be real or complex");
  Tensor4 m(n, field == "real" ? Field::Real : Field::Complex);
  std::set<std::array<int, 4>> seen;
  if (j.contains("entries")) {
    for (const auto& e : j.at("entries")) {
      if (!e.is_array() || e.size() != 6)
        throw std::invalid_argument("tensor: entry must be [i,j,k,l,re,im]");
      const std::array<int, 4> idx = {e[0].get<int>(), e[1].get<int>(),
                                      e[2].get<int>(), e[3].get<int>()};
      if (!seen.insert(idx).second)
        throw std::invalid_argument("tensor: duplicate index quadruple");
      m.set(idx[0], idx[1], idx[2], idx[3],
            cd(e[4].get<double>(), e[5].get<double>()));
    }
  }
  return m;
}

Tensor4 read_tensor(const std::string& path) {
  return tensor_from_json_text(read_file(path));
}

std::string tensor_to_json_text(const Tensor4& m) {
  JsonWriter w;
  w.begin_object();
  w.key("n").value(m.n());
  w.key("field").value(std::string(m.real_field() ? "real" : "complex"));
  w.key("entries").begin_array();
  for (const auto& [idx, v] : m.nonzeros()) {
    w.begin_array();
    w.value(idx[0]).value(idx[1]).value(idx[2]).value(idx[3]);
    w.value(v.real()).value(v.imag());
    w.end_array();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

PointCloud read_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  PointCloud cloud;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    Eigen::VectorXd p(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) p(i) = row[i];
    if (!cloud.points.empty() && p.size() != cloud.points[0].size())
      throw std::invalid_argument("points: inconsistent row length");
    cloud.points.push_back(std::move(p));
  }
  return cloud;
}

ProcrustesInstance read_matrices_json(const std::string& path) {
  const nlohmann::json j = nlohmann::json::parse(read_file(path));
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("matrices: need a nonempty JSON list");
  ProcrustesInstance inst;
  for (const auto& jm : j) {
    const std::size_t rows = jm.size();
    const std::size_t cols = jm.at(0).size();
    RMatrix a(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      if (jm.at(r).size() != cols)
        throw std::invalid_argument("matrices: ragged rows");
      for (std::size_t c = 0; c < cols; ++c)
        a(static_cast<int>(r), static_cast<int>(c)) = jm.at(r).at(c).get<double>();
    }
    inst.parts.push_back(std::move(a));
  }
  return inst;
}

std::string decomposition_to_json_text(const Decomposition& dec) {
  JsonWriter w;
  w.begin_object();
  w.key("terms").begin_array();
  for (const auto& term : dec.terms) {
    w.begin_object();
    w.key("alpha").begin_array();
    w.value(term.alpha.real()).value(term.alpha.imag());
    w.end_array();
    w.key("A").value(term.A, true);
    w.key("B").value(term.B, true);
    w.end_object();
  }
  w.end_array();
  w.key("residual");
  {
    w.begin_object();
    w.key("n").value(dec.residual.n());
    w.key("field").value(
        std::string(dec.residual.real_field() ? "real" : "complex"));
    w.key("entries").begin_array();
    for (const auto& [idx, v] : dec.residual.nonzeros()) {
      w.begin_array();
      w.value(idx[0]).value(idx[1]).value(idx[2]).value(idx[3]);
      w.value(v.real()).value(v.imag());
      w.end_array();
    }
    w.end_array();
    w.end_object();
  }
  w.key("lower_bound").value(dec.lower_bound);
  w.key("residual_upper_bound").value(dec.residual_upper_bound);
  w.key("certificates").begin_array();
  for (const auto& c : dec.certificates) {
    w.begin_object();
    w.key("upper_bound").value(c.upper_bound);
    w.key("rounded_value").value(c.rounded_value);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << content;
}

}  // namespace io
}  // namespace ncg
