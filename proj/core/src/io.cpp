#include "gscm/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace gscm {

using nlohmann::json;

namespace {

std::string int_str(const Int& x) { return x.get_str(); }

Int int_from(const json& j) {
  if (j.is_string()) return Int(j.get<std::string>());
  if (j.is_number_integer()) return Int(j.get<long long>());
  fail(errc::usage_error, "expected an integer (as string or number)");
}

json elem_json(const OrderElement& x) {
  json arr = json::array();
  for (const auto& c : x.coords()) arr.push_back(c.get_str());
  return arr;
}

OrderElement elem_from(const OrderPtr& o, const json& j) {
  if (!j.is_array() || j.size() != o->rank())
    fail(errc::usage_error, "element must be an array of rank-many \"p/q\" strings");
  QVec c(o->rank());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (j[i].is_string())
      c[i] = Rat(j[i].get<std::string>());
    else if (j[i].is_number_integer())
      c[i] = Rat(static_cast<long>(j[i].get<long long>()));
    else
      fail(errc::usage_error, "element coordinate must be a string");
    c[i].canonicalize();
  }
  return elem(o, std::move(c));
}

json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int_str(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix matrix_from(const json& j) {
  if (!j.is_array() || j.empty()) fail(errc::usage_error, "expected a nonempty matrix");
  std::size_t rows = j.size(), cols = j[0].size();
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (j[i].size() != cols) fail(errc::usage_error, "ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = int_from(j[i][c]);
  }
  return m;
}

}  // namespace

std::string order_to_json(const OrderPtr& o) {
  json j;
  if (o->cyclotomic_m()) {
    j["cyclotomic"] = *o->cyclotomic_m();
  } else if (o->defining_polynomial()) {
    json poly = json::array();
    for (const auto& c : *o->defining_polynomial()) poly.push_back(int_str(c));
    j["polynomial"] = std::move(poly);
    if (o->has_involution()) {
      // image of alpha under the involution = column 1 of the matrix
      const IntMatrix& v = o->involution_matrix();
      json ci = json::array();
      for (std::size_t i = 0; i < v.rows(); ++i) ci.push_back(int_str(v(i, 1)));
      j["conj_image"] = std::move(ci);
    }
    j["name"] = o->name();
  } else {
    j["n"] = o->rank();
    json table = json::array();
    for (std::size_t i = 0; i < o->rank(); ++i) {
      json row = json::array();
      for (std::size_t k = 0; k < o->rank(); ++k) {
        json cell = json::array();
        for (const auto& c : o->table(i, k)) cell.push_back(int_str(c));
        row.push_back(std::move(cell));
      }
      table.push_back(std::move(row));
    }
    j["table"] = std::move(table);
    json onec = json::array();
    for (const auto& c : o->one_coords()) onec.push_back(int_str(c));
    j["one"] = std::move(onec);
    if (o->has_involution()) j["involution"] = matrix_json(o->involution_matrix());
    j["name"] = o->name();
  }
  return j.dump();
}

OrderPtr order_from_json(const std::string& text) {
  json j = json::parse(text);
  if (j.contains("cyclotomic")) return Order::cyclotomic(j["cyclotomic"].get<unsigned>());
  if (j.contains("polynomial")) {
    ZVec f;
    for (const auto& c : j["polynomial"]) f.push_back(int_from(c));
    std::optional<ZVec> conj;
    if (j.contains("conj_image")) {
      ZVec ci;
      for (const auto& c : j["conj_image"]) ci.push_back(int_from(c));
      conj = std::move(ci);
    }
    return Order::from_polynomial(f, conj, j.value("name", std::string{}));
  }
  if (!j.contains("n") || !j.contains("table") || !j.contains("one"))
    fail(errc::usage_error, "order JSON needs cyclotomic, polynomial, or table form");
  unsigned n = j["n"].get<unsigned>();
  std::vector<ZVec> table(static_cast<std::size_t>(n) * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      ZVec cell;
      for (const auto& c : j["table"][i][k]) cell.push_back(int_from(c));
      if (cell.size() != n) fail(errc::usage_error, "table cell has wrong length");
      table[i * n + k] = std::move(cell);
    }
  ZVec onec;
  for (const auto& c : j["one"]) onec.push_back(int_from(c));
  std::optional<IntMatrix> invol;
  if (j.contains("involution")) invol = matrix_from(j["involution"]);
  return Order::from_table(n, std::move(table), std::move(onec), std::move(invol),
                           j.value("name", std::string{}));
}

std::string element_to_json(const OrderElement& x) { return elem_json(x).dump(); }

OrderElement element_from_json(const OrderPtr& o, const std::string& text) {
  return elem_from(o, json::parse(text));
}

std::string ideal_to_json(const FractionalIdeal& i) {
  json j;
  j["den"] = int_str(i.den());
  j["basis"] = matrix_json(i.basis());
  return j.dump();
}

FractionalIdeal ideal_from_json(const OrderPtr& o, const std::string& text) {
  json j = json::parse(text);
  if (!j.contains("den") || !j.contains("basis"))
    fail(errc::usage_error, "ideal JSON needs den and basis");
  return FractionalIdeal::from_raw(o, int_from(j["den"]), matrix_from(j["basis"]));
}

std::string witness_to_json(const PowerWitness& w) {
  json j;
  j["exponent"] = int_str(w.exponent);
  json prime;
  prime["p"] = int_str(w.prime.p);
  prime["f"] = w.prime.f;
  prime["e"] = w.prime.e;
  json gp = json::array();
  for (const auto& c : w.prime.gpoly) gp.push_back(int_str(c));
  prime["g"] = std::move(gp);
  j["prime"] = std::move(prime);
  json factors = json::array();
  for (const auto& [base, exp] : w.s.factors()) {
    json f;
    f["base"] = elem_json(base);
    f["exp"] = int_str(exp);
    factors.push_back(std::move(f));
  }
  j["factors"] = std::move(factors);
  return j.dump();
}

std::string transcript_to_json(const std::vector<TranscriptSample>& samples) {
  json arr = json::array();
  for (const auto& s : samples) arr.push_back(elem_json(s.value));
  return arr.dump();
}

std::vector<TranscriptSample> transcript_from_json(const OrderPtr& o, const std::string& text) {
  json j = json::parse(text);
  if (!j.is_array()) fail(errc::usage_error, "transcript must be an array of coordinate arrays");
  std::vector<TranscriptSample> out;
  out.reserve(j.size());
  for (const auto& row : j) out.push_back({elem_from(o, row)});
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::usage_error, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::usage_error, "cannot write " + path);
  out << content;
}

}  // namespace gscm
