#include "fibla/matrix.hpp"

#include <fstream>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

#include "fibla/error.hpp"
#include "fibla/operators.hpp"
#include "json.hpp"

namespace fibla {

using nlohmann::json;

struct Matrix::State {
  std::string description;
  Entry entry;
  Support support;
  Shape shape;
  mutable std::shared_mutex mu;
  mutable std::unordered_map<std::uint64_t, Rational> memo;
};

Matrix::Matrix(std::string description, Entry entry, Support support, Shape shape)
    : state_(std::make_shared<State>()) {
  state_->description = std::move(description);
  state_->entry = std::move(entry);
  state_->support = std::move(support);
  state_->shape = shape;
}

Rational Matrix::entry(std::size_t n, std::size_t k) const {
  const auto& s = *state_;
  if (s.shape.rows && n >= *s.shape.rows) {
    throw Error(ErrorCode::kWindowMismatch, "row " + std::to_string(n) + " of " + s.description +
                                                " is beyond the " + std::to_string(*s.shape.rows) +
                                                " available rows");
  }
  if (s.shape.nonzero_rows && n >= *s.shape.nonzero_rows) return Rational(0);
  if (const auto sup = s.support(n); sup && k >= *sup) return Rational(0);
  const std::uint64_t key = (static_cast<std::uint64_t>(n) << 32) | k;
  {
    std::shared_lock lock(s.mu);
    if (auto it = s.memo.find(key); it != s.memo.end()) return it->second;
  }
  Rational v = s.entry(n, k);
  std::unique_lock lock(s.mu);
  s.memo.emplace(key, v);
  return v;
}

std::optional<std::size_t> Matrix::row_support(std::size_t n) const {
  if (state_->shape.nonzero_rows && n >= *state_->shape.nonzero_rows) return 0;
  return state_->support(n);
}

std::vector<Rational> Matrix::row(std::size_t n, std::size_t width) const {
  std::vector<Rational> out;
  out.reserve(width);
  for (std::size_t k = 0; k < width; ++k) out.push_back(entry(n, k));
  return out;
}

const Matrix::Shape& Matrix::shape() const { return state_->shape; }
const std::string& Matrix::description() const { return state_->description; }

Matrix Matrix::zero() {
  return Matrix("zero", [](std::size_t, std::size_t) { return Rational(0); },
                [](std::size_t) { return std::optional<std::size_t>(0); }, Shape{std::nullopt, 0, true});
}

Matrix Matrix::identity() {
  return Matrix("identity", [](std::size_t n, std::size_t k) { return Rational(n == k ? 1 : 0); },
                [](std::size_t n) { return std::optional<std::size_t>(n + 1); },
                Shape{std::nullopt, std::nullopt, true});
}

Matrix Matrix::from_triangle(const Triangle& t) {
  return Matrix(t.description(), [t](std::size_t n, std::size_t k) { return t.entry(n, k); },
                [](std::size_t n) { return std::optional<std::size_t>(n + 1); },
                Shape{t.rows(), std::nullopt, true});
}

Matrix Matrix::from_rows(std::vector<std::vector<Rational>> rows, bool zero_tail) {
  std::size_t last = 0;
  std::vector<std::size_t> support(rows.size(), 0);
  for (std::size_t n = 0; n < rows.size(); ++n) {
    for (std::size_t k = 0; k < rows[n].size(); ++k) {
      if (!rows[n][k].is_zero()) support[n] = k + 1;
    }
    if (support[n] > 0) last = n + 1;
  }
  Shape shape;
  shape.rows = zero_tail ? std::nullopt : std::optional<std::size_t>(rows.size());
  shape.nonzero_rows = zero_tail ? std::optional<std::size_t>(last) : std::nullopt;
  shape.rows_finite = true;
  auto data = std::make_shared<const std::vector<std::vector<Rational>>>(std::move(rows));
  auto sup = std::make_shared<const std::vector<std::size_t>>(std::move(support));
  const std::string desc = "dense " + std::to_string(data->size()) + "-row matrix";
  return Matrix(
      desc,
      [data](std::size_t n, std::size_t k) {
        if (n >= data->size() || k >= (*data)[n].size()) return Rational(0);
        return (*data)[n][k];
      },
      [sup](std::size_t n) { return std::optional<std::size_t>(n < sup->size() ? (*sup)[n] : 0); },
      shape);
}

namespace {

Rational value_of(const json& v) {
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw Error(ErrorCode::kParse, "matrix entries must be rational strings or integers, got " + v.dump());
}

std::size_t index_of(const std::string& key) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(key, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != key.size() || v < 0) throw Error(ErrorCode::kParse, "bad row/column index '" + key + "'");
  return static_cast<std::size_t>(v);
}

std::vector<Rational> row_of(const json& r) {
  std::vector<Rational> out;
  if (!r.is_array()) throw Error(ErrorCode::kParse, "matrix row must be an array");
  for (const auto& v : r) out.push_back(value_of(v));
  return out;
}

Matrix parse(const json& j, const LambdaSeq& lambda) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw Error(ErrorCode::kParse, "matrix JSON needs a string field \"kind\"");
  }
  const std::string kind = j["kind"];
  const LambdaSeq lam = j.contains("lambda") ? LambdaSeq::parse(j["lambda"].get<std::string>()) : lambda;
  if (kind == "identity") return Matrix::identity();
  if (kind == "zero") return Matrix::zero();
  if (kind == "E") return Matrix::from_triangle(make_E(lam));
  if (kind == "Einv") return Matrix::from_triangle(make_E_inverse(lam));

  bool zero_tail = true;
  if (j.contains("tail")) {
    const std::string t = j["tail"];
    if (t == "unavailable") zero_tail = false;
    else if (t != "zero") throw Error(ErrorCode::kParse, "tail must be \"zero\" or \"unavailable\"");
  }
  std::vector<std::vector<Rational>> rows;
  auto put = [&rows](std::size_t n, std::size_t k, Rational v) {
    if (rows.size() <= n) rows.resize(n + 1);
    if (rows[n].size() <= k) rows[n].resize(k + 1);
    rows[n][k] = std::move(v);
  };
  if (kind == "dense") {
    if (!j.contains("rows") || !j["rows"].is_array()) throw Error(ErrorCode::kParse, "dense matrix needs \"rows\": [[...], ...]");
    for (const auto& r : j["rows"]) rows.push_back(row_of(r));
  } else if (kind == "band") {
    if (!j.contains("bands") || !j["bands"].is_object()) {
      throw Error(ErrorCode::kParse, "band matrix needs \"bands\": {\"<k-n>\": [...]}");
    }
    for (const auto& [key, vals] : j["bands"].items()) {
      long d = 0;
      std::size_t pos = 0;
      try {
        d = std::stol(key, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != key.size() || key.empty()) throw Error(ErrorCode::kParse, "bad band offset '" + key + "'");
      const auto v = row_of(vals);
      for (std::size_t n = 0; n < v.size(); ++n) {
        const long k = static_cast<long>(n) + d;
        if (k < 0) {
          if (!v[n].is_zero()) throw Error(ErrorCode::kParse, "band entry left of column 0");
          continue;
        }
        put(n, static_cast<std::size_t>(k), v[n]);
      }
    }
  } else if (kind == "rows") {
    if (!j.contains("rows") || !j["rows"].is_object()) {
      throw Error(ErrorCode::kParse, "rows matrix needs \"rows\": {\"<n>\": ...}");
    }
    for (const auto& [key, r] : j["rows"].items()) {
      const std::size_t n = index_of(key);
      if (rows.size() <= n) rows.resize(n + 1);
      if (r.is_array()) {
        rows[n] = row_of(r);
      } else if (r.is_object()) {
        for (const auto& [ck, v] : r.items()) put(n, index_of(ck), value_of(v));
      } else {
        throw Error(ErrorCode::kParse, "row " + key + " must be an array or an object");
      }
    }
  } else {
    throw Error(ErrorCode::kParse, "unknown matrix kind '" + kind + "'");
  }
  if (j.contains("size")) {
    const auto size = j["size"].get<std::size_t>();
    if (size < rows.size()) throw Error(ErrorCode::kParse, "\"size\" smaller than the stored rows");
    rows.resize(size);
  }
  return Matrix::from_rows(std::move(rows), zero_tail);
}

}  // namespace

Matrix Matrix::from_json_text(const std::string& text, const LambdaSeq& lambda) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("matrix JSON: ") + e.what());
  }
  try {
    return parse(j, lambda);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("matrix JSON: ") + e.what());
  }
}

Matrix Matrix::from_file(const std::string& path, const LambdaSeq& lambda) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str(), lambda);
}

}  // namespace fibla
