#include "core/json_io.hpp"

#include <string>

#include "json.hpp"

namespace abw {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
  json parsed = json::parse(text, nullptr, false);
  if (parsed.is_discarded()) {
    fail(ErrorCode::Parse, "malformed JSON document");
  }
  return parsed;
}

const json& require_field(const json& object, const char* name) {
  if (!object.is_object()) {
    fail(ErrorCode::Parse, "top-level value must be an object");
  }
  const auto it = object.find(name);
  if (it == object.end()) {
    fail(ErrorCode::Parse, std::string(name) + ": missing field");
  }
  return *it;
}

int require_positive_int(const json& object, const char* name) {
  const json& field = require_field(object, name);
  if (!field.is_number_integer()) {
    fail(ErrorCode::Parse, std::string(name) + ": expected an integer");
  }
  const long long value = field.get<long long>();
  if (value < 1) {
    fail(ErrorCode::Parse,
         std::string(name) + ": must be >= 1, got " + std::to_string(value));
  }
  return static_cast<int>(value);
}

Eigen::VectorXd require_vector(const json& object, const char* name,
                               Eigen::Index size) {
  const json& field = require_field(object, name);
  if (!field.is_array()) {
    fail(ErrorCode::Parse, std::string(name) + ": expected an array");
  }
  if (static_cast<Eigen::Index>(field.size()) != size) {
    fail(ErrorCode::Parse, std::string(name) + ": expected " +
                               std::to_string(size) + " entries, got " +
                               std::to_string(field.size()));
  }
  Eigen::VectorXd out(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    if (!field[i].is_number()) {
      fail(ErrorCode::Parse, std::string(name) + "[" + std::to_string(i) +
                                 "]: expected a number");
    }
    out(i) = field[i].get<double>();
  }
  return out;
}

}  // namespace

GaussianProcess process_from_json(const std::string& text) {
  const json doc = parse(text);
  const int d = require_positive_int(doc, "d");
  const int steps = require_positive_int(doc, "T");
  const Eigen::Index n = static_cast<Eigen::Index>(d) * steps;

  const Eigen::VectorXd mean = require_vector(doc, "mean", n);

  const json& rows = require_field(doc, "L");
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n) {
    fail(ErrorCode::Parse,
         "L: expected " + std::to_string(n) + " rows, got " +
             std::to_string(rows.is_array() ? rows.size() : 0));
  }
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      fail(ErrorCode::Parse, "L[" + std::to_string(i) + "]: expected " +
                                 std::to_string(n) + " entries, got " +
                                 std::to_string(row.is_array() ? row.size()
                                                               : 0));
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!row[j].is_number()) {
        fail(ErrorCode::Parse, "L[" + std::to_string(i) + "][" +
                                   std::to_string(j) +
                                   "]: expected a number");
      }
      m(i, j) = row[j].get<double>();
    }
  }
  // Block structure check with a field-level message before wrapping.
  for (int t = 0; t < steps; ++t) {
    for (int s = t + 1; s < steps; ++s) {
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          if (m(t * d + i, s * d + j) != 0.0) {
            fail(ErrorCode::Parse,
                 "L[" + std::to_string(t * d + i) + "][" +
                     std::to_string(s * d + j) +
                     "]: upper-block entry must be 0");
          }
        }
      }
    }
  }
  return GaussianProcess(mean, LowerBlockFactor::from_matrix(d, m));
}

std::string process_to_json(const GaussianProcess& process) {
  const LowerBlockFactor& factor = process.factor;
  json doc;
  doc["d"] = factor.dim();
  doc["T"] = factor.steps();
  doc["mean"] = std::vector<double>(
      process.mean.data(), process.mean.data() + process.mean.size());
  json rows = json::array();
  for (Eigen::Index i = 0; i < factor.size(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < factor.size(); ++j) {
      row.push_back(factor.matrix()(i, j));
    }
    rows.push_back(std::move(row));
  }
  doc["L"] = std::move(rows);
  return doc.dump(2) + "\n";
}

Ar1Spec ar1_from_json(const std::string& text) {
  const json doc = parse(text);
  const json& alphas = require_field(doc, "alphas");
  if (!alphas.is_array() || alphas.empty()) {
    fail(ErrorCode::Parse, "alphas: expected a nonempty array");
  }
  const Eigen::Index steps = static_cast<Eigen::Index>(alphas.size());
  Ar1Spec spec;
  spec.alphas = require_vector(doc, "alphas", steps);
  spec.sigmas = require_vector(doc, "sigmas", steps);
  return spec;
}

}  // namespace abw
