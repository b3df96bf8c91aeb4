#include "alphaleak/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include <nlohmann/json.hpp>

#include "alphaleak/errors.hpp"

namespace alphaleak {

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidInput("InputFile", "cannot open '" + path + "'");
  }
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InvalidInput("ParseError", std::string(e.what()));
  }
  return j;
}

std::vector<double> as_vector(const json& j, const std::string& what) {
  if (!j.is_array()) {
    throw InvalidInput("ParseError", what + " must be an array of numbers");
  }
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) {
      throw InvalidInput("ParseError", what + " must be an array of numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<std::vector<double>> as_matrix(const json& j,
                                           const std::string& what) {
  if (!j.is_array()) {
    throw InvalidInput("ParseError", what + " must be an array of rows");
  }
  std::vector<std::vector<double>> out;
  out.reserve(j.size());
  for (const auto& row : j) {
    out.push_back(as_vector(row, what + " row"));
  }
  return out;
}

}  // namespace

ProbVec load_distribution(const std::string& path) {
  const json j = load_json(path);
  if (!j.contains("pmf")) {
    throw InvalidInput("ParseError", "distribution file needs a 'pmf' field");
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    for (const auto& l : j["labels"]) labels.push_back(l.get<std::string>());
  }
  return ProbVec::validate(as_vector(j["pmf"], "pmf"), std::move(labels));
}

ChannelFile load_channel(const std::string& path) {
  const json j = load_json(path);
  if (!j.contains("transition")) {
    throw InvalidInput("ParseError", "channel file needs a 'transition' field");
  }
  Channel ch = Channel::validate(as_matrix(j["transition"], "transition"));
  if (j.contains("input_pmf")) {
    ProbVec prior = ProbVec::validate(as_vector(j["input_pmf"], "input_pmf"));
    if (prior.size() != ch.input_size()) {
      throw InvalidInput("DimensionMismatch",
                         "input_pmf length != transition rows");
    }
    return {std::move(ch), std::move(prior), false};
  }
  ProbVec prior = ProbVec::uniform(ch.input_size());
  return {std::move(ch), std::move(prior), true};
}

ChannelFile load_joint(const std::string& path) {
  const json j = load_json(path);
  if (!j.contains("joint")) {
    throw InvalidInput("ParseError", "joint file needs a 'joint' field");
  }
  const auto matrix = as_matrix(j["joint"], "joint");
  if (matrix.empty() || matrix.front().empty()) {
    throw InvalidInput("EmptyVector", "joint matrix must be nonempty");
  }
  const std::size_t ny = matrix.front().size();
  double total = 0.0;
  std::vector<double> prior(matrix.size(), 0.0);
  for (std::size_t x = 0; x < matrix.size(); ++x) {
    if (matrix[x].size() != ny) {
      throw InvalidInput("DimensionMismatch", "ragged joint rows");
    }
    for (double v : matrix[x]) {
      if (!(v >= 0.0)) {
        throw InvalidInput("NegativeMass", "joint entry below zero");
      }
      prior[x] += v;
    }
    total += prior[x];
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw InvalidInput("SumOutOfTolerance",
                       "joint sums to " + std::to_string(total));
  }
  std::vector<std::vector<double>> rows(matrix.size());
  for (std::size_t x = 0; x < matrix.size(); ++x) {
    if (prior[x] > 0.0) {
      rows[x].resize(ny);
      for (std::size_t y = 0; y < ny; ++y) rows[x][y] = matrix[x][y] / prior[x];
    } else {
      rows[x].assign(ny, 1.0 / static_cast<double>(ny));
    }
  }
  return {Channel::validate(std::move(rows)),
          ProbVec::validate(std::move(prior)), false};
}

std::string serialize_distribution(const ProbVec& p) {
  json j;
  j["pmf"] = p.masses();
  if (!p.labels().empty()) j["labels"] = p.labels();
  return j.dump();
}

std::string serialize_channel(const Channel& ch, const ProbVec& input_pmf) {
  json j;
  std::vector<std::vector<double>> rows;
  for (std::size_t x = 0; x < ch.input_size(); ++x) {
    rows.push_back(ch.row(x).masses());
  }
  j["transition"] = rows;
  j["input_pmf"] = input_pmf.masses();
  return j.dump();
}

std::string format_value(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

}  // namespace alphaleak
