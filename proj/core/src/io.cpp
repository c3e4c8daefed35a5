#include "hiring/io.hpp"

#include <fstream>

#include "hiring/error.hpp"

namespace hiring {
namespace {

using nlohmann::json;

template <typename T>
T field(const json& j, const char* name) {
  if (!j.contains(name)) throw InvalidInput(std::string("missing field \"") + name + "\"");
  try {
    return j.at(name).get<T>();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad field \"") + name + "\": " + e.what());
  }
}

Matrix<double> matrix_field(const json& j, const char* name, std::size_t cols) {
  const auto rows = field<std::vector<std::vector<double>>>(j, name);
  Matrix<double> m(rows.size(), cols, 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw InvalidInput(std::string("rows of \"") + name + "\" must have k entries");
    }
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = rows[i][c];
  }
  return m;
}

json matrix_json(const Matrix<double>& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto row = m.row(i);
    out.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return out;
}

std::vector<double> as_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

}  // namespace

std::string model_name(const AnyInstance& instance) {
  switch (instance.index()) {
    case 0: return "ptk";
    case 1: return "seq";
    case 2: return "par";
    default: return "sim";
  }
}

AnyInstance instance_from_json(const json& j) {
  const auto model = field<std::string>(j, "model");
  const int k = field<int>(j, "k");
  if (model == "ptk") {
    std::vector<FiniteDistribution> dists;
    for (const auto& c : field<json>(j, "candidates")) {
      dists.emplace_back(field<std::vector<double>>(c, "support"),
                         field<std::vector<double>>(c, "probs"));
    }
    return ProbeTopKInstance(k, field<int>(j, "T"), std::move(dists));
  }
  if (model == "seq") {
    return SeqInstance(k, field<int>(j, "T"), field<std::vector<double>>(j, "p"),
                       field<std::vector<double>>(j, "v"));
  }
  if (model == "par") {
    if (k < 1) throw InvalidInput("k must be at least 1");
    return ParInstance(k, field<int>(j, "T"), matrix_field(j, "p", k), matrix_field(j, "v", k));
  }
  if (model == "sim") {
    auto p = field<std::vector<double>>(j, "p");
    auto v = field<std::vector<double>>(j, "v");
    if (j.contains("cost")) return SimInstance::from_raw(k, std::move(p), std::move(v), field<double>(j, "cost"));
    return SimInstance(k, std::move(p), std::move(v));
  }
  throw InvalidInput("unknown model \"" + model + "\"");
}

AnyInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidInput("malformed JSON in " + path.string() + ": " + e.what());
  }
  return instance_from_json(j);
}

json to_json(const ProbeTopKInstance& instance) {
  json candidates = json::array();
  for (const auto& d : instance.distributions()) {
    candidates.push_back({{"support", as_vector(d.support())}, {"probs", as_vector(d.probs())}});
  }
  return {{"model", "ptk"}, {"k", instance.k()}, {"T", instance.T()}, {"candidates", candidates}};
}

json to_json(const SeqInstance& instance) {
  return {{"model", "seq"},
          {"k", instance.k()},
          {"T", instance.T()},
          {"p", as_vector(instance.p())},
          {"v", as_vector(instance.v())}};
}

json to_json(const ParInstance& instance) {
  return {{"model", "par"},
          {"k", instance.k()},
          {"T", instance.T()},
          {"p", matrix_json(instance.p())},
          {"v", matrix_json(instance.v())}};
}

json to_json(const SimInstance& instance) {
  json j = {{"model", "sim"}, {"k", instance.k()}, {"p", as_vector(instance.p())}};
  if (instance.cost() != 1.0) {
    j["v"] = as_vector(instance.raw_v());
    j["cost"] = instance.cost();
  } else {
    j["v"] = as_vector(instance.v());
  }
  return j;
}

json to_json(const AnyInstance& instance) {
  return std::visit([](const auto& x) { return to_json(x); }, instance);
}

json to_json(const PtkLpSolution& sol) {
  return {{"objective", sol.objective}, {"y", sol.y}, {"x", sol.x}};
}

json to_json(const SeqLpSolution& sol) { return {{"objective", sol.objective}, {"y", sol.y}}; }

json to_json(const ParLpSolution& sol) {
  return {{"objective", sol.objective}, {"y", matrix_json(sol.y)}};
}

json to_json(const SimLpSolution& sol) {
  return {{"objective", sol.objective},
          {"y", sol.y},
          {"z", sol.z},
          {"total_mass", sol.total_mass},
          {"high_value_overflow", sol.high_value_overflow}};
}

json to_json(const CommittedOrderPolicy& policy) {
  return {{"order", policy.order},
          {"accept_prob", policy.accept_prob},
          {"k", policy.k},
          {"T", policy.T}};
}

json to_json(const OfferLists& lists) { return {{"lists", lists.lists}}; }

json to_json(const OfferProbabilities& offers) {
  return {{"y_prime", offers.y_prime}, {"kappa", offers.kappa}, {"s", offers.s}};
}

json to_json(const EvalResult& result) {
  json j = {{"mean", result.mean},
            {"half_width", result.half_width},
            {"replications", result.replications}};
  j["seed"] = result.seed ? json(*result.seed) : json(nullptr);
  return j;
}

CommittedOrderPolicy committed_policy_from_json(const json& j) {
  CommittedOrderPolicy p;
  p.order = field<std::vector<int>>(j, "order");
  p.accept_prob = field<std::vector<std::vector<double>>>(j, "accept_prob");
  p.k = field<int>(j, "k");
  p.T = field<int>(j, "T");
  return p;
}

OfferLists offer_lists_from_json(const json& j) {
  return {field<std::vector<std::vector<int>>>(j, "lists")};
}

OfferProbabilities offer_probabilities_from_json(const json& j) {
  OfferProbabilities o;
  o.y_prime = field<std::vector<double>>(j, "y_prime");
  if (j.contains("kappa")) o.kappa = field<double>(j, "kappa");
  if (j.contains("s")) o.s = field<double>(j, "s");
  return o;
}

}  // namespace hiring
