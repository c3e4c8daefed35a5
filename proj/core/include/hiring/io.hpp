#pragma once

// JSON encoding of instances, LP solutions, policies and evaluation results.

#include <filesystem>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "hiring/eval.hpp"
#include "hiring/instances.hpp"
#include "hiring/lp.hpp"
#include "hiring/policy_types.hpp"

namespace hiring {

using AnyInstance = std::variant<ProbeTopKInstance, SeqInstance, ParInstance, SimInstance>;

/// "ptk", "seq", "par" or "sim".
std::string model_name(const AnyInstance& instance);

AnyInstance instance_from_json(const nlohmann::json& j);
AnyInstance load_instance(const std::filesystem::path& path);

nlohmann::json to_json(const ProbeTopKInstance& instance);
nlohmann::json to_json(const SeqInstance& instance);
nlohmann::json to_json(const ParInstance& instance);
nlohmann::json to_json(const SimInstance& instance);
nlohmann::json to_json(const AnyInstance& instance);

nlohmann::json to_json(const PtkLpSolution& sol);
nlohmann::json to_json(const SeqLpSolution& sol);
nlohmann::json to_json(const ParLpSolution& sol);
nlohmann::json to_json(const SimLpSolution& sol);

nlohmann::json to_json(const CommittedOrderPolicy& policy);
nlohmann::json to_json(const OfferLists& lists);
nlohmann::json to_json(const OfferProbabilities& offers);
nlohmann::json to_json(const EvalResult& result);

CommittedOrderPolicy committed_policy_from_json(const nlohmann::json& j);
OfferLists offer_lists_from_json(const nlohmann::json& j);
OfferProbabilities offer_probabilities_from_json(const nlohmann::json& j);

}  // namespace hiring
