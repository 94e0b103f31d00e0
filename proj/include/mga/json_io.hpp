#pragma once

#include <vector>

#include "json.hpp"

#include "mga/model.hpp"
#include "mga/smtlib.hpp"

namespace mga {

// Integers are JSON numbers when they fit in int64, decimal strings
// otherwise. Functions are {"default": d, "exceptions": [[k, v], ...]} with
// keys ascending.
nlohmann::json func_to_json(const FuncValue& f);
FuncValue func_from_json(const nlohmann::json& j);
Int int_from_json(const nlohmann::json& j);

// One flat object keyed by symbol name, restricted to `decls`.
nlohmann::json model_to_json(const Model& m, const std::vector<Declaration>& decls);
// Unknown keys are ignored; missing symbols stay unassigned.
// Throws std::invalid_argument on ill-typed values.
Model model_from_json(const nlohmann::json& j, const std::vector<Declaration>& decls);

// Every symbol in the model, for transcripts.
nlohmann::json model_to_json(const Model& m);
Model model_from_json(const nlohmann::json& j);

}  // namespace mga
