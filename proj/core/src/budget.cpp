#include "gridclass/budget.hpp"

#include <cstdlib>
#include <string>

namespace gridclass {
namespace {

void override_from(const char* name, std::size_t& target) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return;
  char* end = nullptr;
  unsigned long long value = std::strtoull(raw, &end, 10);
  if (end != nullptr && *end == '\0' && value > 0) target = static_cast<std::size_t>(value);
}

void override_from(const char* name, double& target) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return;
  char* end = nullptr;
  const double value = std::strtod(raw, &end);
  if (end != nullptr && *end == '\0' && value > 0) target = value;
}

}  // namespace

Budget Budget::from_environment() {
  Budget budget;
  override_from("GRIDCLASS_MAX_STATES", budget.max_states);
  override_from("GRIDCLASS_MAX_BDD_NODES", budget.max_bdd_nodes);
  override_from("GRIDCLASS_MAX_FORMULA_NODES", budget.max_formula_nodes);
  override_from("GRIDCLASS_MAX_MODEL_SIZE", budget.max_model_size);
  override_from("GRIDCLASS_MAX_SECONDS", budget.max_seconds);
  return budget;
}

}  // namespace gridclass
