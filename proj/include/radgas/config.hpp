#pragma once
#include <string>

#include "radgas/stepper.hpp"

namespace radgas {

// Line-oriented `key = value` file; '#' starts a comment; unknown keys are
// rejected with their line number. Omitted keys keep the SimConfig defaults.
SimConfig parse_config_text(const std::string& text, const std::string& origin = "<string>");
SimConfig parse_config(const std::string& path);

// Emits every key in full round-trip precision; parse(emit(cfg)) == cfg.
std::string emit_config(const SimConfig& cfg);

bool config_equal(const SimConfig& a, const SimConfig& b);

const char* flux_kind_name(FluxKind k);
const char* bc_kind_name(EllipticBCKind k);
const char* perturbation_kind_name(PerturbationKind k);

} // namespace radgas
