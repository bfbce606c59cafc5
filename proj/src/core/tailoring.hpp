#pragma once

#include <optional>
#include <string>

#include "core/metamodel.hpp"

namespace arspi {

class ProjectStore;

enum class ProjectScale { Small, Medium, Large };

const char* project_scale_name(ProjectScale scale);
std::optional<ProjectScale> parse_project_scale(const std::string& name);

/// The set-up questionnaire. Five fixed questions; the derivation rules are
/// documented at derive_profile.
struct QuestionnaireAnswers {
  ProjectScale project_scale = ProjectScale::Medium;
  bool preexisting_process = false;
  bool training_needed = false;
  bool process_line_based = false;
  int iteration_count_planned = 1;

  friend bool operator==(const QuestionnaireAnswers&, const QuestionnaireAnswers&) = default;
};

/// Deterministic rule table turning answers into a profile:
///   - merge_designs: small and medium projects get the unified Process
///     Design; large projects keep CPD and TPD split. Overridable via
///     merge_override.
///   - training_needed selects TrainingMaterial.
///   - process_line_based selects SPLDeltaReport.
///   - preexisting_process selects UserEvaluationPlan (there is an actual
///     process whose use can be evaluated).
TailoringProfile derive_profile(const QuestionnaireAnswers& answers,
                                std::optional<bool> merge_override = std::nullopt);

/// Write the profile into the manifest and create one empty skeleton per
/// selected support artefact. Flipping merge_designs on a store that already
/// holds design content is rejected.
void apply_profile(ProjectStore& store, const TailoringProfile& profile);

/// Merge a CPD/TPD pair into one unified PD artefact: union section tree,
/// CPD content first on shared keys, TPD-only items appended; every trace
/// link endpoint naming the CPD or TPD is retargeted to the PD. The two
/// source artefacts are removed from the store.
Artefact& merge_designs(ProjectStore& store, const std::string& cpd_id,
                        const std::string& tpd_id);

}  // namespace arspi
