#include "core/tailoring.hpp"

#include <algorithm>

#include "core/repository.hpp"

namespace arspi {

const char* project_scale_name(ProjectScale scale) {
  switch (scale) {
    case ProjectScale::Small: return "small";
    case ProjectScale::Medium: return "medium";
    case ProjectScale::Large: return "large";
  }
  return "?";
}

std::optional<ProjectScale> parse_project_scale(const std::string& name) {
  for (ProjectScale scale : {ProjectScale::Small, ProjectScale::Medium, ProjectScale::Large}) {
    if (name == project_scale_name(scale)) return scale;
  }
  return std::nullopt;
}

TailoringProfile derive_profile(const QuestionnaireAnswers& answers,
                                std::optional<bool> merge_override) {
  if (answers.iteration_count_planned < 1) {
    fail(Errc::UsageError, "iteration_count_planned must be at least 1");
  }
  TailoringProfile profile;
  profile.merge_designs = answers.project_scale != ProjectScale::Large;
  if (merge_override) profile.merge_designs = *merge_override;
  if (answers.training_needed) profile.selected_supports.insert(kSupportTrainingMaterial);
  if (answers.process_line_based) profile.selected_supports.insert(kSupportSplDeltaReport);
  if (answers.preexisting_process) profile.selected_supports.insert(kSupportUserEvaluationPlan);
  profile.strict_realisation_coverage = true;
  profile.notes = std::string("scale=") + project_scale_name(answers.project_scale) +
                  ", planned iterations=" + std::to_string(answers.iteration_count_planned);
  return profile;
}

void apply_profile(ProjectStore& store, const TailoringProfile& profile) {
  for (const std::string& support : profile.selected_supports) {
    if (!store.registry.find(support)) {
      fail(Errc::ProfileInvalid, "selected support artefact is not registered: " + support);
    }
  }
  if (profile.merge_designs != store.manifest.profile.merge_designs) {
    for (const Artefact& artefact : store.artefacts) {
      KindCode code = artefact.kind.code;
      if (code == KindCode::CPD || code == KindCode::TPD || code == KindCode::PD) {
        fail(Errc::IncompatibleRetailoring,
             "cannot switch design merging on a store already holding " +
                 artefact.kind.to_string() + " artefact " + artefact.id);
      }
    }
  }
  store.manifest.profile = profile;
  for (const std::string& support : profile.selected_supports) {
    if (store.first_support(support)) continue;
    ArtefactKind kind{KindCode::Support, support};
    store.put_artefact(new_artefact(kind, support, profile));
  }
}

namespace {

// Shared keys take the first tree's content, items of the second appended;
// keys only in the second tree are appended as whole sections.
std::vector<Section> merge_section_lists(const std::vector<Section>& primary,
                                         const std::vector<Section>& secondary) {
  std::vector<Section> out = primary;
  for (const Section& extra : secondary) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const Section& s) { return s.spec_key == extra.spec_key; });
    if (it == out.end()) {
      out.push_back(extra);
    } else {
      it->items.insert(it->items.end(), extra.items.begin(), extra.items.end());
      it->children = merge_section_lists(it->children, extra.children);
    }
  }
  return out;
}

}  // namespace

Artefact& merge_designs(ProjectStore& store, const std::string& cpd_id,
                        const std::string& tpd_id) {
  Artefact cpd = store.get_artefact(cpd_id);
  Artefact tpd = store.get_artefact(tpd_id);
  if (cpd.kind.code != KindCode::CPD) {
    fail(Errc::KindMismatch, cpd_id + " is not a CPD artefact");
  }
  if (tpd.kind.code != KindCode::TPD) {
    fail(Errc::KindMismatch, tpd_id + " is not a TPD artefact");
  }

  Artefact pd;
  pd.kind = {KindCode::PD, {}};
  pd.name = cpd.name;
  pd.version = 1;
  pd.sections = merge_section_lists(cpd.sections, tpd.sections);

  // The unified variant replaces the split pair; the profile follows.
  std::erase_if(store.artefacts,
                [&](const Artefact& a) { return a.id == cpd_id || a.id == tpd_id; });
  store.manifest.profile.merge_designs = true;
  Artefact& stored = store.put_artefact(pd);

  for (TraceLink& link : store.links) {
    if (link.source == cpd_id || link.source == tpd_id) link.source = stored.id;
    if (link.target == cpd_id || link.target == tpd_id) link.target = stored.id;
  }
  // Retargeting can collapse distinct links onto the same triple.
  std::vector<TraceLink> unique;
  for (const TraceLink& link : store.links) {
    bool seen = std::any_of(unique.begin(), unique.end(), [&](const TraceLink& u) {
      return u.source == link.source && u.target == link.target && u.kind == link.kind;
    });
    if (!seen) unique.push_back(link);
  }
  store.links = std::move(unique);

  for (Iteration& iteration : store.iterations) {
    if (iteration.produced.erase(cpd_id) + iteration.produced.erase(tpd_id) > 0) {
      iteration.produced.insert(stored.id);
    }
  }
  return stored;
}

}  // namespace arspi
