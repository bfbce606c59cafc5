#include "core/validation.hpp"

#include <algorithm>

namespace arspi {

const char* severity_name(Severity severity) {
  return severity == Severity::Error ? "error" : "warning";
}

const char* endpoint_kind_name(EndpointKind kind) {
  switch (kind) {
    case EndpointKind::Requirement: return "requirement";
    case EndpointKind::DesignElement: return "design_element";
    case EndpointKind::RealisationElement: return "realisation_element";
    case EndpointKind::Goal: return "goal";
    case EndpointKind::Asset: return "asset";
    case EndpointKind::Note: return "note";
    case EndpointKind::Artefact: return "artefact";
  }
  return "?";
}

EndpointKind classify_endpoint(const ResolvedEndpoint& endpoint) {
  if (endpoint.is_artefact) return EndpointKind::Artefact;
  switch (*endpoint.item_kind) {
    case ItemKind::Requirement: return EndpointKind::Requirement;
    case ItemKind::DesignElement: return EndpointKind::DesignElement;
    case ItemKind::RealisationElement: return EndpointKind::RealisationElement;
    case ItemKind::Goal: return EndpointKind::Goal;
    case ItemKind::Asset: return EndpointKind::Asset;
    case ItemKind::Note: return EndpointKind::Note;
  }
  return EndpointKind::Note;
}

LinkKindMatrix::LinkKindMatrix() {
  allowed_ = {
      {EndpointKind::Requirement, EndpointKind::DesignElement, LinkKind::Addresses},
      {EndpointKind::DesignElement, EndpointKind::RealisationElement, LinkKind::Realises},
      {EndpointKind::DesignElement, EndpointKind::DesignElement, LinkKind::Refines},
      {EndpointKind::Artefact, EndpointKind::Artefact, LinkKind::Shares},
      {EndpointKind::Artefact, EndpointKind::Artefact, LinkKind::DerivesFrom},
      // Local elements anchor to reference-process asset mirrors; the delta
      // closure walks these edges.
      {EndpointKind::Requirement, EndpointKind::Asset, LinkKind::DerivesFrom},
      {EndpointKind::DesignElement, EndpointKind::Asset, LinkKind::DerivesFrom},
      {EndpointKind::RealisationElement, EndpointKind::Asset, LinkKind::DerivesFrom},
      {EndpointKind::Asset, EndpointKind::Asset, LinkKind::DerivesFrom},
  };
}

const LinkKindMatrix& LinkKindMatrix::instance() {
  static LinkKindMatrix matrix;
  return matrix;
}

bool LinkKindMatrix::allows(EndpointKind source, EndpointKind target, LinkKind kind) const {
  return std::find(allowed_.begin(), allowed_.end(), Triple{source, target, kind}) !=
         allowed_.end();
}

// ---------------------------------------------------------------------------
// Helpers
// ---------------------------------------------------------------------------

namespace {

bool populated(const Section& section) {
  if (!section.items.empty()) return true;
  for (const Section& child : section.children) {
    if (populated(child)) return true;
  }
  return false;
}

void collect_empty_required(const ProjectStore& store, const Artefact& artefact,
                            const SectionSpec& spec, std::vector<Finding>& out) {
  for (const SectionSpec& child : spec.children) {
    if (!child.required) continue;
    const Section* section = artefact.find_section(child.key);
    if (!section || !populated(*section)) {
      out.push_back({Severity::Error, rules::kEmptySection,
                     "section:" + artefact.id + "/" + child.key,
                     "required section '" + child.key + "' of " + artefact.kind.to_string() +
                         " artefact '" + artefact.name + "' (" + artefact.id + ") is empty"});
    }
    if (section) collect_empty_required(store, artefact, child, out);
  }
}

struct ItemRef {
  const Artefact* artefact;
  const ContentItem* item;
};

void collect_items(const Artefact& artefact, const std::vector<Section>& sections,
                   std::vector<ItemRef>& out) {
  for (const Section& section : sections) {
    for (const ContentItem& item : section.items) out.push_back({&artefact, &item});
    collect_items(artefact, section.children, out);
  }
}

std::vector<ItemRef> all_items(const ProjectStore& store) {
  std::vector<ItemRef> out;
  for (const Artefact& artefact : store.artefacts) collect_items(artefact, artefact.sections, out);
  return out;
}

std::vector<std::string> section_texts(const Section* section) {
  std::vector<std::string> out;
  if (!section) return out;
  for (const ContentItem& item : section->items) out.push_back(item.text);
  return out;
}

/// Number of completed phases for the iteration (a phase counts once the
/// iteration has moved past it or the iteration is closed).
int phases_completed(const Iteration& iteration) {
  switch (iteration.state) {
    case IterationState::Planned:
      return 0;
    case IterationState::Running:
      return iteration.current_phase ? static_cast<int>(*iteration.current_phase) : 0;
    case IterationState::Closed:
      return iteration.shortened ? 3 : 4;
  }
  return 0;
}

bool entered_deployment(const Iteration& iteration) {
  if (iteration.state == IterationState::Closed) return !iteration.shortened;
  return iteration.state == IterationState::Running &&
         iteration.current_phase == Phase::Deployment;
}

/// Finding plus the artefact ids it concerns, for iteration-scoped filtering.
struct OwnedFinding {
  Finding finding;
  std::set<std::string> owners;  // empty = global
};

std::vector<OwnedFinding> consistency_internal(const ProjectStore& store) {
  std::vector<OwnedFinding> out;
  const TailoringProfile& profile = store.manifest.profile;
  const bool design_exists =
      store.first_of_kind(KindCode::CPD) || store.first_of_kind(KindCode::PD);
  const bool tpd_exists = store.first_of_kind(KindCode::TPD) != nullptr;
  const std::vector<ItemRef> items = all_items(store);

  auto outgoing = [&](const std::string& id, LinkKind kind) {
    int count = 0;
    for (const TraceLink& link : store.links) {
      if (link.source == id && link.kind == kind) ++count;
    }
    return count;
  };

  // (a) every requirement addresses at least one design element, once a
  // design artefact exists
  if (design_exists) {
    for (const ItemRef& ref : items) {
      if (ref.artefact->kind.code != KindCode::PRQ) continue;
      if (ref.item->kind != ItemKind::Requirement) continue;
      if (outgoing(ref.item->id, LinkKind::Addresses) == 0) {
        out.push_back({{Severity::Error, rules::kRequirementCoverage, "item:" + ref.item->id,
                        "requirement " + ref.item->id + " has no addresses link to a design element"},
                       {ref.artefact->id}});
      }
    }
  }

  // (b) every design element is realised, once a TPD exists; off under a
  // merged profile and when the strictness knob is relaxed
  if (tpd_exists && !profile.merge_designs && profile.strict_realisation_coverage) {
    for (const ItemRef& ref : items) {
      if (ref.item->kind != ItemKind::DesignElement) continue;
      if (outgoing(ref.item->id, LinkKind::Realises) == 0) {
        out.push_back({{Severity::Error, rules::kRealisationCoverage, "item:" + ref.item->id,
                        "design element " + ref.item->id + " has no realises link"},
                       {ref.artefact->id}});
      }
    }
  }

  // (c) shared sections hold equal content
  for (const Artefact& prq : store.artefacts) {
    if (prq.kind.code != KindCode::PRQ) continue;
    for (const Artefact& design : store.artefacts) {
      if (design.kind.code != KindCode::CPD && design.kind.code != KindCode::PD) continue;
      if (section_texts(prq.find_section("Goals")) != section_texts(design.find_section("Goals"))) {
        out.push_back({{Severity::Error, rules::kSharedSectionMismatch,
                        "section:" + design.id + "/Goals",
                        "Goals of " + design.kind.to_string() + " " + design.id +
                            " differ from Goals of PRQ " + prq.id},
                       {prq.id, design.id}});
      }
    }
  }
  const std::vector<std::string> projection = tracing_projection(store);
  for (const Artefact& artefact : store.artefacts) {
    const Section* tracing = artefact.find_section("RequirementsTracing");
    if (!tracing || tracing->items.empty()) continue;
    if (section_texts(tracing) != projection) {
      out.push_back({{Severity::Error, rules::kSharedSectionMismatch,
                      "section:" + artefact.id + "/RequirementsTracing",
                      "RequirementsTracing of " + artefact.id +
                          " does not match the link-table projection"},
                     {artefact.id}});
    }
  }

  // (d) + (e) the stored link table itself
  for (const TraceLink& link : store.links) {
    auto src = store.resolve_endpoint(link.source);
    auto dst = store.resolve_endpoint(link.target);
    if (!src || !dst) {
      out.push_back({{Severity::Error, rules::kDanglingEndpoint, "link:" + link.id,
                      "link " + link.id + " has a dangling endpoint (" +
                          (src ? link.target : link.source) + ")"},
                     {}});
      continue;
    }
    EndpointKind src_kind = classify_endpoint(*src);
    EndpointKind dst_kind = classify_endpoint(*dst);
    if (!LinkKindMatrix::instance().allows(src_kind, dst_kind, link.kind)) {
      out.push_back({{Severity::Error, rules::kLinkMatrixViolation, "link:" + link.id,
                      "link " + link.id + " (" + std::string(link_kind_name(link.kind)) +
                          ") violates the link kind matrix: " + endpoint_kind_name(src_kind) +
                          " -> " + endpoint_kind_name(dst_kind)},
                     {src->artefact_id, dst->artefact_id}});
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public checks
// ---------------------------------------------------------------------------

std::vector<Finding> check_artefact_completeness(const ProjectStore& store,
                                                 const Artefact& artefact) {
  std::vector<Finding> out;
  if (artefact.kind.code == KindCode::PR || artefact.kind.is_support()) return out;
  SectionSpec spec = required_sections(artefact.kind, store.manifest.profile);
  collect_empty_required(store, artefact, spec, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Finding> check_completeness(const ProjectStore& store) {
  std::vector<Finding> out;
  for (const Artefact& artefact : store.artefacts) {
    auto findings = check_artefact_completeness(store, artefact);
    out.insert(out.end(), findings.begin(), findings.end());
  }
  std::sort(out.begin(), out.end());

  int completed = 0;
  bool deployment = false;
  bool closed_full = false;
  for (const Iteration& iteration : store.iterations) {
    completed = std::max(completed, phases_completed(iteration));
    deployment = deployment || entered_deployment(iteration);
    closed_full = closed_full ||
                  (iteration.state == IterationState::Closed && !iteration.shortened);
  }
  const bool merged = store.manifest.profile.merge_designs;
  auto require_kind = [&](KindCode code, const std::string& label) {
    bool present = store.first_of_kind(code) != nullptr;
    if (!present && merged && (code == KindCode::CPD || code == KindCode::TPD)) {
      present = store.first_of_kind(KindCode::PD) != nullptr;
    }
    if (!present) {
      out.push_back({Severity::Error, rules::kMissingKeyArtefact, "artefact-kind:" + label,
                     "key artefact " + label + " is missing for the phase already reached"});
    }
  };
  if (completed >= 1) require_kind(KindCode::PRQ, "PRQ");
  if (completed >= 2) require_kind(merged ? KindCode::PD : KindCode::CPD, merged ? "PD" : "CPD");
  if (completed >= 3) require_kind(merged ? KindCode::PD : KindCode::TPD, merged ? "PD" : "TPD");
  if (deployment) require_kind(KindCode::PLC, "PLC");
  if (closed_full) require_kind(KindCode::PR, "PR");
  return out;
}

std::vector<Finding> check_consistency(const ProjectStore& store) {
  std::vector<Finding> out;
  for (OwnedFinding& owned : consistency_internal(store)) out.push_back(std::move(owned.finding));
  return out;
}

std::vector<Finding> check_release_readiness(const ProjectStore& store, int iteration_index) {
  const Iteration* iteration = nullptr;
  for (const Iteration& candidate : store.iterations) {
    if (candidate.index == iteration_index) iteration = &candidate;
  }
  if (!iteration) {
    fail(Errc::UnknownIteration, "no iteration with index " + std::to_string(iteration_index));
  }

  std::vector<Finding> out;
  for (const Finding& finding : check_completeness(store)) {
    if (finding.rule_id == rules::kMissingKeyArtefact) {
      out.push_back(finding);
      continue;
    }
    // section subjects carry the artefact id: section:<id>/<key>
    std::string id = finding.subject.substr(8, finding.subject.find('/') - 8);
    if (iteration->produced.count(id)) out.push_back(finding);
  }
  for (const OwnedFinding& owned : consistency_internal(store)) {
    bool relevant = owned.owners.empty();
    for (const std::string& owner : owned.owners) {
      relevant = relevant || iteration->produced.count(owner) > 0;
    }
    if (relevant) out.push_back(owned.finding);
  }
  if (iteration->released) {
    out.push_back({Severity::Error, rules::kReleaseAlreadyShipped,
                   "iteration:" + std::to_string(iteration_index),
                   "iteration " + std::to_string(iteration_index) +
                       " already shipped release " + *iteration->released});
  }
  if (iteration->shortened) {
    out.push_back({Severity::Warning, rules::kShortenedIteration,
                   "iteration:" + std::to_string(iteration_index),
                   "iteration " + std::to_string(iteration_index) +
                       " is shortened and has no deployment phase"});
  }
  return out;
}

std::vector<std::string> tracing_projection(const ProjectStore& store) {
  std::vector<std::string> lines;
  for (const TraceLink& link : store.links) {
    auto src = store.resolve_endpoint(link.source);
    auto dst = store.resolve_endpoint(link.target);
    if (!src || !dst) continue;
    if (src->is_artefact || dst->is_artefact) continue;
    lines.push_back(link.source + " " + link_kind_name(link.kind) + " " + link.target);
  }
  std::sort(lines.begin(), lines.end());
  return lines;
}

}  // namespace arspi
