#include "core/metamodel.hpp"

#include <algorithm>

namespace arspi {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::Ok: return "Ok";
    case Errc::KindNotPermitted: return "KindNotPermitted";
    case Errc::DuplicateName: return "DuplicateName";
    case Errc::BuiltinOverwrite: return "BuiltinOverwrite";
    case Errc::PathOccupied: return "PathOccupied";
    case Errc::ProfileInvalid: return "ProfileInvalid";
    case Errc::SchemaMismatch: return "SchemaMismatch";
    case Errc::CorruptFile: return "CorruptFile";
    case Errc::UnknownId: return "UnknownId";
    case Errc::DanglingEndpoint: return "DanglingEndpoint";
    case Errc::KindMatrixViolation: return "KindMatrixViolation";
    case Errc::PlacementViolation: return "PlacementViolation";
    case Errc::IncompatibleRetailoring: return "IncompatibleRetailoring";
    case Errc::KindMismatch: return "KindMismatch";
    case Errc::IterationAlreadyRunning: return "IterationAlreadyRunning";
    case Errc::IterationNotRunning: return "IterationNotRunning";
    case Errc::UnknownIteration: return "UnknownIteration";
    case Errc::UnknownChange: return "UnknownChange";
    case Errc::ChangeNotAccepted: return "ChangeNotAccepted";
    case Errc::GateNotSatisfied: return "GateNotSatisfied";
    case Errc::ReleaseMissing: return "ReleaseMissing";
    case Errc::PlcMissing: return "PlcMissing";
    case Errc::CountMismatch: return "CountMismatch";
    case Errc::NotReady: return "NotReady";
    case Errc::WrongPhase: return "WrongPhase";
    case Errc::AlreadyReleased: return "AlreadyReleased";
    case Errc::MissingLinkedAssets: return "MissingLinkedAssets";
    case Errc::InvalidTriageState: return "InvalidTriageState";
    case Errc::SnapshotMismatch: return "SnapshotMismatch";
    case Errc::EmptyChangeSet: return "EmptyChangeSet";
    case Errc::LockTimeout: return "LockTimeout";
    case Errc::UsageError: return "UsageError";
  }
  return "Unknown";
}

const char* kind_code_name(KindCode code) {
  switch (code) {
    case KindCode::PRQ: return "PRQ";
    case KindCode::CPD: return "CPD";
    case KindCode::TPD: return "TPD";
    case KindCode::PD: return "PD";
    case KindCode::PLC: return "PLC";
    case KindCode::PR: return "PR";
    case KindCode::Support: return "SUPPORT";
  }
  return "?";
}

std::optional<KindCode> parse_kind_code(const std::string& name) {
  for (KindCode code : {KindCode::PRQ, KindCode::CPD, KindCode::TPD, KindCode::PD,
                        KindCode::PLC, KindCode::PR, KindCode::Support}) {
    if (name == kind_code_name(code)) return code;
  }
  return std::nullopt;
}

std::string ArtefactKind::to_string() const {
  if (code == KindCode::Support) return std::string("SUPPORT:") + support_name;
  return kind_code_name(code);
}

ArtefactKind ArtefactKind::parse(const std::string& text) {
  if (text.rfind("SUPPORT:", 0) == 0) {
    std::string name = text.substr(8);
    if (name.empty()) fail(Errc::UsageError, "support kind needs a name: SUPPORT:<name>");
    return {KindCode::Support, name};
  }
  auto code = parse_kind_code(text);
  if (!code || *code == KindCode::Support) {
    fail(Errc::UsageError, "unknown artefact kind: " + text);
  }
  return {*code, {}};
}

const char* item_kind_name(ItemKind kind) {
  switch (kind) {
    case ItemKind::Goal: return "goal";
    case ItemKind::Requirement: return "requirement";
    case ItemKind::DesignElement: return "design_element";
    case ItemKind::RealisationElement: return "realisation_element";
    case ItemKind::Asset: return "asset";
    case ItemKind::Note: return "note";
  }
  return "?";
}

std::optional<ItemKind> parse_item_kind(const std::string& name) {
  for (ItemKind kind : {ItemKind::Goal, ItemKind::Requirement, ItemKind::DesignElement,
                        ItemKind::RealisationElement, ItemKind::Asset, ItemKind::Note}) {
    if (name == item_kind_name(kind)) return kind;
  }
  return std::nullopt;
}

const char* link_kind_name(LinkKind kind) {
  switch (kind) {
    case LinkKind::Addresses: return "addresses";
    case LinkKind::Refines: return "refines";
    case LinkKind::Realises: return "realises";
    case LinkKind::Shares: return "shares";
    case LinkKind::DerivesFrom: return "derives_from";
  }
  return "?";
}

std::optional<LinkKind> parse_link_kind(const std::string& name) {
  for (LinkKind kind : {LinkKind::Addresses, LinkKind::Refines, LinkKind::Realises,
                        LinkKind::Shares, LinkKind::DerivesFrom}) {
    if (name == link_kind_name(kind)) return kind;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Section lookup
// ---------------------------------------------------------------------------

namespace {

Section* find_section_in(std::vector<Section>& sections, const std::string& key) {
  for (Section& section : sections) {
    if (section.spec_key == key) return &section;
    if (Section* hit = find_section_in(section.children, key)) return hit;
  }
  return nullptr;
}

}  // namespace

Section* Artefact::find_section(const std::string& spec_key) {
  return find_section_in(sections, spec_key);
}

const Section* Artefact::find_section(const std::string& spec_key) const {
  return find_section_in(const_cast<std::vector<Section>&>(sections), spec_key);
}

// ---------------------------------------------------------------------------
// Support registry
// ---------------------------------------------------------------------------

SupportRegistry::SupportRegistry() {
  entries_[kSupportUserEvaluationPlan] = {
      kSupportUserEvaluationPlan,
      "Evaluates the actual use of a process with the process consumers.", true};
  entries_[kSupportTrainingMaterial] = {
      kSupportTrainingMaterial,
      "Material to train the process consumers, per stakeholder group and release.", true};
  entries_[kSupportSplDeltaReport] = {
      kSupportSplDeltaReport,
      "Analyses deviations of a process-line variant from its base process.", true};
}

void SupportRegistry::register_descriptor(const SupportArtefactDescriptor& descriptor) {
  auto it = entries_.find(descriptor.name);
  if (it != entries_.end()) {
    if (it->second.builtin) {
      fail(Errc::BuiltinOverwrite, "cannot overwrite built-in support artefact: " + descriptor.name);
    }
    fail(Errc::DuplicateName, "support artefact already registered: " + descriptor.name);
  }
  SupportArtefactDescriptor stored = descriptor;
  stored.builtin = false;
  entries_[descriptor.name] = stored;
}

const SupportArtefactDescriptor* SupportRegistry::find(const std::string& name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<SupportArtefactDescriptor> SupportRegistry::list() const {
  std::vector<SupportArtefactDescriptor> out;
  out.reserve(entries_.size());
  for (const auto& [name, descriptor] : entries_) out.push_back(descriptor);
  return out;
}

// ---------------------------------------------------------------------------
// Catalog data
// ---------------------------------------------------------------------------

namespace {

SectionSpec leaf(std::string key, std::string title, std::set<KindCode> shared = {}) {
  SectionSpec spec;
  spec.key = std::move(key);
  spec.title = std::move(title);
  spec.shared_with = std::move(shared);
  return spec;
}

SectionSpec group(std::string key, std::string title, std::vector<SectionSpec> children,
                  std::set<KindCode> shared = {}) {
  SectionSpec spec = leaf(std::move(key), std::move(title), std::move(shared));
  spec.children = std::move(children);
  return spec;
}

SectionSpec root(KindCode code, std::vector<SectionSpec> children) {
  SectionSpec spec;
  spec.key = kind_code_name(code);
  spec.title = kind_code_name(code);
  spec.children = std::move(children);
  return spec;
}

SectionSpec prq_tree() {
  return root(KindCode::PRQ,
              {leaf("Goals", "Goals", {KindCode::CPD, KindCode::PD}),
               leaf("StakeholdersAndRoles", "Stakeholders and Roles"),
               leaf("Requirements", "Requirements"),
               leaf("OverallProcessDraft", "Overall Process Draft"),
               leaf("TechnicalInfrastructure", "Technical Infrastructure"),
               leaf("BasicConditions", "Basic Conditions")});
}

std::vector<SectionSpec> cpd_children(KindCode goals_peer, KindCode tracing_peer) {
  return {leaf("Goals", "Goals", {goals_peer}),
          leaf("Principles", "Principles"),
          group("PlannedAdaptations", "Planned Adaptations",
                {leaf("OrganisationAndRoles", "Organisation and Roles"),
                 leaf("Artefacts", "Artefacts"),
                 leaf("Processes", "Processes")}),
          group("AdditionalRequirements", "Additional Requirements",
                {leaf("Tailoring", "Tailoring"),
                 leaf("ProcessDocumentation", "Process Documentation"),
                 leaf("SupportingMaterial", "Supporting Material")}),
          leaf("RequirementsTracing", "Requirements Tracing", {tracing_peer})};
}

SectionSpec cpd_tree() {
  return root(KindCode::CPD, cpd_children(KindCode::PRQ, KindCode::TPD));
}

SectionSpec tpd_tree() {
  auto children = cpd_children(KindCode::PRQ, KindCode::CPD);
  children[0].shared_with.clear();  // Goals sharing is anchored at PRQ<->CPD
  children.push_back(
      leaf("LogicalAndPhysicalModelOrganisation", "Logical and Physical Model Organisation"));
  return root(KindCode::TPD, std::move(children));
}

SectionSpec plc_tree() {
  return root(KindCode::PLC,
              {leaf("Training", "Training"),
               leaf("DeploymentAndFurtherDevelopment", "Deployment and Further Development"),
               leaf("MeasurementAndEvaluation", "Measurement and Evaluation"),
               leaf("ChangeManagement", "Change Management")});
}

SectionSpec pr_tree() { return root(KindCode::PR, {}); }

void strip_merged_kinds(SectionSpec& spec) {
  spec.shared_with.erase(KindCode::CPD);
  spec.shared_with.erase(KindCode::TPD);
  for (SectionSpec& child : spec.children) strip_merged_kinds(child);
}

void union_into(std::vector<SectionSpec>& base, const std::vector<SectionSpec>& extra) {
  for (const SectionSpec& spec : extra) {
    auto it = std::find_if(base.begin(), base.end(),
                           [&](const SectionSpec& s) { return s.key == spec.key; });
    if (it == base.end()) {
      base.push_back(spec);
    } else {
      union_into(it->children, spec.children);
    }
  }
}

// PD = CPD union TPD with shared keys appearing once; references to the
// merged-away kinds are dropped from shared_with.
SectionSpec pd_tree() {
  SectionSpec merged = cpd_tree();
  merged.key = kind_code_name(KindCode::PD);
  merged.title = merged.key;
  union_into(merged.children, tpd_tree().children);
  strip_merged_kinds(merged);
  return merged;
}

}  // namespace

std::vector<std::pair<ArtefactKind, SectionSpec>> catalog_key_artefacts() {
  return {{{KindCode::PRQ, {}}, prq_tree()},
          {{KindCode::CPD, {}}, cpd_tree()},
          {{KindCode::TPD, {}}, tpd_tree()},
          {{KindCode::PLC, {}}, plc_tree()},
          {{KindCode::PR, {}}, pr_tree()},
          {{KindCode::PD, {}}, pd_tree()}};
}

bool kind_permitted(const ArtefactKind& kind, const TailoringProfile& profile) {
  switch (kind.code) {
    case KindCode::PD:
      return profile.merge_designs;
    case KindCode::CPD:
    case KindCode::TPD:
      return !profile.merge_designs;
    case KindCode::Support:
      return !kind.support_name.empty();
    default:
      return true;
  }
}

SectionSpec required_sections(const ArtefactKind& kind, const TailoringProfile& profile) {
  if (!kind_permitted(kind, profile)) {
    fail(Errc::KindNotPermitted,
         kind.to_string() + " is not permitted under this tailoring profile");
  }
  switch (kind.code) {
    case KindCode::PRQ: return prq_tree();
    case KindCode::CPD: return cpd_tree();
    case KindCode::TPD: return tpd_tree();
    case KindCode::PD: return pd_tree();
    case KindCode::PLC: return plc_tree();
    case KindCode::PR: return pr_tree();
    case KindCode::Support: {
      SectionSpec spec;
      spec.key = kind.to_string();
      spec.title = kind.support_name;
      return spec;  // support artefacts are free-form
    }
  }
  fail(Errc::UsageError, "unreachable kind");
}

namespace {

Section build_section(const SectionSpec& spec) {
  Section section;
  section.spec_key = spec.key;
  for (const SectionSpec& child : spec.children) {
    section.children.push_back(build_section(child));
  }
  return section;
}

}  // namespace

Artefact new_artefact(const ArtefactKind& kind, const std::string& name,
                      const TailoringProfile& profile) {
  SectionSpec tree = required_sections(kind, profile);
  Artefact artefact;
  artefact.kind = kind;
  artefact.name = name;
  artefact.version = 1;
  for (const SectionSpec& child : tree.children) {
    artefact.sections.push_back(build_section(child));
  }
  return artefact;
}

bool item_placement_ok(const ArtefactKind& artefact_kind, const std::string& section_key,
                       ItemKind item_kind) {
  static const std::set<std::string> design_sections = {
      "PlannedAdaptations", "OrganisationAndRoles", "Artefacts", "Processes"};
  switch (item_kind) {
    case ItemKind::Requirement:
      return artefact_kind.code == KindCode::PRQ && section_key == "Requirements";
    case ItemKind::DesignElement:
      return (artefact_kind.code == KindCode::CPD || artefact_kind.code == KindCode::PD) &&
             design_sections.count(section_key) > 0;
    case ItemKind::RealisationElement:
      return (artefact_kind.code == KindCode::TPD || artefact_kind.code == KindCode::PD) &&
             section_key == "LogicalAndPhysicalModelOrganisation";
    default:
      return true;
  }
}

}  // namespace arspi
