#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core/errors.hpp"

namespace arspi {

// ---------------------------------------------------------------------------
// Artefact kinds
// ---------------------------------------------------------------------------

enum class KindCode { PRQ, CPD, TPD, PD, PLC, PR, Support };

const char* kind_code_name(KindCode code);
std::optional<KindCode> parse_kind_code(const std::string& name);

/// A concrete artefact kind. Support artefacts carry the registry name of
/// their descriptor; key kinds leave support_name empty.
struct ArtefactKind {
  KindCode code = KindCode::PRQ;
  std::string support_name;

  bool is_support() const { return code == KindCode::Support; }
  std::string to_string() const;
  static ArtefactKind parse(const std::string& text);

  friend bool operator==(const ArtefactKind&, const ArtefactKind&) = default;
};

// ---------------------------------------------------------------------------
// Section catalog
// ---------------------------------------------------------------------------

/// Node of a kind's section structure. Keys are stable ASCII identifiers
/// derived from the catalog titles; shared_with names the other kinds whose
/// section of the same key must hold equal content.
struct SectionSpec {
  std::string key;
  std::string title;
  bool required = true;
  std::set<KindCode> shared_with;
  std::vector<SectionSpec> children;

  friend bool operator==(const SectionSpec&, const SectionSpec&) = default;
};

// ---------------------------------------------------------------------------
// Artefact content
// ---------------------------------------------------------------------------

enum class ItemKind { Goal, Requirement, DesignElement, RealisationElement, Asset, Note };

const char* item_kind_name(ItemKind kind);
std::optional<ItemKind> parse_item_kind(const std::string& name);

struct ContentItem {
  std::string id;
  ItemKind kind = ItemKind::Note;
  std::string text;

  friend bool operator==(const ContentItem&, const ContentItem&) = default;
};

struct Section {
  std::string spec_key;
  std::vector<ContentItem> items;
  std::vector<Section> children;

  friend bool operator==(const Section&, const Section&) = default;
};

struct Artefact {
  std::string id;
  ArtefactKind kind;
  std::string name;
  int version = 1;
  std::vector<Section> sections;

  Section* find_section(const std::string& spec_key);
  const Section* find_section(const std::string& spec_key) const;

  friend bool operator==(const Artefact&, const Artefact&) = default;
};

// ---------------------------------------------------------------------------
// Trace links
// ---------------------------------------------------------------------------

enum class LinkKind { Addresses, Refines, Realises, Shares, DerivesFrom };

const char* link_kind_name(LinkKind kind);
std::optional<LinkKind> parse_link_kind(const std::string& name);

/// Directed, kinded edge between content items or whole artefacts.
/// Endpoints are ids; resolution happens against the owning store.
struct TraceLink {
  std::string id;
  std::string source;
  std::string target;
  LinkKind kind = LinkKind::Addresses;

  friend bool operator==(const TraceLink&, const TraceLink&) = default;
};

// ---------------------------------------------------------------------------
// Support artefact registry
// ---------------------------------------------------------------------------

struct SupportArtefactDescriptor {
  std::string name;
  std::string description;
  bool builtin = false;

  friend bool operator==(const SupportArtefactDescriptor&,
                         const SupportArtefactDescriptor&) = default;
};

inline constexpr const char* kSupportUserEvaluationPlan = "UserEvaluationPlan";
inline constexpr const char* kSupportTrainingMaterial = "TrainingMaterial";
inline constexpr const char* kSupportSplDeltaReport = "SPLDeltaReport";

/// Per-project catalog of support artefact descriptors. Always seeded with
/// the three built-ins; user-registered descriptors extend it.
class SupportRegistry {
 public:
  SupportRegistry();

  void register_descriptor(const SupportArtefactDescriptor& descriptor);
  const SupportArtefactDescriptor* find(const std::string& name) const;
  std::vector<SupportArtefactDescriptor> list() const;
  std::size_t size() const { return entries_.size(); }

  friend bool operator==(const SupportRegistry&, const SupportRegistry&) = default;

 private:
  std::map<std::string, SupportArtefactDescriptor> entries_;
};

// ---------------------------------------------------------------------------
// Tailoring profile (consumed throughout the catalog; produced by tailoring)
// ---------------------------------------------------------------------------

struct TailoringProfile {
  bool merge_designs = false;
  std::set<std::string> selected_supports;
  bool strict_realisation_coverage = true;
  std::string notes;

  friend bool operator==(const TailoringProfile&, const TailoringProfile&) = default;
};

// ---------------------------------------------------------------------------
// Catalog operations
// ---------------------------------------------------------------------------

/// The five key kinds plus the unified PD variant, each with its section
/// structure. PR's structure is dynamic: zero required sections.
std::vector<std::pair<ArtefactKind, SectionSpec>> catalog_key_artefacts();

/// Section structure a kind must carry under the given profile. PD is only
/// available when the profile merges the two design artefacts.
SectionSpec required_sections(const ArtefactKind& kind, const TailoringProfile& profile);

/// True when the profile admits artefacts of this kind at all.
bool kind_permitted(const ArtefactKind& kind, const TailoringProfile& profile);

/// Fresh artefact with one empty section per required spec node.
/// The id is assigned by the store on insertion.
Artefact new_artefact(const ArtefactKind& kind, const std::string& name,
                      const TailoringProfile& profile);

/// True when an item of this kind may live in the given section of the given
/// artefact kind. Typed items are pinned to their home sections; goals,
/// assets, and notes go anywhere.
bool item_placement_ok(const ArtefactKind& artefact_kind, const std::string& section_key,
                       ItemKind item_kind);

}  // namespace arspi
