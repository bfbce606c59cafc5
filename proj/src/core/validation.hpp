#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "core/repository.hpp"

namespace arspi {

enum class Severity { Error, Warning };

const char* severity_name(Severity severity);

/// One validation result. rule_id is drawn from the published rule catalog
/// (see rule id constants below); subject is a "kind:id"-style reference that
/// always resolves against the checked store.
struct Finding {
  Severity severity = Severity::Error;
  std::string rule_id;
  std::string subject;
  std::string message;

  friend bool operator==(const Finding&, const Finding&) = default;
  friend auto operator<=>(const Finding&, const Finding&) = default;
};

namespace rules {
inline constexpr const char* kEmptySection = "completeness.empty_section";
inline constexpr const char* kMissingKeyArtefact = "completeness.missing_key_artefact";
inline constexpr const char* kRequirementCoverage = "consistency.requirement_coverage";
inline constexpr const char* kRealisationCoverage = "consistency.realisation_coverage";
inline constexpr const char* kSharedSectionMismatch = "consistency.shared_section_mismatch";
inline constexpr const char* kLinkMatrixViolation = "consistency.link_matrix_violation";
inline constexpr const char* kDanglingEndpoint = "consistency.dangling_endpoint";
inline constexpr const char* kReleaseAlreadyShipped = "release.already_shipped";
inline constexpr const char* kShortenedIteration = "release.shortened_iteration";
}  // namespace rules

// ---------------------------------------------------------------------------
// Link kind matrix
// ---------------------------------------------------------------------------

/// Endpoint classification for the matrix: an item's kind, or Artefact for
/// whole-artefact endpoints.
enum class EndpointKind {
  Requirement,
  DesignElement,
  RealisationElement,
  Goal,
  Asset,
  Note,
  Artefact
};

const char* endpoint_kind_name(EndpointKind kind);
EndpointKind classify_endpoint(const ResolvedEndpoint& endpoint);

/// The allowed (source, target, kind) triples. Besides the catalog rows,
/// derives_from is admitted from any traceable item onto an asset item so
/// local elements can anchor to reference-process asset mirrors.
class LinkKindMatrix {
 public:
  using Triple = std::tuple<EndpointKind, EndpointKind, LinkKind>;

  static const LinkKindMatrix& instance();
  bool allows(EndpointKind source, EndpointKind target, LinkKind kind) const;
  const std::vector<Triple>& allowed() const { return allowed_; }

 private:
  LinkKindMatrix();
  std::vector<Triple> allowed_;
};

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

/// Required-but-empty sections plus key artefacts missing for the furthest
/// phase reached. Ordered by (artefact id, section key).
std::vector<Finding> check_completeness(const ProjectStore& store);

/// Empty-section findings for a single artefact; the phase-gate predicate.
std::vector<Finding> check_artefact_completeness(const ProjectStore& store,
                                                 const Artefact& artefact);

/// Tracing coverage, shared-section equality, link-kind matrix, and dangling
/// endpoints. Deterministically ordered.
std::vector<Finding> check_consistency(const ProjectStore& store);

/// Blocking findings for shipping a release out of the given iteration.
std::vector<Finding> check_release_readiness(const ProjectStore& store, int iteration_index);

/// Canonical document view of the link table: one "source kind target" line
/// per item-level link, sorted. Artefacts' RequirementsTracing sections are
/// validated against this projection.
std::vector<std::string> tracing_projection(const ProjectStore& store);

}  // namespace arspi
