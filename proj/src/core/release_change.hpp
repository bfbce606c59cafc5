#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core/errors.hpp"

namespace arspi {

class ProjectStore;
struct Iteration;

// ---------------------------------------------------------------------------
// Releases
// ---------------------------------------------------------------------------

enum class ReleaseStatus { Review, Beta, ReleaseCandidate, Released };

const char* release_status_name(ReleaseStatus status);
std::optional<ReleaseStatus> parse_release_status(const std::string& name);

struct Release {
  std::string id;
  std::string version_label;
  ReleaseStatus status = ReleaseStatus::Review;
  std::set<std::string> payload;
  int iteration_index = 0;
  std::optional<std::string> parent_ref;

  friend bool operator==(const Release&, const Release&) = default;
};

// ---------------------------------------------------------------------------
// Change requests
// ---------------------------------------------------------------------------

enum class ChangeOrigin { Internal, ExternalUpdateTrigger };
enum class ChangeStatus { Submitted, Accepted, InProgress, Resolved, Rejected };

const char* change_origin_name(ChangeOrigin origin);
std::optional<ChangeOrigin> parse_change_origin(const std::string& name);
const char* change_status_name(ChangeStatus status);
std::optional<ChangeStatus> parse_change_status(const std::string& name);

struct ChangeRequest {
  std::string id;
  ChangeOrigin origin = ChangeOrigin::Internal;
  std::string title;
  std::string description;
  ChangeStatus status = ChangeStatus::Submitted;
  std::set<std::string> linked_assets;

  friend bool operator==(const ChangeRequest&, const ChangeRequest&) = default;
};

// ---------------------------------------------------------------------------
// Reference process deltas
// ---------------------------------------------------------------------------

struct DeltaReport {
  std::set<std::string> changed_assets;
  std::set<std::string> affected_local;
  std::vector<std::string> closure_edges;

  friend bool operator==(const DeltaReport&, const DeltaReport&) = default;
};

struct ReferenceProcessSnapshot {
  std::string label;
  std::map<std::string, std::string> assets;  // asset id -> content hash

  friend bool operator==(const ReferenceProcessSnapshot&,
                         const ReferenceProcessSnapshot&) = default;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Package the running iteration's results: creates the PR artefact whose
/// sections enumerate the payload and records a release in status review.
/// Requires the iteration to be in Deployment with clean release readiness.
Release& package_release(ProjectStore& store, Iteration& iteration,
                         const std::string& version_label);

/// Move a release one step along review -> beta -> release_candidate ->
/// released. Reaching released marks the iteration and publishes the release
/// as the project's Actual Process reference.
Release& promote(ProjectStore& store, const std::string& release_id);

ChangeRequest& submit_change(ProjectStore& store, ChangeOrigin origin, const std::string& title,
                             const std::string& description,
                             const std::set<std::string>& linked_assets);

enum class TriageDecision { Accept, Reject };

ChangeRequest& triage_change(ProjectStore& store, const std::string& id,
                             TriageDecision decision);

/// Diff two snapshots of the same reference process and raise one change
/// request per connected component of changed assets in the local trace
/// graph (isolated assets become singleton requests).
std::vector<ChangeRequest> ingest_update_trigger(ProjectStore& store,
                                                 const ReferenceProcessSnapshot& old_snapshot,
                                                 const ReferenceProcessSnapshot& new_snapshot);

/// Reverse reachability from the changed assets over derives_from, refines,
/// realises, and addresses links. Pure read; persisting the report into an
/// SPLDeltaReport artefact is a separate step.
DeltaReport compute_delta(const ProjectStore& store, const std::set<std::string>& changed_assets);

/// Append the report to the first SPLDeltaReport support artefact when that
/// support is selected in the profile; no-op otherwise.
void persist_delta_report(ProjectStore& store, const DeltaReport& report);

}  // namespace arspi
