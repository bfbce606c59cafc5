#include "core/release_change.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "core/json_codec.hpp"
#include "core/repository.hpp"
#include "core/validation.hpp"

namespace arspi {

const char* release_status_name(ReleaseStatus status) {
  switch (status) {
    case ReleaseStatus::Review: return "review";
    case ReleaseStatus::Beta: return "beta";
    case ReleaseStatus::ReleaseCandidate: return "release_candidate";
    case ReleaseStatus::Released: return "released";
  }
  return "?";
}

std::optional<ReleaseStatus> parse_release_status(const std::string& name) {
  for (ReleaseStatus status : {ReleaseStatus::Review, ReleaseStatus::Beta,
                               ReleaseStatus::ReleaseCandidate, ReleaseStatus::Released}) {
    if (name == release_status_name(status)) return status;
  }
  return std::nullopt;
}

const char* change_origin_name(ChangeOrigin origin) {
  return origin == ChangeOrigin::Internal ? "internal" : "external_update_trigger";
}

std::optional<ChangeOrigin> parse_change_origin(const std::string& name) {
  if (name == "internal") return ChangeOrigin::Internal;
  if (name == "external_update_trigger") return ChangeOrigin::ExternalUpdateTrigger;
  return std::nullopt;
}

const char* change_status_name(ChangeStatus status) {
  switch (status) {
    case ChangeStatus::Submitted: return "submitted";
    case ChangeStatus::Accepted: return "accepted";
    case ChangeStatus::InProgress: return "in_progress";
    case ChangeStatus::Resolved: return "resolved";
    case ChangeStatus::Rejected: return "rejected";
  }
  return "?";
}

std::optional<ChangeStatus> parse_change_status(const std::string& name) {
  for (ChangeStatus status : {ChangeStatus::Submitted, ChangeStatus::Accepted,
                              ChangeStatus::InProgress, ChangeStatus::Resolved,
                              ChangeStatus::Rejected}) {
    if (name == change_status_name(status)) return status;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Releases
// ---------------------------------------------------------------------------

Release& package_release(ProjectStore& store, Iteration& iteration,
                         const std::string& version_label) {
  if (iteration.state != IterationState::Running ||
      iteration.current_phase != Phase::Deployment) {
    fail(Errc::WrongPhase, "releases are packaged in the Deployment phase");
  }
  auto findings = check_release_readiness(store, iteration.index);
  std::string blocking;
  for (const Finding& finding : findings) {
    if (finding.severity == Severity::Error) blocking += "\n  " + finding.message;
  }
  if (!blocking.empty()) {
    fail(Errc::NotReady, "iteration " + std::to_string(iteration.index) +
                             " is not ready for release:" + blocking);
  }

  Artefact& pr = store.put_artefact(
      new_artefact({KindCode::PR, {}}, version_label, store.manifest.profile));

  std::set<std::string> payload = iteration.produced;
  payload.insert(pr.id);
  if (const Artefact* plc = store.first_of_kind(KindCode::PLC)) payload.insert(plc->id);
  for (const std::string& support : store.manifest.profile.selected_supports) {
    if (const Artefact* artefact = store.first_support(support)) payload.insert(artefact->id);
  }

  // The results shipped in this iteration dynamically define the PR's body.
  for (const std::string& id : payload) {
    if (id == pr.id) continue;
    const Artefact& entry = store.get_artefact(id);
    store.add_item(pr.id, "Contents", ItemKind::Asset,
                   id + " " + entry.kind.to_string() + " " + entry.name);
  }

  Release release;
  release.id = store.next_release_id();
  release.version_label = version_label;
  release.status = ReleaseStatus::Review;
  release.payload = payload;
  release.iteration_index = iteration.index;
  release.parent_ref = store.manifest.actual_process_ref;
  store.releases.push_back(release);
  return store.releases.back();
}

Release& promote(ProjectStore& store, const std::string& release_id) {
  Release* release = store.find_release(release_id);
  if (!release) fail(Errc::UnknownId, "no release with id " + release_id);
  if (release->status == ReleaseStatus::Released) {
    fail(Errc::AlreadyReleased, "release " + release_id + " is already released");
  }
  release->status = static_cast<ReleaseStatus>(static_cast<int>(release->status) + 1);
  if (release->status == ReleaseStatus::Released) {
    if (Iteration* iteration = store.find_iteration(release->iteration_index)) {
      iteration->released = release->id;
    }
    store.manifest.actual_process_ref = release->id;
  }
  return *release;
}

// ---------------------------------------------------------------------------
// Change requests
// ---------------------------------------------------------------------------

ChangeRequest& submit_change(ProjectStore& store, ChangeOrigin origin, const std::string& title,
                             const std::string& description,
                             const std::set<std::string>& linked_assets) {
  if (origin == ChangeOrigin::ExternalUpdateTrigger && linked_assets.empty()) {
    fail(Errc::MissingLinkedAssets,
         "update-trigger changes must name the changed upstream assets");
  }
  ChangeRequest change;
  change.id = store.next_change_id();
  change.origin = origin;
  change.title = title;
  change.description = description;
  change.status = ChangeStatus::Submitted;
  change.linked_assets = linked_assets;
  store.changes.push_back(change);
  return store.changes.back();
}

ChangeRequest& triage_change(ProjectStore& store, const std::string& id,
                             TriageDecision decision) {
  ChangeRequest* change = store.find_change(id);
  if (!change) fail(Errc::UnknownChange, "no change request with id " + id);
  if (change->status != ChangeStatus::Submitted) {
    fail(Errc::InvalidTriageState, "change " + id + " is " +
                                       change_status_name(change->status) +
                                       "; only submitted changes can be triaged");
  }
  change->status =
      decision == TriageDecision::Accept ? ChangeStatus::Accepted : ChangeStatus::Rejected;
  return *change;
}

std::vector<ChangeRequest> ingest_update_trigger(ProjectStore& store,
                                                 const ReferenceProcessSnapshot& old_snapshot,
                                                 const ReferenceProcessSnapshot& new_snapshot) {
  if (old_snapshot.label != new_snapshot.label) {
    fail(Errc::SnapshotMismatch, "snapshots describe different reference processes: '" +
                                     old_snapshot.label + "' vs '" + new_snapshot.label + "'");
  }
  std::set<std::string> changed;
  for (const auto& [id, hash] : old_snapshot.assets) {
    auto it = new_snapshot.assets.find(id);
    if (it == new_snapshot.assets.end() || it->second != hash) changed.insert(id);
  }
  for (const auto& [id, hash] : new_snapshot.assets) {
    if (!old_snapshot.assets.count(id)) changed.insert(id);
  }
  if (changed.empty()) return {};

  // Group the changed assets by connected component of the local trace graph
  // (undirected); assets unknown to the graph stay singletons.
  std::map<std::string, std::vector<std::string>> adjacency;
  for (const TraceLink& link : store.links) {
    adjacency[link.source].push_back(link.target);
    adjacency[link.target].push_back(link.source);
  }
  std::set<std::string> unassigned = changed;
  std::vector<std::set<std::string>> groups;
  while (!unassigned.empty()) {
    std::string seed = *unassigned.begin();
    std::set<std::string> component{seed};
    std::deque<std::string> queue{seed};
    while (!queue.empty()) {
      std::string node = queue.front();
      queue.pop_front();
      for (const std::string& neighbour : adjacency[node]) {
        if (component.insert(neighbour).second) queue.push_back(neighbour);
      }
    }
    std::set<std::string> group;
    for (const std::string& asset : unassigned) {
      if (component.count(asset)) group.insert(asset);
    }
    for (const std::string& asset : group) unassigned.erase(asset);
    groups.push_back(group);
  }

  std::vector<ChangeRequest> created;
  for (const std::set<std::string>& group : groups) {
    std::string description = "Changed upstream assets:";
    for (const std::string& asset : group) description += " " + asset;
    ChangeRequest& change = submit_change(
        store, ChangeOrigin::ExternalUpdateTrigger,
        "Upstream update of " + new_snapshot.label + " (" + *group.begin() +
            (group.size() > 1 ? ", ..." : "") + ")",
        description, group);
    created.push_back(change);
  }
  return created;
}

// ---------------------------------------------------------------------------
// Delta computation
// ---------------------------------------------------------------------------

namespace {

bool closure_kind(LinkKind kind) {
  return kind == LinkKind::DerivesFrom || kind == LinkKind::Refines ||
         kind == LinkKind::Realises || kind == LinkKind::Addresses;
}

}  // namespace

DeltaReport compute_delta(const ProjectStore& store, const std::set<std::string>& changed_assets) {
  if (changed_assets.empty()) fail(Errc::EmptyChangeSet, "no changed assets given");

  DeltaReport report;
  report.changed_assets = changed_assets;

  std::set<std::string> visited = changed_assets;
  std::deque<std::string> queue(changed_assets.begin(), changed_assets.end());
  std::set<std::string> edges;
  while (!queue.empty()) {
    std::string node = queue.front();
    queue.pop_front();
    for (const TraceLink& link : store.links) {
      if (!closure_kind(link.kind) || link.target != node) continue;
      edges.insert(link.id);
      report.affected_local.insert(link.source);
      if (visited.insert(link.source).second) queue.push_back(link.source);
    }
  }
  report.closure_edges.assign(edges.begin(), edges.end());
  return report;
}

void persist_delta_report(ProjectStore& store, const DeltaReport& report) {
  if (!store.manifest.profile.selected_supports.count(kSupportSplDeltaReport)) return;
  const Artefact* artefact = store.first_support(kSupportSplDeltaReport);
  if (!artefact) {
    artefact = &store.put_artefact(new_artefact({KindCode::Support, kSupportSplDeltaReport},
                                                kSupportSplDeltaReport, store.manifest.profile));
  }
  store.add_item(artefact->id, "Reports", ItemKind::Note, Json(report).dump());
}

}  // namespace arspi
