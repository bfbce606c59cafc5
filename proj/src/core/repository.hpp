#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/lifecycle.hpp"
#include "core/metamodel.hpp"
#include "core/release_change.hpp"

namespace arspi {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kManifestFileName = "arspi.json";
inline constexpr const char* kLockFileName = ".arspi.lock";

struct ProjectManifest {
  std::string project_name;
  TailoringProfile profile;
  std::string vision;
  std::optional<std::string> actual_process_ref;
  int schema_version = kSchemaVersion;

  // project-scoped id counters
  int next_artefact = 1;
  int next_item = 1;
  int next_link = 1;
  int next_change = 1;
  int next_release = 1;

  friend bool operator==(const ProjectManifest&, const ProjectManifest&) = default;
};

/// Endpoint of a trace link as resolved against a store: either a whole
/// artefact or a content item (with its kind and owning artefact).
struct ResolvedEndpoint {
  bool is_artefact = false;
  std::string artefact_id;                 // owning artefact (or the artefact itself)
  std::optional<ItemKind> item_kind;       // set for item endpoints
};

/// In-memory image of one SPI project. Plain value type: copyable, comparable,
/// no I/O of its own. Persistence and locking live in the free functions below.
class ProjectStore {
 public:
  ProjectManifest manifest;
  SupportRegistry registry;
  std::vector<Artefact> artefacts;  // creation order
  std::vector<TraceLink> links;
  std::vector<Iteration> iterations;
  std::vector<ChangeRequest> changes;
  std::vector<Release> releases;

  // --- artefact access -----------------------------------------------------

  /// Insert or update. New artefacts get a fresh project-scoped id and keep
  /// version 1; updates of an existing id bump the stored version by one.
  Artefact& put_artefact(const Artefact& artefact);
  Artefact& get_artefact(const std::string& id);
  const Artefact& get_artefact(const std::string& id) const;
  Artefact* find_artefact(const std::string& id);
  const Artefact* find_artefact(const std::string& id) const;
  std::vector<const Artefact*> list_artefacts(std::optional<ArtefactKind> kind = {}) const;
  const Artefact* first_of_kind(KindCode code) const;
  const Artefact* first_support(const std::string& support_name) const;

  /// Add a content item to a section. Key artefacts must address an existing
  /// section of their spec tree; PR and support artefacts grow free-form
  /// top-level sections on demand. Returns the new item id.
  std::string add_item(const std::string& artefact_id, const std::string& section_key,
                       ItemKind item_kind, const std::string& text);

  // --- tracing --------------------------------------------------------------

  /// Persist a link after endpoint and kind-matrix checks. An exact duplicate
  /// (same source, target, kind) is an idempotent no-op returning the
  /// existing link.
  TraceLink& add_trace(const std::string& source, const std::string& target, LinkKind kind);

  std::optional<ResolvedEndpoint> resolve_endpoint(const std::string& id) const;

  // --- iterations / changes / releases ---------------------------------------

  Iteration* running_iteration();
  const Iteration* running_iteration() const;
  Iteration* find_iteration(int index);
  ChangeRequest* find_change(const std::string& id);
  const ChangeRequest* find_change(const std::string& id) const;
  Release* find_release(const std::string& id);
  const Release* find_release(const std::string& id) const;

  // --- id generation ---------------------------------------------------------

  std::string next_artefact_id();
  std::string next_item_id();
  std::string next_link_id();
  std::string next_change_id();
  std::string next_release_id();

  friend bool operator==(const ProjectStore&, const ProjectStore&) = default;
};

// ---------------------------------------------------------------------------
// Persistence
// ---------------------------------------------------------------------------

/// Called just before each file is committed (temp file renamed into place);
/// test hook for simulating interrupted saves.
using WriteObserver = std::function<void(const std::filesystem::path&)>;

/// Create a fresh project directory with a manifest. The path must be empty
/// or nonexistent.
ProjectStore init_project(const std::filesystem::path& root, const std::string& name,
                          const TailoringProfile& profile);

/// Write the store to its directory. Each file is written to a temp file and
/// renamed, so an interrupted save leaves every file either old or new.
void save(const ProjectStore& store, const std::filesystem::path& root,
          const WriteObserver& observer = {});

ProjectStore load(const std::filesystem::path& root);

// ---------------------------------------------------------------------------
// Advisory lock
// ---------------------------------------------------------------------------

/// Single-writer advisory lock on a project directory. Blocks up to
/// timeout_ms waiting for the holder, then fails with LockTimeout.
class ProjectLock {
 public:
  explicit ProjectLock(const std::filesystem::path& root, int timeout_ms = 2000);
  ~ProjectLock();
  ProjectLock(const ProjectLock&) = delete;
  ProjectLock& operator=(const ProjectLock&) = delete;

 private:
  int fd_ = -1;
};

}  // namespace arspi
