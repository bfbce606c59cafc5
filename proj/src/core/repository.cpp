#include "core/repository.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <thread>

#include "core/json_codec.hpp"
#include "core/validation.hpp"

namespace fs = std::filesystem;

namespace arspi {

// ---------------------------------------------------------------------------
// Artefact access
// ---------------------------------------------------------------------------

Artefact* ProjectStore::find_artefact(const std::string& id) {
  for (Artefact& artefact : artefacts) {
    if (artefact.id == id) return &artefact;
  }
  return nullptr;
}

const Artefact* ProjectStore::find_artefact(const std::string& id) const {
  return const_cast<ProjectStore*>(this)->find_artefact(id);
}

Artefact& ProjectStore::get_artefact(const std::string& id) {
  if (Artefact* artefact = find_artefact(id)) return *artefact;
  fail(Errc::UnknownId, "no artefact with id " + id);
}

const Artefact& ProjectStore::get_artefact(const std::string& id) const {
  return const_cast<ProjectStore*>(this)->get_artefact(id);
}

Artefact& ProjectStore::put_artefact(const Artefact& artefact) {
  if (!kind_permitted(artefact.kind, manifest.profile)) {
    fail(Errc::KindNotPermitted,
         artefact.kind.to_string() + " is not permitted under this project's profile");
  }
  if (artefact.kind.is_support() && !registry.find(artefact.kind.support_name)) {
    fail(Errc::KindNotPermitted,
         "support artefact not registered: " + artefact.kind.support_name);
  }
  Artefact* slot = artefact.id.empty() ? nullptr : find_artefact(artefact.id);
  Artefact* result;
  if (slot) {
    int version = slot->version + 1;
    *slot = artefact;
    slot->version = version;
    result = slot;
  } else {
    artefacts.push_back(artefact);
    result = &artefacts.back();
    if (result->id.empty()) result->id = next_artefact_id();
  }
  if (Iteration* running = running_iteration()) running->produced.insert(result->id);
  return *result;
}

std::vector<const Artefact*> ProjectStore::list_artefacts(std::optional<ArtefactKind> kind) const {
  std::vector<const Artefact*> out;
  for (const Artefact& artefact : artefacts) {
    if (!kind || artefact.kind == *kind) out.push_back(&artefact);
  }
  return out;
}

const Artefact* ProjectStore::first_of_kind(KindCode code) const {
  for (const Artefact& artefact : artefacts) {
    if (artefact.kind.code == code) return &artefact;
  }
  return nullptr;
}

const Artefact* ProjectStore::first_support(const std::string& support_name) const {
  for (const Artefact& artefact : artefacts) {
    if (artefact.kind.is_support() && artefact.kind.support_name == support_name) {
      return &artefact;
    }
  }
  return nullptr;
}

std::string ProjectStore::add_item(const std::string& artefact_id, const std::string& section_key,
                                   ItemKind item_kind, const std::string& text) {
  Artefact& artefact = get_artefact(artefact_id);
  Section* section = artefact.find_section(section_key);
  if (!section) {
    bool free_form = artefact.kind.code == KindCode::PR || artefact.kind.is_support();
    if (!free_form) {
      fail(Errc::UnknownId, "no section '" + section_key + "' in " + artefact.kind.to_string() +
                                " artefact " + artefact_id);
    }
    artefact.sections.push_back(Section{section_key, {}, {}});
    section = &artefact.sections.back();
  }
  if (!item_placement_ok(artefact.kind, section_key, item_kind)) {
    fail(Errc::PlacementViolation, std::string(item_kind_name(item_kind)) +
                                       " items may not be placed in section '" + section_key +
                                       "' of a " + artefact.kind.to_string() + " artefact");
  }
  ContentItem item;
  item.id = next_item_id();
  item.kind = item_kind;
  item.text = text;
  section->items.push_back(item);
  artefact.version += 1;
  if (Iteration* running = running_iteration()) running->produced.insert(artefact.id);
  return section->items.back().id;
}

// ---------------------------------------------------------------------------
// Tracing
// ---------------------------------------------------------------------------

std::optional<ResolvedEndpoint> ProjectStore::resolve_endpoint(const std::string& id) const {
  for (const Artefact& artefact : artefacts) {
    if (artefact.id == id) return ResolvedEndpoint{true, artefact.id, std::nullopt};
  }
  struct Walker {
    const std::string& id;
    const ContentItem* found = nullptr;
    void walk(const std::vector<Section>& sections) {
      for (const Section& section : sections) {
        for (const ContentItem& item : section.items) {
          if (item.id == id) found = &item;
        }
        walk(section.children);
      }
    }
  };
  for (const Artefact& artefact : artefacts) {
    Walker walker{id};
    walker.walk(artefact.sections);
    if (walker.found) return ResolvedEndpoint{false, artefact.id, walker.found->kind};
  }
  return std::nullopt;
}

TraceLink& ProjectStore::add_trace(const std::string& source, const std::string& target,
                                   LinkKind kind) {
  auto src = resolve_endpoint(source);
  if (!src) fail(Errc::DanglingEndpoint, "link source does not resolve: " + source);
  auto dst = resolve_endpoint(target);
  if (!dst) fail(Errc::DanglingEndpoint, "link target does not resolve: " + target);
  EndpointKind src_kind = classify_endpoint(*src);
  EndpointKind dst_kind = classify_endpoint(*dst);
  if (!LinkKindMatrix::instance().allows(src_kind, dst_kind, kind)) {
    fail(Errc::KindMatrixViolation,
         std::string(link_kind_name(kind)) + " links are not allowed from " +
             endpoint_kind_name(src_kind) + " to " + endpoint_kind_name(dst_kind));
  }
  for (TraceLink& link : links) {
    if (link.source == source && link.target == target && link.kind == kind) return link;
  }
  links.push_back(TraceLink{next_link_id(), source, target, kind});
  return links.back();
}

// ---------------------------------------------------------------------------
// Iterations / changes / releases
// ---------------------------------------------------------------------------

Iteration* ProjectStore::running_iteration() {
  for (Iteration& iteration : iterations) {
    if (iteration.state == IterationState::Running) return &iteration;
  }
  return nullptr;
}

const Iteration* ProjectStore::running_iteration() const {
  return const_cast<ProjectStore*>(this)->running_iteration();
}

Iteration* ProjectStore::find_iteration(int index) {
  for (Iteration& iteration : iterations) {
    if (iteration.index == index) return &iteration;
  }
  return nullptr;
}

ChangeRequest* ProjectStore::find_change(const std::string& id) {
  for (ChangeRequest& change : changes) {
    if (change.id == id) return &change;
  }
  return nullptr;
}

const ChangeRequest* ProjectStore::find_change(const std::string& id) const {
  return const_cast<ProjectStore*>(this)->find_change(id);
}

Release* ProjectStore::find_release(const std::string& id) {
  for (Release& release : releases) {
    if (release.id == id) return &release;
  }
  return nullptr;
}

const Release* ProjectStore::find_release(const std::string& id) const {
  return const_cast<ProjectStore*>(this)->find_release(id);
}

std::string ProjectStore::next_artefact_id() { return "A" + std::to_string(manifest.next_artefact++); }
std::string ProjectStore::next_item_id() { return "I" + std::to_string(manifest.next_item++); }
std::string ProjectStore::next_link_id() { return "L" + std::to_string(manifest.next_link++); }
std::string ProjectStore::next_change_id() { return "CR" + std::to_string(manifest.next_change++); }
std::string ProjectStore::next_release_id() { return "R" + std::to_string(manifest.next_release++); }

// ---------------------------------------------------------------------------
// Persistence
// ---------------------------------------------------------------------------

namespace {

void write_file_atomic(const fs::path& path, const std::string& content,
                       const WriteObserver& observer) {
  fs::path temp = path;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::trunc);
    out << content << '\n';
    if (!out) fail(Errc::CorruptFile, "failed writing " + temp.string());
  }
  if (observer) observer(path);
  fs::rename(temp, path);
}

Json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::CorruptFile, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(Errc::CorruptFile, path.string() + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2); }

}  // namespace

ProjectStore init_project(const fs::path& root, const std::string& name,
                          const TailoringProfile& profile) {
  if (fs::exists(root) && !fs::is_empty(root)) {
    fail(Errc::PathOccupied, "path is not empty: " + root.string());
  }
  ProjectStore store;
  for (const std::string& support : profile.selected_supports) {
    if (!store.registry.find(support)) {
      fail(Errc::ProfileInvalid, "selected support artefact is not registered: " + support);
    }
  }
  store.manifest.project_name = name;
  store.manifest.profile = profile;
  store.manifest.schema_version = kSchemaVersion;
  for (const std::string& support : profile.selected_supports) {
    store.put_artefact(new_artefact({KindCode::Support, support}, support, profile));
  }
  fs::create_directories(root / "artefacts");
  save(store, root);
  return store;
}

void save(const ProjectStore& store, const fs::path& root, const WriteObserver& observer) {
  fs::create_directories(root / "artefacts");

  // Artefact files first, bookkeeping files after, the manifest (which names
  // the artefact order) last; every referenced file exists whenever the
  // manifest does.
  std::vector<std::string> order;
  for (const Artefact& artefact : store.artefacts) {
    order.push_back(artefact.id);
    write_file_atomic(root / "artefacts" / (artefact.id + ".json"), dump(Json(artefact)),
                      observer);
  }
  write_file_atomic(root / "links.json", dump(Json(store.links)), observer);
  write_file_atomic(root / "iterations.json", dump(Json(store.iterations)), observer);
  write_file_atomic(root / "changes.json", dump(Json(store.changes)), observer);
  write_file_atomic(root / "releases.json", dump(Json(store.releases)), observer);

  Json manifest(store.manifest);
  manifest["artefact_order"] = order;
  Json registered = Json::array();
  for (const SupportArtefactDescriptor& descriptor : store.registry.list()) {
    if (!descriptor.builtin) registered.push_back(descriptor);
  }
  manifest["support_registry"] = registered;
  write_file_atomic(root / kManifestFileName, dump(manifest), observer);
}

ProjectStore load(const fs::path& root) {
  Json manifest_json = read_json(root / kManifestFileName);
  ProjectStore store;
  try {
    store.manifest = manifest_json.get<ProjectManifest>();
    if (store.manifest.schema_version != kSchemaVersion) {
      fail(Errc::SchemaMismatch,
           "store schema version " + std::to_string(store.manifest.schema_version) +
               " is not supported (engine speaks version " + std::to_string(kSchemaVersion) + ")");
    }
    for (const Json& entry : manifest_json.value("support_registry", Json::array())) {
      store.registry.register_descriptor(entry.get<SupportArtefactDescriptor>());
    }

    std::vector<std::string> order =
        manifest_json.value("artefact_order", std::vector<std::string>{});
    std::vector<std::string> files;
    if (fs::exists(root / "artefacts")) {
      for (const auto& entry : fs::directory_iterator(root / "artefacts")) {
        if (entry.path().extension() == ".json") {
          files.push_back(entry.path().stem().string());
        }
      }
    }
    std::sort(files.begin(), files.end());
    // Manifest order first, then any files the manifest does not know yet
    // (present after an interrupted save).
    std::vector<std::string> to_read;
    for (const std::string& id : order) {
      if (std::find(files.begin(), files.end(), id) != files.end()) to_read.push_back(id);
    }
    for (const std::string& id : files) {
      if (std::find(order.begin(), order.end(), id) == order.end()) to_read.push_back(id);
    }
    for (const std::string& id : to_read) {
      store.artefacts.push_back(read_json(root / "artefacts" / (id + ".json")).get<Artefact>());
    }

    if (fs::exists(root / "links.json")) {
      read_json(root / "links.json").get_to(store.links);
    }
    if (fs::exists(root / "iterations.json")) {
      read_json(root / "iterations.json").get_to(store.iterations);
    }
    if (fs::exists(root / "changes.json")) {
      read_json(root / "changes.json").get_to(store.changes);
    }
    if (fs::exists(root / "releases.json")) {
      read_json(root / "releases.json").get_to(store.releases);
    }
  } catch (const Json::exception& e) {
    fail(Errc::CorruptFile, root.string() + ": " + e.what());
  }
  return store;
}

// ---------------------------------------------------------------------------
// Advisory lock
// ---------------------------------------------------------------------------

ProjectLock::ProjectLock(const fs::path& root, int timeout_ms) {
  fs::path lock_path = root / kLockFileName;
  fd_ = ::open(lock_path.c_str(), O_CREAT | O_RDWR, 0644);
  if (fd_ < 0) fail(Errc::LockTimeout, "cannot open lock file " + lock_path.string());
  auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
  while (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
    if (std::chrono::steady_clock::now() >= deadline) {
      ::close(fd_);
      fd_ = -1;
      fail(Errc::LockTimeout, "project is locked by another process: " + lock_path.string());
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(25));
  }
}

ProjectLock::~ProjectLock() {
  if (fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
}

}  // namespace arspi
