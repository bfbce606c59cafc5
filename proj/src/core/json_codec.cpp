#include "core/json_codec.hpp"

namespace arspi {

namespace {

template <typename T>
Json opt_to_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <typename T>
std::optional<T> opt_from_json(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

template <typename Enum, typename Parse>
Enum parse_enum(const Json& j, Parse parse, const char* what) {
  auto v = parse(j.get<std::string>());
  if (!v) fail(Errc::CorruptFile, std::string("unknown ") + what + ": " + j.get<std::string>());
  return *v;
}

}  // namespace

void to_json(Json& j, const ArtefactKind& v) { j = v.to_string(); }
void from_json(const Json& j, ArtefactKind& v) { v = ArtefactKind::parse(j.get<std::string>()); }

void to_json(Json& j, const SectionSpec& v) {
  std::vector<std::string> shared;
  for (KindCode code : v.shared_with) shared.emplace_back(kind_code_name(code));
  j = Json{{"key", v.key},
           {"title", v.title},
           {"required", v.required},
           {"shared_with", shared},
           {"children", v.children}};
}
void from_json(const Json& j, SectionSpec& v) {
  j.at("key").get_to(v.key);
  j.at("title").get_to(v.title);
  j.at("required").get_to(v.required);
  v.shared_with.clear();
  for (const auto& name : j.at("shared_with")) {
    v.shared_with.insert(parse_enum<KindCode>(name, parse_kind_code, "kind code"));
  }
  j.at("children").get_to(v.children);
}

void to_json(Json& j, const ContentItem& v) {
  j = Json{{"id", v.id}, {"kind", item_kind_name(v.kind)}, {"text", v.text}};
}
void from_json(const Json& j, ContentItem& v) {
  j.at("id").get_to(v.id);
  v.kind = parse_enum<ItemKind>(j.at("kind"), parse_item_kind, "item kind");
  j.at("text").get_to(v.text);
}

void to_json(Json& j, const Section& v) {
  j = Json{{"children", v.children}, {"items", v.items}, {"key", v.spec_key}};
}
void from_json(const Json& j, Section& v) {
  j.at("key").get_to(v.spec_key);
  j.at("items").get_to(v.items);
  j.at("children").get_to(v.children);
}

void to_json(Json& j, const Artefact& v) {
  j = Json{{"id", v.id},
           {"kind", v.kind},
           {"name", v.name},
           {"sections", v.sections},
           {"version", v.version}};
}
void from_json(const Json& j, Artefact& v) {
  j.at("id").get_to(v.id);
  j.at("kind").get_to(v.kind);
  j.at("name").get_to(v.name);
  j.at("version").get_to(v.version);
  j.at("sections").get_to(v.sections);
}

void to_json(Json& j, const TraceLink& v) {
  j = Json{{"id", v.id},
           {"kind", link_kind_name(v.kind)},
           {"source", v.source},
           {"target", v.target}};
}
void from_json(const Json& j, TraceLink& v) {
  j.at("id").get_to(v.id);
  v.kind = parse_enum<LinkKind>(j.at("kind"), parse_link_kind, "link kind");
  j.at("source").get_to(v.source);
  j.at("target").get_to(v.target);
}

void to_json(Json& j, const SupportArtefactDescriptor& v) {
  j = Json{{"builtin", v.builtin}, {"description", v.description}, {"name", v.name}};
}
void from_json(const Json& j, SupportArtefactDescriptor& v) {
  j.at("name").get_to(v.name);
  j.at("description").get_to(v.description);
  j.at("builtin").get_to(v.builtin);
}

void to_json(Json& j, const TailoringProfile& v) {
  j = Json{{"merge_designs", v.merge_designs},
           {"notes", v.notes},
           {"selected_supports", v.selected_supports},
           {"strict_realisation_coverage", v.strict_realisation_coverage}};
}
void from_json(const Json& j, TailoringProfile& v) {
  j.at("merge_designs").get_to(v.merge_designs);
  j.at("selected_supports").get_to(v.selected_supports);
  j.at("strict_realisation_coverage").get_to(v.strict_realisation_coverage);
  j.at("notes").get_to(v.notes);
}

void to_json(Json& j, const IterationInputs& v) {
  j = Json{{"actual_process", opt_to_json(v.actual_process)},
           {"changes", v.changes},
           {"vision", v.vision}};
}
void from_json(const Json& j, IterationInputs& v) {
  j.at("vision").get_to(v.vision);
  j.at("changes").get_to(v.changes);
  v.actual_process = opt_from_json<std::string>(j.at("actual_process"));
}

void to_json(Json& j, const Iteration& v) {
  j = Json{{"current_phase", v.current_phase ? Json(phase_name(*v.current_phase)) : Json(nullptr)},
           {"index", v.index},
           {"inputs", v.inputs},
           {"produced", v.produced},
           {"released", opt_to_json(v.released)},
           {"shortened", v.shortened},
           {"state", iteration_state_name(v.state)}};
}
void from_json(const Json& j, Iteration& v) {
  j.at("index").get_to(v.index);
  if (j.at("current_phase").is_null()) {
    v.current_phase = std::nullopt;
  } else {
    v.current_phase = parse_enum<Phase>(j.at("current_phase"), parse_phase, "phase");
  }
  j.at("shortened").get_to(v.shortened);
  j.at("produced").get_to(v.produced);
  v.released = opt_from_json<std::string>(j.at("released"));
  v.state = parse_enum<IterationState>(j.at("state"), parse_iteration_state, "iteration state");
  j.at("inputs").get_to(v.inputs);
}

void to_json(Json& j, const ChangeRequest& v) {
  j = Json{{"description", v.description},
           {"id", v.id},
           {"linked_assets", v.linked_assets},
           {"origin", change_origin_name(v.origin)},
           {"status", change_status_name(v.status)},
           {"title", v.title}};
}
void from_json(const Json& j, ChangeRequest& v) {
  j.at("id").get_to(v.id);
  v.origin = parse_enum<ChangeOrigin>(j.at("origin"), parse_change_origin, "change origin");
  j.at("title").get_to(v.title);
  j.at("description").get_to(v.description);
  v.status = parse_enum<ChangeStatus>(j.at("status"), parse_change_status, "change status");
  j.at("linked_assets").get_to(v.linked_assets);
}

void to_json(Json& j, const Release& v) {
  j = Json{{"id", v.id},
           {"iteration_index", v.iteration_index},
           {"parent_ref", opt_to_json(v.parent_ref)},
           {"payload", v.payload},
           {"status", release_status_name(v.status)},
           {"version_label", v.version_label}};
}
void from_json(const Json& j, Release& v) {
  j.at("id").get_to(v.id);
  j.at("version_label").get_to(v.version_label);
  v.status = parse_enum<ReleaseStatus>(j.at("status"), parse_release_status, "release status");
  j.at("payload").get_to(v.payload);
  j.at("iteration_index").get_to(v.iteration_index);
  v.parent_ref = opt_from_json<std::string>(j.at("parent_ref"));
}

void to_json(Json& j, const DeltaReport& v) {
  j = Json{{"affected_local", v.affected_local},
           {"changed_assets", v.changed_assets},
           {"closure_edges", v.closure_edges}};
}
void from_json(const Json& j, DeltaReport& v) {
  j.at("changed_assets").get_to(v.changed_assets);
  j.at("affected_local").get_to(v.affected_local);
  j.at("closure_edges").get_to(v.closure_edges);
}

void to_json(Json& j, const ReferenceProcessSnapshot& v) {
  j = Json{{"assets", v.assets}, {"label", v.label}};
}
void from_json(const Json& j, ReferenceProcessSnapshot& v) {
  j.at("label").get_to(v.label);
  j.at("assets").get_to(v.assets);
}

void to_json(Json& j, const ProjectManifest& v) {
  j = Json{{"actual_process_ref", opt_to_json(v.actual_process_ref)},
           {"counters",
            Json{{"artefact", v.next_artefact},
                 {"change", v.next_change},
                 {"item", v.next_item},
                 {"link", v.next_link},
                 {"release", v.next_release}}},
           {"profile", v.profile},
           {"project_name", v.project_name},
           {"schema_version", v.schema_version},
           {"vision", v.vision}};
}
void from_json(const Json& j, ProjectManifest& v) {
  j.at("project_name").get_to(v.project_name);
  j.at("profile").get_to(v.profile);
  j.at("vision").get_to(v.vision);
  v.actual_process_ref = opt_from_json<std::string>(j.at("actual_process_ref"));
  j.at("schema_version").get_to(v.schema_version);
  const Json& counters = j.at("counters");
  counters.at("artefact").get_to(v.next_artefact);
  counters.at("item").get_to(v.next_item);
  counters.at("link").get_to(v.next_link);
  counters.at("change").get_to(v.next_change);
  counters.at("release").get_to(v.next_release);
}

}  // namespace arspi
