#pragma once

#include <json.hpp>

#include "core/repository.hpp"

// JSON conversions for every persisted domain type. Enumerations serialize as
// their stable lowercase names; optionals as value-or-null. nlohmann's default
// object backing (std::map) keeps keys lexicographically ordered, which the
// file format relies on for deterministic diffs.

namespace arspi {

using Json = nlohmann::json;

void to_json(Json& j, const ArtefactKind& v);
void from_json(const Json& j, ArtefactKind& v);

void to_json(Json& j, const SectionSpec& v);
void from_json(const Json& j, SectionSpec& v);

void to_json(Json& j, const ContentItem& v);
void from_json(const Json& j, ContentItem& v);

void to_json(Json& j, const Section& v);
void from_json(const Json& j, Section& v);

void to_json(Json& j, const Artefact& v);
void from_json(const Json& j, Artefact& v);

void to_json(Json& j, const TraceLink& v);
void from_json(const Json& j, TraceLink& v);

void to_json(Json& j, const SupportArtefactDescriptor& v);
void from_json(const Json& j, SupportArtefactDescriptor& v);

void to_json(Json& j, const TailoringProfile& v);
void from_json(const Json& j, TailoringProfile& v);

void to_json(Json& j, const IterationInputs& v);
void from_json(const Json& j, IterationInputs& v);

void to_json(Json& j, const Iteration& v);
void from_json(const Json& j, Iteration& v);

void to_json(Json& j, const ChangeRequest& v);
void from_json(const Json& j, ChangeRequest& v);

void to_json(Json& j, const Release& v);
void from_json(const Json& j, Release& v);

void to_json(Json& j, const DeltaReport& v);
void from_json(const Json& j, DeltaReport& v);

void to_json(Json& j, const ReferenceProcessSnapshot& v);
void from_json(const Json& j, ReferenceProcessSnapshot& v);

void to_json(Json& j, const ProjectManifest& v);
void from_json(const Json& j, ProjectManifest& v);

}  // namespace arspi
