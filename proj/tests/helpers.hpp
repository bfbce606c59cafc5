#pragma once

// Shared fixtures for the test suites: temp directories, randomized store
// generators, and the independent brute-force oracles the property tests
// compare against. Everything here works from the raw data model on purpose;
// the oracles must not share code with the implementation paths they check.

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "core/lifecycle.hpp"
#include "core/metamodel.hpp"
#include "core/release_change.hpp"
#include "core/repository.hpp"
#include "core/tailoring.hpp"

namespace arspi::testing {

class TempDir {
 public:
  explicit TempDir(const std::string& prefix = "arspi-test") {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            (prefix + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline bool coin(std::mt19937& rng) { return rng() % 2 == 0; }

inline int uniform(std::mt19937& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
}

/// Randomized but structurally valid store: split or merged profile, key
/// artefacts with typed items, matrix-conforming links, plus changes,
/// iterations, and releases for serialization variety.
inline ProjectStore random_store(std::mt19937& rng, int max_items = 20, int max_links = 50) {
  ProjectStore store;
  store.manifest.project_name = "random-" + std::to_string(rng() % 1000);
  store.manifest.vision = coin(rng) ? "" : "improve the process";
  TailoringProfile profile;
  profile.merge_designs = coin(rng);
  if (coin(rng)) profile.selected_supports.insert(kSupportTrainingMaterial);
  if (coin(rng)) profile.selected_supports.insert(kSupportSplDeltaReport);
  profile.strict_realisation_coverage = coin(rng);
  store.manifest.profile = profile;

  std::string prq_id = store.put_artefact(new_artefact({KindCode::PRQ, {}}, "prq", profile)).id;
  std::string design_id, realisation_id;
  if (profile.merge_designs) {
    Artefact& pd = store.put_artefact(new_artefact({KindCode::PD, {}}, "pd", profile));
    design_id = realisation_id = pd.id;
  } else {
    design_id = store.put_artefact(new_artefact({KindCode::CPD, {}}, "cpd", profile)).id;
    realisation_id = store.put_artefact(new_artefact({KindCode::TPD, {}}, "tpd", profile)).id;
  }
  if (coin(rng)) store.put_artefact(new_artefact({KindCode::PLC, {}}, "plc", profile));
  for (const std::string& support : profile.selected_supports) {
    store.put_artefact(new_artefact({KindCode::Support, support}, support, profile));
  }

  std::vector<std::string> requirements, designs, realisations;
  int item_budget = uniform(rng, 0, max_items);
  for (int i = 0; i < item_budget; ++i) {
    switch (rng() % 4) {
      case 0:
        requirements.push_back(store.add_item(prq_id, "Requirements", ItemKind::Requirement,
                                              "req " + std::to_string(i)));
        break;
      case 1:
        designs.push_back(store.add_item(design_id, "Processes", ItemKind::DesignElement,
                                         "design " + std::to_string(i)));
        break;
      case 2:
        realisations.push_back(store.add_item(realisation_id,
                                              "LogicalAndPhysicalModelOrganisation",
                                              ItemKind::RealisationElement,
                                              "real " + std::to_string(i)));
        break;
      default:
        store.add_item(prq_id, "Goals", ItemKind::Goal, "goal " + std::to_string(i));
        break;
    }
  }

  int link_budget = uniform(rng, 0, max_links);
  for (int i = 0; i < link_budget; ++i) {
    if (coin(rng) && !requirements.empty() && !designs.empty()) {
      store.add_trace(requirements[rng() % requirements.size()],
                      designs[rng() % designs.size()], LinkKind::Addresses);
    } else if (!designs.empty() && !realisations.empty()) {
      store.add_trace(designs[rng() % designs.size()],
                      realisations[rng() % realisations.size()], LinkKind::Realises);
    }
  }

  if (coin(rng)) {
    ChangeRequest& change =
        submit_change(store, ChangeOrigin::Internal, "tweak", "details", {});
    if (coin(rng)) triage_change(store, change.id, TriageDecision::Accept);
  }
  if (coin(rng)) {
    plan_project(store, 2, {coin(rng), false});
  }
  if (coin(rng)) {
    Release release;
    release.id = store.next_release_id();
    release.version_label = "v" + std::to_string(rng() % 10);
    release.status = static_cast<ReleaseStatus>(rng() % 4);
    release.iteration_index = 1;
    store.releases.push_back(release);
    if (release.status == ReleaseStatus::Released) {
      store.manifest.actual_process_ref = release.id;
    }
  }
  return store;
}

/// Brute-force requirement/design coverage scan straight over the link table.
/// Returns the item ids the coverage rules must flag.
struct CoverageOracle {
  std::set<std::string> uncovered_requirements;
  std::set<std::string> uncovered_designs;
};

inline CoverageOracle coverage_oracle(const ProjectStore& store) {
  CoverageOracle oracle;
  bool design_exists = store.first_of_kind(KindCode::CPD) || store.first_of_kind(KindCode::PD);
  bool tpd_exists = store.first_of_kind(KindCode::TPD) != nullptr;

  struct Row {
    std::string id;
    ItemKind kind;
    KindCode owner;
  };
  std::vector<Row> rows;
  std::function<void(const Artefact&, const std::vector<Section>&)> walk =
      [&](const Artefact& artefact, const std::vector<Section>& sections) {
        for (const Section& section : sections) {
          for (const ContentItem& item : section.items) {
            rows.push_back({item.id, item.kind, artefact.kind.code});
          }
          walk(artefact, section.children);
        }
      };
  for (const Artefact& artefact : store.artefacts) walk(artefact, artefact.sections);

  for (const Row& row : rows) {
    if (design_exists && row.kind == ItemKind::Requirement && row.owner == KindCode::PRQ) {
      bool covered = false;
      for (const TraceLink& link : store.links) {
        if (link.source == row.id && link.kind == LinkKind::Addresses) covered = true;
      }
      if (!covered) oracle.uncovered_requirements.insert(row.id);
    }
    if (tpd_exists && !store.manifest.profile.merge_designs &&
        store.manifest.profile.strict_realisation_coverage &&
        row.kind == ItemKind::DesignElement) {
      bool covered = false;
      for (const TraceLink& link : store.links) {
        if (link.source == row.id && link.kind == LinkKind::Realises) covered = true;
      }
      if (!covered) oracle.uncovered_designs.insert(row.id);
    }
  }
  return oracle;
}

/// Random trace graph over synthetic node names; compute_delta only reads the
/// link table, so nodes need not exist as items.
inline ProjectStore random_graph_store(std::mt19937& rng, int max_nodes = 30,
                                       int max_edges = 60) {
  ProjectStore store;
  int node_count = uniform(rng, 1, max_nodes);
  int edge_count = uniform(rng, 0, max_edges);
  for (int i = 0; i < edge_count; ++i) {
    TraceLink link;
    link.id = "L" + std::to_string(i + 1);
    link.source = "N" + std::to_string(rng() % static_cast<unsigned>(node_count));
    link.target = "N" + std::to_string(rng() % static_cast<unsigned>(node_count));
    link.kind = static_cast<LinkKind>(rng() % 5);
    store.links.push_back(link);
  }
  store.manifest.project_name = "graph";
  return store;
}

/// Independent reachability oracle: boolean-matrix transitive closure over
/// the reversed closure-kind edges (Floyd-Warshall), unlike the BFS in the
/// implementation.
inline std::set<std::string> delta_oracle(const ProjectStore& store,
                                          const std::set<std::string>& changed) {
  std::vector<std::string> nodes;
  auto index_of = [&](const std::string& name) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i] == name) return i;
    }
    nodes.push_back(name);
    return nodes.size() - 1;
  };
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // reversed: target -> source
  for (const TraceLink& link : store.links) {
    if (link.kind == LinkKind::Shares) continue;
    edges.emplace_back(index_of(link.target), index_of(link.source));
  }
  for (const std::string& seed : changed) index_of(seed);

  std::size_t n = nodes.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (const auto& [from, to] : edges) reach[from][to] = true;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (reach[k][j]) reach[i][j] = true;
      }
    }
  }
  std::set<std::string> affected;
  for (const std::string& seed : changed) {
    std::size_t s = index_of(seed);
    for (std::size_t j = 0; j < n; ++j) {
      if (reach[s][j]) affected.insert(nodes[j]);
    }
  }
  return affected;
}

}  // namespace arspi::testing
