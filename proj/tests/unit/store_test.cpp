#include <gtest/gtest.h>

#include <cstdlib>

#include "test_support.hpp"
#include "voxql/error.hpp"
#include "voxql/store/store.hpp"

namespace {

using namespace voxql;
using namespace voxql::store;
using namespace voxql::testing;
using nlohmann::json;

struct StoreTest : ::testing::Test {
  Fixture fx;
  std::vector<std::string> warnings;
  Store store{{fx.datasets, fx.scripts, fx.workspaces}, [this](const std::string& w) { warnings.push_back(w); }};
};

TEST_F(StoreTest, Datasets) {
  EXPECT_EQ(store.list_datasets(), (std::vector<DatasetRef>{{"BraTS2019"}}));
  EXPECT_EQ(store.get_dataset("BraTS2019").name, "BraTS2019");
  EXPECT_THROW(store.get_dataset("Nope"), NotFound);
  EXPECT_THROW(store.get_dataset(".."), NotFound);
}

TEST_F(StoreTest, EmptyDatasetRoot) {
  TempDir empty;
  Store s({empty.path(), fx.scripts, fx.workspaces});
  EXPECT_TRUE(s.list_datasets().empty());
  Store missing({empty / "nope", fx.scripts, fx.workspaces});
  EXPECT_THROW(missing.list_datasets(), IoError);
}

TEST_F(StoreTest, CasesAndLayers) {
  EXPECT_EQ(store.list_cases("BraTS2019"), (std::vector<CaseRef>{{"patient_001", "BraTS2019/patient_001"},
                                                                 {"patient_002", "BraTS2019/patient_002"}}));
  EXPECT_EQ(store.list_layers("BraTS2019", "patient_001"),
            (std::vector<LayerRef>{{"seg", "patient_001/seg.nii.gz"}, {"t1", "patient_001/t1.nii.gz"}}));
  EXPECT_THROW(store.list_layers("BraTS2019", "patient_999"), NotFound);
  EXPECT_THROW(store.list_cases("Nope"), NotFound);
  EXPECT_EQ(store.layer_file("BraTS2019", "patient_001", "t1"), fx.datasets / "BraTS2019/patient_001/t1.nii.gz");
  EXPECT_THROW(store.layer_file("BraTS2019", "patient_001", "notes"), NotFound);
}

TEST_F(StoreTest, DiscoveryIsReadOnly) {
  const auto before = tree_hash(fx.datasets);
  store.list_datasets();
  store.list_cases("BraTS2019");
  store.list_layers("BraTS2019", "patient_001");
  store.case_input("BraTS2019/patient_002");
  EXPECT_EQ(tree_hash(fx.datasets), before);
}

TEST_F(StoreTest, Scripts) {
  EXPECT_EQ(store.list_scripts(),
            (std::vector<ExampleScript>{{"dice_check", "dice check"}, {"threshold", "threshold"}}));
  EXPECT_EQ(store.script_text("threshold"), "save \"hi\" t1 > 3\n");
  EXPECT_THROW(store.script_text("missing"), NotFound);
  EXPECT_THROW(store.script_text("../datasets/x"), NotFound);
}

TEST_F(StoreTest, CreateListGetDelete) {
  const auto a = store.create_workspace("a");
  EXPECT_GE(a.info.id.size(), 12u);
  EXPECT_TRUE(a.state.to_json()["data"]["openedDatasetsNames"].empty());
  EXPECT_FALSE(a.info.source_id);
  const auto listed = store.list_workspaces();
  ASSERT_EQ(listed.size(), 1u);
  EXPECT_EQ(listed[0].id, a.info.id);
  EXPECT_EQ(listed[0].name, "a");
  EXPECT_EQ(store.get_workspace(a.info.id).state, a.state);
  store.delete_workspace(a.info.id);
  EXPECT_THROW(store.get_workspace(a.info.id), NotFound);
  EXPECT_THROW(store.delete_workspace(a.info.id), NotFound);
  EXPECT_TRUE(store.list_workspaces().empty());
}

TEST_F(StoreTest, ListingDoesNotReadStates) {
  const auto a = store.create_workspace("a");
  write_file(store.workspace_dir(a.info.id) / "workspace.json", "{corrupt");
  ASSERT_EQ(store.list_workspaces().size(), 1u);
  EXPECT_THROW(store.get_workspace(a.info.id), IoError);
}

TEST_F(StoreTest, SaveAndUpdate) {
  const auto a = store.create_workspace("a");
  json j = a.state.to_json();
  j["ui"]["isDarkMode"] = true;
  const auto s = WorkspaceState::from_json(j);
  store.save_workspace_state(a.info.id, s);
  EXPECT_EQ(store.get_workspace(a.info.id).state, s);
  store.update_workspace(a.info.id, std::string("renamed"), std::nullopt);
  EXPECT_EQ(store.get_workspace(a.info.id).info.name, "renamed");
  EXPECT_EQ(store.get_workspace(a.info.id).state, s);
  EXPECT_THROW(store.save_workspace_state("ws-missing", s), NotFound);
}

TEST_F(StoreTest, InvalidStateLeavesFileUntouched) {
  const auto a = store.create_workspace("a");
  const auto file = store.workspace_dir(a.info.id) / "workspace.json";
  const auto before = read_file(file);
  json j = a.state.to_json();
  j["lastGlobalStylesByLayerName"]["t1"] = {{"colormap", "gray"}, {"opacity", 1.5}, {"visible", true}};
  EXPECT_THROW(store.update_workspace(a.info.id, std::nullopt, WorkspaceState::from_json(j)), InvalidInput);
  EXPECT_EQ(read_file(file), before);
}

TEST_F(StoreTest, InjectedFaultKeepsOldState) {
  const auto a = store.create_workspace("a");
  json j = a.state.to_json();
  j["ui"]["scriptEditor"]["content"] = "changed";
  EXPECT_THROW(store.save_workspace_state(a.info.id, WorkspaceState::from_json(j),
                                          [](IoStep s) {
                                            if (s == IoStep::Rename) throw IoError("injected");
                                          }),
               IoError);
  EXPECT_EQ(store.get_workspace(a.info.id).state, a.state);
}

TEST_F(StoreTest, CloneCopiesRunsAndLeavesSourceUntouched) {
  const auto src = store.create_workspace("src");
  const auto run = store.execute_run(src.info.id, "BraTS2019/patient_001", "save \"hi\" t1 > 3\n");
  ASSERT_EQ(run.status, engine::RunStatus::Succeeded) << run.log;
  const auto src_dir = store.workspace_dir(src.info.id);
  const auto state_hash = sha256_hex(read_file(src_dir / "workspace.json"));
  const auto tree = tree_hash(src_dir);

  const auto clone = store.create_workspace("clone", src.info.id);
  EXPECT_EQ(clone.info.source_id, src.info.id);
  EXPECT_EQ(clone.state, src.state);
  const auto clone_dir = store.workspace_dir(clone.info.id);
  const auto& out = run.output_layers[0].path;
  EXPECT_EQ(read_file(clone_dir / out), read_file(src_dir / out));
  EXPECT_NE(fs::canonical(clone_dir / out), fs::canonical(src_dir / out));
  EXPECT_EQ(store.list_runs(clone.info.id).size(), 1u);

  // Mutate the clone in every supported way.
  json j = clone.state.to_json();
  j["data"]["openedDatasetsNames"] = {"BraTS2019"};
  store.save_workspace_state(clone.info.id, WorkspaceState::from_json(j));
  store.update_workspace(clone.info.id, std::string("other"), std::nullopt);
  store.execute_run(clone.info.id, "BraTS2019/patient_002", "save \"lo\" t1 < 2\n");
  fs::remove(clone_dir / out);
  store.delete_workspace(clone.info.id);

  EXPECT_EQ(sha256_hex(read_file(src_dir / "workspace.json")), state_hash);
  EXPECT_EQ(tree_hash(src_dir), tree);
}

TEST_F(StoreTest, CloneOfMissingSource) {
  EXPECT_THROW(store.create_workspace("b", std::string("ws-missing")), NotFound);
  EXPECT_TRUE(store.list_workspaces().empty());
  for (const auto& e : fs::directory_iterator(fx.workspaces)) ADD_FAILURE() << "leftover " << e.path();
}

TEST_F(StoreTest, Lineage) {
  const auto root = store.create_workspace("root");
  const auto c1 = store.create_workspace("c1", root.info.id);
  const auto c2 = store.create_workspace("c2", c1.info.id);
  EXPECT_EQ(store.lineage(root.info.id), (std::vector<std::string>{root.info.id}));
  EXPECT_EQ(store.lineage(c2.info.id), (std::vector<std::string>{c2.info.id, c1.info.id, root.info.id}));
  store.delete_workspace(c1.info.id);
  EXPECT_EQ(store.lineage(c2.info.id), (std::vector<std::string>{c2.info.id, "<missing>"}));
  EXPECT_THROW(store.lineage(c1.info.id), NotFound);
}

TEST_F(StoreTest, LineageTerminatesAtMissingMiddleAncestor) {
  const auto root = store.create_workspace("root");
  const auto c1 = store.create_workspace("c1", root.info.id);
  const auto c2 = store.create_workspace("c2", c1.info.id);
  const auto c3 = store.create_workspace("c3", c2.info.id);
  store.delete_workspace(c1.info.id);
  EXPECT_EQ(store.lineage(c3.info.id), (std::vector<std::string>{c3.info.id, c2.info.id, "<missing>"}));
}

TEST_F(StoreTest, ListRuns) {
  const auto ws = store.create_workspace("w");
  EXPECT_TRUE(store.list_runs(ws.info.id).empty());
  const auto r1 = store.execute_run(ws.info.id, "BraTS2019/patient_001", "print \"d\" dice(t1 > 3, t1 > 3)\n");
  auto runs = store.list_runs(ws.info.id);
  ASSERT_EQ(runs.size(), 1u);
  EXPECT_EQ(runs[0].to_json(), r1.to_json());

  const auto r2 = store.execute_run(ws.info.id, "BraTS2019/patient_002", "print \"d\" volume(t1 > 3)\n");
  const auto run_dir = engine::run_directory(store.workspace_dir(ws.info.id), "BraTS2019/patient_001", r1.id);
  write_file(run_dir / "run.json", "{not json");
  runs = store.list_runs(ws.info.id);
  ASSERT_EQ(runs.size(), 1u);
  EXPECT_EQ(runs[0].id, r2.id);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("run.json"), std::string::npos);
  EXPECT_THROW(store.list_runs("ws-missing"), NotFound);
}

TEST_F(StoreTest, RunsAreTimestampSorted) {
  const auto ws = store.create_workspace("w");
  const auto dir = store.workspace_dir(ws.info.id);
  for (const auto& [id, stamp] : std::vector<std::pair<std::string, std::string>>{
           {"run-b", "2026-03-01T00:00:00Z"}, {"run-a", "2026-05-01T00:00:00Z"}, {"run-c", "2026-01-01T00:00:00Z"}}) {
    engine::RunRecord r;
    r.id = id;
    r.timestamp = stamp;
    r.case_path = "d/c";
    write_file(engine::run_directory(dir, "d/c", id) / "run.json", r.to_json().dump());
  }
  std::vector<std::string> order;
  for (const auto& r : store.list_runs(ws.info.id)) order.push_back(r.id);
  EXPECT_EQ(order, (std::vector<std::string>{"run-c", "run-b", "run-a"}));
}

TEST_F(StoreTest, UnknownCaseForRun) {
  const auto ws = store.create_workspace("w");
  EXPECT_THROW(store.execute_run(ws.info.id, "BraTS2019/nope", "print \"d\" 1"), NotFound);
  EXPECT_THROW(store.execute_run(ws.info.id, "nodataset", "print \"d\" 1"), NotFound);
}

TEST_F(StoreTest, RunOutputFile) {
  const auto ws = store.create_workspace("w");
  const auto r = store.execute_run(ws.info.id, "BraTS2019/patient_001", "save \"hi\" t1 > 3\n");
  EXPECT_EQ(store.run_output_file(ws.info.id, "BraTS2019/patient_001", r.id, "hi"),
            store.workspace_dir(ws.info.id) / r.output_layers[0].path);
  EXPECT_THROW(store.run_output_file(ws.info.id, "BraTS2019/patient_001", r.id, "nope"), NotFound);
  EXPECT_THROW(store.run_output_file(ws.info.id, "BraTS2019/patient_001", "run-x", "hi"), NotFound);
}

TEST(StoreConfig, Environment) {
  ::setenv("DATASET_PATH", "/data/datasets", 1);
  ::unsetenv("SCRIPTS_PATH");
  ::setenv("WORKSPACES_PATH", "", 1);
  const auto c = StoreConfig::from_environment();
  EXPECT_EQ(c.datasets, "/data/datasets");
  EXPECT_EQ(c.scripts, "./static/scripts");
  EXPECT_EQ(c.workspaces, "./static/workspaces");
  ::unsetenv("DATASET_PATH");
  ::unsetenv("WORKSPACES_PATH");
}

}  // namespace
