#include "mimonoma/mimonoma.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "gtest/gtest.h"

namespace {

const mn_effective_cluster kFigure{0.052, 0.0052, 1000.0};

TEST(CApiTest, StatusNamesAndVersion) {
  EXPECT_STREQ(mn_status_name(MN_OK), "ok");
  EXPECT_STREQ(mn_status_name(MN_ERR_ALIGNMENT_INFEASIBLE),
               "alignment infeasible");
  EXPECT_STREQ(mn_version(), "1.0.0");
}

TEST(CApiTest, RatesAndIntervals) {
  const mn_power_split half{0.5, 0.5};
  mn_rate_pair r{};
  const mn_power_split strong{0.25, 0.75};
  ASSERT_EQ(mn_noma_rates(&kFigure, &strong, &r), MN_OK);
  EXPECT_NEAR(r.r1, std::log2(14.0), 1e-12);

  mn_dof_split d{};
  ASSERT_EQ(mn_optimal_dof(&kFigure, &half, &d), MN_OK);
  EXPECT_NEAR(d.lam2, 0.09090909090909091, 1e-15);
  ASSERT_EQ(mn_oma_rates(&kFigure, &half, &d, &r), MN_OK);
  double bound = 0.0;
  ASSERT_EQ(mn_oma_sum_bound(&kFigure, &half, &bound), MN_OK);
  EXPECT_NEAR(r.r1 + r.r2, bound, 1e-12);

  mn_pa_interval iv{};
  ASSERT_EQ(mn_pa_interval_compute(&kFigure, &half, MN_DOF_EQUAL, &iv), MN_OK);
  EXPECT_NEAR(iv.lo, 0.12077134402462535, 1e-12);
  EXPECT_NEAR(iv.hi, 0.28653459992264355, 1e-12);
  EXPECT_EQ(iv.kind, MN_DOF_EQUAL);

  double a1 = 0.0;
  ASSERT_EQ(mn_bisect_parity(&kFigure, &half, MN_USER_WEAK, MN_DOF_EQUAL, &a1),
            MN_OK);
  EXPECT_NEAR(a1, iv.hi, 1e-9);

  mn_pa_interval scan{};
  ASSERT_EQ(mn_scan_dominance(&kFigure, &half, MN_DOF_EQUAL, 1e-3, &scan),
            MN_OK);
  EXPECT_LE(scan.lo, iv.lo + 1e-3);
  EXPECT_GE(scan.hi, iv.hi - 1e-3);

  mn_power_split pick{};
  ASSERT_EQ(mn_select_pa(&iv, MN_PA_MIDPOINT, &pick), MN_OK);
  EXPECT_NEAR(pick.a1sq, 0.5 * (iv.lo + iv.hi), 1e-15);

  double margin = -1.0;
  ASSERT_EQ(mn_feasibility_margin(&kFigure, &half, &margin), MN_OK);
  EXPECT_GE(margin, 0.0);

  double jain = 0.0;
  const mn_rate_pair three_one{3.0, 1.0};
  ASSERT_EQ(mn_jain_index(&three_one, &jain), MN_OK);
  EXPECT_DOUBLE_EQ(jain, 0.8);

  mn_dof_split arg{};
  double best = 0.0;
  ASSERT_EQ(mn_grid_max_oma_sum(&kFigure, &half, 1e-3, &arg, &best), MN_OK);
  EXPECT_LE(best, bound + 1e-12);
}

TEST(CApiTest, ErrorsCarryMessages) {
  const mn_power_split bad{0.7, 0.7};
  mn_rate_pair r{};
  EXPECT_EQ(mn_noma_rates(&kFigure, &bad, &r), MN_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(mn_last_error_message()), "");

  EXPECT_EQ(mn_noma_rates(nullptr, &bad, &r), MN_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(mn_noma_rates(&kFigure, &bad, nullptr), MN_ERR_INVALID_ARGUMENT);

  const mn_effective_cluster unreachable{0.05, 0.0, 10.0};
  const mn_power_split half{0.5, 0.5};
  mn_pa_interval iv{};
  EXPECT_EQ(mn_pa_interval_compute(&unreachable, &half, MN_DOF_OPTIMAL, &iv),
            MN_ERR_INFEASIBLE);
  EXPECT_NE(std::string(mn_last_error_message()).find("weak user unreachable"),
            std::string::npos);

  const mn_pa_interval empty{0.6, 0.4, MN_DOF_OPTIMAL};
  mn_power_split pick{};
  EXPECT_EQ(mn_select_pa(&empty, MN_PA_MIDPOINT, &pick), MN_ERR_INFEASIBLE);

  double pl = 0.0;
  EXPECT_EQ(mn_path_loss(-1.0, 3.8, &pl), MN_ERR_INVALID_ARGUMENT);
  ASSERT_EQ(mn_path_loss(10.0, 3.8, &pl), MN_OK);
  EXPECT_NEAR(pl, 79.43282347242815, 1e-12);
}

TEST(CApiTest, SystemBeamforming) {
  mn_system* sys = nullptr;
  ASSERT_EQ(mn_system_create(&sys), MN_OK);
  ASSERT_EQ(mn_system_set_seed(sys, 9), MN_OK);
  std::vector<mn_cluster_report> reports(8);
  size_t count = 0;
  ASSERT_EQ(mn_system_beamform(sys, reports.data(), reports.size(), &count),
            MN_OK);
  ASSERT_EQ(count, 4u);
  for (size_t i = 0; i < count; ++i) {
    EXPECT_EQ(reports[i].cluster_index, static_cast<int>(i));
    EXPECT_LT(reports[i].alignment_residual, 1e-10);
    EXPECT_LT(reports[i].max_interference_gain, 1e-18);
    EXPECT_GE(reports[i].gamma1, reports[i].gamma2);
  }
  EXPECT_EQ(mn_system_set_antennas(sys, 4, 2), MN_ERR_ALIGNMENT_INFEASIBLE);
  mn_system_destroy(sys);
  mn_system_destroy(nullptr);
}

TEST(CApiTest, ExperimentTableLifecycle) {
  mn_experiment* exp = nullptr;
  ASSERT_EQ(mn_experiment_create(MN_EXP_FIG1, &exp), MN_OK);
  ASSERT_EQ(mn_experiment_set_grid(exp, 11), MN_OK);
  EXPECT_EQ(mn_experiment_set_grid(exp, 1), MN_ERR_INVALID_ARGUMENT);
  mn_table* table = nullptr;
  ASSERT_EQ(mn_experiment_run(exp, &table), MN_OK);
  EXPECT_EQ(mn_table_rows(table), 11u);
  ASSERT_GT(mn_table_columns(table), 2u);
  EXPECT_STREQ(mn_table_column_name(table, 0), "sweep_variable");
  EXPECT_EQ(mn_table_column_name(table, 10000), nullptr);
  double r1 = 0.0;
  ASSERT_EQ(mn_table_number(table, 0, "noma1_r1", &r1), MN_OK);
  EXPECT_GT(r1, 0.0);
  EXPECT_EQ(mn_table_number(table, 0, "missing", &r1), MN_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(mn_table_number(table, 99, "noma1_r1", &r1),
            MN_ERR_INVALID_ARGUMENT);

  const auto path = std::filesystem::temp_directory_path() / "mn_capi.json";
  ASSERT_EQ(mn_table_write(table, MN_FORMAT_JSON, path.c_str()), MN_OK);
  EXPECT_TRUE(std::filesystem::exists(path));
  EXPECT_TRUE(std::filesystem::exists(path.string() + ".plot.py"));
  EXPECT_EQ(mn_table_write(table, MN_FORMAT_CSV, "/nonexistent-dir/a/b.csv"),
            MN_ERR_IO);

  mn_table_destroy(table);
  mn_experiment_destroy(exp);
  mn_table_destroy(nullptr);
  mn_experiment_destroy(nullptr);
}

TEST(CApiTest, VerifyReport) {
  mn_experiment* exp = nullptr;
  ASSERT_EQ(mn_experiment_create(MN_EXP_VERIFY, &exp), MN_OK);
  ASSERT_EQ(mn_experiment_set_instances(exp, 50), MN_OK);
  ASSERT_EQ(mn_experiment_set_trials(exp, 100), MN_OK);
  mn_report* report = nullptr;
  ASSERT_EQ(mn_experiment_verify(exp, &report), MN_OK);
  EXPECT_EQ(mn_report_passed(report), 1) << mn_report_text(report);
  EXPECT_NE(std::string(mn_report_text(report)).find("verify: all suites passed"),
            std::string::npos);
  mn_report_destroy(report);
  mn_experiment_destroy(exp);
}

}  // namespace
