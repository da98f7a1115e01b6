#include <gtest/gtest.h>

#include <sstream>

#include "nnadv/report.hpp"

namespace nnadv {
namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t hits = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++hits;
  return hits;
}

TEST(FormatNumberTest, Examples) {
  EXPECT_EQ(format_number(0.9), "0.9");
  EXPECT_EQ(format_number(10.0), "10");
  EXPECT_EQ(format_number(1021.0 / 506.0), "2.01778656126");
  EXPECT_EQ(format_number(std::numeric_limits<double>::quiet_NaN()), "");
  EXPECT_EQ(format_number(std::optional<double>{}), "");
}

TEST(CsvTest, HeaderAndRoundTrip) {
  const auto rows = start_sweep(generate_gk(1, MetricSpec::l2()),
                                {TieBreakPolicy::lexicographic(), TieBreakPolicy::index_order()});
  const std::string csv = sweep_csv(rows);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, kCsvHeader);
  const auto columns = split(line, ',');
  ASSERT_EQ(columns.size(), 13u);
  std::size_t lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    const auto fields = split(line, ',');
    ASSERT_EQ(fields.size(), columns.size()) << line;
    EXPECT_EQ(fields[0], "1");
    EXPECT_EQ(fields[1], "26");
    EXPECT_EQ(fields[2], "l2");
    // Numeric fields survive parse then format unchanged.
    for (std::size_t c = 5; c < fields.size(); ++c) {
      ASSERT_FALSE(fields[c].empty()) << columns[c];
      EXPECT_EQ(format_number(std::stod(fields[c])), fields[c]) << columns[c];
    }
  }
  EXPECT_EQ(lines, 52u);
}

TEST(CsvTest, MissingOptimumIsEmpty) {
  // Twenty scattered points: no grid, and too many for Held-Karp.
  std::vector<ScaledPoint> pts;
  for (std::int64_t i = 0; i < 20; ++i) pts.push_back({i * 3, (i * 7) % 5});
  const auto rows = start_sweep(Instance(pts, 1, MetricSpec::l1(), 0, 1), {TieBreakPolicy::lexicographic()}, {0});
  const auto fields = split(csv_row(rows.front()), ',');
  EXPECT_EQ(fields[0], "");
  EXPECT_EQ(fields[7], "");
  EXPECT_EQ(fields[8], "");
  EXPECT_EQ(fields[10], "");
}

TEST(CsvTest, ByteDeterministic) {
  const Instance g = generate_gk(2, MetricSpec::linf());
  const std::vector<TieBreakPolicy> policies{TieBreakPolicy::lexicographic(), TieBreakPolicy::index_order()};
  EXPECT_EQ(sweep_csv(start_sweep(g, policies)), sweep_csv(start_sweep(g, policies, {}, 3)));
  EXPECT_EQ(sweep_json(start_sweep(g, policies)), sweep_json(start_sweep(g, policies)));
}

TEST(CertifyReportTest, TextCsvAndJson) {
  std::vector<CertifyCell> cells{certify_cell(0, MetricSpec::l2()), certify_cell(2, MetricSpec::graphic())};
  ASSERT_TRUE(cells[0].passed());
  ASSERT_TRUE(cells[1].passed());
  const std::string text = certify_text(cells);
  EXPECT_NE(text.find("k=0 metric=l2 (a)=pass (b)=pass (c)=pass (d)=pass n=10 length=9 "), std::string::npos);
  EXPECT_NE(text.find("ratio=0.9 chain=0.75"), std::string::npos);
  EXPECT_NE(text.find("k=2 metric=graphic"), std::string::npos);
  EXPECT_NE(text.find("length=77"), std::string::npos);

  const std::string csv = certify_csv(cells);
  EXPECT_EQ(count(csv, "\n"), 3u);
  EXPECT_NE(csv.find("0,10,l2,adversarial,0,9,"), std::string::npos);

  const auto json = nlohmann::json::parse(certify_json(cells));
  EXPECT_EQ(json["lower_bound_expression"], "(log2(n) - 1) / 4");
  ASSERT_EQ(json["rows"].size(), 2u);
  EXPECT_EQ(json["rows"][1]["open_len"], 77);
  EXPECT_EQ(json["rows"][1]["passed"], true);
}

TEST(CertifyReportTest, FailureLineNamesTheStep) {
  TourPath tour = build_adversarial_tour(1).tour;
  std::swap(tour.order[4], tour.order[12]);
  const CertifyCell cell = certify_cell(1, MetricSpec::l1(), tour);
  EXPECT_FALSE(cell.passed());
  const std::string text = certify_text({cell});
  EXPECT_NE(text.find("(d)=FAIL"), std::string::npos);
  EXPECT_NE(text.find(" step="), std::string::npos);
  EXPECT_TRUE(certify_csv({cell}) == std::string(kCsvHeader) + "\n");
}

TEST(InstanceJsonTest, GraphicListsEdges) {
  const auto json = nlohmann::json::parse(instance_json(generate_gk(0, MetricSpec::graphic())));
  EXPECT_EQ(json["n"], 10);
  EXPECT_EQ(json["edges"].size(), 13u);
  EXPECT_EQ(json["landmarks"]["m"], 7);
  EXPECT_EQ(json["cities"][7], nlohmann::json::array({2, 1}));
  EXPECT_FALSE(nlohmann::json::parse(instance_json(generate_gk(0, MetricSpec::l2()))).contains("edges"));
}

TEST(SvgTest, ElementCounts) {
  const Instance g0 = generate_gk(0, MetricSpec::l2());
  const std::string adv = render_svg(g0, base_tour_g0());
  EXPECT_EQ(count(adv, "class=\"city\""), 10u);
  EXPECT_EQ(count(adv, "class=\"edge\""), 9u);
  EXPECT_EQ(count(adv, "class=\"landmark\""), 2u);
  EXPECT_EQ(adv.rfind("</svg>\n"), adv.size() - 7);

  const Instance g1 = generate_gk(1, MetricSpec::l2());
  const std::string perim = render_svg(g1, perimeter_tour(g1).tour);
  EXPECT_EQ(count(perim, "class=\"city\""), 26u);
  EXPECT_EQ(count(perim, "class=\"edge\""), 26u);

  const std::string empty = render_svg(g0, TourPath{});
  EXPECT_EQ(count(empty, "class=\"city\""), 10u);
  EXPECT_EQ(count(empty, "class=\"edge\""), 0u);
  EXPECT_EQ(render_svg(g1, perimeter_tour(g1).tour), perim);
}

}  // namespace
}  // namespace nnadv
