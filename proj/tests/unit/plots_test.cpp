#include <regex>
#include <set>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "smaneck/plots.hpp"
#include "smaneck/scenario.hpp"

using namespace smaneck;

namespace {

// Minimal well-formedness: prolog, one root, balanced tags.
bool balanced_xml(const std::string& doc) {
  if (doc.rfind("<?xml", 0) != 0) return false;
  std::vector<std::string> stack;
  int roots = 0;
  for (std::size_t at = doc.find('<', 1); at != std::string::npos; at = doc.find('<', at + 1)) {
    const std::size_t end = doc.find('>', at);
    if (end == std::string::npos) return false;
    const std::string body = doc.substr(at + 1, end - at - 1);
    const bool closing = body.front() == '/';
    const bool empty = body.back() == '/';
    const std::string name =
        body.substr(closing ? 1 : 0, body.find_first_of(" />", closing ? 1 : 0) - (closing ? 1 : 0));
    if (closing) {
      if (stack.empty() || stack.back() != name) return false;
      stack.pop_back();
    } else if (!empty) {
      if (stack.empty()) ++roots;
      stack.push_back(name);
    }
  }
  return stack.empty() && roots == 1;
}

std::string between(const std::string& doc, const std::string& open, char close) {
  const auto at = doc.find(open);
  if (at == std::string::npos) return {};
  const auto start = at + open.size();
  return doc.substr(start, doc.find(close, start) - start);
}

SimTrace run_5a() {
  auto sc = load_scenario(bundled_scenario_text());
  return simulate(sc.system, sc.sim);
}

std::string attribute(const std::string& doc, const std::string& element_id,
                      const std::string& name) {
  const auto at = doc.find("id=\"" + element_id + "\"");
  if (at == std::string::npos) return {};
  const auto start = doc.find(name + "=\"", at) + name.size() + 2;
  return doc.substr(start, doc.find('"', start) - start);
}

}  // namespace

TEST(Plots, FiveWellFormedFiles) {
  const auto files = render_plots(run_5a(), "demo");
  ASSERT_EQ(files.size(), 5u);
  const char* names[] = {"demo_phi.svg", "demo_theta.svg", "demo_force.svg",
                         "demo_temperature.svg", "demo_xi.svg"};
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(files[i].name, names[i]);
    EXPECT_TRUE(balanced_xml(files[i].content)) << files[i].name;
  }
}

TEST(Plots, AxisLabelsCarryUnits) {
  for (const auto& f : render_plots(run_5a(), "u")) {
    const auto tag = between(f.content, "class=\"ylabel\"", '<');
    const std::string label = tag.substr(tag.find('>') + 1);
    EXPECT_TRUE(std::regex_search(label, std::regex(R"(\(.+\))"))) << label;
    EXPECT_NE(f.content.find(">time (s)<"), std::string::npos);
  }
}

TEST(Plots, CrossingMarkerAtFirstFractionDrop) {
  const auto trace = run_5a();
  const long row = austenite_crossing_row(trace);
  ASSERT_GT(row, 0);
  EXPECT_LT(trace.rows[row].springs[0].fraction, trace.rows[row - 1].springs[0].fraction);
  for (long i = 1; i < row; ++i) {
    EXPECT_EQ(trace.rows[i].springs[0].fraction, 1.0);
  }
  const auto files = render_plots(trace, "x");
  const auto& temp = files[3].content;
  EXPECT_NE(temp.find("A_s'"), std::string::npos);
  EXPECT_NE(temp.find("A_f'"), std::string::npos);
  EXPECT_FALSE(attribute(temp, "as-crossing", "cx").empty());
  // The marker sits at the crossing time on the x axis: 80 px margin, 540 px plot, 5 s span.
  const double cx = std::stod(attribute(temp, "as-crossing", "cx"));
  EXPECT_NEAR(cx, 80.0 + trace.rows[row].time / 5.0 * 540.0, 0.01);
}

TEST(Plots, ZeroTraceIsFlat) {
  auto sc = load_scenario(bundled_scenario_text());
  sc.sim.profile = CurrentProfile{};
  sc.sim.duration = 0.1;
  const auto files = render_plots(simulate(sc.system, sc.sim), "z");
  const auto& theta = files[1].content;
  const std::string pts = between(theta, "points=\"", '"');
  ASSERT_FALSE(pts.empty());
  std::set<std::string> distinct;
  std::istringstream in(pts);
  for (std::string xy; in >> xy;) distinct.insert(xy.substr(xy.find(',') + 1));
  EXPECT_EQ(distinct.size(), 1u);
  EXPECT_EQ(austenite_crossing_row(simulate(sc.system, sc.sim)), -1);
}

TEST(Plots, EmptyTraceRejected) {
  EXPECT_THROW(render_plots(SimTrace{}, "e"), std::invalid_argument);
}
