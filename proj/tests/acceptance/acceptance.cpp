// Acceptance suite: one PASS/FAIL line per criterion, exit status is the
// number of failures.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "hoopstat/analyses.hpp"
#include "hoopstat/dataset.hpp"
#include "hoopstat/errors.hpp"
#include "hoopstat/linear_fit.hpp"
#include "hoopstat/numerics.hpp"
#include "hoopstat/stats_tests.hpp"

namespace {

using namespace hoopstat;

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [" << what << "]";
    }
  }
  void near(double got, double want, double tol, const std::string& what) {
    detail << " " << what << "=" << got;
    expect(std::abs(got - want) <= tol, what + " want " + std::to_string(want) + "±" + std::to_string(tol));
  }
  void within(double got, double lo, double hi, const std::string& what) {
    detail << " " << what << "=" << got;
    expect(got >= lo && got <= hi, what + " want [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Check&)>& body) {
  Check c;
  try {
    body(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.detail << " [exception: " << e.what() << "]";
  }
  failures += !c.ok;
  std::printf("%s %2d %s:%s\n", c.ok ? "PASS" : "FAIL", id, title.c_str(), c.detail.str().c_str());
  std::fflush(stdout);
}

const data::Dataset& dataset() {
  static const data::Dataset ds = data::load_dataset(HOOPSTAT_ACCEPTANCE_DATA_DIR);
  return ds;
}

double cell(const analyses::Table& t, std::size_t row, std::string_view col) {
  const auto& v = t.rows.at(row).at(t.column(col));
  if (const auto* i = std::get_if<std::int64_t>(&v)) return double(*i);
  return std::get<double>(v);
}
const std::string& text(const analyses::Table& t, std::size_t row, std::string_view col) {
  return std::get<std::string>(t.rows.at(row).at(t.column(col)));
}

// Printed per-team table: name, titles, appearances, expected, difference.
const std::vector<std::tuple<std::string, int, int, double, double>> kTeamTable{
    {"Lokomotiv Kuban", 0, 1, 0.25, -0.25}, {"Unicaja Malaga", 0, 1, 0.25, -0.25},
    {"PAOK", 0, 1, 0.25, -0.25},            {"Estudiantes", 0, 1, 0.25, -0.25},
    {"Scavolini Pezaro", 0, 1, 0.25, -0.25}, {"Orthez", 0, 1, 0.25, -0.25},
    {"Nashua EBBC", 0, 1, 0.25, -0.25},     {"Radniski Belgrade", 0, 1, 0.25, -0.25},
    {"Crvena Zvezda", 0, 1, 0.25, -0.25},   {"Standard Liege", 0, 1, 0.25, -0.25},
    {"Steaua Bucarest", 0, 1, 0.25, -0.25}, {"Lech Poznan", 0, 1, 0.25, -0.25},
    {"Honved", 0, 1, 0.25, -0.25},          {"Pologna Warszawa", 0, 1, 0.25, -0.25},
    {"Efes Pilsen", 0, 2, 0.5, -0.5},       {"Berck", 0, 2, 0.5, -0.5},
    {"Zadar", 0, 3, 0.75, -0.75},           {"Olimpija Ljubliana", 0, 3, 0.75, -0.75},
    {"OKK Beograd", 0, 3, 0.75, -0.75},     {"ASVEL", 0, 3, 0.75, -0.75},
    {"Aris", 0, 3, 0.75, -0.75},            {"Montepaschi Siena", 0, 4, 1, -1},
    {"Fortitudo Bologna", 0, 3, 0.75, -0.75}, {"AEK", 0, 3, 0.75, -0.75},
    {"Praha", 0, 5, 1.25, -1.25},           {"Baskonia", 0, 5, 1.25, -1.25},
    {"Treviso", 0, 4, 1, -1},               {"Brno", 0, 4, 1, -1},
    {"Academic", 0, 2, 0.5, -0.5},          {"Limoges", 1, 3, 0.75, 0.25},
    {"Partizan", 1, 5, 1.25, -0.25},        {"Virtus Roma", 1, 1, 0.25, 0.75},
    {"Bosna", 1, 4, 1, 0},                  {"Zalgiris", 1, 3, 0.75, 0.25},
    {"Joventut Badalona", 1, 2, 0.5, 0.5},  {"Dinamo Tbilisi", 1, 3, 0.75, 0.25},
    {"Fenerbahce", 1, 4, 1, 0},             {"Cibona", 2, 2, 0.5, 1.5},
    {"Cantu", 2, 4, 1, 1},                  {"Virtus Bologna", 2, 6, 1.5, 0.5},
    {"FC Barcelona", 2, 16, 4, -2},         {"Split", 3, 4, 1, 2},
    {"ASK Riga (Latvia)", 3, 4, 1, 2},      {"Olympia Milano", 3, 10, 2.5, 0.5},
    {"Olympiacos", 3, 10, 2.5, 0.5},        {"Varese", 5, 11, 2.75, 2.25},
    {"Panathinaikos", 6, 12, 3, 3},         {"Maccabi Tel Aviv", 6, 20, 5, 1},
    {"CSKA Moscow", 7, 29, 7.25, -0.25},    {"Real Madrid", 10, 32, 8, 2}};

// Printed per-country table: titles, runner-up finishes, appearances, clubs.
const std::map<std::string, std::array<int, 4>> kCountryTable{
    {"Spain", {13, 16, 57, 6}},    {"Italy", {13, 13, 44, 9}},        {"Greece", {9, 7, 29, 5}},
    {"Russia", {7, 6, 30, 2}},     {"Israel", {6, 9, 20, 1}},         {"Croatia", {5, 1, 9, 3}},
    {"Latvia", {3, 1, 4, 1}},      {"Turkey", {1, 2, 6, 2}},          {"Lithuania", {1, 1, 3, 1}},
    {"Georgia", {1, 1, 3, 1}},     {"Bosnia", {1, 0, 4, 1}},          {"Serbia", {1, 0, 10, 4}},
    {"France", {1, 0, 9, 4}},      {"Czech Republic", {0, 3, 9, 2}},  {"Bulgaria", {0, 2, 2, 1}},
    {"Slovenia", {0, 0, 3, 1}},    {"Poland", {0, 0, 2, 2}},          {"Romania", {0, 0, 1, 1}},
    {"Netherlands", {0, 0, 1, 1}}, {"Hungary", {0, 0, 1, 1}},         {"Belgium", {0, 0, 1, 1}}};

data::Region region_of(const std::string& country) {
  static const std::set<std::string> east{"Russia", "Latvia", "Lithuania", "Georgia",
                                          "Croatia", "Bosnia", "Serbia", "Slovenia"};
  if (country == "Spain") return data::Region::spain;
  if (country == "Italy") return data::Region::italy;
  return east.count(country) ? data::Region::ex_ussr_ex_yugoslavia : data::Region::other;
}

// Brute-force null distributions.

double enum_signed_rank_cdf(int n, int v) {
  long long le = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    int s = 0;
    for (int r = 1; r <= n; ++r) s += (mask >> (r - 1) & 1u) ? r : 0;
    le += s <= v;
  }
  return double(le) / double(1u << n);
}

double enum_mann_whitney_cdf(int n1, int n2, int u) {
  // Choose which of the n1+n2 sorted positions hold x; U counts (x, y)
  // pairs with x above y.
  const int n = n1 + n2;
  long long le = 0, total = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != n1) continue;
    int stat = 0, ys = 0;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1u) stat += ys;
      else ++ys;
    }
    le += stat <= u;
    ++total;
  }
  return double(le) / double(total);
}

std::vector<double> enum_spearman_cdf(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  const int max_s = (n * n * n - n) / 3;
  std::vector<double> counts(max_s + 1, 0.0);
  double total = 0;
  do {
    int s = 0;
    for (int i = 0; i < n; ++i) s += (p[i] - i) * (p[i] - i);
    counts[s] += 1;
    total += 1;
  } while (std::next_permutation(p.begin(), p.end()));
  for (int s = 1; s <= max_s; ++s) counts[s] += counts[s - 1];
  for (auto& c : counts) c /= total;
  return counts;
}

std::vector<double> random_walk(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> z;
  std::vector<double> y(n);
  double level = 0;
  for (auto& v : y) v = level += z(rng);
  return y;
}

}  // namespace

int main() {
  const auto& ds = dataset();

  criterion(1, "Pearson, top scorer ppg vs team performance", [&](Check& c) {
    const auto rep = analyses::analyze_scorer_correlation(ds);
    const auto& r = rep.test("pearson").base();
    c.near(r.extras.at("estimate"), -0.4002, 0.0005, "r");
    c.near(r.statistic, -2.2271, 0.005, "t");
    c.near(r.p_value, 0.0348, 0.0005, "p");
    c.expect(r.n_summary.at("n") == 28, "n=28");
  });

  criterion(2, "Spearman, top scorer ppg vs team performance", [&](Check& c) {
    const auto rep = analyses::analyze_scorer_correlation(ds);
    const auto& r = rep.test("spearman").base();
    c.near(r.extras.at("estimate"), -0.3925, 0.001, "rho");
    c.near(r.statistic, 5088.0, 1.0, "S");
    c.near(r.p_value, 0.0389, 0.001, "p");
  });

  criterion(3, "Binomial minimum-likelihood two-sided p at p0=0.25", [&](Check& c) {
    for (auto [k, n, want] : {std::tuple{2, 2, 0.0625}, {3, 4, 0.05078}, {6, 12, 0.08608}, {5, 8, 0.02730}}) {
      c.near(stats::binomial_test_two_sided(k, n, 0.25).p_value, want, 1e-4,
             "p(" + std::to_string(k) + "/" + std::to_string(n) + ")");
    }
  });

  criterion(4, "Expected-titles table for every team", [&](Check& c) {
    const auto rows = data::team_records(ds, 1958, 2018);
    std::map<std::string, const data::TeamRecord*> by_name;
    for (const auto& r : rows) by_name[r.display_name] = &r;
    c.expect(rows.size() == kTeamTable.size(), "50 rows");
    int matched = 0;
    for (const auto& [name, titles, apps, expected, diff] : kTeamTable) {
      const auto it = by_name.find(name);
      if (it == by_name.end()) {
        c.expect(false, "missing " + name);
        continue;
      }
      const auto& r = *it->second;
      const bool same = r.titles == titles && r.appearances == apps && r.expected == expected &&
                        r.difference == diff;
      c.expect(same, "row " + name);
      matched += same;
    }
    c.detail << " rows_matched=" << matched << "/" << kTeamTable.size();
  });

  criterion(5, "Country rollup and region totals", [&](Check& c) {
    const auto rows = data::country_rollup(ds);
    int matched = 0;
    for (const auto& r : rows) {
      const auto it = kCountryTable.find(r.country);
      const bool same = it != kCountryTable.end() &&
                        std::array{r.titles, r.runners_up, r.appearances, r.teams} == it->second &&
                        r.region == region_of(r.country);
      c.expect(same, "country " + r.country);
      matched += same;
    }
    c.expect(rows.size() == kCountryTable.size(), "21 countries");
    std::array<double, 4> titles{}, apps{};
    for (const auto& [country, v] : kCountryTable) {
      const auto col = std::find(data::kRegions.begin(), data::kRegions.end(), region_of(country)) -
                       data::kRegions.begin();
      titles[col] += v[0];
      apps[col] += v[2];
    }
    const data::PeriodScheme all{{"all", 1958, 2018}};
    const auto tm = data::titles_by_region_period(ds, all);
    const auto am = data::appearances_by_region_period(ds, all);
    for (std::size_t k = 0; k < 4; ++k) {
      c.expect(tm(0, k) == titles[k] && am(0, k) == apps[k],
               "region " + std::string(data::to_string(data::kRegions[k])));
    }
    c.detail << " countries_matched=" << matched << " spain=" << tm(0, 0) << "/" << am(0, 0)
             << " italy=" << tm(0, 1) << "/" << am(0, 1);
  });

  criterion(6, "Period averages of champion scoring", [&](Check& c) {
    const double want[6][3] = {{82.61, 72.90, 77.75}, {91.20, 77.88, 84.54}, {88.27, 81.92, 85.09},
                               {72.92, 65.61, 69.27}, {82.94, 74.38, 78.66}, {81.86, 75.18, 78.52}};
    const auto rep = analyses::analyze_champion_dominance(ds);
    const auto& t = rep.table("decade_averages");
    c.expect(t.rows.size() == 6, "6 periods");
    double worst = 0;
    for (std::size_t r = 0; r < std::min<std::size_t>(6, t.rows.size()); ++r) {
      for (int k = 0; k < 3; ++k) {
        const char* col = k == 0 ? "champion" : k == 1 ? "opponent" : "points_per_team";
        worst = std::max(worst, std::abs(cell(t, r, col) - want[r][k]));
      }
    }
    c.within(worst, 0, 0.05, "max_cell_error");
  });

  criterion(7, "Runs test on finals sign sequence and z-to-p map", [&](Check& c) {
    const auto rep = analyses::analyze_pluralism(ds);
    const auto& r = rep.test("runs_full").base();
    c.expect(r.n_summary.at("n_above") == 24 && r.n_summary.at("n_below") == 40, "n1=24 n2=40");
    c.expect(r.n_summary.at("runs") == 31, "R=31");
    c.near(r.statistic, 0.0, 0.0, "z");
    c.near(r.p_value, 1.0, 0.0, "p");
    c.near(2 * numerics::normal_sf(1.5607), 0.1186, 0.0002, "p(z=1.5607)");
  });

  criterion(8, "Monte-Carlo multinomial, 100000 iterations", [&](Check& c) {
    analyses::FinalFourOptions o;
    o.monte_carlo.iterations = 100000;
    const auto full = analyses::analyze_final_four_randomness(ds, o).test("multinomial").base();
    c.within(full.p_value, 0.535, 0.555, "p_full");
    c.within(full.extras.at("mc_standard_error"), 0.0014, 0.0017, "se_full");
    o.era = analyses::Era::modern;
    const auto modern = analyses::analyze_final_four_randomness(ds, o).test("multinomial").base();
    c.within(modern.p_value, 0.672, 0.692, "p_modern");
  });

  criterion(9, "Wilcoxon on finals first-scorer shares", [&](Check& c) {
    const auto rep = analyses::analyze_pluralism(ds);
    const auto& full = rep.test("wilcoxon_full").base();
    c.near(full.statistic, 824, 0, "V_full");
    c.within(full.p_value, 0.145, 0.155, "p_full");
    const auto& modern = rep.test("wilcoxon_modern").base();
    c.near(modern.statistic, 42.5, 0, "V_modern");
    c.near(modern.p_value, 0.0206, 0.002, "p_modern");
  });

  criterion(10, "Mann-Whitney on finals possessions", [&](Check& c) {
    const auto rep = analyses::analyze_pace(ds);
    const auto& g = rep.table("group_means");
    c.near(cell(g, 0, "mean"), 66.25, 0.05, "mean_before");
    c.near(cell(g, 1, "mean"), 71.33, 0.05, "mean_after");
    const auto& r = rep.test("mann_whitney").base();
    c.near(r.statistic, 84, 0, "U");
    c.near(r.p_value, 0.0103, 0.002, "p");
  });

  criterion(11, "Zivot-Andrews on the share-difference series", [&](Check& c) {
    const auto rep = analyses::analyze_pluralism(ds);
    const auto* za = rep.test("zivot_andrews").as_break();
    const int ordinal = rep.find_series("share_difference")[za->break_position].season.ordinal;
    c.detail << " break=" << za->break_label;
    c.expect(ordinal == 1998, "break ordinal 1998");
    c.near(za->base.statistic, -4.35, 0.15, "stat");
    c.expect(!za->decision_at.at(0.10), "fail to reject at 10%");
  });

  criterion(12, "Friedman on region-by-period counts", [&](Check& c) {
    const auto rep = analyses::analyze_dominance(ds);
    const auto& apps = rep.test("friedman_appearances").base();
    const auto& titles = rep.test("friedman_titles").base();
    c.within(apps.statistic, 5.5, 7.5, "apps_stat");
    c.within(apps.p_value, 0, 0.15, "apps_p");
    c.within(titles.statistic, 0, 2, "titles_stat");
    c.within(titles.p_value, 0.7, 1, "titles_p");
  });

  criterion(13, "Exact null distributions against enumeration", [&](Check& c) {
    double worst = 0;
    for (int n = 1; n <= 10; ++n) {
      for (int v = -1; v <= n * (n + 1) / 2 + 1; ++v) {
        worst = std::max(worst, std::abs(numerics::signed_rank_null_cdf(n, v) - enum_signed_rank_cdf(n, v)));
      }
    }
    for (int n1 = 1; n1 <= 6; ++n1) {
      for (int n2 = 1; n2 <= 6; ++n2) {
        for (int u = -1; u <= n1 * n2 + 1; ++u) {
          worst = std::max(worst, std::abs(numerics::mann_whitney_null_cdf(n1, n2, u) -
                                           enum_mann_whitney_cdf(n1, n2, u)));
        }
      }
    }
    for (int n = 3; n <= 7; ++n) {
      const auto cdf = enum_spearman_cdf(n);
      for (int s = 0; s < int(cdf.size()); ++s) {
        worst = std::max(worst, std::abs(numerics::spearman_tail_prob(n, s) - cdf[s]));
      }
    }
    c.within(worst, 0, 1e-12, "max_abs_error");
  });

  criterion(14, "Invariance suites, 1000 instances each", [&](Check& c) {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> u(-10, 10);
    auto reals = [&](std::size_t n) {
      std::vector<double> v(n);
      for (auto& x : v) x = u(rng);
      return v;
    };
    auto size = [&](std::size_t lo, std::size_t hi) {
      return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    int affine = 0, swap = 0, seed = 0, span = 0;
    for (int i = 0; i < 1000; ++i) {
      const std::size_t n = size(4, 30);
      const auto x = reals(n), y = reals(n);
      std::vector<double> x2(n), y2(n);
      for (std::size_t k = 0; k < n; ++k) {
        x2[k] = -2.5 * x[k] + 7;
        y2[k] = 0.5 * y[k] - 3;
      }
      const auto p = stats::pearson_test(x, y), p2 = stats::pearson_test(x2, y2);
      const auto s = stats::spearman_test(x, y), s2 = stats::spearman_test(x2, y2);
      affine += std::abs(p.extras.at("estimate") + p2.extras.at("estimate")) < 1e-9 &&
                std::abs(p.p_value - p2.p_value) < 1e-7 &&
                std::abs(s.extras.at("estimate") + s2.extras.at("estimate")) < 1e-12;

      const auto g1 = reals(size(1, 25)), g2 = reals(size(1, 25));
      const auto a = stats::mann_whitney(g1, g2), b = stats::mann_whitney(g2, g1);
      const auto w1 = stats::wilcoxon_signed_rank(x, y), w2 = stats::wilcoxon_signed_rank(y, x);
      swap += a.statistic + b.statistic == double(g1.size() * g2.size()) &&
              std::abs(a.p_value - b.p_value) < 1e-12 && std::abs(w1.p_value - w2.p_value) < 1e-12;

      std::vector<stats::FinalFourDraw> ff(size(2, 15));
      for (auto& d : ff) {
        std::vector<int> ids(12);
        std::iota(ids.begin(), ids.end(), 0);
        std::shuffle(ids.begin(), ids.end(), rng);
        std::copy_n(ids.begin(), 4, d.participants.begin());
        d.winner = d.participants[size(0, 3)];
      }
      stats::MultinomialOptions mo;
      mo.iterations = 1000;
      mo.workers = 1;
      mo.seed = 2 * std::uint64_t(i);
      const auto m1 = stats::multinomial_mc_gof(ff, mo);
      mo.seed += 1;
      const auto m2 = stats::multinomial_mc_gof(ff, mo);
      const double se = std::hypot(m1.extras.at("mc_standard_error"), m2.extras.at("mc_standard_error"));
      seed += std::abs(m1.p_value - m2.p_value) <= std::max(6 * se, 2.0 / 1000);

      const std::size_t cols = size(1, 5), rows = size(cols + 1, 30);
      Matrix design(rows, cols);
      std::vector<double> beta = reals(cols), resp(rows, 0.0);
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t k = 0; k < cols; ++k) {
          design(r, k) = k == 0 ? 1.0 : u(rng);
          resp[r] += design(r, k) * beta[k];
        }
      }
      const auto fit = numerics::ols_fit(design, resp);
      bool ok = true;
      for (std::size_t k = 0; k < cols; ++k) ok &= std::abs(fit.coefficients[k] - beta[k]) < 1e-8;
      span += ok;
    }
    c.detail << " affine=" << affine << " swap=" << swap << " mc_seed=" << seed << " ols_span=" << span;
    c.expect(affine == 1000 && swap == 1000 && seed == 1000 && span == 1000, "all 1000");
  });

  criterion(15, "Zivot-Andrews power and size", [&](Check& c) {
    std::mt19937_64 rng(15);
    std::normal_distribution<double> z;
    int power = 0;
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<double> y(80);
      double e = 0;
      for (std::size_t t = 0; t < y.size(); ++t) {
        e = 0.3 * e + z(rng);
        y[t] = 0.2 * double(t) + (t > 40 ? 8.0 - 0.4 * double(t - 40) : 0.0) + e;
      }
      power += stats::zivot_andrews(y, {1, 0.15}).decision_at.at(0.01);
    }
    int size = 0;
    for (int rep = 0; rep < 100; ++rep) size += stats::zivot_andrews(random_walk(rng, 200)).decision_at.at(0.10);
    c.detail << " broken_trend_rejections_at_1pct=" << power << "/20"
             << " random_walk_rejections_at_10pct=" << size << "/100";
    c.expect(power == 20, "broken trend rejects at 1%");
    c.expect(size <= 15, "size <= 15%");
  });

  std::printf("%d of 15 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
