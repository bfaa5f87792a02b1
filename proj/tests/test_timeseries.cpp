#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <map>
#include <sstream>

#include "fxmst/cleaning.hpp"
#include "fxmst/csv.hpp"
#include "fxmst/panel.hpp"
#include "fxmst/returns.hpp"
#include "support/helpers.hpp"

using namespace fxmst;
using testing_support::make_panel;
using testing_support::random_panel;

namespace {

std::string panel_text(const RatePanel& panel) {
    std::ostringstream out;
    write_panel_csv(out, panel);
    return out.str();
}

RatePanel reload(const RatePanel& panel, const CleaningConfig& config = {}) {
    std::istringstream in{panel_text(panel)};
    return load_panel(in, config);
}

bool panels_equal(const RatePanel& a, const RatePanel& b, double rel_tol = 0.0) {
    if (a.base() != b.base()) return false;
    if (a.currencies() != b.currencies()) return false;
    if (a.timestamps() != b.timestamps()) return false;
    for (std::size_t t = 0; t < a.sample_count(); ++t) {
        for (std::size_t j = 0; j < a.currency_count(); ++j) {
            const double x = a.rate(t, j);
            const double y = b.rate(t, j);
            if (rel_tol == 0.0 ? x != y : std::fabs(x - y) > rel_tol * std::fabs(x)) {
                return false;
            }
        }
    }
    return true;
}

} // namespace

TEST_CASE("panel csv parses comma and tab files") {
    const std::string comma = "# reference: USD\n"
                              "date,currency,rate\n"
                              "2001-01-01,EUR,1.05\n"
                              "2001-01-02,EUR,1.07\n"
                              "2001-01-01,JPY,115.2\n"
                              "2001-01-02,JPY,116.0\n";
    std::istringstream in{comma};
    const RatePanel panel = read_panel_csv(in);
    REQUIRE(panel.base().str() == "USD");
    REQUIRE(panel.currency_count() == 2);
    REQUIRE(panel.sample_count() == 2);
    REQUIRE(panel.rate(0, 0) == 1.05);
    REQUIRE(panel.rate(1, 1) == 116.0);

    std::string tab = comma;
    for (char& c : tab) {
        if (c == ',') c = '\t';
    }
    // the metadata line keeps its colon form either way
    std::istringstream tin{tab};
    const RatePanel tpanel = read_panel_csv(tin);
    REQUIRE(panels_equal(panel, tpanel));
}

TEST_CASE("panel csv rejects malformed input with line numbers") {
    auto parse = [](const std::string& text) {
        std::istringstream in{text};
        return read_panel_csv(in);
    };
    const std::string head = "# reference: USD\ndate,currency,rate\n";

    SECTION("bad rate value") {
        try {
            parse(head + "2001-01-01,EUR,zero\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            REQUIRE(e.line() == 3);
        }
    }
    SECTION("non-positive rate") {
        REQUIRE_THROWS_AS(parse(head + "2001-01-01,EUR,-1.0\n"), ParseError);
        REQUIRE_THROWS_AS(parse(head + "2001-01-01,EUR,0\n"), ParseError);
    }
    SECTION("bad date") {
        REQUIRE_THROWS_AS(parse(head + "2001-13-01,EUR,1.0\n"), ParseError);
        REQUIRE_THROWS_AS(parse(head + "01/02/2001,EUR,1.0\n"), ParseError);
    }
    SECTION("bad code") {
        REQUIRE_THROWS_AS(parse(head + "2001-01-01,eur,1.0\n"), ParseError);
        REQUIRE_THROWS_AS(parse(head + "2001-01-01,EURO,1.0\n"), ParseError);
    }
    SECTION("wrong field count") {
        REQUIRE_THROWS_AS(parse(head + "2001-01-01,EUR\n"), ParseError);
    }
    SECTION("duplicate row") {
        REQUIRE_THROWS_AS(parse(head + "2001-01-01,EUR,1.0\n2001-01-01,EUR,1.1\n"), ParseError);
    }
    SECTION("missing reference header") {
        REQUIRE_THROWS_AS(parse("date,currency,rate\n2001-01-01,EUR,1.0\n"), ParseError);
    }
    SECTION("reference appearing as a series") {
        REQUIRE_THROWS_AS(parse(head + "2001-01-01,USD,1.0\n"), ParseError);
    }
    SECTION("missing header row") {
        REQUIRE_THROWS_AS(parse("# reference: USD\n2001-01-01,EUR,1.0\n"), ParseError);
    }
}

TEST_CASE("gap synchronization keeps only shared timestamps") {
    const std::string text = "# reference: USD\n"
                             "date,currency,rate\n"
                             "2001-01-01,EUR,1.0\n"
                             "2001-01-02,EUR,1.1\n"
                             "2001-01-03,EUR,1.2\n"
                             "2001-01-01,JPY,100\n"
                             "2001-01-03,JPY,102\n";
    std::istringstream in{text};
    const RatePanel panel = read_panel_csv(in);
    REQUIRE(panel.sample_count() == 2);
    REQUIRE(panel.timestamps() == std::vector<std::string>{"2001-01-01", "2001-01-03"});
    REQUIRE(panel.rate(1, 0) == 1.2);
}

TEST_CASE("a 6-sigma spike is dropped from every series under drop-day") {
    // 120 calm days with a deterministic wiggle, one violent jump in AAB.
    // (The series must be long enough that one spike cannot hide inside
    // the sigma it inflates itself: |x| > thr * sqrt(2 x^2 / n) needs
    // n > 2 thr^2.)
    std::vector<std::vector<double>> rows;
    double a = 1.0, b = 2.0;
    for (int t = 0; t < 120; ++t) {
        a *= std::exp(0.001 * ((t % 2 == 0) ? 1.0 : -1.0) * (1.0 + 0.1 * (t % 5)));
        b *= std::exp(0.001 * ((t % 3 == 0) ? -1.0 : 1.0) * (1.0 + 0.1 * (t % 7)));
        rows.push_back({a, b});
    }
    rows[20][1] *= std::exp(0.5); // enormous relative to 0.1% daily moves

    const RatePanel dirty = make_panel("USD", {"AAA", "AAB"}, rows);
    const RatePanel cleaned = clean_panel(dirty, {});

    REQUIRE(cleaned.sample_count() < dirty.sample_count());
    const std::string spike_day = dirty.timestamps()[20];
    for (const auto& ts : cleaned.timestamps()) REQUIRE(ts != spike_day);
    // both series lost the same days
    REQUIRE(cleaned.currency_count() == 2);
}

TEST_CASE("already-clean panels pass through cleaning unchanged") {
    const RatePanel panel = random_panel(4, 60, 11);
    for (JumpPolicy policy :
         {JumpPolicy::DropDay, JumpPolicy::Clip, JumpPolicy::Interpolate}) {
        CleaningConfig config;
        config.policy = policy;
        const RatePanel cleaned = clean_panel(panel, config);
        INFO("policy " << to_string(policy));
        REQUIRE(panels_equal(panel, cleaned));
    }
}

TEST_CASE("cleaning is idempotent: load twice equals load once") {
    std::vector<std::vector<double>> rows;
    fxmst::Rng rng{fxmst::RandomSeed{99}};
    double a = 1.0, b = 5.0, c = 0.2;
    for (int t = 0; t < 120; ++t) {
        a *= std::exp(0.002 * rng.gaussian());
        b *= std::exp(0.004 * rng.gaussian());
        c *= std::exp(0.003 * rng.gaussian());
        rows.push_back({a, b, c});
    }
    rows[30][0] *= std::exp(0.9);
    rows[31][0] /= std::exp(0.8);
    rows[77][2] *= std::exp(-1.0);

    const RatePanel dirty = make_panel("USD", {"AAA", "AAB", "AAC"}, rows);
    const RatePanel once = clean_panel(dirty, {});
    const RatePanel again = reload(once);
    REQUIRE(panels_equal(once, again));
}

TEST_CASE("clip and interpolate repair in place") {
    std::vector<std::vector<double>> rows;
    double x = 1.0;
    for (int t = 0; t < 60; ++t) {
        x *= std::exp(0.001 * ((t % 2 == 0) ? 1.0 : -1.0) * (1.0 + 0.2 * (t % 3)));
        rows.push_back({x});
    }
    const double original = rows[25][0];
    rows[25][0] = original * std::exp(0.4);

    const RatePanel dirty = make_panel("USD", {"AAA"}, rows);

    CleaningConfig clip;
    clip.policy = JumpPolicy::Clip;
    const RatePanel clipped = clean_panel(dirty, clip);
    REQUIRE(clipped.sample_count() == dirty.sample_count());
    REQUIRE(clipped.rate(25, 0) < dirty.rate(25, 0));
    REQUIRE(clipped.rate(25, 0) > dirty.rate(24, 0));

    CleaningConfig interp;
    interp.policy = JumpPolicy::Interpolate;
    const RatePanel interpolated = clean_panel(dirty, interp);
    const double expected = std::sqrt(dirty.rate(24, 0) * dirty.rate(26, 0));
    REQUIRE_THAT(interpolated.rate(25, 0), Catch::Matchers::WithinRel(expected, 1e-12));
}

TEST_CASE("load rejects panels below the minimum length, naming series") {
    const std::string text = "# reference: USD\n"
                             "date,currency,rate\n"
                             "2001-01-01,EUR,1.0\n"
                             "2001-01-02,EUR,1.1\n"
                             "2001-01-03,EUR,1.2\n"
                             "2001-01-01,JPY,100\n"
                             "2001-01-02,JPY,101\n";
    CleaningConfig config;
    config.min_length = 3;
    std::istringstream in{text};
    try {
        load_panel(in, config);
        FAIL("expected InsufficientDataError");
    } catch (const InsufficientDataError& e) {
        REQUIRE(std::string(e.what()).find("JPY") != std::string::npos);
    }
}

TEST_CASE("1658 daily rows produce 1657 return intervals") {
    const RatePanel panel = random_panel(3, 1658, 5);
    REQUIRE(panel.sample_count() == 1658);
    const ReturnMatrix returns = log_returns(panel, 1);
    REQUIRE(returns.sample_count() == 1657);
}

TEST_CASE("rebase to the current base is the identity") {
    const RatePanel panel = random_panel(5, 30, 3);
    const RatePanel same = rebase(panel, panel.base());
    REQUIRE(panels_equal(panel, same));
}

TEST_CASE("rebase divides by the new base column") {
    const RatePanel panel = make_panel("USD", {"AAA", "BBB"}, {{2.0, 4.0}, {3.0, 6.0}});
    const RatePanel rebased = rebase(panel, CurrencyCode{"BBB"});
    REQUIRE(rebased.base().str() == "BBB");
    // columns: AAA, USD (old base takes BBB's slot)
    REQUIRE(rebased.currencies()[0].str() == "AAA");
    REQUIRE(rebased.currencies()[1].str() == "USD");
    REQUIRE(rebased.rate(0, 0) == 0.5);      // x_AAA^BBB = 2/4
    REQUIRE(rebased.rate(0, 1) == 0.25);     // x_USD^BBB = 1/4
    REQUIRE(rebased.rate(1, 0) == 0.5);
    REQUIRE_THAT(rebased.rate(1, 1), Catch::Matchers::WithinRel(1.0 / 6.0, 1e-15));
}

TEST_CASE("rebase round trip restores the panel within 1e-12") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
        const RatePanel panel = random_panel(6, 40, seed);
        const auto& through = panel.currencies()[seed % panel.currency_count()];
        const RatePanel back = rebase(rebase(panel, through), panel.base());
        INFO("via " << through.str());
        REQUIRE(panels_equal(panel, back, 1e-12));
    }
}

TEST_CASE("rebase rejects unknown currencies") {
    const RatePanel panel = random_panel(3, 10, 1);
    REQUIRE_THROWS_AS(rebase(panel, CurrencyCode{"QQQ"}), UnknownCurrencyError);
}

TEST_CASE("log return of e-fold growth is exactly 1") {
    const RatePanel panel = make_panel("USD", {"AAA"}, {{1.0}, {std::exp(1.0)}, {std::exp(2.0)}});
    const ReturnMatrix returns = log_returns(panel, 1);
    REQUIRE_THAT(returns.raw_at(0, 0), Catch::Matchers::WithinAbs(1.0, 1e-15));
    REQUIRE_THAT(returns.raw_at(0, 1), Catch::Matchers::WithinAbs(1.0, 1e-15));
}

TEST_CASE("constant series yield zero returns and a degenerate flag") {
    const RatePanel panel =
        make_panel("USD", {"AAA", "BBB"}, {{1.5, 1.0}, {1.5, 1.1}, {1.5, 1.3}});
    const ReturnMatrix returns = log_returns(panel, 1);
    REQUIRE(returns.is_degenerate(0));
    REQUIRE_FALSE(returns.is_degenerate(1));
    for (std::size_t t = 0; t < returns.sample_count(); ++t) {
        REQUIRE(returns.raw_at(0, t) == 0.0);
        REQUIRE(returns.normalized_at(0, t) == 0.0);
    }
}

TEST_CASE("normalized rows have mean 0 and stdev 1") {
    const RatePanel panel = random_panel(6, 200, 8);
    const ReturnMatrix returns = log_returns(panel, 1);
    for (std::size_t row = 0; row < returns.row_count(); ++row) {
        double mean = 0.0;
        for (std::size_t t = 0; t < returns.sample_count(); ++t) {
            mean += returns.normalized_at(row, t);
        }
        mean /= static_cast<double>(returns.sample_count());
        double variance = 0.0;
        for (std::size_t t = 0; t < returns.sample_count(); ++t) {
            const double d = returns.normalized_at(row, t) - mean;
            variance += d * d;
        }
        variance /= static_cast<double>(returns.sample_count());
        REQUIRE(std::fabs(mean) <= 1e-10);
        REQUIRE(std::fabs(std::sqrt(variance) - 1.0) <= 1e-10);
    }
}

TEST_CASE("returns are antisymmetric under base exchange") {
    const RatePanel panel = random_panel(5, 50, 21);
    const CurrencyCode a = panel.currencies()[0];
    const CurrencyCode b = panel.currencies()[2];
    const ReturnMatrix in_b = log_returns(rebase(panel, b), 1);
    const ReturnMatrix in_a = log_returns(rebase(panel, a), 1);
    const std::size_t row_a = 0; // a sits in column 0 either way: rebase reuses slots
    const std::size_t row_b = 2;
    for (std::size_t t = 0; t < in_b.sample_count(); ++t) {
        REQUIRE_THAT(in_b.raw_at(row_a, t),
                     Catch::Matchers::WithinAbs(-in_a.raw_at(row_b, t), 1e-12));
    }
}

TEST_CASE("returns require tau within the sample count") {
    const RatePanel panel = random_panel(3, 5, 2);
    REQUIRE_THROWS_AS(log_returns(panel, 5), InsufficientDataError);
    REQUIRE_THROWS_AS(log_returns(panel, 0), ValidationError);
    REQUIRE_NOTHROW(log_returns(panel, 4));
}

TEST_CASE("multi-day returns compound exactly") {
    const RatePanel panel = random_panel(2, 20, 33);
    const ReturnMatrix daily = log_returns(panel, 1);
    const ReturnMatrix two_day = log_returns(panel, 2);
    REQUIRE(two_day.sample_count() == panel.sample_count() - 2);
    for (std::size_t t = 0; t < two_day.sample_count(); ++t) {
        REQUIRE_THAT(two_day.raw_at(0, t),
                     Catch::Matchers::WithinAbs(daily.raw_at(0, t) + daily.raw_at(0, t + 1),
                                                1e-12));
    }
}

TEST_CASE("triangle residual vanishes on cross-derived panels") {
    const RatePanel panel = random_panel(6, 80, 13);
    const auto& c = panel.currencies();
    REQUIRE(triangle_residual(panel, c[0], c[1], c[2]) <= 1e-10);
    REQUIRE(triangle_residual(panel, c[3], panel.base(), c[5]) <= 1e-10);

    const RatePanel rebased = rebase(panel, c[1]);
    REQUIRE(triangle_residual(rebased, c[0], c[2], rebased.base()) <= 1e-10);
}

TEST_CASE("triangle residual rejects repeated or unknown currencies") {
    const RatePanel panel = random_panel(4, 20, 17);
    const auto& c = panel.currencies();
    REQUIRE_THROWS_AS(triangle_residual(panel, c[0], c[0], c[1]), ValidationError);
    REQUIRE_THROWS_AS(triangle_residual(panel, c[0], c[1], CurrencyCode{"QQQ"}),
                      UnknownCurrencyError);
}

TEST_CASE("the shipped group table matches the built-in default") {
    const GroupTable shipped =
        read_group_table(std::filesystem::path(FXMST_SOURCE_DIR) / "data/currency_groups.csv");
    REQUIRE(shipped.size() == 60);
    std::map<CurrencyGroup, int> counts;
    for (const auto& [code, group] : shipped.entries()) ++counts[group];
    REQUIRE(counts[CurrencyGroup::AStar] == 11);
    REQUIRE(counts[CurrencyGroup::A] == 21);
    REQUIRE(counts[CurrencyGroup::B] == 9);
    REQUIRE(counts[CurrencyGroup::C] == 19);
    REQUIRE(shipped.entries() == GroupTable::defaults().entries());
    REQUIRE(shipped.group_of(CurrencyCode{"XAU"}) == CurrencyGroup::A);
    REQUIRE(shipped.group_of(CurrencyCode{"FIC"}) == CurrencyGroup::Fictitious);
    REQUIRE_FALSE(shipped.group_of(CurrencyCode{"QQQ"}).has_value());
}

TEST_CASE("independently sourced quotes leave a nonzero residual") {
    // Three legs with independent measurement noise cannot telescope.
    fxmst::Rng rng{fxmst::RandomSeed{4}};
    const std::size_t samples = 100;
    std::vector<double> la(samples + 1), lb(samples + 1), lc(samples + 1);
    for (std::size_t t = 0; t <= samples; ++t) {
        la[t] = 0.02 * rng.gaussian();
        lb[t] = 0.02 * rng.gaussian();
        lc[t] = 0.02 * rng.gaussian();
    }
    auto legs = [&](const std::vector<double>& x, const std::vector<double>& y,
                    double noise_seed) {
        fxmst::Rng noise{fxmst::RandomSeed{static_cast<std::uint64_t>(noise_seed)}};
        std::vector<double> g(samples);
        for (std::size_t t = 0; t < samples; ++t) {
            const double quote1 = (x[t + 1] - y[t + 1]) + 1e-4 * noise.gaussian();
            const double quote0 = (x[t] - y[t]) + 1e-4 * noise.gaussian();
            g[t] = quote1 - quote0;
        }
        return g;
    };
    const auto g_ab = legs(la, lb, 101);
    const auto g_bc = legs(lb, lc, 202);
    const auto g_ca = legs(lc, la, 303);
    const double residual = triangle_residual(g_ab, g_bc, g_ca);
    REQUIRE(residual > 1e-6);  // noise is visible
    REQUIRE(residual < 0.01);  // but small against the signal
}
