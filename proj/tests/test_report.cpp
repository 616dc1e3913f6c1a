#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spencer/report.hpp"

#include <fstream>
#include <sstream>

using namespace spencer;

namespace {

std::string slurp(const std::string& path)
{
    std::ifstream f(path);
    REQUIRE(f.good());
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

std::string golden(const std::string& name) { return std::string(GOLDEN_DIR) + "/" + name; }

} // namespace

TEST_CASE("reports are byte-identical across runs")
{
    Json a = cmd_algebra("SHO'(2,2)", -1, 2);
    Json b = cmd_algebra("SHO'(2,2)", -1, 2);
    CHECK(a.dump(2) == b.dump(2));

    Json c = cmd_cohomology("SKO(2,3;1)", 2, 1, 3, "even", true);
    Json d = cmd_cohomology("SKO(2,3;1)", 2, 1, 3, "even", true);
    CHECK(c.dump(2) == d.dump(2));
}

TEST_CASE("golden: algebra tables")
{
    CHECK(cmd_algebra("SHO'(2,2)", -1, 2).dump(2) + "\n" ==
          slurp(golden("algebra_sho_prime_22.json")));
    CHECK(cmd_algebra("H(2,2)", -1, 1).dump(2) + "\n" == slurp(golden("algebra_h22.json")));
}

TEST_CASE("golden: cohomology table")
{
    CHECK(cmd_cohomology("SHO(3,3)", 1, 0, 4, "both", false).dump(2) + "\n" ==
          slurp(golden("cohomology_sho33_j1.json")));
}

TEST_CASE("golden: deformation report")
{
    CHECK(cmd_deform("5.9", "", 2, 4).dump(2) + "\n" == slurp(golden("deform_59_n2.json")));
}

TEST_CASE("report dimensions match published tables")
{
    Json a = cmd_algebra("SHO'(2,2)", -1, 2);
    std::vector<int> dims;
    for (const auto& comp : a["components"])
        dims.push_back(comp["dimension"].get<int>());
    CHECK(dims == std::vector<int>{4, 7, 8, 10});
    CHECK(a["selfcheck"]["grading_closure"].get<bool>());
    CHECK(report_passed(a));

    Json h = cmd_algebra("H(2,2)", -1, -1);
    CHECK(h["components"][0]["dimension"].get<int>() == 4);
    CHECK(h["components"][0]["basis"] == Json({"p1", "q1", "xi1", "xi2"}));

    Json k = cmd_cohomology("SKO(3,4;5/3)", 2, 5, 5, "even", true);
    CHECK(k["table"][0]["dimension"].get<int>() == 1);
}

TEST_CASE("csv flattening")
{
    Json a = cmd_algebra("SHO'(2,2)", -1, 1);
    CHECK(to_csv(a) == "degree,dimension\n-1,4\n0,7\n1,8\n");
    Json k = cmd_cohomology("SHO'(2,2)", 2, 1, 2, "even", true);
    CHECK(to_csv(k) == "l,dimension\n1,0\n2,1\n");
}

TEST_CASE("selfcheck battery passes and failures propagate to the exit status")
{
    Json s = cmd_selfcheck("SKO(2,3;1)");
    CHECK(s["passed"].get<bool>());
    CHECK(report_passed(s));

    Json fake = s;
    fake["checks"]["transitive"] = false;
    CHECK_FALSE(report_passed(fake));
}

TEST_CASE("parse errors carry a position")
{
    CHECK_THROWS_WITH_AS(cmd_algebra("SHO(2", -1, 1, {}),
                         doctest::Contains("position"), std::invalid_argument);
    CHECK_THROWS(cmd_cohomology("SHO'(2,2)", 2, 0, 1, "sideways", false));
    CHECK_THROWS(cmd_deform("5.11", "", 2, 4));
}
