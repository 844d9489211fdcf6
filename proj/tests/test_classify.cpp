#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "bwangle/classify.hpp"

using namespace bwangle;

namespace {

CsbConfig fast_csb() {
    CsbConfig c;
    c.resolution = 256;
    c.refine = 20;
    return c;
}

const ClassEntry* entry_of(const ClassMembership& m, const std::string& tag, double rho) {
    for (const ClassEntry& e : m.entries)
        if (e.tag == tag && e.has_rho && e.rho == rho) return &e;
    return nullptr;
}

const ClassEntry* entry_of(const ClassMembership& m, const std::string& tag) {
    for (const ClassEntry& e : m.entries)
        if (e.tag == tag && !e.has_rho) return &e;
    return nullptr;
}

}  // namespace

TEST_CASE("upsilon of the sum-norm plane is (-1, 1)") {
    const UpsilonResult u = upsilon(SpaceDescriptor::hoelder(1.0), 1e-3, 64.0, fast_csb());
    CHECK(std::abs(u.nu + 1.0) <= 2e-3);
    CHECK(std::abs(u.mu - 1.0) <= 2e-3);
    CHECK(u.nu_attained);
    CHECK(u.mu_attained);
}

TEST_CASE("upsilon of the Euclidean plane hits the cap on both sides") {
    const UpsilonResult u = upsilon(SpaceDescriptor::hoelder(2.0), 1e-3, 64.0, fast_csb());
    CHECK(std::isinf(u.nu));
    CHECK(u.nu < 0);
    CHECK(std::isinf(u.mu));
    CHECK(u.mu > 0);
    CHECK_FALSE(u.nu_attained);
    CHECK_FALSE(u.mu_attained);
}

TEST_CASE("hexagon upper endpoints respect the vertex-pair bound") {
    for (const double r : {2.0, 3.0}) {
        const UpsilonResult u = upsilon(SpaceDescriptor::hexagon(r), 1e-3, 64.0, fast_csb());
        const double bound = -std::log(r * r - 1.0) / std::log(r * r + 1.0);
        CHECK(u.mu <= bound + 1e-3);
        // near the lower endpoint the violation grows only quadratically,
        // with a constant that shrinks as the convex corners flatten, so
        // the resolvable accuracy at the pinned tolerance degrades with r
        CHECK(u.nu <= -1.0 + 1e-9);
        CHECK(std::abs(u.nu + 1.0) <= 1e-2 * r);
    }
}

TEST_CASE("finite endpoints are attained, outside points are not") {
    const SpaceDescriptor l1 = SpaceDescriptor::hoelder(1.0);
    const CsbConfig cfg = fast_csb();
    const UpsilonResult u = upsilon(l1, 1e-3, 64.0, cfg);
    REQUIRE(std::isfinite(u.nu));
    REQUIRE(std::isfinite(u.mu));
    CHECK(has_angle(l1, u.nu, cfg.tol, cfg));
    CHECK(has_angle(l1, u.mu, cfg.tol, cfg));
    CHECK_FALSE(has_angle(l1, u.nu - 10.0 * u.bracket_tol, cfg.tol, cfg));
    CHECK_FALSE(has_angle(l1, u.mu + 10.0 * u.bracket_tol, cfg.tol, cfg));
}

TEST_CASE("class report on the reference spaces") {
    const std::vector<double> rhos = {-1.0, 0.0, 1.0};
    const ClassMembership l1 = class_report(SpaceDescriptor::hoelder(1.0), rhos, fast_csb());
    CHECK(entry_of(l1, "pdBW")->member);
    CHECK(entry_of(l1, "NORM")->member);
    CHECK_FALSE(entry_of(l1, "IPspace")->member);
    for (const double rho : rhos) {
        CHECK(entry_of(l1, "pdBW_rho", rho)->member);
        CHECK(entry_of(l1, "NORM_rho", rho)->member);
    }

    const ClassMembership hex = class_report(SpaceDescriptor::hexagon(2.0), {0.0}, fast_csb());
    CHECK(entry_of(hex, "pdBW")->member);
    CHECK_FALSE(entry_of(hex, "NORM")->member);
    CHECK_FALSE(entry_of(hex, "pdBW_rho", 0.0)->member);

    const ClassMembership l2 = class_report(SpaceDescriptor::hoelder(2.0), rhos, fast_csb());
    for (const ClassEntry& e : l2.entries) CHECK(e.member);
}

TEST_CASE("membership respects the class inclusions") {
    const std::vector<double> rhos = {-1.0, 0.3, 1.5};
    for (const SpaceDescriptor& s :
         {SpaceDescriptor::hoelder(1.0), SpaceDescriptor::hexagon(2.0),
          SpaceDescriptor::hoelder(3.0)}) {
        const ClassMembership m = class_report(s, rhos, fast_csb());
        for (const double rho : rhos) {
            const ClassEntry* norm_rho = entry_of(m, "NORM_rho", rho);
            const ClassEntry* pdbw_rho = entry_of(m, "pdBW_rho", rho);
            REQUIRE(norm_rho != nullptr);
            REQUIRE(pdbw_rho != nullptr);
            if (norm_rho->member) CHECK(pdbw_rho->member);
        }
    }
}

TEST_CASE("upsilon interval agrees with pointwise validity") {
    const SpaceDescriptor hex = SpaceDescriptor::hexagon(2.0);
    const CsbConfig cfg = fast_csb();
    const UpsilonResult u = upsilon(hex, 1e-3, 64.0, cfg);
    for (double rho = -2.0; rho <= 1.0; rho += 0.25) {
        const bool inside = rho >= u.nu - 1e-3 && rho <= u.mu + 1e-3;
        const bool valid = has_angle(hex, rho, cfg.tol, cfg);
        if (valid) CHECK(inside);
        if (rho >= u.nu && rho <= u.mu) CHECK(valid);
    }
}

TEST_CASE("sweep emits one labelled row per member with CSV columns") {
    SweepConfig sc;
    sc.csb = fast_csb();
    const std::vector<double> grid = {-2.0, 0.0, 2.0};
    const SweepTable table = conjecture_sweep(
        {{"1", SpaceDescriptor::hoelder(1.0)}, {"2", SpaceDescriptor::hoelder(2.0)}}, grid, sc);
    REQUIRE(table.rows.size() == 2);
    CHECK(table.rows[0].param == "1");
    CHECK(table.rows[0].has_angle_row == std::vector<bool>{false, true, false});
    CHECK(table.rows[1].has_angle_row == std::vector<bool>{true, true, true});
    CHECK(std::isinf(table.rows[1].ups.nu));
    // rows disagree at rho = +-2: evidence of a proper inclusion
    REQUIRE(table.proper_flags.size() == 2);
    CHECK(table.proper_flags[0].rho == -2.0);
    CHECK(table.proper_flags[0].valid_member == "2");
    CHECK(table.proper_flags[0].invalid_member == "1");

    std::ostringstream csv;
    write_sweep_csv(csv, table);
    const std::string text = csv.str();
    CHECK(text.find("family_param,nu,mu,nu_attained,mu_attained,rho_-2,rho_0,rho_2") !=
          std::string::npos);
    CHECK(text.find("2,-inf,inf,0,0,1,1,1") != std::string::npos);
}
