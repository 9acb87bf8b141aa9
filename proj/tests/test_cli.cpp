#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef PARCURVE_CLI_PATH
#error "PARCURVE_CLI_PATH must point at the built binary"
#endif

namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;

std::string temp_path(const std::string& name) {
    return std::string("cli_test_") + name;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int run(const std::string& args) {
    const std::string cmd = std::string(PARCURVE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

double record_value(const json& report, const std::string& name) {
    for (const auto& rec : report["records"])
        if (rec["name"] == name) return rec["measured"].get<double>();
    FAIL("record not found: " << name);
    return 0.0;
}

}  // namespace

TEST_CASE("curve-info: disk and ellipse diagnostics") {
    const auto disk_spec = temp_path("disk.json");
    write_file(disk_spec, R"({"kind":"preset","name":"disk","R":1})");
    const auto out = temp_path("disk_info.json");
    CHECK(run("curve-info --spec " + disk_spec + " --n 2048 --out " + out) == 0);
    const auto report = json::parse(read_file(out));
    CHECK(record_value(report, "length") == doctest::Approx(2 * kPi).epsilon(1e-9));
    CHECK(record_value(report, "kappa_max") == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(record_value(report, "inradius") == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(report["summary"]["failed"] == 0);

    const auto ell_spec = temp_path("ellipse.json");
    write_file(ell_spec, R"({"kind":"preset","name":"ellipse","a":2,"b":1})");
    const auto out2 = temp_path("ellipse_info.json");
    CHECK(run("curve-info --spec " + ell_spec + " --n 4096 --out " + out2) == 0);
    const auto report2 = json::parse(read_file(out2));
    CHECK(record_value(report2, "length") == doctest::Approx(9.6884482).epsilon(1e-6));
    CHECK(record_value(report2, "kappa_max") == doctest::Approx(2.0).epsilon(1e-5));
    CHECK(record_value(report2, "inradius") == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("curve-info: non-simple input exits nonzero") {
    const auto spec = temp_path("eight.json");
    write_file(spec, R"({"kind":"fourier_xy","x_sin":[0,1],"y_sin":[1]})");
    CHECK(run("curve-info --spec " + spec + " --n 1024") == 2);
}

TEST_CASE("sweep: disk CSV has the documented schema and passes") {
    const auto spec = temp_path("disk2.json");
    write_file(spec, R"({"kind":"preset","name":"disk","R":1})");
    const auto out = temp_path("disk_sweep.csv");
    CHECK(run("sweep --spec " + spec + " --n 2048 --t-min 0 --t-max 0.9 --steps 10 --p 2"
              " --format csv --out " + out) == 0);
    std::ifstream in(out);
    std::string header;
    std::getline(in, header);
    CHECK(header ==
          "t,regular,n_components,len_St,hartman_margin,refined_margin,cover_len,cover_margin,"
          "centroid_x,centroid_y,moment_p,disk_ref,moment_margin,wirtinger_lhs,wirtinger_rhs");
    int rows = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++rows;
        std::stringstream ss(line);
        std::string field;
        std::vector<double> vals;
        while (std::getline(ss, field, ',')) vals.push_back(std::strtod(field.c_str(), nullptr));
        REQUIRE(vals.size() == 15);
        CHECK(vals[1] == 1.0);                 // regular
        CHECK(vals[2] == 1.0);                 // one component
        CHECK(std::abs(vals[4]) < 1e-6);       // hartman margin ~ 0 (equality)
        CHECK(std::abs(vals[12]) < 1e-6);      // moment margin ~ 0 (equality)
    }
    CHECK(rows == 10);
}

TEST_CASE("sweep: peanut component transition and p=1") {
    const auto spec = temp_path("peanut.json");
    write_file(spec, R"({"kind":"preset","name":"peanut","a0":1,"c2":0.7})");
    const auto out = temp_path("peanut_sweep.csv");
    CHECK(run("sweep --spec " + spec + " --n 2048 --t-min 0 --t-max 0.66 --steps 12 --p 1"
              " --format csv --out " + out) == 0);
    std::ifstream in(out);
    std::string line;
    std::getline(in, line);  // header
    bool saw_one = false, saw_two = false;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        REQUIRE(fields.size() == 15);
        if (fields[1] == "1") {
            const int comps = std::atoi(fields[2].c_str());
            saw_one = saw_one || comps == 1;
            saw_two = saw_two || comps == 2;
            CHECK(std::strtod(fields[12].c_str(), nullptr) > 0.0);  // strict moment margin
        }
    }
    CHECK(saw_one);
    CHECK(saw_two);
}

TEST_CASE("sweep: parameter validation") {
    const auto spec = temp_path("disk3.json");
    write_file(spec, R"({"kind":"preset","name":"disk","R":1})");
    CHECK(run("sweep --spec " + spec + " --n 1024 --t-max 1.4 --steps 5") == 2);   // beyond r_i
    CHECK(run("sweep --spec " + spec + " --n 1024 --t-max 0.5 --steps 5 --p 3") == 2);
}

TEST_CASE("cover-export: disk circle, peanut doubly covered chord, errors") {
    const auto disk_spec = temp_path("disk4.json");
    write_file(disk_spec, R"({"kind":"preset","name":"disk","R":1})");
    const auto out = temp_path("disk_cover.csv");
    CHECK(run("cover-export --spec " + disk_spec + " --n 2048 --t 0.4 --out " + out +
              " --format csv") == 0);
    {
        std::ifstream in(out);
        std::string line;
        std::getline(in, line);
        CHECK(line == "piece,kind,x,y");
        int count = 0;
        while (std::getline(in, line)) {
            std::stringstream ss(line);
            std::string piece, kind, xs, ys;
            std::getline(ss, piece, ',');
            std::getline(ss, kind, ',');
            std::getline(ss, xs, ',');
            std::getline(ss, ys, ',');
            CHECK(piece == "0");
            CHECK(kind == "arc");
            const double x = std::strtod(xs.c_str(), nullptr);
            const double y = std::strtod(ys.c_str(), nullptr);
            CHECK(std::sqrt(x * x + y * y) == doctest::Approx(0.6).epsilon(1e-6));
            ++count;
        }
        CHECK(count > 100);
    }

    const auto pea_spec = temp_path("peanut2.json");
    write_file(pea_spec, R"({"kind":"preset","name":"peanut","a0":1,"c2":0.7})");
    const auto pout = temp_path("peanut_cover.csv");
    CHECK(run("cover-export --spec " + pea_spec + " --n 2048 --t 0.45 --out " + pout +
              " --format csv") == 0);
    {
        std::ifstream in(pout);
        std::string line;
        std::getline(in, line);
        int arc_pieces = 0, segment_rows = 0;
        std::vector<double> seg_y;
        int last_piece = -1;
        while (std::getline(in, line)) {
            std::stringstream ss(line);
            std::string piece, kind, xs, ys;
            std::getline(ss, piece, ',');
            std::getline(ss, kind, ',');
            std::getline(ss, xs, ',');
            std::getline(ss, ys, ',');
            const int p = std::atoi(piece.c_str());
            if (kind == "arc" && p != last_piece) ++arc_pieces;
            if (kind == "segment") {
                ++segment_rows;
                seg_y.push_back(std::strtod(ys.c_str(), nullptr));
            }
            last_piece = p;
        }
        CHECK(arc_pieces == 2);
        CHECK(segment_rows == 4);  // two segments, two endpoints each
        // the chord is traversed twice near y = 0: coincident up to tolerance
        for (double y : seg_y) CHECK(std::abs(y) < 0.05);
    }

    // SVG output exists and is well formed enough to embed
    const auto svg = temp_path("cover.svg");
    CHECK(run("cover-export --spec " + pea_spec + " --n 2048 --t 0.45 --out " + svg +
              " --format svg") == 0);
    const auto svg_text = read_file(svg);
    CHECK(svg_text.find("<svg") != std::string::npos);
    CHECK(svg_text.find("polyline") != std::string::npos);

    CHECK(run("cover-export --spec " + disk_spec + " --n 1024 --t 1.5 --out " + out) == 2);
}

TEST_CASE("fuglede and optimize commands") {
    const auto out = temp_path("fuglede.json");
    CHECK(run("fuglede --p 2 --profile sin2 --eps-lo 1e-3 --eps-hi 8e-3 --out " + out) == 0);
    const auto report = json::parse(read_file(out));
    CHECK(record_value(report, "quadratic_fit") == doctest::Approx(-kPi).epsilon(0.02));

    const auto oout = temp_path("opt2.json");
    CHECK(run("optimize --p 2 --modes 4 --restarts 6 --budget 200 --seed 7 --out " + oout) == 0);
    const auto r2 = json::parse(read_file(oout));
    CHECK(record_value(r2, "best_J_lower_bound") <= 1.0 + 1e-4);

    const auto oout4 = temp_path("opt4.json");
    CHECK(run("optimize --p 4 --modes 4 --restarts 6 --budget 200 --seed 7 --out " + oout4) == 0);
    const auto r4 = json::parse(read_file(oout4));
    CHECK(record_value(r4, "best_J_lower_bound") > 1.0);
}

TEST_CASE("exit code 1 on a failed check") {
    // far outside the perturbative regime the quadratic fit misses p*F/2
    CHECK(run("fuglede --p 2 --profile sin2 --eps-lo 0.05 --eps-hi 0.4") == 1);
}

TEST_CASE("determinism: identical invocations give identical bytes") {
    const auto spec = temp_path("peanut3.json");
    write_file(spec, R"({"kind":"preset","name":"peanut","a0":1,"c2":0.7})");
    const auto out1 = temp_path("det1.csv");
    const auto out2 = temp_path("det2.csv");
    const std::string args =
        " --n 1024 --t-min 0 --t-max 0.6 --steps 6 --p 2 --format csv --out ";
    CHECK(run("sweep --spec " + spec + args + out1) == 0);
    CHECK(run("sweep --spec " + spec + args + out2) == 0);
    CHECK(read_file(out1) == read_file(out2));
}
