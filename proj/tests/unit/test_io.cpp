#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "zxi/zxi.hpp"

using namespace zxi;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("zxi_io_" + std::to_string(Catch::getSeed()) + "_" +
                                            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write_text(const fs::path& p, const std::string& s) {
    std::ofstream os(p);
    os << s;
}

}  // namespace

TEST_CASE("waveform files round-trip bit-exactly", "[io]") {
    TempDir dir;
    const Waveform w = synth_gaussian(GaussianShape{0.2, 1.0}, 1000, 0.125, 3);
    const fs::path p = dir.path / "x.f64";
    write_waveform(p, w);
    CHECK(fs::file_size(p) == 8000);
    CHECK(fs::exists(sidecar_path(p)));
    CHECK_FALSE(fs::exists(dir.path / "x.f64.tmp"));

    const Waveform r = read_waveform(p);
    CHECK(r.samples == w.samples);
    CHECK(r.dt == 0.125);
    CHECK(r.label == w.label);
}

TEST_CASE("sidecar headers are strict", "[io]") {
    TempDir dir;
    const fs::path p = dir.path / "y.f64";
    write_waveform(p, Waveform({1.0, -1.0, 2.0}, 1.0));

    write_text(sidecar_path(p), R"({"dt": 1.0, "count": 3, "units": "V"})");
    CHECK_THROWS_AS(read_waveform(p), InvalidArgument);
    write_text(sidecar_path(p), R"({"dt": 1.0, "count": 4})");
    CHECK_THROWS_AS(read_waveform(p), InvalidArgument);
    write_text(sidecar_path(p), R"({"count": 3})");
    CHECK_THROWS_AS(read_waveform(p), InvalidArgument);
    write_text(sidecar_path(p), "{not json");
    CHECK_THROWS_AS(read_waveform(p), InvalidArgument);
    write_text(sidecar_path(p), R"({"dt": 1.0, "count": 3})");
    CHECK(read_waveform(p).size() == 3);

    fs::remove(sidecar_path(p));
    CHECK_THROWS_AS(read_waveform(p), InvalidArgument);
}

TEST_CASE("partial samples are rejected", "[io]") {
    std::istringstream in(std::string(12, '\0'));
    CHECK_THROWS_AS(read_f64(in), InvalidArgument);
    std::istringstream ok(std::string(16, '\0'));
    CHECK(read_f64(ok) == std::vector<double>{0.0, 0.0});
}

TEST_CASE("csv writers use nine significant digits", "[io]") {
    CHECK(format_g9(1.0 / 3.0) == "0.333333333");
    CHECK(format_g9(2.0) == "2");

    std::ostringstream os;
    write_waveform_csv(os, Waveform({0.5, -0.25}, 0.1));
    CHECK(os.str() == "t,value\n0,0.5\n0.1,-0.25\n");

    std::ostringstream cs_os;
    write_crossings_csv(cs_os, detect_crossings(Waveform({-1.0, 1.0, -1.0}, 1.0)));
    CHECK(cs_os.str() == "t,psi,slope\n0.5,0,2\n1.5,1,-2\n");

    std::ostringstream t;
    write_table_csv(t, {"a", "b"}, {{1.0, 2.0}});
    CHECK(t.str() == "a,b\n1,2\n");
    CHECK_THROWS_AS(write_table_csv(t, {"a"}, {{1.0, 2.0}}), InvalidArgument);
}

TEST_CASE("atomic writes leave the old file on failure", "[io]") {
    TempDir dir;
    const fs::path p = dir.path / "z.txt";
    write_atomic(p, [](std::ostream& os) { os << "first"; });
    CHECK_THROWS(write_atomic(p, [](std::ostream& os) {
        os << "second";
        throw InvalidArgument("abort");
    }));
    std::ifstream in(p);
    std::string s;
    in >> s;
    CHECK(s == "first");
}
