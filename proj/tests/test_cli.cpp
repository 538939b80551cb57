#include "wnav/netpbm.hpp"
#include "wnav/synth.hpp"

#include "support/scenes.hpp"
#include "support/temp_dir.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

using namespace wnav;
using wnav::testing::TempDir;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

// Runs the CLI with stdout+stderr captured to a file in `dir`.
RunResult run_cli(const TempDir& dir, const std::string& arguments) {
    static int counter = 0;
    const std::string capture = dir.file("cli_out_" + std::to_string(counter++) + ".txt");
    const std::string command = "cd " + dir.path().string() + " && " +
                                std::string(WNAV_CLI_PATH) + " " + arguments + " > " + capture +
                                " 2>&1";
    const int status = std::system(command.c_str());
    RunResult result;
    result.exit_code = WEXITSTATUS(status);
    result.output = TempDir::slurp(capture);
    return result;
}

void write_bench_calibration(const TempDir& dir, const std::string& name) {
    std::ofstream out(dir.file(name));
    out << "focal_px = 300\nbaseline_mm = 40.85\ncx = 160\ncy = 120\n";
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("navigate prints the decision line and writes side outputs") {
    TempDir dir;
    const StereoScene scene = render_stereo_scene(testing::single_patch_scene(15));
    write_ppm(dir.file("left.ppm"), scene.left);
    write_ppm(dir.file("right.ppm"), scene.right);
    write_bench_calibration(dir, "calib.txt");

    const RunResult run = run_cli(dir, "navigate --left " + dir.file("left.ppm") + " --right " +
                                           dir.file("right.ppm") + " --calib " +
                                           dir.file("calib.txt") + " --outdir " +
                                           dir.file("out"));
    CHECK(run.exit_code == 0);
    // 300*40.85/15 = 817 mm, comfortably above the go-straight threshold.
    CHECK(run.output.find("D=817 action=GoStraight code=1") != std::string::npos);
    CHECK(read_pgm(dir.file("out/mask.pgm")).rows() == 240);
    CHECK(read_pgm(dir.file("out/disp.pgm")).cols() == 320);
    CHECK(!TempDir::slurp(dir.file("out/navigate.manifest.json")).empty());
}

TEST_CASE("navigate --json is machine readable") {
    TempDir dir;
    const StereoScene scene = render_stereo_scene(testing::single_patch_scene(18));
    write_ppm(dir.file("left.ppm"), scene.left);
    write_ppm(dir.file("right.ppm"), scene.right);
    write_bench_calibration(dir, "calib.txt");

    const RunResult run = run_cli(dir, "navigate --json --left " + dir.file("left.ppm") +
                                           " --right " + dir.file("right.ppm") + " --calib " +
                                           dir.file("calib.txt") + " --outdir " +
                                           dir.file("out"));
    CHECK(run.exit_code == 0);
    // 12255/18 = 680.8 mm -> turn band.
    CHECK(run.output.find("\"distance_mm\":680.8") != std::string::npos);
    CHECK(run.output.find("\"action\":\"Turn") != std::string::npos);
}

TEST_CASE("empty scene navigates straight at the 5000 mm sentinel") {
    TempDir dir;
    SceneSpec spec = testing::single_patch_scene(15);
    spec.obstacles.clear();
    const StereoScene scene = render_stereo_scene(spec);
    write_ppm(dir.file("left.ppm"), scene.left);
    write_ppm(dir.file("right.ppm"), scene.right);
    write_bench_calibration(dir, "calib.txt");

    const RunResult run = run_cli(dir, "navigate --left " + dir.file("left.ppm") + " --right " +
                                           dir.file("right.ppm") + " --calib " +
                                           dir.file("calib.txt") + " --outdir " +
                                           dir.file("out"));
    CHECK(run.exit_code == 0);
    CHECK(run.output.find("D=5000 action=GoStraight code=1") != std::string::npos);
}

TEST_CASE("detect respects --region and reruns byte-identically") {
    TempDir dir;
    const StereoScene scene = render_stereo_scene(testing::single_patch_scene(15));
    write_ppm(dir.file("left.ppm"), scene.left);

    const std::string args = "detect --image " + dir.file("left.ppm") + " --out " +
                             dir.file("mask.pgm") + " --region 200,239,20,299 --manifest " +
                             dir.file("m1.json");
    CHECK(run_cli(dir, args).exit_code == 0);
    const std::string manifest1 = TempDir::slurp(dir.file("m1.json"));
    const std::string mask1 = TempDir::slurp(dir.file("mask.pgm"));
    CHECK(manifest1.find("\"row0\": 200") != std::string::npos);

    // Same inputs, same parameters: identical manifest, identical output bytes.
    const std::string rerun = "detect --image " + dir.file("left.ppm") + " --out " +
                              dir.file("mask.pgm") + " --region 200,239,20,299 --manifest " +
                              dir.file("m2.json");
    CHECK(run_cli(dir, rerun).exit_code == 0);
    CHECK(TempDir::slurp(dir.file("m2.json")) == manifest1);
    CHECK(TempDir::slurp(dir.file("mask.pgm")) == mask1);
}

TEST_CASE("config file sets defaults but loses to explicit flags") {
    TempDir dir;
    const StereoScene scene = render_stereo_scene(testing::single_patch_scene(15));
    write_ppm(dir.file("left.ppm"), scene.left);
    std::ofstream(dir.file("conf.ini")) << "[detect]\nmedian=11\n";

    CHECK(run_cli(dir, "--config conf.ini detect --image left.ppm --out a.pgm --manifest a.json")
              .exit_code == 0);
    CHECK(TempDir::slurp(dir.file("a.json")).find("\"median_window\": 11") != std::string::npos);

    CHECK(run_cli(dir, "--config conf.ini detect --image left.ppm --out b.pgm --median 9 "
                       "--manifest b.json")
              .exit_code == 0);
    CHECK(TempDir::slurp(dir.file("b.json")).find("\"median_window\": 9") != std::string::npos);
}

TEST_CASE("missing input file exits 2 and names the path") {
    TempDir dir;
    write_bench_calibration(dir, "calib.txt");
    const RunResult run = run_cli(dir, "detect --image " + dir.file("absent.ppm") + " --out " +
                                           dir.file("mask.pgm"));
    CHECK(run.exit_code == 2);
    CHECK(run.output.find("absent.ppm") != std::string::npos);
}

TEST_CASE("usage errors exit 1, contract violations exit 3") {
    TempDir dir;
    CHECK(run_cli(dir, "detect --no-such-flag").exit_code == 1);
    CHECK(run_cli(dir, "").exit_code == 1);

    // Even median window violates the filter contract.
    const StereoScene scene = render_stereo_scene(testing::single_patch_scene(15));
    write_ppm(dir.file("left.ppm"), scene.left);
    const RunResult run = run_cli(dir, "detect --image " + dir.file("left.ppm") + " --out " +
                                           dir.file("mask.pgm") + " --median 8");
    CHECK(run.exit_code == 3);
}

TEST_CASE("synth word, features, train, recognize round trip") {
    TempDir dir;
    // Six templates, one per vocabulary word, then recognize a fresh seed of
    // word #2 ("right").
    std::string train_words;
    for (const std::string& label : synth_vocabulary()) {
        const std::string audio = dir.file(label + ".txt");
        CHECK(run_cli(dir, "synth word --label " + label + " --seed 0 --out " + audio)
                  .exit_code == 0);
        train_words += " --word " + label + "=" + audio;
    }
    CHECK(run_cli(dir, "train --raw --outdir " + dir.file("templates") + train_words)
              .exit_code == 0);

    CHECK(run_cli(dir, "synth word --label right --seed 42 --out " + dir.file("probe.txt"))
              .exit_code == 0);
    const RunResult hit = run_cli(dir, "recognize --raw --audio " + dir.file("probe.txt") +
                                           " --templates " + dir.file("templates"));
    CHECK(hit.exit_code == 0);
    CHECK(hit.output.rfind("right ", 0) == 0);  // best label leads the output
    CHECK(hit.output.find("code=4") != std::string::npos);
    CHECK(hit.output.find("  stop ") != std::string::npos);  // all distances listed

    // Recognizing a training utterance verbatim scores distance 0.
    const RunResult self = run_cli(dir, "recognize --raw --audio " + dir.file("front.txt") +
                                            " --templates " + dir.file("templates"));
    CHECK(self.exit_code == 0);
    CHECK(self.output.rfind("front 0\n", 0) == 0);
    CHECK(self.output.find("code=1") != std::string::npos);

    // Asymmetric mode agrees on the easy cases.
    const RunResult asym =
        run_cli(dir, "recognize --raw --mode asymmetric --audio " + dir.file("probe.txt") +
                         " --templates " + dir.file("templates"));
    CHECK(asym.exit_code == 0);
    CHECK(asym.output.rfind("right ", 0) == 0);
}

TEST_CASE("features writes a loadable template") {
    TempDir dir;
    CHECK(run_cli(dir, "synth word --label stop --seed 3 --out " + dir.file("stop.txt"))
              .exit_code == 0);
    const RunResult run = run_cli(dir, "features --raw --audio " + dir.file("stop.txt") +
                                           " --out " + dir.file("stop.melmat"));
    CHECK(run.exit_code == 0);
    const MelMatrix m = read_template(dir.file("stop.melmat"));
    CHECK(m.rows() == 22);
    CHECK(m.cols() == (12000 - 256) / 80 + 1);

    const RunResult mfcc_run = run_cli(dir, "features --raw --mfcc --audio " +
                                                dir.file("stop.txt") + " --out " +
                                                dir.file("stop_mfcc.melmat"));
    CHECK(mfcc_run.exit_code == 0);
    CHECK(read_template(dir.file("stop_mfcc.melmat")).rows() == 13);
}

TEST_CASE("recognize with an empty template directory exits 2") {
    TempDir dir;
    CHECK(run_cli(dir, "synth word --label stop --seed 1 --out " + dir.file("w.txt"))
              .exit_code == 0);
    std::filesystem::create_directories(dir.file("empty"));
    const RunResult run = run_cli(dir, "recognize --raw --audio " + dir.file("w.txt") +
                                           " --templates " + dir.file("empty"));
    CHECK(run.exit_code == 2);
    CHECK(run.output.find("no *.melmat templates") != std::string::npos);
}

TEST_CASE("synth scene emits a consumable pair plus truth") {
    TempDir dir;
    const RunResult made =
        run_cli(dir, "synth scene --outdir " + dir.file("scene") + " --seed 5 --obstacle " +
                         "817:128:130:50:60:200,40,40");
    CHECK(made.exit_code == 0);
    CHECK(read_ppm(dir.file("scene/left.ppm")).width() == 320);
    CHECK(read_pgm(dir.file("scene/truth.pgm")).rows() == 240);

    write_bench_calibration(dir, "calib.txt");
    const RunResult nav = run_cli(dir, "navigate --left " + dir.file("scene/left.ppm") +
                                           " --right " + dir.file("scene/right.ppm") +
                                           " --calib " + dir.file("calib.txt") + " --outdir " +
                                           dir.file("out"));
    CHECK(nav.exit_code == 0);
    CHECK(nav.output.find("action=GoStraight") != std::string::npos);
}

TEST_CASE("pipeline iterates numbered frame pairs in order") {
    TempDir dir;
    std::filesystem::create_directories(dir.file("frames"));
    const StereoScene near = render_stereo_scene(testing::single_patch_scene(25, 2));
    const StereoScene far = render_stereo_scene(testing::single_patch_scene(10, 3));
    write_ppm(dir.file("frames/left_001.ppm"), far.left);
    write_ppm(dir.file("frames/right_001.ppm"), far.right);
    write_ppm(dir.file("frames/left_002.ppm"), near.left);
    write_ppm(dir.file("frames/right_002.ppm"), near.right);
    write_bench_calibration(dir, "calib.txt");

    const RunResult run = run_cli(dir, "pipeline --frames " + dir.file("frames") + " --calib " +
                                           dir.file("calib.txt"));
    CHECK(run.exit_code == 0);
    const std::size_t first = run.output.find("frame=001");
    const std::size_t second = run.output.find("frame=002");
    REQUIRE(first != std::string::npos);
    REQUIRE(second != std::string::npos);
    CHECK(first < second);
    // d=10 -> 1225.5 mm straight; d=25 -> 490.2 mm stop.
    CHECK(run.output.find("frame=001 D=1225.5 action=GoStraight code=1") != std::string::npos);
    CHECK(run.output.find("frame=002 D=490.2 action=Stop code=0") != std::string::npos);
}

}  // TEST_SUITE
