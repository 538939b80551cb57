// wnav: batch front end for the perception library. Two pipelines:
// vision (detect / disparity / navigate / pipeline over stereo pairs) and
// speech (features / train / recognize), plus a synthetic-scene generator.

#include "wnav/calibration.hpp"
#include "wnav/dtw.hpp"
#include "wnav/error.hpp"
#include "wnav/manifest.hpp"
#include "wnav/melmat_io.hpp"
#include "wnav/nav.hpp"
#include "wnav/netpbm.hpp"
#include "wnav/obstacle.hpp"
#include "wnav/speech.hpp"
#include "wnav/stereo.hpp"
#include "wnav/synth.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitContract = 3;

std::string format_mm(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%g", value);
    return buffer;
}

void require_file(const std::string& path) {
    if (!fs::is_regular_file(path)) {
        throw wnav::IoError(path + ": input file does not exist");
    }
}

// ---- shared option blocks -------------------------------------------------

struct FrontEndOptions {
    wnav::FrontEndConfig config;
    bool raw = false;
    bool use_mfcc = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--sample-rate", config.sample_rate, "Sample rate in Hz")
            ->capture_default_str();
        cmd->add_option("--fft-length", config.fft_length, "FFT length (power of two)")
            ->capture_default_str();
        cmd->add_option("--frame-shift", config.frame_shift, "Frame shift in samples")
            ->capture_default_str();
        cmd->add_option("--mel-channels", config.mel_channels, "Mel filterbank channels")
            ->capture_default_str();
        cmd->add_option("--log-floor", config.log_floor, "Log/energy floor")
            ->capture_default_str();
        cmd->add_flag("--preemphasis", config.preemphasis, "Enable pre-emphasis");
        cmd->add_option("--preemphasis-coeff", config.preemphasis_coeff,
                        "Pre-emphasis coefficient")
            ->capture_default_str();
        cmd->add_option("--mfcc-count", config.mfcc_count, "MFCC coefficients")
            ->capture_default_str();
        cmd->add_flag("--mfcc", use_mfcc, "Use MFCC features instead of log-mel");
        cmd->add_flag("--raw", raw, "Audio inputs are text files, one sample per line");
    }

    wnav::FrontEndConfig effective() const {
        wnav::FrontEndConfig out = config;
        out.features = use_mfcc ? wnav::FeatureKind::Mfcc : wnav::FeatureKind::LogMel;
        return out;
    }

    wnav::AudioSignal load(const std::string& path) const {
        require_file(path);
        if (raw || fs::path(path).extension() != ".wav") {
            return wnav::read_raw_samples(path, config.sample_rate);
        }
        return wnav::read_wav(path);
    }

    json describe() const {
        const wnav::FrontEndConfig c = effective();
        return {{"sample_rate", c.sample_rate},
                {"fft_length", c.fft_length},
                {"frame_shift", c.frame_shift},
                {"mel_channels", c.mel_channels},
                {"log_floor", c.log_floor},
                {"preemphasis", c.preemphasis},
                {"preemphasis_coeff", c.preemphasis_coeff},
                {"mfcc_count", c.mfcc_count},
                {"features", c.features == wnav::FeatureKind::Mfcc ? "mfcc" : "logmel"},
                {"raw_audio", raw}};
    }
};

struct RegionOptions {
    std::vector<int> rectangle;  // r0,r1,c0,c1
    std::vector<int> trapezoid;  // r0,r1,c0,c1,widen

    void attach(CLI::App* cmd) {
        cmd->add_option("--region", rectangle,
                        "Rectangular reference area r0,r1,c0,c1 (inclusive)")
            ->delimiter(',')
            ->expected(4);
        cmd->add_option("--trapezoid", trapezoid,
                        "Trapezoidal reference area r0,r1,c0,c1,widen_per_row")
            ->delimiter(',')
            ->expected(5);
    }

    wnav::RegionSpec effective() const {
        wnav::RegionSpec region;
        if (!trapezoid.empty()) {
            region.kind = wnav::RegionSpec::Kind::Trapezoid;
            region.row0 = trapezoid[0];
            region.row1 = trapezoid[1];
            region.col0 = trapezoid[2];
            region.col1 = trapezoid[3];
            region.widen_per_row = trapezoid[4];
        } else if (!rectangle.empty()) {
            region.row0 = rectangle[0];
            region.row1 = rectangle[1];
            region.col0 = rectangle[2];
            region.col1 = rectangle[3];
        }
        return region;
    }

    json describe() const {
        const wnav::RegionSpec r = effective();
        return {{"kind", r.kind == wnav::RegionSpec::Kind::Trapezoid ? "trapezoid" : "rectangle"},
                {"row0", r.row0},
                {"row1", r.row1},
                {"col0", r.col0},
                {"col1", r.col1},
                {"widen_per_row", r.widen_per_row}};
    }
};

struct MatchOptions {
    wnav::MatchParams params;
    std::string metric = "ncc";
    int support_threshold = -1;

    void attach(CLI::App* cmd) {
        cmd->add_option("--window", params.window_half,
                        "Matching half-window (4 means 9x9 windows)")
            ->capture_default_str();
        cmd->add_option("--dmin", params.d_min, "Smallest disparity searched")
            ->capture_default_str();
        cmd->add_option("--dmax", params.d_max, "Largest disparity searched")
            ->capture_default_str();
        cmd->add_option("--metric", metric, "Window metric: ncc or sad")
            ->check(CLI::IsMember({"ncc", "sad"}))
            ->capture_default_str();
        cmd->add_option("--support", support_threshold,
                        "Disparity histogram support threshold (default 3*dmax)")
            ->capture_default_str();
    }

    wnav::MatchParams effective() const {
        wnav::MatchParams out = params;
        out.metric = metric == "sad" ? wnav::MatchParams::Metric::Sad
                                     : wnav::MatchParams::Metric::Ncc;
        return out;
    }

    json describe() const {
        return {{"window_half", params.window_half},
                {"d_min", params.d_min},
                {"d_max", params.d_max},
                {"metric", metric},
                {"support_threshold", support_threshold}};
    }
};

std::string default_manifest(const std::string& chosen, const std::string& anchor) {
    if (!chosen.empty()) return chosen;
    return anchor + ".manifest.json";
}

// ---- detect ---------------------------------------------------------------

struct DetectArgs {
    std::string image, out = "mask.pgm", manifest;
    RegionOptions region;
    wnav::ObstacleConfig config;
    bool emit_json = false;
};

int run_detect(const DetectArgs& args) {
    require_file(args.image);
    const wnav::RgbImage image = wnav::read_ppm(args.image);
    const wnav::RegionSpec region = args.region.effective();
    const wnav::ObstacleMask mask = wnav::detect_obstacles(image, region, args.config);
    wnav::write_pgm(args.out, wnav::mask_to_gray(mask));

    json parameters = {{"region", args.region.describe()},
                       {"median_window", args.config.median_window},
                       {"value_floor", args.config.value_floor},
                       {"saturation_floor", args.config.saturation_floor},
                       {"threshold_divisor", args.config.threshold_divisor},
                       {"output", args.out}};
    wnav::write_manifest(default_manifest(args.manifest, args.out), "detect", parameters,
                         {{args.image, wnav::file_digest(args.image)}});

    const long obstacle_pixels = (mask.array() != 0).count();
    if (args.emit_json) {
        std::cout << json{{"mask", args.out}, {"obstacle_pixels", obstacle_pixels}}.dump()
                  << "\n";
    } else {
        std::cout << "mask=" << args.out << " obstacle_pixels=" << obstacle_pixels << "\n";
    }
    return kExitOk;
}

// ---- disparity ------------------------------------------------------------

struct DisparityArgs {
    std::string left, right, mask_path, out = "disp.pgm", manifest;
    MatchOptions match;
    bool emit_json = false;
};

int run_disparity(const DisparityArgs& args) {
    require_file(args.left);
    require_file(args.right);
    const wnav::RgbImage left = wnav::read_ppm(args.left);
    const wnav::RgbImage right = wnav::read_ppm(args.right);

    wnav::ObstacleMask mask;
    json inputs = {{args.left, wnav::file_digest(args.left)},
                   {args.right, wnav::file_digest(args.right)}};
    if (args.mask_path.empty()) {
        mask = wnav::ObstacleMask::Constant(left.height(), left.width(), 1);
    } else {
        require_file(args.mask_path);
        mask = wnav::gray_to_mask(wnav::read_pgm(args.mask_path));
        inputs[args.mask_path] = wnav::file_digest(args.mask_path);
    }

    const wnav::DisparityMap map =
        wnav::compute_disparity(wnav::to_gray(left), wnav::to_gray(right), mask,
                                wnav::NavRegion{}, args.match.effective());
    wnav::write_pgm(args.out, wnav::disparity_to_gray(map));

    json parameters = {{"match", args.match.describe()}, {"output", args.out}};
    wnav::write_manifest(default_manifest(args.manifest, args.out), "disparity", parameters,
                         inputs);

    const long matched = (map.d.array() > 0).count();
    if (args.emit_json) {
        std::cout << json{{"disparity", args.out}, {"matched_pixels", matched}}.dump() << "\n";
    } else {
        std::cout << "disparity=" << args.out << " matched_pixels=" << matched << "\n";
    }
    return kExitOk;
}

// ---- navigate -------------------------------------------------------------

struct NavigateArgs {
    std::string left, right, calib, outdir = ".", manifest;
    RegionOptions region;
    MatchOptions match;
    wnav::ObstacleConfig obstacle_config;
    bool emit_json = false;
};

int run_navigate(const NavigateArgs& args) {
    require_file(args.left);
    require_file(args.right);
    require_file(args.calib);
    const wnav::RgbImage left = wnav::read_ppm(args.left);
    const wnav::RgbImage right = wnav::read_ppm(args.right);
    const wnav::CameraRig rig = wnav::read_calibration(args.calib);
    if (left.height() != right.height() || left.width() != right.width()) {
        throw wnav::ContractError("stereo pair dimensions differ between " + args.left +
                                  " and " + args.right);
    }

    const wnav::ObstacleMask mask =
        wnav::detect_obstacles(left, args.region.effective(), args.obstacle_config);
    const wnav::DisparityMap map =
        wnav::compute_disparity(wnav::to_gray(left), wnav::to_gray(right), mask,
                                wnav::NavRegion{}, args.match.effective());
    const double distance =
        wnav::nearest_obstacle_distance(map, rig, args.match.support_threshold);
    const wnav::NavDecision decision = wnav::decide(distance, mask);
    const int code = wnav::command_code(decision.action);

    fs::create_directories(args.outdir);
    const std::string mask_path = (fs::path(args.outdir) / "mask.pgm").string();
    const std::string disp_path = (fs::path(args.outdir) / "disp.pgm").string();
    wnav::write_pgm(mask_path, wnav::mask_to_gray(mask));
    wnav::write_pgm(disp_path, wnav::disparity_to_gray(map));

    json parameters = {{"region", args.region.describe()},
                       {"match", args.match.describe()},
                       {"median_window", args.obstacle_config.median_window},
                       {"outdir", args.outdir}};
    wnav::write_manifest(
        default_manifest(args.manifest, (fs::path(args.outdir) / "navigate").string()),
        "navigate", parameters,
        {{args.left, wnav::file_digest(args.left)},
         {args.right, wnav::file_digest(args.right)},
         {args.calib, wnav::file_digest(args.calib)}});

    if (args.emit_json) {
        std::cout << json{{"distance_mm", decision.distance_mm},
                          {"action", wnav::to_string(decision.action)},
                          {"code", code},
                          {"side_means",
                           {{"left", decision.side_means.left},
                            {"right", decision.side_means.right}}}}
                         .dump()
                  << "\n";
    } else {
        std::cout << "D=" << format_mm(decision.distance_mm)
                  << " action=" << wnav::to_string(decision.action) << " code=" << code << "\n";
    }
    return kExitOk;
}

// ---- features -------------------------------------------------------------

struct FeaturesArgs {
    std::string audio, out = "features.melmat", manifest;
    FrontEndOptions front_end;
    bool emit_json = false;
};

int run_features(const FeaturesArgs& args) {
    const wnav::AudioSignal signal = args.front_end.load(args.audio);
    const Eigen::MatrixXd features = wnav::extract_features(signal, args.front_end.effective());
    wnav::write_template(args.out, features);

    json parameters = {{"front_end", args.front_end.describe()}, {"output", args.out}};
    wnav::write_manifest(default_manifest(args.manifest, args.out), "features", parameters,
                         {{args.audio, wnav::file_digest(args.audio)}});

    if (args.emit_json) {
        std::cout << json{{"output", args.out},
                          {"channels", features.rows()},
                          {"frames", features.cols()}}
                         .dump()
                  << "\n";
    } else {
        std::cout << "features=" << args.out << " channels=" << features.rows()
                  << " frames=" << features.cols() << "\n";
    }
    return kExitOk;
}

// ---- train ----------------------------------------------------------------

struct TrainArgs {
    std::vector<std::string> words;  // label=audio_file
    std::string outdir = "templates", manifest;
    FrontEndOptions front_end;
};

int run_train(const TrainArgs& args) {
    if (args.words.empty()) {
        throw wnav::ContractError("train: no --word label=file pairs given");
    }
    fs::create_directories(args.outdir);

    json inputs;
    std::vector<std::string> labels;
    for (const std::string& pair : args.words) {
        const auto eq = pair.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == pair.size()) {
            throw wnav::ContractError("train: expected --word label=file, got '" + pair + "'");
        }
        const std::string label = pair.substr(0, eq);
        const std::string file = pair.substr(eq + 1);
        const wnav::AudioSignal signal = args.front_end.load(file);
        const Eigen::MatrixXd features =
            wnav::extract_features(signal, args.front_end.effective());
        const std::string out = (fs::path(args.outdir) / (label + ".melmat")).string();
        wnav::write_template(out, features);
        inputs[file] = wnav::file_digest(file);
        labels.push_back(label);
        std::cout << "trained " << label << " -> " << out << " (" << features.cols()
                  << " frames)\n";
    }

    json parameters = {{"front_end", args.front_end.describe()},
                       {"labels", labels},
                       {"outdir", args.outdir}};
    wnav::write_manifest(
        default_manifest(args.manifest, (fs::path(args.outdir) / "train").string()), "train",
        parameters, inputs);
    return kExitOk;
}

// ---- recognize ------------------------------------------------------------

struct RecognizeArgs {
    std::string audio, templates, manifest, mode = "symmetric";
    FrontEndOptions front_end;
    bool emit_json = false;
};

int run_recognize(const RecognizeArgs& args) {
    const wnav::AudioSignal signal = args.front_end.load(args.audio);
    const Eigen::MatrixXd features = wnav::extract_features(signal, args.front_end.effective());
    const wnav::TemplateLibrary library = wnav::load_template_library(args.templates);
    const wnav::DtwMode mode =
        args.mode == "asymmetric" ? wnav::DtwMode::Asymmetric : wnav::DtwMode::Symmetric;
    const wnav::ClassifyResult result = wnav::classify(features, library, mode);
    const int code = wnav::command_code(result.label);

    json inputs = {{args.audio, wnav::file_digest(args.audio)}};
    for (const auto& entry : library.entries) {
        const std::string path = (fs::path(args.templates) / (entry.label + ".melmat")).string();
        inputs[path] = wnav::file_digest(path);
    }
    json parameters = {{"front_end", args.front_end.describe()},
                       {"mode", args.mode},
                       {"templates", args.templates}};
    wnav::write_manifest(default_manifest(args.manifest, "recognize"), "recognize", parameters,
                         inputs);

    if (args.emit_json) {
        json all = json::array();
        for (const auto& [label, distance] : result.all_distances) {
            all.push_back({{"label", label}, {"distance", distance}});
        }
        std::cout << json{{"label", result.label},
                          {"distance", result.distance},
                          {"code", code},
                          {"all_distances", all}}
                         .dump()
                  << "\n";
    } else {
        std::cout << result.label << " " << format_mm(result.distance) << "\n";
        for (const auto& [label, distance] : result.all_distances) {
            std::cout << "  " << label << " " << format_mm(distance) << "\n";
        }
        std::cout << "code=" << code << "\n";
    }
    return kExitOk;
}

// ---- synth ----------------------------------------------------------------

struct SynthSceneArgs {
    std::string outdir = "scene", calib, manifest;
    std::uint64_t seed = 0;
    int amplitude = 12;
    int d_max = 25;
    std::vector<int> floor_color = {60, 60, 60};
    std::vector<std::string> obstacles;  // Z:row:col:height:width:r,g,b
};

wnav::SceneObstacle parse_obstacle(const std::string& text) {
    std::array<std::string, 6> parts;
    std::size_t start = 0;
    for (std::size_t field = 0; field < 6; ++field) {
        const std::size_t colon = text.find(':', start);
        if (field < 5 && colon == std::string::npos) {
            throw wnav::ContractError("obstacle spec '" + text +
                                      "' must be Z:row:col:height:width:r,g,b");
        }
        parts[field] = field < 5 ? text.substr(start, colon - start) : text.substr(start);
        start = colon + 1;
    }
    wnav::SceneObstacle obstacle;
    try {
        obstacle.depth_mm = std::stod(parts[0]);
        obstacle.row0 = std::stoi(parts[1]);
        obstacle.col0 = std::stoi(parts[2]);
        obstacle.height_px = std::stoi(parts[3]);
        obstacle.width_px = std::stoi(parts[4]);
        const std::string& rgb = parts[5];
        const std::size_t c1 = rgb.find(',');
        const std::size_t c2 = rgb.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) {
            throw wnav::ContractError("obstacle color '" + rgb + "' must be r,g,b");
        }
        obstacle.color = {static_cast<std::uint8_t>(std::stoi(rgb.substr(0, c1))),
                          static_cast<std::uint8_t>(std::stoi(rgb.substr(c1 + 1, c2 - c1 - 1))),
                          static_cast<std::uint8_t>(std::stoi(rgb.substr(c2 + 1)))};
    } catch (const std::invalid_argument&) {
        throw wnav::ContractError("obstacle spec '" + text + "' has a non-numeric field");
    }
    return obstacle;
}

int run_synth_scene(const SynthSceneArgs& args) {
    wnav::SceneSpec spec;
    if (!args.calib.empty()) {
        require_file(args.calib);
        spec.rig = wnav::read_calibration(args.calib);
    } else {
        spec.rig = {300.0, 40.85, 160.0, 120.0, {0.0, 0.0, 0.0, 0.0}};
    }
    spec.seed = args.seed;
    spec.texture_amplitude = args.amplitude;
    spec.d_max = args.d_max;
    spec.floor_color = {static_cast<std::uint8_t>(args.floor_color[0]),
                        static_cast<std::uint8_t>(args.floor_color[1]),
                        static_cast<std::uint8_t>(args.floor_color[2])};
    for (const std::string& text : args.obstacles) {
        spec.obstacles.push_back(parse_obstacle(text));
    }

    const wnav::StereoScene scene = wnav::render_stereo_scene(spec);
    fs::create_directories(args.outdir);
    const std::string left_path = (fs::path(args.outdir) / "left.ppm").string();
    const std::string right_path = (fs::path(args.outdir) / "right.ppm").string();
    const std::string truth_path = (fs::path(args.outdir) / "truth.pgm").string();
    wnav::write_ppm(left_path, scene.left);
    wnav::write_ppm(right_path, scene.right);
    wnav::write_pgm(truth_path, wnav::disparity_to_gray({scene.truth_disparity, spec.d_max}));

    json parameters = {{"seed", args.seed},
                       {"texture_amplitude", args.amplitude},
                       {"d_max", args.d_max},
                       {"floor", args.floor_color},
                       {"obstacles", args.obstacles},
                       {"focal_px", spec.rig.focal_px},
                       {"baseline_mm", spec.rig.baseline_mm},
                       {"outdir", args.outdir}};
    wnav::write_manifest(
        default_manifest(args.manifest, (fs::path(args.outdir) / "scene").string()),
        "synth-scene", parameters, json::object());

    std::cout << "scene=" << args.outdir << " obstacles=" << spec.obstacles.size() << "\n";
    return kExitOk;
}

struct SynthWordArgs {
    std::string label, out = "word.txt", manifest;
    std::uint64_t seed = 0;
    double duration = 1.5;
    FrontEndOptions front_end;
};

int run_synth_word(const SynthWordArgs& args) {
    const wnav::AudioSignal signal =
        wnav::synth_word(args.label, args.seed, args.front_end.effective(), args.duration);
    wnav::write_raw_samples(args.out, signal);

    json parameters = {{"label", args.label},
                       {"seed", args.seed},
                       {"duration_s", args.duration},
                       {"sample_rate", args.front_end.config.sample_rate},
                       {"output", args.out}};
    wnav::write_manifest(default_manifest(args.manifest, args.out), "synth-word", parameters,
                         json::object());
    std::cout << "word=" << args.label << " samples=" << signal.samples.size() << " -> "
              << args.out << "\n";
    return kExitOk;
}

// ---- pipeline ---------------------------------------------------------------

struct PipelineArgs {
    std::string frames_dir, calib, outdir, manifest;
    RegionOptions region;
    MatchOptions match;
    wnav::ObstacleConfig obstacle_config;
    bool emit_json = false;
};

int run_pipeline(const PipelineArgs& args) {
    require_file(args.calib);
    if (!fs::is_directory(args.frames_dir)) {
        throw wnav::IoError(args.frames_dir + ": not a directory");
    }
    const wnav::CameraRig rig = wnav::read_calibration(args.calib);

    // Frames pair up as left_<id>.ppm / right_<id>.ppm, processed in id order.
    std::map<std::string, std::string> lefts, rights;
    for (const auto& entry : fs::directory_iterator(args.frames_dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".ppm") continue;
        const std::string stem = entry.path().stem().string();
        if (stem.rfind("left_", 0) == 0) {
            lefts[stem.substr(5)] = entry.path().string();
        } else if (stem.rfind("right_", 0) == 0) {
            rights[stem.substr(6)] = entry.path().string();
        }
    }
    if (lefts.empty()) {
        throw wnav::IoError(args.frames_dir + ": no left_<id>.ppm frames found");
    }

    json frames_report = json::array();
    json inputs;
    for (const auto& [id, left_path] : lefts) {
        const auto right_it = rights.find(id);
        if (right_it == rights.end()) {
            throw wnav::IoError(args.frames_dir + ": frame " + id + " has no right image");
        }
        const wnav::RgbImage left = wnav::read_ppm(left_path);
        const wnav::RgbImage right = wnav::read_ppm(right_it->second);
        const wnav::ObstacleMask mask =
            wnav::detect_obstacles(left, args.region.effective(), args.obstacle_config);
        const wnav::DisparityMap map =
            wnav::compute_disparity(wnav::to_gray(left), wnav::to_gray(right), mask,
                                    wnav::NavRegion{}, args.match.effective());
        const double distance =
            wnav::nearest_obstacle_distance(map, rig, args.match.support_threshold);
        const wnav::NavDecision decision = wnav::decide(distance, mask);
        const int code = wnav::command_code(decision.action);

        if (!args.outdir.empty()) {
            fs::create_directories(args.outdir);
            wnav::write_pgm((fs::path(args.outdir) / ("mask_" + id + ".pgm")).string(),
                            wnav::mask_to_gray(mask));
            wnav::write_pgm((fs::path(args.outdir) / ("disp_" + id + ".pgm")).string(),
                            wnav::disparity_to_gray(map));
        }
        inputs[left_path] = wnav::file_digest(left_path);
        inputs[right_it->second] = wnav::file_digest(right_it->second);

        if (args.emit_json) {
            frames_report.push_back({{"frame", id},
                                     {"distance_mm", decision.distance_mm},
                                     {"action", wnav::to_string(decision.action)},
                                     {"code", code}});
        } else {
            std::cout << "frame=" << id << " D=" << format_mm(decision.distance_mm)
                      << " action=" << wnav::to_string(decision.action) << " code=" << code
                      << "\n";
        }
    }
    if (args.emit_json) {
        std::cout << frames_report.dump() << "\n";
    }

    inputs[args.calib] = wnav::file_digest(args.calib);
    json parameters = {{"region", args.region.describe()},
                       {"match", args.match.describe()},
                       {"frames", lefts.size()},
                       {"outdir", args.outdir}};
    wnav::write_manifest(default_manifest(args.manifest, args.frames_dir + "/pipeline"),
                         "pipeline", parameters, inputs);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Obstacle-aware navigation and spoken-command perception toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read defaults from a key=value config file");

    DetectArgs detect;
    CLI::App* detect_cmd =
        app.add_subcommand("detect", "Per-pixel obstacle mask from one image");
    detect_cmd->add_option("--image", detect.image, "Input PPM image")->required();
    detect_cmd->add_option("--out", detect.out, "Output mask PGM")->capture_default_str();
    detect_cmd->add_option("--median", detect.config.median_window, "Despeckle window (odd)")
        ->capture_default_str();
    detect_cmd->add_option("--manifest", detect.manifest, "Manifest path");
    detect_cmd->add_flag("--json", detect.emit_json, "Machine-readable output");
    detect.region.attach(detect_cmd);

    DisparityArgs disparity;
    CLI::App* disparity_cmd =
        app.add_subcommand("disparity", "Window-matched disparity map for a stereo pair");
    disparity_cmd->add_option("--left", disparity.left, "Left PPM image")->required();
    disparity_cmd->add_option("--right", disparity.right, "Right PPM image")->required();
    disparity_cmd->add_option("--mask", disparity.mask_path,
                              "Obstacle mask PGM (default: evaluate everywhere)");
    disparity_cmd->add_option("--out", disparity.out, "Output disparity PGM")
        ->capture_default_str();
    disparity_cmd->add_option("--manifest", disparity.manifest, "Manifest path");
    disparity_cmd->add_flag("--json", disparity.emit_json, "Machine-readable output");
    disparity.match.attach(disparity_cmd);

    NavigateArgs navigate;
    CLI::App* navigate_cmd =
        app.add_subcommand("navigate", "Full loop: detect, range, and decide for one pair");
    navigate_cmd->add_option("--left", navigate.left, "Left PPM image")->required();
    navigate_cmd->add_option("--right", navigate.right, "Right PPM image")->required();
    navigate_cmd->add_option("--calib", navigate.calib, "Calibration file")->required();
    navigate_cmd
        ->add_option("--outdir", navigate.outdir, "Directory for mask/disp side outputs")
        ->capture_default_str();
    navigate_cmd
        ->add_option("--median", navigate.obstacle_config.median_window,
                     "Despeckle window (odd)")
        ->capture_default_str();
    navigate_cmd->add_option("--manifest", navigate.manifest, "Manifest path");
    navigate_cmd->add_flag("--json", navigate.emit_json, "Machine-readable output");
    navigate.region.attach(navigate_cmd);
    navigate.match.attach(navigate_cmd);

    FeaturesArgs features;
    CLI::App* features_cmd =
        app.add_subcommand("features", "Acoustic feature matrix for one utterance");
    features_cmd->add_option("--audio", features.audio, "WAV file (or text with --raw)")
        ->required();
    features_cmd->add_option("--out", features.out, "Output template file")
        ->capture_default_str();
    features_cmd->add_option("--manifest", features.manifest, "Manifest path");
    features_cmd->add_flag("--json", features.emit_json, "Machine-readable output");
    features.front_end.attach(features_cmd);

    TrainArgs train;
    CLI::App* train_cmd = app.add_subcommand("train", "Build word templates from audio files");
    train_cmd->add_option("--word", train.words, "label=audio_file (repeatable)")->required();
    train_cmd->add_option("--outdir", train.outdir, "Template directory")
        ->capture_default_str();
    train_cmd->add_option("--manifest", train.manifest, "Manifest path");
    train.front_end.attach(train_cmd);

    RecognizeArgs recognize;
    CLI::App* recognize_cmd =
        app.add_subcommand("recognize", "Classify one utterance against stored templates");
    recognize_cmd->add_option("--audio", recognize.audio, "WAV file (or text with --raw)")
        ->required();
    recognize_cmd->add_option("--templates", recognize.templates, "Template directory")
        ->required();
    recognize_cmd
        ->add_option("--mode", recognize.mode, "DTW recurrence: symmetric or asymmetric")
        ->check(CLI::IsMember({"symmetric", "asymmetric"}))
        ->capture_default_str();
    recognize_cmd->add_option("--manifest", recognize.manifest, "Manifest path");
    recognize_cmd->add_flag("--json", recognize.emit_json, "Machine-readable output");
    recognize.front_end.attach(recognize_cmd);

    CLI::App* synth_cmd =
        app.add_subcommand("synth", "Synthetic inputs with known ground truth");
    synth_cmd->require_subcommand(1);

    SynthSceneArgs scene;
    CLI::App* scene_cmd =
        synth_cmd->add_subcommand("scene", "Rectified stereo pair with known depths");
    scene_cmd->add_option("--outdir", scene.outdir, "Output directory")->capture_default_str();
    scene_cmd->add_option("--calib", scene.calib, "Calibration file (default: bench rig)");
    scene_cmd->add_option("--seed", scene.seed, "Texture seed")->capture_default_str();
    scene_cmd->add_option("--amplitude", scene.amplitude, "Texture amplitude")
        ->capture_default_str();
    scene_cmd->add_option("--dmax", scene.d_max, "Largest representable disparity")
        ->capture_default_str();
    scene_cmd->add_option("--floor", scene.floor_color, "Floor color r,g,b")
        ->delimiter(',')
        ->expected(3);
    scene_cmd->add_option("--obstacle", scene.obstacles,
                          "Obstacle Z:row:col:height:width:r,g,b (repeatable)");
    scene_cmd->add_option("--manifest", scene.manifest, "Manifest path");

    SynthWordArgs word;
    CLI::App* word_cmd =
        synth_cmd->add_subcommand("word", "Deterministic spoken-word stand-in");
    word_cmd->add_option("--label", word.label, "Vocabulary word")->required();
    word_cmd->add_option("--seed", word.seed, "Utterance seed")->capture_default_str();
    word_cmd->add_option("--duration", word.duration, "Seconds")->capture_default_str();
    word_cmd->add_option("--out", word.out, "Output text sample file")->capture_default_str();
    word_cmd->add_option("--manifest", word.manifest, "Manifest path");
    word.front_end.attach(word_cmd);

    PipelineArgs pipeline;
    CLI::App* pipeline_cmd = app.add_subcommand(
        "pipeline", "Navigate every left_/right_<id>.ppm pair in a directory");
    pipeline_cmd->add_option("--frames", pipeline.frames_dir, "Directory of frame pairs")
        ->required();
    pipeline_cmd->add_option("--calib", pipeline.calib, "Calibration file")->required();
    pipeline_cmd->add_option("--outdir", pipeline.outdir,
                             "Directory for per-frame side outputs");
    pipeline_cmd->add_option("--manifest", pipeline.manifest, "Manifest path");
    pipeline_cmd->add_flag("--json", pipeline.emit_json, "Machine-readable output");
    pipeline.region.attach(pipeline_cmd);
    pipeline.match.attach(pipeline_cmd);

    try {
        app.parse(argc, argv);
        if (detect_cmd->parsed()) return run_detect(detect);
        if (disparity_cmd->parsed()) return run_disparity(disparity);
        if (navigate_cmd->parsed()) return run_navigate(navigate);
        if (features_cmd->parsed()) return run_features(features);
        if (train_cmd->parsed()) return run_train(train);
        if (recognize_cmd->parsed()) return run_recognize(recognize);
        if (scene_cmd->parsed()) return run_synth_scene(scene);
        if (word_cmd->parsed()) return run_synth_word(word);
        if (pipeline_cmd->parsed()) return run_pipeline(pipeline);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const wnav::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const wnav::ContractError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitContract;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitContract;
    }
}
