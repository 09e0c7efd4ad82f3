// Copyright 2026 The skillseg Authors
// SPDX-License-Identifier: Apache-2.0

// Subcommand wiring for the skillseg command-line tool. Kept in a header so
// the test suite can drive run() in-process.

#pragma once

#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "skillseg/skillseg.hpp"

namespace skillseg::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kMissingFile = 3,
  kSchemaViolation = 4,
  kInvariantBreach = 5,
  kBadArgument = 6,
};

struct Options {
  std::uint64_t seed = 0;
  std::optional<double> fps;

  // ingest
  std::string keypoints_dir, meta_file, video_id;
  double width = 960, height = 540;

  // shared paths
  std::vector<std::string> features, annotations, preds, gts, timelines;
  std::vector<std::string> probs;
  std::string out, out_dir, model, loss_csv;

  // train
  int epochs = 500, batch_size = 512;
  double lr = 1e-4;
  std::string hidden = "256,128,64";
  std::string activation = "leaky_relu";

  // split
  double ratio = 0.8;

  // segment
  std::string method = "viterbi";
  double epsilon = 0.01;
  HeuristicConfig heuristic;

  // eval
  int bins = 5, thresholds = 100;
  std::string method_name = "method";

  // synth
  SynthConfig synth;

  // render
  std::string format = "text";
  std::vector<std::string> row_names;
  int columns = 80;
};

inline std::shared_ptr<spdlog::logger> logger() {
  static std::shared_ptr<spdlog::logger> log = [] {
    auto l = spdlog::stderr_color_st("skillseg");
    const char* env = std::getenv("SKILLSEG_LOG");
    l->set_level(env ? spdlog::level::from_str(env) : spdlog::level::info);
    l->set_pattern("[%l] %v");
    return l;
  }();
  return log;
}

inline void require_files(const std::vector<std::string>& paths) {
  for (const auto& p : paths) {
    if (!fs::exists(p)) fail(ErrorKind::kIo, "missing file: " + p);
  }
}

inline void require_file(const std::string& p) { require_files({p}); }

inline std::vector<int> parse_hidden(const std::string& spec) {
  std::vector<int> dims{kNumFeatures};
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      dims.push_back(std::stoi(item));
    } catch (const std::exception&) {
      fail(ErrorKind::kInvalidArgument, "bad --hidden entry '" + item + "'");
    }
  }
  dims.push_back(kNumClasses);
  return dims;
}

inline void log_config(const std::string& cmd, const json& cfg) {
  logger()->info("{} config: {}", cmd, cfg.dump());
}

inline std::string csv_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// ---------------------------------------------------------------------------

inline void cmd_ingest(const Options& o) {
  if (!fs::is_directory(o.keypoints_dir)) fail(ErrorKind::kIo, "missing file: " + o.keypoints_dir);
  VideoMeta meta{o.width, o.height, o.fps.value_or(kDefaultFps)};
  if (!o.meta_file.empty()) {
    require_file(o.meta_file);
    meta = read_video_meta(o.meta_file);
  } else if (fs::exists(fs::path(o.keypoints_dir) / "meta.json")) {
    meta = read_video_meta(fs::path(o.keypoints_dir) / "meta.json");
  }
  log_config("ingest", {{"keypoints", o.keypoints_dir}, {"width", meta.width}, {"height", meta.height},
                        {"fps", meta.fps}, {"video_id", o.video_id}, {"out", o.out}});
  const auto seq = load_video_features(o.keypoints_dir, meta, o.video_id);
  write_features(o.out, seq);
  logger()->info("ingested {} frames of {}", seq.size(), seq.video_id);
}

inline std::map<std::string, GroundTruth> load_annotations(const std::vector<std::string>& paths) {
  std::map<std::string, GroundTruth> out;
  for (const auto& p : paths) {
    auto gt = load_annotation(p);
    const std::string id = gt.video_id;
    if (!out.emplace(id, std::move(gt)).second) fail(ErrorKind::kSchema, "duplicate annotation for " + id);
  }
  return out;
}

inline void cmd_train(const Options& o) {
  require_files(o.features);
  require_files(o.annotations);
  TrainConfig cfg;
  cfg.epochs = o.epochs;
  cfg.batch_size = o.batch_size;
  cfg.learning_rate = o.lr;
  cfg.seed = o.seed;
  const auto act = activation_from_tag(o.activation);
  if (!act) fail(ErrorKind::kInvalidArgument, "unsupported activation '" + o.activation + "'");
  cfg.activation = *act;
  cfg.layer_dims = parse_hidden(o.hidden);
  cfg.validate();
  log_config("train", {{"features", o.features}, {"annotations", o.annotations}, {"out", o.out},
                       {"loss_csv", o.loss_csv}, {"train_config", train_config_to_json(cfg)}});

  const auto gts = load_annotations(o.annotations);
  LabeledFrames data;
  data.features.resize(kNumFeatures, 0);
  for (const auto& path : o.features) {
    const auto seq = read_features(path);
    auto it = gts.find(seq.video_id);
    if (it == gts.end()) fail(ErrorKind::kSchema, "no annotation for video " + seq.video_id);
    append_labeled(data, seq, segments_to_labels(it->second.timeline));
  }
  auto result = train(init_mlp(cfg), data, cfg);
  save_model(o.out, result.model, cfg);
  if (!o.loss_csv.empty()) io::write_atomic(o.loss_csv, loss_history_csv(result.loss_history));
  logger()->info("trained on {} frames; final loss {:.6f}", data.size(), result.loss_history.back());
}

inline void cmd_split(const Options& o) {
  require_files(o.annotations);
  std::vector<std::string> ids;
  for (const auto& p : o.annotations) ids.push_back(load_annotation(p).video_id);
  log_config("split", {{"annotations", o.annotations}, {"ratio", o.ratio}, {"seed", o.seed}, {"out", o.out}});
  const auto split = split_dataset(ids, o.ratio, o.seed);
  io::write_json(o.out, {{"seed", split.seed}, {"ratio", o.ratio}, {"train", split.train}, {"test", split.test}});
  logger()->info("split {} videos: {} train / {} test", ids.size(), split.train.size(), split.test.size());
}

inline void cmd_predict(const Options& o) {
  require_file(o.model);
  require_files(o.features);
  log_config("predict", {{"model", o.model}, {"features", o.features}, {"out", o.out}, {"out_dir", o.out_dir}});
  const auto model = load_model(o.model);
  if (o.features.size() > 1 && o.out_dir.empty())
    fail(ErrorKind::kInvalidArgument, "several --features need --out-dir");
  for (const auto& path : o.features) {
    const auto seq = read_features(path);
    ProbFile pf{seq.video_id, seq.fps, predict_sequence(model, seq)};
    const fs::path dest = o.out_dir.empty() ? fs::path(o.out) : fs::path(o.out_dir) / (seq.video_id + ".json");
    write_probs(dest, pf);
  }
}

inline Timeline segment_probs(const ProbFile& pf, const Options& o) {
  const double fps = o.fps.value_or(pf.fps);
  Timeline t;
  if (o.method == "raw") {
    t = labels_to_segments(argmax_labels(pf.probs, fps));
  } else if (o.method == "heuristic") {
    t = heuristic_segment(argmax_labels(pf.probs, fps), o.heuristic);
  } else if (o.method == "viterbi") {
    t = labels_to_segments(viterbi_decode(pf.probs, TransitionModel(pf.probs.n_classes(), o.epsilon), fps));
  } else {
    fail(ErrorKind::kInvalidArgument, "unknown --method '" + o.method + "' (raw, heuristic, viterbi)");
  }
  t.fps = fps;
  if (!is_valid_timeline(t)) fail(ErrorKind::kInvariant, "segmenter produced an invalid timeline");
  return t;
}

inline void cmd_segment(const Options& o) {
  const auto& inputs = o.probs;
  require_files(inputs);
  if (inputs.size() > 1 && o.out_dir.empty()) fail(ErrorKind::kInvalidArgument, "several inputs need --out-dir");
  o.heuristic.validate();
  log_config("segment", {{"probs", inputs}, {"method", o.method}, {"epsilon", o.epsilon}, {"m", o.heuristic.m},
                         {"stride", o.heuristic.stride}, {"fnr_radius", o.heuristic.fnr_radius}, {"out", o.out},
                         {"out_dir", o.out_dir}});
  for (const auto& path : inputs) {
    const auto pf = read_probs(path);
    TimelineFile tf{pf.video_id, segment_probs(pf, o), std::nullopt};
    const fs::path dest = o.out_dir.empty() ? fs::path(o.out) : fs::path(o.out_dir) / (pf.video_id + ".json");
    write_timeline(dest, tf);
  }
}

inline void cmd_eval(const Options& o) {
  require_files(o.preds);
  require_files(o.gts);
  log_config("eval", {{"pred", o.preds}, {"gt", o.gts}, {"out_dir", o.out_dir}, {"bins", o.bins},
                      {"thresholds", o.thresholds}, {"method_name", o.method_name}});
  std::map<std::string, Timeline> gt_by_id;
  for (const auto& p : o.gts) {
    auto f = read_timeline(p);
    gt_by_id[f.video_id] = f.timeline;
  }
  std::vector<Timeline> pred_set, gt_set;
  FrameMetrics frames;
  EdgeHistogram edges(o.bins);
  std::set<std::string> seen;
  for (const auto& p : o.preds) {
    auto f = read_timeline(p);
    auto it = gt_by_id.find(f.video_id);
    if (it == gt_by_id.end()) fail(ErrorKind::kSchema, "no ground truth for video " + f.video_id);
    if (!seen.insert(f.video_id).second) fail(ErrorKind::kSchema, "duplicate prediction for " + f.video_id);
    if (f.timeline.n_frames != it->second.n_frames)
      fail(ErrorKind::kInvariant, "frame count mismatch for video " + f.video_id);
    const auto pred_labels = segments_to_labels(f.timeline);
    frames.add(pred_labels, segments_to_labels(it->second));
    edges.add(pred_labels, it->second);
    pred_set.push_back(f.timeline);
    gt_set.push_back(it->second);
  }
  const auto grid = threshold_grid(o.thresholds);
  const auto seg = segment_report(pred_set, gt_set, grid);
  const auto fr = frames.report();

  // Columns in alphabetical class-name order, as in the usual results table.
  std::vector<ClassId> order(kNumClasses);
  for (int i = 0; i < kNumClasses; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [](ClassId a, ClassId b) { return class_name(a) < class_name(b); });

  std::string seg_csv = "method,mASF1";
  for (ClassId c : order) seg_csv += "," + std::string(class_name(c));
  seg_csv += "\n" + o.method_name + "," + csv_num(seg.masf1);
  for (ClassId c : order) {
    const auto& v = seg.per_class_asf1[static_cast<std::size_t>(c)];
    seg_csv += "," + (v ? csv_num(*v) : std::string());
  }
  seg_csv += "\n";

  std::string frame_csv = "class,precision,recall,f1,support\n";
  for (ClassId c : order) {
    const auto& s = fr.per_class[static_cast<std::size_t>(c)];
    frame_csv += std::string(class_name(c)) + "," + csv_num(s.precision) + "," + csv_num(s.recall) + "," +
                 csv_num(s.f1) + "," + std::to_string(s.support) + "\n";
  }
  frame_csv += "macro," + csv_num(fr.macro_precision) + "," + csv_num(fr.macro_recall) + "," +
               csv_num(fr.macro_f1) + "," + std::to_string(fr.n_frames) + "\n";
  frame_csv += "accuracy," + csv_num(fr.accuracy) + ",,,\n";

  std::string confusion_csv = "gt\\pred";
  for (int c = 0; c < kNumClasses; ++c) confusion_csv += "," + std::string(class_name(c));
  confusion_csv += "\n";
  for (int g = 0; g < kNumClasses; ++g) {
    confusion_csv += std::string(class_name(g));
    for (int p = 0; p < kNumClasses; ++p)
      confusion_csv += "," + std::to_string(fr.confusion[static_cast<std::size_t>(g)][static_cast<std::size_t>(p)]);
    confusion_csv += "\n";
  }

  std::string curve_csv = "t";
  for (ClassId c : order)
    if (seg.per_class_asf1[static_cast<std::size_t>(c)]) curve_csv += "," + std::string(class_name(c));
  curve_csv += ",mean\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    curve_csv += csv_num(grid[i]);
    for (ClassId c : order)
      if (seg.per_class_asf1[static_cast<std::size_t>(c)])
        curve_csv += "," + csv_num(seg.sf1_curves[static_cast<std::size_t>(c)][i]);
    curve_csv += "," + csv_num(seg.mean_sf1_curve[i]) + "\n";
  }

  std::string edge_csv = "min_distance,max_distance,frames,accuracy\n";
  json edge_json = json::array();
  for (const auto& b : edges.bins()) {
    edge_csv += std::to_string(b.min_distance) + "," + std::to_string(b.max_distance) + "," +
                std::to_string(b.frames) + "," + csv_num(b.accuracy()) + "\n";
    edge_json.push_back({{"min_distance", b.min_distance}, {"max_distance", b.max_distance},
                         {"frames", b.frames}, {"accuracy", b.accuracy()}});
  }

  json per_class = json::object();
  for (ClassId c : order) {
    const auto& v = seg.per_class_asf1[static_cast<std::size_t>(c)];
    per_class[std::string(class_name(c))] = v ? json(*v) : json(nullptr);
  }
  const json summary = {{"method", o.method_name},
                        {"n_videos", pred_set.size()},
                        {"frame_accuracy", fr.accuracy},
                        {"macro_f1", fr.macro_f1},
                        {"mASF1", seg.masf1},
                        {"asf1", per_class},
                        {"thresholds", grid},
                        {"mean_sf1_curve", seg.mean_sf1_curve},
                        {"edge_accuracy", edge_json}};

  const fs::path dir = o.out_dir.empty() ? fs::path(".") : fs::path(o.out_dir);
  io::write_atomic(dir / "seg_report.csv", seg_csv);
  io::write_atomic(dir / "frame_report.csv", frame_csv);
  io::write_atomic(dir / "confusion.csv", confusion_csv);
  io::write_atomic(dir / "sf1_curve.csv", curve_csv);
  io::write_atomic(dir / "edge_accuracy.csv", edge_csv);
  io::write_json(dir / "summary.json", summary);
  std::printf("videos=%zu frame_accuracy=%.4f mASF1=%.4f\n", pred_set.size(), fr.accuracy, seg.masf1);
}

inline void cmd_synth(const Options& o) {
  SynthConfig cfg = o.synth;
  cfg.seed = o.seed;
  if (o.fps) cfg.fps = *o.fps;
  cfg.validate();
  log_config("synth", {{"out_dir", o.out_dir}, {"videos", cfg.n_videos}, {"frames_min", cfg.frames_min},
                       {"frames_max", cfg.frames_max}, {"seg_min", cfg.segment_min}, {"seg_max", cfg.segment_max},
                       {"classes", cfg.n_classes}, {"noise", cfg.noise}, {"alpha", cfg.alpha},
                       {"edge_biased", cfg.edge_biased}, {"fps", cfg.fps}, {"seed", cfg.seed}});
  if (o.out_dir.empty()) fail(ErrorKind::kInvalidArgument, "synth needs --out-dir");
  const fs::path dir(o.out_dir);
  for (const auto& v : gen_dataset(cfg)) {
    write_timeline(dir / "gt" / (v.video_id + ".json"), {v.video_id, v.gt, std::nullopt});
    write_probs(dir / "probs" / (v.video_id + ".json"), {v.video_id, cfg.fps, v.probs});
  }
  logger()->info("wrote {} synthetic videos to {}", cfg.n_videos, dir.string());
}

inline void cmd_render(const Options& o) {
  require_files(o.timelines);
  if (!o.row_names.empty() && o.row_names.size() != o.timelines.size())
    fail(ErrorKind::kInvalidArgument, "--names must match the number of --timeline files");
  log_config("render", {{"timelines", o.timelines}, {"format", o.format}, {"out", o.out}});
  std::vector<TimelineRow> rows;
  for (std::size_t i = 0; i < o.timelines.size(); ++i) {
    auto f = read_timeline(o.timelines[i]);
    if (o.fps) f.timeline.fps = *o.fps;
    rows.push_back({o.row_names.empty() ? f.video_id : o.row_names[i], f.timeline});
  }
  std::string text;
  if (o.format == "text") {
    text = render_text(rows, o.columns);
  } else if (o.format == "svg") {
    text = render_svg(rows);
  } else {
    fail(ErrorKind::kInvalidArgument, "unknown --format '" + o.format + "' (text, svg)");
  }
  if (o.out.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    io::write_atomic(o.out, text);
  }
}

// ---------------------------------------------------------------------------

inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::kIo: return kMissingFile;
    case ErrorKind::kSchema: return kSchemaViolation;
    case ErrorKind::kInvariant: return kInvariantBreach;
    case ErrorKind::kInvalidArgument: return kBadArgument;
  }
  return kFailure;
}

inline const char* kind_label(ErrorKind k) {
  switch (k) {
    case ErrorKind::kIo: return "missing file";
    case ErrorKind::kSchema: return "schema violation";
    case ErrorKind::kInvariant: return "invariant breach";
    case ErrorKind::kInvalidArgument: return "invalid argument";
  }
  return "error";
}

inline int run(int argc, const char* const* argv) {
  Options o;
  CLI::App app{"skillseg: temporal segmentation of calisthenics skill videos from pose keypoints"};
  app.require_subcommand(1);
  app.add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  app.add_option("--fps", o.fps, "frames per second override");

  auto* ingest = app.add_subcommand("ingest", "OpenPose keypoint directory -> feature cache");
  ingest->add_option("--keypoints", o.keypoints_dir, "directory of per-frame keypoint JSON files")->required();
  ingest->add_option("--meta", o.meta_file, "video metadata JSON {width, height, fps}");
  ingest->add_option("--width", o.width, "frame width in pixels")->capture_default_str();
  ingest->add_option("--height", o.height, "frame height in pixels")->capture_default_str();
  ingest->add_option("--video-id", o.video_id, "video id (default: directory name)");
  ingest->add_option("--out", o.out, "feature cache output")->required();

  auto* train_cmd = app.add_subcommand("train", "features + annotations -> model file + loss CSV");
  train_cmd->add_option("--features", o.features, "feature cache files")->required();
  train_cmd->add_option("--annotations", o.annotations, "ground-truth timeline files")->required();
  train_cmd->add_option("--out", o.out, "model output")->required();
  train_cmd->add_option("--loss-csv", o.loss_csv, "per-epoch loss CSV output");
  train_cmd->add_option("--epochs", o.epochs)->capture_default_str();
  train_cmd->add_option("--batch-size", o.batch_size)->capture_default_str();
  train_cmd->add_option("--lr", o.lr)->capture_default_str();
  train_cmd->add_option("--hidden", o.hidden, "comma-separated hidden widths")->capture_default_str();
  train_cmd->add_option("--activation", o.activation, "leaky_relu, relu, sigmoid, tanh, silu")->capture_default_str();

  auto* split_cmd = app.add_subcommand("split", "annotations -> seeded train/test split");
  split_cmd->add_option("--annotations", o.annotations, "ground-truth timeline files")->required();
  split_cmd->add_option("--ratio", o.ratio, "training fraction")->capture_default_str();
  split_cmd->add_option("--out", o.out, "split JSON output")->required();

  auto* predict_cmd = app.add_subcommand("predict", "model + features -> probability file");
  predict_cmd->add_option("--model", o.model)->required();
  predict_cmd->add_option("--features", o.features, "feature cache files")->required();
  predict_cmd->add_option("--out", o.out, "probability file (one input)");
  predict_cmd->add_option("--out-dir", o.out_dir, "output directory (several inputs)");

  auto* segment_cmd = app.add_subcommand("segment", "probability file -> timeline file");
  segment_cmd->add_option("--probs", o.probs, "probability files")->required();
  segment_cmd->add_option("--method", o.method, "raw, heuristic or viterbi")->capture_default_str();
  segment_cmd->add_option("--epsilon", o.epsilon, "viterbi switch probability")->capture_default_str();
  segment_cmd->add_option("--m", o.heuristic.m, "heuristic window multiplier")->capture_default_str();
  segment_cmd->add_option("--stride", o.heuristic.stride, "heuristic stride")->capture_default_str();
  segment_cmd->add_option("--fnr-radius", o.heuristic.fnr_radius, "heuristic filter radius")->capture_default_str();
  segment_cmd->add_option("--out", o.out, "timeline output (one input)");
  segment_cmd->add_option("--out-dir", o.out_dir, "output directory (several inputs)");

  auto* eval_cmd = app.add_subcommand("eval", "predicted + ground-truth timelines -> reports");
  eval_cmd->add_option("--pred", o.preds, "predicted timeline files")->required();
  eval_cmd->add_option("--gt", o.gts, "ground-truth timeline files")->required();
  eval_cmd->add_option("--out-dir", o.out_dir, "report directory");
  eval_cmd->add_option("--bins", o.bins, "edge-distance bin width in frames")->capture_default_str();
  eval_cmd->add_option("--thresholds", o.thresholds, "number of IoU thresholds in (0, 1]")->capture_default_str();
  eval_cmd->add_option("--method-name", o.method_name, "row label in seg_report.csv")->capture_default_str();

  auto* synth_cmd = app.add_subcommand("synth", "synthetic ground-truth + probability bundles");
  synth_cmd->add_option("--out-dir", o.out_dir)->required();
  synth_cmd->add_option("--videos", o.synth.n_videos)->capture_default_str();
  synth_cmd->add_option("--frames-min", o.synth.frames_min)->capture_default_str();
  synth_cmd->add_option("--frames-max", o.synth.frames_max)->capture_default_str();
  synth_cmd->add_option("--seg-min", o.synth.segment_min)->capture_default_str();
  synth_cmd->add_option("--seg-max", o.synth.segment_max)->capture_default_str();
  synth_cmd->add_option("--classes", o.synth.n_classes)->capture_default_str();
  synth_cmd->add_option("--noise", o.synth.noise)->capture_default_str();
  synth_cmd->add_option("--alpha", o.synth.alpha)->capture_default_str();
  synth_cmd->add_flag("--edge-biased", o.synth.edge_biased, "triple the noise near segment edges");

  auto* render_cmd = app.add_subcommand("render", "timelines -> text or SVG strip with hold times");
  render_cmd->add_option("--timeline", o.timelines, "timeline files, one row each")->required();
  render_cmd->add_option("--names", o.row_names, "row captions");
  render_cmd->add_option("--format", o.format, "text or svg")->capture_default_str();
  render_cmd->add_option("--columns", o.columns, "text strip width")->capture_default_str();
  render_cmd->add_option("--out", o.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "skillseg: error: usage: %s\n", e.what());
    return kUsage;
  }

  try {
    for (const auto* sub : {predict_cmd, segment_cmd}) {
      if (sub->parsed() && o.out.empty() && o.out_dir.empty())
        fail(ErrorKind::kInvalidArgument, "--out or --out-dir is required");
    }
    if (ingest->parsed()) cmd_ingest(o);
    else if (train_cmd->parsed()) cmd_train(o);
    else if (split_cmd->parsed()) cmd_split(o);
    else if (predict_cmd->parsed()) cmd_predict(o);
    else if (segment_cmd->parsed()) cmd_segment(o);
    else if (eval_cmd->parsed()) cmd_eval(o);
    else if (synth_cmd->parsed()) cmd_synth(o);
    else if (render_cmd->parsed()) cmd_render(o);
  } catch (const Error& e) {
    std::fprintf(stderr, "skillseg: error: %s: %s\n", kind_label(e.kind()), e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "skillseg: error: %s\n", e.what());
    return kFailure;
  }
  return kOk;
}

}  // namespace skillseg::cli
