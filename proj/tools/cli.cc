// Copyright 2026 The trimcode Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "trimcode/bitplanes.h"
#include "trimcode/codec.h"
#include "trimcode/context_model.h"
#include "trimcode/corpus.h"
#include "trimcode/error.h"
#include "trimcode/inpaint.h"
#include "trimcode/model_io.h"
#include "trimcode/pgm.h"
#include "trimcode/trainer.h"

namespace trimcode::cli {

namespace {

namespace fs = std::filesystem;

// One line of space-separated key=value fields.
class Record {
 public:
  Record& Add(const std::string& key, const std::string& value) {
    if (!line_.empty()) line_ += ' ';
    line_ += key + '=' + value;
    return *this;
  }
  Record& Add(const std::string& key, const char* value) {
    return Add(key, std::string(value));
  }
  Record& Add(const std::string& key, double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", value);
    return Add(key, std::string(buf));
  }
  Record& Add(const std::string& key, size_t value) {
    return Add(key, std::to_string(value));
  }
  const std::string& str() const { return line_; }

 private:
  std::string line_;
};

struct Options {
  std::string model;
  std::string input;
  std::string output;
  std::string schedule;
  std::string metrics;
  std::string region;
  std::string kind = "markov-texture";
  uint32_t tile = 16;
  uint64_t seed = 1;
  uint32_t groups = 8;
  uint32_t blocks = 4;
  size_t steps = 5000;
  size_t batch = 4;
  size_t eval_interval = 200;
  size_t patience = 3;
  size_t count = 32;
  size_t size = 64;
  double flip = 0.1;
};

double SecondsSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

// Same parameters under the masks of another schedule.
ContextModel WithSchedule(const ContextModel& model, Schedule schedule) {
  ModelConfig config = model.config();
  config.schedule = schedule;
  ContextModel out(config);
  const std::vector<const Tensor*> from = model.Parameters();
  const std::vector<Tensor*> to = out.Parameters();
  for (size_t p = 0; p < from.size(); ++p) *to[p] = *from[p];
  return out;
}

std::vector<GrayImage> ReadPgmDirectory(const std::string& dir) {
  if (!fs::is_directory(dir)) throw Error("corpus directory not found: " + dir);
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") {
      paths.push_back(entry.path());
    }
  }
  std::sort(paths.begin(), paths.end());
  std::vector<GrayImage> images;
  for (const fs::path& p : paths) {
    images.push_back(ReadPgm(p.string()));
    if (images.back().width != images.front().width ||
        images.back().height != images.front().height) {
      throw Error("inconsistent image dimensions in corpus: " + p.string());
    }
  }
  if (images.empty()) throw Error("empty corpus: no .pgm files in " + dir);
  return images;
}

Region ParseRegion(const std::string& text, size_t width, size_t height) {
  if (text.empty()) return DefaultInpaintRegion(width, height);
  size_t v[4];
  char tail;
  if (std::sscanf(text.c_str(), "%zu,%zu,%zu,%zu%c", &v[0], &v[1], &v[2],
                  &v[3], &tail) != 4) {
    throw Error("region must be x,y,w,h with non-negative integers");
  }
  return {v[0], v[1], v[2], v[3]};
}

void RequireModelSchedule(const Options& opt, const ContextModel& model) {
  if (!opt.schedule.empty() &&
      ParseSchedule(opt.schedule.c_str()) != model.config().schedule) {
    throw Error("--schedule " + opt.schedule + " does not match the model (" +
                ScheduleName(model.config().schedule) + ")");
  }
}

int CmdTrain(const Options& opt, std::ostream& out) {
  std::vector<GrayImage> images;
  if (!opt.input.empty()) {
    images = ReadPgmDirectory(opt.input);
  } else {
    CorpusSpec spec;
    spec.kind = ParseCorpusKind(opt.kind);
    spec.count = opt.count;
    spec.width = spec.height = opt.size;
    spec.flip_probability = opt.flip;
    spec.seed = opt.seed;
    images = GenerateCorpus(spec);
  }
  const std::vector<SymbolCuboid> corpus = ToBitplaneCorpus(images);

  ModelConfig config;
  config.alphabet_size = 2;
  config.depth = kBitPlanes;
  config.groups = opt.groups;
  config.residual_blocks = opt.blocks;
  config.schedule = ParseSchedule(opt.schedule.empty() ? "raster"
                                                       : opt.schedule.c_str());
  Rng init_rng(opt.seed);
  ContextModel model = ContextModel::Initialized(config, init_rng);

  TrainConfig train;
  train.batch_size = opt.batch;
  train.max_steps = opt.steps;
  train.eval_interval = opt.eval_interval;
  train.patience = opt.patience;
  train.seed = opt.seed;

  std::ofstream metrics_file;
  std::ostream* metrics = &out;
  if (!opt.metrics.empty()) {
    metrics_file.open(opt.metrics);
    if (!metrics_file) throw Error("cannot open metrics log " + opt.metrics);
    metrics = &metrics_file;
  }
  const auto start = std::chrono::steady_clock::now();
  const TrainResult result =
      Train(model, corpus, train, [&](const TrainRecord& r) {
        *metrics << Record()
                        .Add("step", r.step)
                        .Add("bits_per_symbol", r.bits_per_symbol)
                        .Add("learning_rate", r.learning_rate)
                        .Add("best_bits_per_symbol", r.best_bits_per_symbol)
                        .str()
                 << '\n';
      });
  WriteModelFile(model, opt.output);
  out << Record()
             .Add("model", opt.output)
             .Add("schedule", ScheduleName(config.schedule))
             .Add("images", images.size())
             .Add("steps", result.steps)
             .Add("plateaued", result.plateaued ? "1" : "0")
             .Add("bits_per_symbol", EvaluateBitsPerSymbol(model, corpus))
             .Add("order0_entropy", Order0EntropyBits(corpus))
             .Add("seconds", SecondsSince(start))
             .str()
      << '\n';
  return 0;
}

int CmdCompress(const Options& opt, std::ostream& out) {
  const ContextModel model = ReadModelFile(opt.model);
  RequireModelSchedule(opt, model);
  const GrayImage image = ReadPgm(opt.input);
  const EncodeResult encoded = Encode(ToBitplanes(image), model,
                                      model.config().schedule, opt.tile);
  WriteFileBytes(opt.output, encoded.bytes);
  const size_t payload_bits = 8 * (encoded.bytes.size() - CodecHeader::kSize);
  out << Record()
             .Add("output", opt.output)
             .Add("schedule", ScheduleName(model.config().schedule))
             .Add("width", image.width)
             .Add("height", image.height)
             .Add("tile", static_cast<size_t>(opt.tile))
             .Add("bytes", encoded.bytes.size())
             .Add("payload_bits", payload_bits)
             .Add("ratio", CompressionRatio(static_cast<double>(payload_bits),
                                            image.width, image.height,
                                            kBitPlanes, 2))
             .str()
      << '\n';
  return 0;
}

int CmdDecompress(const Options& opt, std::ostream& out) {
  const ContextModel model = ReadModelFile(opt.model);
  RequireModelSchedule(opt, model);
  const std::vector<uint8_t> stream = ReadFileBytes(opt.input);
  const DecodeResult decoded = Decode(stream, model);
  WritePgm(FromBitplanes(decoded.cuboid), opt.output);
  out << Record()
             .Add("output", opt.output)
             .Add("width", decoded.cuboid.width())
             .Add("height", decoded.cuboid.height())
             .Add("forward_passes", decoded.stats.forward_passes)
             .str()
      << '\n';
  return 0;
}

int CmdBench(const Options& opt, std::ostream& out) {
  GrayImage image;
  if (!opt.input.empty()) {
    image = ReadPgm(opt.input);
  } else {
    CorpusSpec spec;
    spec.kind = CorpusKind::kMarkovTexture;
    spec.width = spec.height = opt.size;
    spec.seed = opt.seed;
    image = GenerateCorpus(spec).front();
  }
  const SymbolCuboid x = ToBitplanes(image);

  std::unique_ptr<ContextModel> base;
  if (!opt.model.empty()) {
    base = std::make_unique<ContextModel>(ReadModelFile(opt.model));
  } else {
    ModelConfig config;
    config.groups = opt.groups;
    config.residual_blocks = opt.blocks;
    Rng rng(opt.seed);
    base = std::make_unique<ContextModel>(ContextModel::Initialized(config, rng));
  }

  size_t passes[2] = {0, 0};
  double decode_seconds[2] = {0, 0};
  for (Schedule schedule : {Schedule::kRaster, Schedule::kSlope}) {
    const ContextModel model = WithSchedule(*base, schedule);
    auto start = std::chrono::steady_clock::now();
    const EncodeResult encoded = Encode(x, model, schedule, opt.tile);
    const double encode_seconds = SecondsSince(start);
    start = std::chrono::steady_clock::now();
    const DecodeResult decoded = Decode(encoded.bytes, model);
    const int s = static_cast<int>(schedule);
    decode_seconds[s] = SecondsSince(start);
    passes[s] = decoded.stats.forward_passes;
    if (!(decoded.cuboid == x)) throw Error("bench round trip mismatch");
    out << Record()
               .Add("schedule", ScheduleName(schedule))
               .Add("width", x.width())
               .Add("height", x.height())
               .Add("depth", x.depth())
               .Add("tile", static_cast<size_t>(opt.tile))
               .Add("bytes", encoded.bytes.size())
               .Add("encode_seconds", encode_seconds)
               .Add("decode_seconds", decode_seconds[s])
               .Add("forward_passes", passes[s])
               .str()
        << '\n';
  }
  out << Record()
             .Add("summary", "pass_count")
             .Add("raster_passes", passes[0])
             .Add("slope_passes", passes[1])
             .Add("pass_ratio", static_cast<double>(passes[0]) / passes[1])
             .Add("decode_speedup", decode_seconds[0] / decode_seconds[1])
             .str()
      << '\n';
  return 0;
}

int CmdInpaint(const Options& opt, std::ostream& out) {
  const ContextModel model = ReadModelFile(opt.model);
  const GrayImage image = ReadPgm(opt.input);
  const Region region = ParseRegion(opt.region, image.width, image.height);
  Rng rng(opt.seed);
  WritePgm(InpaintImage(image, region, model, rng), opt.output);
  out << Record()
             .Add("output", opt.output)
             .Add("region", std::to_string(region.x) + "," +
                                std::to_string(region.y) + "," +
                                std::to_string(region.width) + "," +
                                std::to_string(region.height))
             .str()
      << '\n';
  return 0;
}

int CmdGenCorpus(const Options& opt, std::ostream& out) {
  CorpusSpec spec;
  spec.kind = ParseCorpusKind(opt.kind);
  spec.count = opt.count;
  spec.width = spec.height = opt.size;
  spec.flip_probability = opt.flip;
  spec.seed = opt.seed;
  const std::vector<GrayImage> images = GenerateCorpus(spec);
  fs::create_directories(opt.output);
  for (size_t n = 0; n < images.size(); ++n) {
    char name[64];
    std::snprintf(name, sizeof(name), "%s_%04zu.pgm", CorpusKindName(spec.kind),
                  n);
    WritePgm(images[n], (fs::path(opt.output) / name).string());
  }
  const std::vector<SymbolCuboid> planes = ToBitplaneCorpus(images);
  out << Record()
             .Add("output", opt.output)
             .Add("kind", CorpusKindName(spec.kind))
             .Add("count", images.size())
             .Add("size", opt.size)
             .Add("plane_entropy", Order0EntropyBits(planes))
             .str()
      << '\n';
  return 0;
}

}  // namespace

std::map<std::string, std::string> ParseRecord(const std::string& line) {
  std::map<std::string, std::string> fields;
  std::istringstream in(line);
  std::string token;
  while (in >> token) {
    const size_t eq = token.find('=');
    if (eq == std::string::npos) continue;
    fields[token.substr(0, eq)] = token.substr(eq + 1);
  }
  return fields;
}

int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Lossless coding of symbol cuboids with a trimmed-convolution "
               "context model"};
  app.require_subcommand(1);
  Options opt;

  auto add_schedule = [&](CLI::App* cmd) {
    cmd->add_option("--schedule", opt.schedule, "raster or slope")
        ->check(CLI::IsMember({"raster", "slope"}));
  };

  CLI::App* train = app.add_subcommand("train", "Train a bit-plane model");
  train->add_option("--input", opt.input, "Directory of PGM images");
  train->add_option("--kind", opt.kind,
                    "Synthetic corpus kind when --input is absent");
  train->add_option("--count", opt.count, "Synthetic image count")
      ->check(CLI::PositiveNumber);
  train->add_option("--size", opt.size, "Synthetic image side")
      ->check(CLI::PositiveNumber);
  train->add_option("--flip", opt.flip, "Markov-texture flip probability")
      ->check(CLI::Range(0.0, 1.0));
  train->add_option("--output", opt.output, "Model file")->required();
  add_schedule(train);
  train->add_option("--groups", opt.groups, "Feature groups g")
      ->check(CLI::PositiveNumber);
  train->add_option("--blocks", opt.blocks, "Residual blocks");
  train->add_option("--steps", opt.steps, "Maximum ADAM steps")
      ->check(CLI::PositiveNumber);
  train->add_option("--batch", opt.batch, "Minibatch size")
      ->check(CLI::PositiveNumber);
  train->add_option("--eval-interval", opt.eval_interval,
                    "Steps per evaluation window")
      ->check(CLI::PositiveNumber);
  train->add_option("--patience", opt.patience,
                    "Windows without improvement per learning rate")
      ->check(CLI::PositiveNumber);
  train->add_option("--metrics", opt.metrics, "Metrics log (default stdout)");
  train->add_option("--seed", opt.seed, "Seed");

  CLI::App* compress = app.add_subcommand("compress", "Compress a PGM image");
  compress->add_option("--model", opt.model, "Model file")->required();
  compress->add_option("--input", opt.input, "PGM image")->required();
  compress->add_option("--output", opt.output, "Container file")->required();
  compress->add_option("--tile", opt.tile, "Tile side, 0 for untiled");
  add_schedule(compress);

  CLI::App* decompress =
      app.add_subcommand("decompress", "Restore a PGM image");
  decompress->add_option("--model", opt.model, "Model file")->required();
  decompress->add_option("--input", opt.input, "Container file")->required();
  decompress->add_option("--output", opt.output, "PGM image")->required();
  add_schedule(decompress);

  CLI::App* bench =
      app.add_subcommand("bench", "Time both schedules and count passes");
  bench->add_option("--model", opt.model,
                    "Model file (default: seeded random model)");
  bench->add_option("--input", opt.input,
                    "PGM image (default: synthetic texture of --size)");
  bench->add_option("--size", opt.size, "Synthetic image side")
      ->check(CLI::PositiveNumber);
  bench->add_option("--tile", opt.tile, "Tile side, 0 for untiled");
  bench->add_option("--groups", opt.groups, "Feature groups g")
      ->check(CLI::PositiveNumber);
  bench->add_option("--blocks", opt.blocks, "Residual blocks");
  bench->add_option("--seed", opt.seed, "Seed");

  CLI::App* inpaint =
      app.add_subcommand("inpaint", "Fill a region by sampling the model");
  inpaint->add_option("--model", opt.model, "Raster model file")->required();
  inpaint->add_option("--input", opt.input, "PGM image")->required();
  inpaint->add_option("--output", opt.output, "PGM image")->required();
  inpaint->add_option("--region", opt.region,
                      "x,y,w,h (default: bottom-right ninth)");
  inpaint->add_option("--seed", opt.seed, "Seed");

  CLI::App* gen =
      app.add_subcommand("gen-corpus", "Write synthetic PGM images");
  gen->add_option("--kind", opt.kind,
                  "constant, iid-uniform or markov-texture");
  gen->add_option("--count", opt.count, "Image count")
      ->check(CLI::PositiveNumber);
  gen->add_option("--size", opt.size, "Image side")
      ->check(CLI::PositiveNumber);
  gen->add_option("--flip", opt.flip, "Markov-texture flip probability")
      ->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", opt.seed, "Seed");
  gen->add_option("--output", opt.output, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);  // --help
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (train->parsed()) return CmdTrain(opt, out);
    if (compress->parsed()) return CmdCompress(opt, out);
    if (decompress->parsed()) return CmdDecompress(opt, out);
    if (bench->parsed()) return CmdBench(opt, out);
    if (inpaint->parsed()) return CmdInpaint(opt, out);
    if (gen->parsed()) return CmdGenCorpus(opt, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace trimcode::cli
