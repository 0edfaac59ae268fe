#include "pogdd/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace pogdd {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json vec2_json(const Vec2& v) { return ordered_json::array({v.x, v.y}); }
ordered_json vec3_json(const Vec3& v) { return ordered_json::array({v.x, v.y, v.z}); }

Vec2 vec2_from(const ordered_json& j) {
  if (!j.is_array() || j.size() != 2) throw IngestError("expected [x,y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Vec3 vec3_from(const ordered_json& j) {
  if (!j.is_array() || j.size() != 3) throw IngestError("expected [x,y,z]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

ordered_json screen_json(const ScreenModel& s) {
  ordered_json j;
  j["s0_mm"] = vec3_json(s.s0_mm);
  j["ex"] = vec3_json(s.ex);
  j["ey"] = vec3_json(s.ey);
  j["normal"] = vec3_json(s.normal);
  j["width_px"] = s.width_px;
  j["height_px"] = s.height_px;
  j["pitch_mm"] = s.pitch_mm;
  return j;
}

ScreenModel screen_from(const ordered_json& j) {
  ScreenModel s;
  s.s0_mm = vec3_from(j.at("s0_mm"));
  s.ex = vec3_from(j.at("ex"));
  s.ey = vec3_from(j.at("ey"));
  s.normal = vec3_from(j.at("normal"));
  s.width_px = j.at("width_px").get<int>();
  s.height_px = j.at("height_px").get<int>();
  s.pitch_mm = j.at("pitch_mm").get<double>();
  return s;
}

bool frame_fields_finite(const FrameRecord& f) {
  if (f.pog_px && !f.pog_px->finite()) return false;
  if (f.ray && (!f.ray->origin_mm.finite() || !f.ray->direction.finite())) return false;
  for (const auto& lm : f.landmarks_px)
    if (!lm.finite()) return false;
  return true;
}

// Per-record validation shared by reader and writer. Returns an error string
// or empty when the record is valid. Stream-kind and monotonicity checks are
// the caller's job.
std::string validate_record(const FrameRecord& f) {
  if (f.t_ms < 0) return "negative timestamp";
  if (f.pog_px.has_value() == f.ray.has_value())
    return "record must carry exactly one of pog/ray";
  if (static_cast<int>(f.ctx) < 0 || static_cast<int>(f.ctx) >= kNumContexts)
    return "context code out of range";
  if (!frame_fields_finite(f)) return "non-finite coordinate";
  return {};
}

}  // namespace

std::string header_to_json(const StreamHeader& h) {
  ordered_json j;
  j["fps"] = h.fps_nominal;
  j["subject"] = h.subject_id;
  if (h.class_label)
    j["label"] = *h.class_label == ClassLabel::Genuine ? "genuine" : "fake";
  if (!h.generator.empty()) j["generator"] = h.generator;
  if (h.screen) j["screen"] = screen_json(*h.screen);
  return j.dump();
}

StreamHeader header_from_json(const std::string& line) {
  ordered_json j;
  try {
    j = ordered_json::parse(line);
  } catch (const std::exception& e) {
    throw IngestError(std::string("bad header line: ") + e.what());
  }
  if (!j.is_object() || !j.contains("fps") || j.contains("t"))
    throw IngestError("missing header record");
  StreamHeader h;
  h.fps_nominal = j.at("fps").get<double>();
  if (!(h.fps_nominal >= 20.0 && h.fps_nominal <= 60.0))
    throw IngestError("header fps outside [20, 60]");
  h.subject_id = j.value("subject", std::string{});
  if (j.contains("label")) {
    std::string label = j.at("label").get<std::string>();
    if (label == "genuine")
      h.class_label = ClassLabel::Genuine;
    else if (label == "fake")
      h.class_label = ClassLabel::Fake;
    else
      throw IngestError("header label must be genuine|fake");
  }
  h.generator = j.value("generator", std::string{});
  if (j.contains("screen")) h.screen = screen_from(j.at("screen"));
  return h;
}

std::string frame_to_json(const FrameRecord& f) {
  ordered_json j;
  j["t"] = f.t_ms;
  if (f.pog_px) j["pog"] = vec2_json(*f.pog_px);
  if (f.ray) {
    ordered_json r;
    r["o"] = vec3_json(f.ray->origin_mm);
    r["d"] = vec3_json(f.ray->direction);
    j["ray"] = r;
  }
  ordered_json lm = ordered_json::array();
  for (const auto& p : f.landmarks_px) lm.push_back(vec2_json(p));
  j["lm"] = lm;
  j["ctx"] = static_cast<int>(f.ctx);
  return j.dump();
}

FrameRecord frame_from_json(const std::string& line) {
  ordered_json j;
  try {
    j = ordered_json::parse(line);
  } catch (const std::exception& e) {
    throw IngestError(std::string("bad frame line: ") + e.what());
  }
  FrameRecord f;
  f.t_ms = j.at("t").get<int64_t>();
  if (j.contains("pog")) f.pog_px = vec2_from(j.at("pog"));
  if (j.contains("ray")) {
    const auto& r = j.at("ray");
    f.ray = GazeRay{vec3_from(r.at("o")), vec3_from(r.at("d"))};
  }
  const auto& lm = j.at("lm");
  if (!lm.is_array() || lm.size() != kNumLandmarks)
    throw IngestError("lm must hold exactly 6 points");
  for (int i = 0; i < kNumLandmarks; ++i) f.landmarks_px[i] = vec2_from(lm[i]);
  int ctx = j.at("ctx").get<int>();
  if (ctx < 0 || ctx >= kNumContexts) throw IngestError("ctx out of range");
  f.ctx = static_cast<SpeakingContext>(ctx);
  std::string err = validate_record(f);
  if (!err.empty()) throw IngestError(err);
  return f;
}

StreamReader::StreamReader(const std::string& path, ReadOptions opt)
    : in_(std::make_unique<std::ifstream>(path)), path_(path), opt_(opt) {
  if (!in_->is_open()) throw IngestError("cannot open " + path);
  std::string line;
  if (!std::getline(*in_, line)) throw IngestError(path + ": missing header");
  header_ = header_from_json(line);
}

StreamReader::~StreamReader() = default;
StreamReader::StreamReader(StreamReader&&) noexcept = default;
StreamReader& StreamReader::operator=(StreamReader&&) noexcept = default;

void StreamReader::check_budget() {
  double budget = std::max<double>(opt_.error_budget_floor,
                                   opt_.error_budget_fraction * static_cast<double>(seen_));
  if (static_cast<double>(rejected_) > budget)
    throw IngestError(path_ + ": malformed-record budget exhausted (" +
                      std::to_string(rejected_) + " of " + std::to_string(seen_) + ")");
}

std::optional<FrameRecord> StreamReader::next() {
  std::string line;
  while (std::getline(*in_, line)) {
    if (line.empty()) continue;
    ++seen_;
    FrameRecord f;
    try {
      f = frame_from_json(line);
    } catch (const IngestError&) {
      ++rejected_;
      check_budget();
      continue;
    }
    // Stream-level invariants. A pog/ray mix is a format violation, not a
    // bad record, so it aborts outright.
    int kind = f.pog_px ? 1 : 2;
    if (stream_kind_ == 0)
      stream_kind_ = kind;
    else if (kind != stream_kind_)
      throw IngestError(path_ + ": mixed pog/ray stream");
    if (f.t_ms < last_t_) {
      ++rejected_;
      check_budget();
      continue;
    }
    last_t_ = f.t_ms;
    ++accepted_;
    return f;
  }
  return std::nullopt;
}

Stream read_stream(const std::string& path, ReadOptions opt) {
  StreamReader reader(path, opt);
  Stream s;
  s.header = reader.header();
  while (auto f = reader.next()) s.frames.push_back(*f);
  return s;
}

void write_stream(const StreamHeader& header, const std::vector<FrameRecord>& frames,
                  const std::string& path) {
  std::ofstream out(path);
  if (!out.is_open()) throw IngestError("cannot write " + path);
  out << header_to_json(header) << '\n';
  int kind = 0;
  int64_t last_t = -1;
  for (const FrameRecord& f : frames) {
    std::string err = validate_record(f);
    if (err.empty() && f.t_ms < last_t) err = "timestamps not monotone";
    int this_kind = f.pog_px ? 1 : 2;
    if (err.empty() && kind != 0 && this_kind != kind) err = "mixed pog/ray stream";
    if (!err.empty()) throw IngestError("write_stream: " + err);
    kind = this_kind;
    last_t = f.t_ms;
    out << frame_to_json(f) << '\n';
  }
  if (!out.good()) throw IngestError("write failed: " + path);
}

void write_csv(const StreamHeader& header, const std::vector<FrameRecord>& frames,
               const std::string& path) {
  std::ofstream out(path);
  if (!out.is_open()) throw IngestError("cannot write " + path);
  out << "t_ms,pog_x,pog_y,ray_ox,ray_oy,ray_oz,ray_dx,ray_dy,ray_dz";
  for (int i = 0; i < kNumLandmarks; ++i) out << ",lm" << i << "_x,lm" << i << "_y";
  out << ",ctx\n";
  ordered_json num;  // reuse the JSON dumper for shortest float repr
  auto fmt = [&num](double v) {
    num = v;
    return num.dump();
  };
  (void)header;
  for (const FrameRecord& f : frames) {
    out << f.t_ms << ',';
    if (f.pog_px)
      out << fmt(f.pog_px->x) << ',' << fmt(f.pog_px->y) << ",,,,,,";
    else
      out << ",," << fmt(f.ray->origin_mm.x) << ',' << fmt(f.ray->origin_mm.y) << ','
          << fmt(f.ray->origin_mm.z) << ',' << fmt(f.ray->direction.x) << ','
          << fmt(f.ray->direction.y) << ',' << fmt(f.ray->direction.z);
    for (const auto& lm : f.landmarks_px) out << ',' << fmt(lm.x) << ',' << fmt(lm.y);
    out << ',' << static_cast<int>(f.ctx) << '\n';
  }
  if (!out.good()) throw IngestError("write failed: " + path);
}

void resample_context(std::vector<FrameRecord>& frames,
                      const std::vector<DiarizationSegment>& segments) {
  for (size_t i = 0; i < segments.size(); ++i) {
    if (segments[i].end_ms <= segments[i].start_ms)
      throw IngestError("resample_context: empty or inverted segment");
    if (i > 0 && segments[i].start_ms < segments[i - 1].end_ms)
      throw IngestError("resample_context: overlapping segments");
  }
  size_t seg = 0;
  for (FrameRecord& f : frames) {
    while (seg < segments.size() && segments[seg].end_ms <= f.t_ms) ++seg;
    if (seg < segments.size() && f.t_ms >= segments[seg].start_ms)
      f.ctx = segments[seg].ctx;
    else
      f.ctx = SpeakingContext::Neither;
  }
}

}  // namespace pogdd
