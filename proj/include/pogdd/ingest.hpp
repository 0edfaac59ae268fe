#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pogdd/geometry.hpp"
#include "pogdd/vec.hpp"

namespace pogdd {

// Per-frame speaking-context label, encoded from the tracked (possibly fake)
// party's perspective. Serialized as the integer code.
enum class SpeakingContext : uint8_t {
  Neither = 0,
  TrackedSpeaking = 1,
  PartnerSpeaking = 2,
  Both = 3,
};

constexpr int kNumContexts = 4;
constexpr int kNumLandmarks = 6;

// Fixed landmark order: L-eye, R-eye, nose-tip, mouth-center, face-edge, chin.
constexpr int kNoseLandmark = 2;

using LandmarkArray = std::array<Vec2, kNumLandmarks>;

// One video frame's gaze observation. Exactly one of pog_px / ray is present,
// and a stream is homogeneous in which one it carries.
struct FrameRecord {
  int64_t t_ms = 0;
  std::optional<Vec2> pog_px;
  std::optional<GazeRay> ray;
  LandmarkArray landmarks_px{};
  SpeakingContext ctx = SpeakingContext::Neither;
};

enum class ClassLabel { Genuine, Fake };

struct StreamHeader {
  double fps_nominal = 28.8948;
  std::optional<ScreenModel> screen;
  std::string subject_id;
  std::optional<ClassLabel> class_label;  // absent for live detection streams
  std::string generator;                  // free-form tag, e.g. "dflive"
};

struct Stream {
  StreamHeader header;
  std::vector<FrameRecord> frames;
};

class IngestError : public std::runtime_error {
 public:
  explicit IngestError(const std::string& what) : std::runtime_error(what) {}
};

struct ReadOptions {
  // Malformed records are rejected and counted; the stream aborts once the
  // count exceeds max(floor, fraction * records_seen).
  double error_budget_fraction = 0.01;
  int error_budget_floor = 10;
};

// Streaming reader: one record at a time, memory independent of file length.
class StreamReader {
 public:
  explicit StreamReader(const std::string& path, ReadOptions opt = {});
  ~StreamReader();
  StreamReader(StreamReader&&) noexcept;
  StreamReader& operator=(StreamReader&&) noexcept;

  const StreamHeader& header() const { return header_; }
  // Next valid record, or nullopt at end of stream. Throws IngestError when
  // the error budget is exhausted or a stream-level invariant breaks.
  std::optional<FrameRecord> next();

  size_t records_read() const { return accepted_; }
  size_t records_rejected() const { return rejected_; }

 private:
  void check_budget();

  std::unique_ptr<std::ifstream> in_;
  std::string path_;
  ReadOptions opt_;
  StreamHeader header_;
  size_t accepted_ = 0;
  size_t rejected_ = 0;
  size_t seen_ = 0;
  int64_t last_t_ = -1;
  int stream_kind_ = 0;  // 0 undecided, 1 pog, 2 ray
};

// Batch read of a whole stream.
Stream read_stream(const std::string& path, ReadOptions opt = {});

// JSONL writer: header line first, one frame object per line, deterministic
// field order, shortest round-trip float representation. Throws IngestError
// on invariant violations or an unwritable path.
void write_stream(const StreamHeader& header, const std::vector<FrameRecord>& frames,
                  const std::string& path);

// Flat CSV export for analysis tooling; column order documented in README.
void write_csv(const StreamHeader& header, const std::vector<FrameRecord>& frames,
               const std::string& path);

// Parses/serializes one header or frame line (exposed for streaming tools).
std::string header_to_json(const StreamHeader& header);
std::string frame_to_json(const FrameRecord& frame);
StreamHeader header_from_json(const std::string& line);
FrameRecord frame_from_json(const std::string& line);

struct DiarizationSegment {
  int64_t start_ms = 0;
  int64_t end_ms = 0;  // half-open [start, end)
  SpeakingContext ctx = SpeakingContext::Neither;
};

// Maps external diarization segments onto frames; frames outside any segment
// get Neither. Segments must be sorted and non-overlapping.
void resample_context(std::vector<FrameRecord>& frames,
                      const std::vector<DiarizationSegment>& segments);

}  // namespace pogdd
