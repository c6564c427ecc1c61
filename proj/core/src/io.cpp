#include "alsel/io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace alsel {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kManifestMagic = "alsel-pool";

[[noreturn]] void parse_error(const fs::path& path, std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ManifestParse, path.string() + ":" + std::to_string(line) + ": " + what);
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

/// Splits off the first whitespace-delimited token; `rest` keeps the remainder
/// with one separating space removed.
std::string_view next_token(std::string_view& rest) {
  const auto start = rest.find_first_not_of(' ');
  if (start == std::string_view::npos) {
    rest = {};
    return {};
  }
  rest.remove_prefix(start);
  const auto stop = rest.find(' ');
  const auto token = rest.substr(0, stop);
  rest = stop == std::string_view::npos ? std::string_view{} : rest.substr(stop + 1);
  return token;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

struct ManifestEntry {
  std::string id;
  std::size_t frames = 0;
  std::uint64_t offset = 0;
};

/// Wraps validation failures from sequence construction with the id.
SequenceEmbedding make_sequence(const std::string& id, std::size_t dim, std::vector<double> values) {
  try {
    return SequenceEmbedding(dim, std::move(values));
  } catch (const Error& e) {
    throw Error(e.code(), "sequence '" + id + "': " + e.what());
  }
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

EmbeddingSet load_pool(const fs::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) {
    throw Error(ErrorCode::Io, "cannot open manifest " + manifest_path.string());
  }
  std::string line;
  std::size_t line_no = 0;
  auto read_keyed = [&](std::string_view key) -> std::string {
    if (!std::getline(in, line)) parse_error(manifest_path, line_no + 1, "unexpected end of file");
    ++line_no;
    line = strip_cr(line);
    std::string_view rest = line;
    if (next_token(rest) != key) parse_error(manifest_path, line_no, "expected '" + std::string(key) + "'");
    return std::string(rest);
  };

  {
    const auto version_text = read_keyed(kManifestMagic);
    int version = 0;
    if (!parse_number(std::string_view(version_text), version)) parse_error(manifest_path, line_no, "bad version");
    if (version != kManifestVersion) {
      parse_error(manifest_path, line_no, "unsupported manifest version " + std::to_string(version));
    }
  }
  std::size_t dim = 0;
  if (!parse_number(std::string_view(read_keyed("dim")), dim) || dim == 0) {
    parse_error(manifest_path, line_no, "dim must be a positive integer");
  }
  const std::string blob_name = read_keyed("blob");
  if (blob_name.empty()) parse_error(manifest_path, line_no, "empty blob path");
  std::size_t count = 0;
  if (!parse_number(std::string_view(read_keyed("count")), count)) {
    parse_error(manifest_path, line_no, "count must be an integer");
  }

  std::vector<ManifestEntry> entries;
  entries.reserve(count);
  std::uint64_t expected_offset = 0;
  for (std::size_t i = 0; i < count; ++i) {
    std::string_view rest;
    const std::string body = read_keyed("seq");
    rest = body;
    ManifestEntry e;
    if (!parse_number(next_token(rest), e.frames) || !parse_number(next_token(rest), e.offset)) {
      parse_error(manifest_path, line_no, "seq needs <frame_count> <offset> <id>");
    }
    e.id = std::string(rest);
    if (e.id.empty()) parse_error(manifest_path, line_no, "missing sequence id");
    if (e.frames == 0) parse_error(manifest_path, line_no, "sequence '" + e.id + "' has frame_count 0");
    if (e.offset != expected_offset) {
      parse_error(manifest_path, line_no, "sequence '" + e.id + "' offset " + std::to_string(e.offset) +
                                              " overlaps or leaves a gap (expected " +
                                              std::to_string(expected_offset) + ")");
    }
    expected_offset += static_cast<std::uint64_t>(e.frames) * dim * 4;
    entries.push_back(std::move(e));
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!strip_cr(line).empty()) parse_error(manifest_path, line_no, "trailing content");
  }

  const fs::path blob_path = manifest_path.parent_path() / blob_name;
  std::ifstream blob(blob_path, std::ios::binary);
  if (!blob) {
    throw Error(ErrorCode::Io, "cannot open blob " + blob_path.string());
  }
  std::vector<char> bytes((std::istreambuf_iterator<char>(blob)), std::istreambuf_iterator<char>());
  if (bytes.size() != expected_offset) {
    throw Error(ErrorCode::BlobSizeMismatch, blob_path.string() + " has " + std::to_string(bytes.size()) +
                                                 " bytes, manifest describes " + std::to_string(expected_offset));
  }

  std::vector<std::string> ids;
  std::vector<SequenceEmbedding> sequences;
  for (auto& e : entries) {
    const std::size_t n_values = e.frames * dim;
    std::vector<double> values(n_values);
    const auto* src = reinterpret_cast<const unsigned char*>(bytes.data() + e.offset);
    for (std::size_t k = 0; k < n_values; ++k) {
      const std::uint32_t bits = static_cast<std::uint32_t>(src[4 * k]) |
                                 (static_cast<std::uint32_t>(src[4 * k + 1]) << 8) |
                                 (static_cast<std::uint32_t>(src[4 * k + 2]) << 16) |
                                 (static_cast<std::uint32_t>(src[4 * k + 3]) << 24);
      values[k] = static_cast<double>(std::bit_cast<float>(bits));
    }
    sequences.push_back(make_sequence(e.id, dim, std::move(values)));
    ids.push_back(std::move(e.id));
  }
  return EmbeddingSet::create(dim, std::move(ids), std::move(sequences));
}

void save_pool(const EmbeddingSet& pool, const fs::path& manifest_path, const std::string& blob_name) {
  std::ostringstream manifest;
  manifest << kManifestMagic << ' ' << kManifestVersion << '\n'
           << "dim " << pool.dim() << '\n'
           << "blob " << blob_name << '\n'
           << "count " << pool.size() << '\n';
  std::vector<char> bytes;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const auto& seq = pool.sequence(i);
    if (pool.id(i).find('\n') != std::string::npos) {
      throw Error(ErrorCode::InvalidArgument, "sequence ids cannot contain newlines");
    }
    manifest << "seq " << seq.frame_count() << ' ' << bytes.size() << ' ' << pool.id(i) << '\n';
    for (double v : seq.values()) {
      const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(v));
      for (int shift = 0; shift < 32; shift += 8) bytes.push_back(static_cast<char>((bits >> shift) & 0xFFu));
    }
  }
  const fs::path blob_path = manifest_path.parent_path() / blob_name;
  std::ofstream blob(blob_path, std::ios::binary | std::ios::trunc);
  if (!blob || !blob.write(bytes.data(), static_cast<std::streamsize>(bytes.size()))) {
    throw Error(ErrorCode::Io, "cannot write blob " + blob_path.string());
  }
  write_text_file(manifest_path, manifest.str());
}

EmbeddingSet load_pool_csv(const fs::path& csv_path) {
  std::ifstream in(csv_path);
  if (!in) {
    throw Error(ErrorCode::Io, "cannot open " + csv_path.string());
  }
  std::vector<std::string> ids;
  std::vector<std::vector<double>> buffers;
  std::vector<std::size_t> frame_counts;
  std::unordered_map<std::string, std::size_t> index_of;
  std::size_t dim = 0;
  std::string line;
  std::size_t line_no = 0;
  bool first_record = true;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string_view> fields;
    std::string_view rest = line;
    for (;;) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    std::size_t frame_index = 0;
    if (fields.size() < 2 || !parse_number(fields[1], frame_index)) {
      if (first_record) {
        first_record = false;
        continue;  // header
      }
      parse_error(csv_path, line_no, "expected id,frame_index,components...");
    }
    first_record = false;
    if (fields.size() < 3) parse_error(csv_path, line_no, "no components");
    const std::size_t row_dim = fields.size() - 2;
    if (dim == 0) dim = row_dim;
    if (row_dim != dim) {
      throw Error(ErrorCode::DimensionMismatch, csv_path.string() + ":" + std::to_string(line_no) + ": " +
                                                    std::to_string(row_dim) + " components, expected " +
                                                    std::to_string(dim));
    }
    const std::string id(fields[0]);
    auto [it, inserted] = index_of.emplace(id, ids.size());
    if (inserted) {
      ids.push_back(id);
      buffers.emplace_back();
      frame_counts.push_back(0);
    }
    const std::size_t s = it->second;
    if (frame_index != frame_counts[s]) {
      parse_error(csv_path, line_no, "sequence '" + id + "' frame " + std::to_string(frame_index) +
                                         " out of order (expected " + std::to_string(frame_counts[s]) + ")");
    }
    for (std::size_t k = 2; k < fields.size(); ++k) {
      double v = 0.0;
      if (!parse_number(fields[k], v)) parse_error(csv_path, line_no, "bad number '" + std::string(fields[k]) + "'");
      buffers[s].push_back(v);
    }
    ++frame_counts[s];
  }
  if (ids.empty()) {
    throw Error(ErrorCode::EmptyPool, csv_path.string() + " has no records");
  }
  std::vector<SequenceEmbedding> sequences;
  sequences.reserve(ids.size());
  for (std::size_t s = 0; s < ids.size(); ++s) {
    sequences.push_back(make_sequence(ids[s], dim, std::move(buffers[s])));
  }
  return EmbeddingSet::create(dim, std::move(ids), std::move(sequences));
}

EmbeddingSet load_pool_any(const fs::path& path) {
  return path.extension() == ".csv" ? load_pool_csv(path) : load_pool(path);
}

std::string format_selection(const SelectionResult& result, const SelectionConfig& config,
                             std::span<const std::string> ids) {
  std::ostringstream out;
  out << "alsel-selection 1\n"
      << "strategy " << to_string(config.strategy) << '\n'
      << "budget " << config.budget << '\n'
      << "seed " << config.seed << '\n'
      << "interval " << config.interval << '\n'
      << "frames " << config.frames_per_sequence << '\n'
      << "metric " << to_string(config.metric) << '\n'
      << "exhausted " << (result.exhausted ? 1 : 0) << '\n'
      << "selected " << result.selected.size() << '\n';
  for (std::size_t r = 0; r < result.selected.size(); ++r) {
    const std::size_t idx = result.selected[r];
    if (idx >= ids.size()) {
      throw Error(ErrorCode::InvalidArgument, "selected index " + std::to_string(idx) + " has no id");
    }
    out << "sel " << r << ' ' << idx << ' ' << ids[idx] << '\n';
  }
  out << "audit " << result.audit.size() << '\n';
  for (const auto& a : result.audit) {
    out << "step " << a.step << ' ' << a.candidate_index << ' '
        << (a.min_distance_to_selected ? fmt17(*a.min_distance_to_selected) : std::string("-")) << ' '
        << (a.accepted ? 1 : 0) << ' '
        << (a.rejection_reason ? std::string(to_string(*a.rejection_reason)) : std::string("-")) << '\n';
  }
  out << "end\n";
  return out.str();
}

void save_selection(const SelectionResult& result, const SelectionConfig& config,
                    std::span<const std::string> ids, const fs::path& path) {
  write_text_file(path, format_selection(result, config, ids));
}

void write_text_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !out.write(text.data(), static_cast<std::streamsize>(text.size()))) {
    throw Error(ErrorCode::Io, "cannot write " + path.string());
  }
}

fs::path resolve_output_path(const fs::path& path) {
  if (path.is_absolute()) return path;
  const char* dir = std::getenv(kOutputDirEnv);
  if (dir == nullptr || *dir == '\0') return path;
  return fs::path(dir) / path;
}

}  // namespace alsel
