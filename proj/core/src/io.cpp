#include "wshed/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "wshed/error.hpp"

namespace wshed {

namespace {

[[noreturn]] void parse_fail(std::string_view what, std::size_t line_no, std::string_view detail) {
  std::ostringstream os;
  os << what << " line " << line_no << ": " << detail;
  throw Error(ErrorCode::ParseError, os.str());
}

bool parse_u64(std::string_view text, std::uint64_t& out) {
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

}  // namespace

RawNetwork read_network(std::istream& is) {
  RawNetwork raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;

    std::string_view fields[3];
    std::size_t count = 0;
    while (count < 3) {
      const auto tab = view.find('\t');
      fields[count++] = view.substr(0, tab);
      if (tab == std::string_view::npos) {
        view = {};
        break;
      }
      view.remove_prefix(tab + 1);
    }
    if (count != 3 || !view.empty()) parse_fail("network", line_no, "expected 3 tab-separated fields");

    std::uint64_t id = 0;
    std::uint64_t down = 0;
    if (!parse_u64(fields[0], id) || id == 0) parse_fail("network", line_no, "bad reach id");
    if (!parse_u64(fields[1], down)) parse_fail("network", line_no, "bad downstream id");
    Divergence flag;
    if (fields[2] == "M")
      flag = Divergence::Major;
    else if (fields[2] == "m")
      flag = Divergence::Minor;
    else
      parse_fail("network", line_no, "flag must be M or m");
    raw.reaches.push_back(RawReach{ReachId{id},
                                   down == 0 ? std::nullopt : std::optional<ReachId>(ReachId{down}),
                                   flag});
  }
  return raw;
}

void write_network(std::ostream& os, const StreamTree& tree) {
  os << "# reach_id\tdownstream_id\tflag\n";
  for (std::size_t v = 0; v < tree.size(); ++v) {
    const std::size_t p = tree.parent(v);
    os << tree.id(v) << '\t' << (p == StreamTree::npos ? 0 : tree.id(p).value) << "\tM\n";
  }
  for (const ExcludedReach& e : tree.excluded())
    os << e.id << '\t' << (e.downstream ? e.downstream->value : 0) << "\tm\n";
}

GridRaster read_raster(std::istream& is) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(is, line)) throw Error(ErrorCode::ParseError, "raster file is empty");
  std::istringstream header(line);
  std::int64_t width = 0;
  std::int64_t height = 0;
  std::string rest;
  if (!(header >> width >> height) || (header >> rest) || width <= 0 || height <= 0 ||
      width > (1LL << 30) || height > (1LL << 30))
    parse_fail("raster", line_no, "expected header 'width height'");

  GridRaster raster(static_cast<std::int32_t>(width), static_cast<std::int32_t>(height));
  for (std::int32_t row = 0; row < height; ++row) {
    ++line_no;
    if (!std::getline(is, line)) parse_fail("raster", line_no, "missing row");
    std::string_view view = trim(line);
    std::int32_t col = 0;
    while (!view.empty()) {
      const auto space = view.find(' ');
      const std::string_view token = view.substr(0, space);
      std::uint64_t id = 0;
      if (!parse_u64(token, id)) parse_fail("raster", line_no, "bad reach id");
      if (col >= width) parse_fail("raster", line_no, "too many columns");
      if (id != 0) raster.assign(col, row, ReachId{id});
      ++col;
      if (space == std::string_view::npos) break;
      view.remove_prefix(space + 1);
      while (!view.empty() && view.front() == ' ') view.remove_prefix(1);
    }
    if (col != width) parse_fail("raster", line_no, "too few columns");
  }
  while (std::getline(is, line)) {
    ++line_no;
    if (!trim(line).empty()) parse_fail("raster", line_no, "trailing content");
  }
  return raster;
}

void write_raster(std::ostream& os, const GridRaster& raster) {
  os << raster.width() << ' ' << raster.height() << '\n';
  std::string line;
  for (std::int32_t row = 0; row < raster.height(); ++row) {
    line.clear();
    for (std::int32_t col = 0; col < raster.width(); ++col) {
      if (col > 0) line += ' ';
      const auto owner = raster.owner(col, row);
      line += std::to_string(owner ? owner->value : 0);
    }
    line += '\n';
    os << line;
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::IoError, "cannot rename onto " + path.string());
  }
}

}  // namespace wshed
