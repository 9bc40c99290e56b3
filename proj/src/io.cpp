#include "framewalk/io.hpp"

#include "framewalk/error.hpp"
#include "framewalk/sphere.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace framewalk {

namespace {

constexpr const char* kMagic = "fw1";

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::string next(const std::string& expecting) {
    std::string line;
    if (!std::getline(in_, line)) fail("unexpected end of file, expected " + expecting);
    ++number_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }

  bool try_next(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++number_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw FormatError("line " + std::to_string(number_) + ": " + what);
  }

 private:
  std::istream& in_;
  long number_ = 0;
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

double parse_real(const std::string& tok, const LineReader& r, const std::string& field) {
  double value = 0.0;
  const auto* first = tok.data();
  const auto* last = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) r.fail("field '" + field + "': '" + tok + "' is not a real number");
  return value;
}

long parse_int(const std::string& tok, const LineReader& r, const std::string& field) {
  long value = 0;
  const auto* first = tok.data();
  const auto* last = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) r.fail("header field '" + field + "': '" + tok + "' is not an integer");
  return value;
}

// Reads "key value" and checks the key.
std::string header_value(LineReader& r, const std::string& key) {
  const auto toks = split(r.next("header field '" + key + "'"));
  if (toks.size() != 2 || toks[0] != key) r.fail("expected header field '" + key + "'");
  return toks[1];
}

void expect_keyword(LineReader& r, const std::string& keyword) {
  const auto toks = split(r.next("'" + keyword + "'"));
  if (toks.size() != 1 || toks[0] != keyword) r.fail("expected '" + keyword + "'");
}

Vector parse_row(LineReader& r, Index expected, const std::string& field) {
  const auto toks = split(r.next(field));
  if (static_cast<Index>(toks.size()) != expected) {
    r.fail("field '" + field + "': expected " + std::to_string(expected) + " values, got " + std::to_string(toks.size()));
  }
  Vector v(expected);
  for (Index i = 0; i < expected; ++i) {
    v[i] = parse_real(toks[static_cast<std::size_t>(i)], r, field);
    if (!std::isfinite(v[i])) r.fail("field '" + field + "': non-finite value");
  }
  return v;
}

void expect_magic(LineReader& r, const std::string& type) {
  const auto toks = split(r.next("magic line"));
  if (toks.size() != 2 || toks[0] != kMagic) r.fail("header field 'version': expected '" + std::string(kMagic) + " " + type + "'");
  if (toks[1] != type) r.fail("header field 'version': file type is '" + toks[1] + "', expected '" + type + "'");
}

void write_row(std::ostream& out, const Eigen::Ref<const Vector>& v) {
  for (Index i = 0; i < v.size(); ++i) {
    if (i > 0) out << ' ';
    out << format_real(v[i]);
  }
  out << '\n';
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open input file '" + path + "'");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open output file '" + path + "'");
  return out;
}

}  // namespace

const char* to_string(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::Thetas: return "thetas";
    case SequenceKind::Contours: return "contours";
    case SequenceKind::Sphere: return "sphere";
  }
  return "thetas";
}

Index SequenceFile::frames() const {
  return kind == SequenceKind::Contours ? static_cast<Index>(contours.size()) : static_cast<Index>(records.size());
}

std::string format_real(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

SequenceFile read_sequence(std::istream& in) {
  LineReader r(in);
  expect_magic(r, "sequence");

  SequenceFile seq;
  const std::string kind = header_value(r, "kind");
  if (kind == "thetas") {
    seq.kind = SequenceKind::Thetas;
  } else if (kind == "contours") {
    seq.kind = SequenceKind::Contours;
  } else if (kind == "sphere") {
    seq.kind = SequenceKind::Sphere;
  } else {
    r.fail("header field 'kind': unknown kind '" + kind + "'");
  }
  const long samples = parse_int(header_value(r, "samples"), r, "samples");
  const long frames = parse_int(header_value(r, "frames"), r, "frames");
  seq.dt = parse_real(header_value(r, "dt"), r, "dt");
  if (seq.kind == SequenceKind::Sphere && samples != 3) r.fail("header field 'samples': sphere points have 3 coordinates");
  if (seq.kind == SequenceKind::Thetas && samples < kMinSamples) r.fail("header field 'samples': must be at least 8");
  if (seq.kind == SequenceKind::Contours && samples < kMinSamples) r.fail("header field 'samples': contours need at least 8 points");
  if (frames < 2) r.fail("header field 'frames': must be at least 2");
  if (!(seq.dt > 0.0)) r.fail("header field 'dt': must be positive");

  expect_keyword(r, "data");
  for (long t = 0; t < frames; ++t) {
    if (seq.kind == SequenceKind::Contours) {
      const Vector row = parse_row(r, 2 * samples, "data");
      Contour c;
      c.points.reserve(static_cast<std::size_t>(samples));
      for (long i = 0; i < samples; ++i) c.points.emplace_back(row[2 * i], row[2 * i + 1]);
      seq.contours.push_back(std::move(c));
    } else {
      seq.records.push_back(parse_row(r, samples, "data"));
    }
  }
  expect_keyword(r, "end");
  return seq;
}

SequenceFile read_sequence_csv(std::istream& in) {
  LineReader r(in);
  SequenceFile seq;
  seq.kind = SequenceKind::Contours;
  std::map<long, Contour> frames;
  std::string line;
  bool first = true;
  while (r.try_next(line)) {
    if (line.empty()) continue;
    for (char& ch : line) {
      if (ch == ',') ch = ' ';
    }
    const auto toks = split(line);
    if (first && !toks.empty() && toks[0] == "frame") {
      first = false;
      continue;
    }
    first = false;
    if (toks.size() != 3) r.fail("csv: expected columns frame,x,y");
    const long frame = parse_int(toks[0], r, "frame");
    frames[frame].points.emplace_back(parse_real(toks[1], r, "x"), parse_real(toks[2], r, "y"));
  }
  long expected = 0;
  for (auto& [index, contour] : frames) {
    if (index != expected++) throw FormatError("csv: field 'frame' must number frames consecutively from 0");
    seq.contours.push_back(std::move(contour));
  }
  if (seq.contours.size() < 2) throw FormatError("csv: field 'frame' must cover at least 2 frames");
  return seq;
}

SequenceFile read_sequence_file(const std::string& path) {
  auto in = open_input(path);
  try {
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) return read_sequence_csv(in);
    return read_sequence(in);
  } catch (Error& e) {
    e.add_context(path);
    throw;
  }
}

void write_sequence(std::ostream& out, const SequenceFile& seq) {
  Index samples = 0;
  if (seq.kind == SequenceKind::Contours) {
    if (seq.contours.empty()) throw ParameterError("write_sequence: no contours");
    samples = static_cast<Index>(seq.contours.front().points.size());
    for (const auto& c : seq.contours) {
      if (static_cast<Index>(c.points.size()) != samples) {
        throw ParameterError("write_sequence: contours must all have the same number of points");
      }
    }
  } else {
    if (seq.records.empty()) throw ParameterError("write_sequence: no records");
    samples = seq.records.front().size();
    for (const auto& v : seq.records) {
      if (v.size() != samples) throw ParameterError("write_sequence: records differ in length");
    }
  }
  out << kMagic << " sequence\n";
  out << "kind " << to_string(seq.kind) << '\n';
  out << "samples " << samples << '\n';
  out << "frames " << seq.frames() << '\n';
  out << "dt " << format_real(seq.dt) << '\n';
  out << "data\n";
  if (seq.kind == SequenceKind::Contours) {
    for (const auto& c : seq.contours) {
      Vector row(2 * samples);
      for (Index i = 0; i < samples; ++i) {
        row[2 * i] = c.points[static_cast<std::size_t>(i)].x();
        row[2 * i + 1] = c.points[static_cast<std::size_t>(i)].y();
      }
      write_row(out, row);
    }
  } else {
    for (const auto& v : seq.records) write_row(out, v);
  }
  out << "end\n";
}

void write_sequence_file(const std::string& path, const SequenceFile& seq) {
  auto out = open_output(path);
  write_sequence(out, seq);
  if (!out) throw FormatError("failed writing '" + path + "'");
}

std::unique_ptr<Manifold> make_manifold(ManifoldKind kind, Index samples) {
  if (kind == ManifoldKind::Sphere) return std::make_unique<SphereManifold>();
  return std::make_unique<ShapeManifold>(samples);
}

ManifoldKind manifold_kind(SequenceKind kind) {
  return kind == SequenceKind::Sphere ? ManifoldKind::Sphere : ManifoldKind::Shape;
}

std::vector<Vector> sequence_points(const SequenceFile& seq, Index contour_samples, std::vector<std::string>* warnings) {
  if (seq.kind != SequenceKind::Contours) return seq.records;
  std::vector<Vector> out;
  out.reserve(seq.contours.size());
  for (std::size_t t = 0; t < seq.contours.size(); ++t) {
    try {
      std::vector<std::string> local;
      out.push_back(from_contour(seq.contours[t], contour_samples, &local).theta);
      if (warnings != nullptr) {
        for (auto& w : local) warnings->push_back("frame " + std::to_string(t) + ": " + w);
      }
    } catch (Error& e) {
      e.add_context("frame " + std::to_string(t));
      throw;
    }
  }
  return out;
}

EmbeddingFile read_embedding(std::istream& in) {
  LineReader r(in);
  expect_magic(r, "embedding");

  EmbeddingFile file;
  const std::string manifold = header_value(r, "manifold");
  if (manifold == "shape") {
    file.manifold = ManifoldKind::Shape;
  } else if (manifold == "sphere") {
    file.manifold = ManifoldKind::Sphere;
  } else {
    r.fail("header field 'manifold': unknown manifold '" + manifold + "'");
  }
  const long samples = parse_int(header_value(r, "samples"), r, "samples");
  const long frames = parse_int(header_value(r, "frames"), r, "frames");
  const long dim = parse_int(header_value(r, "dim"), r, "dim");
  const long centered = parse_int(header_value(r, "centered"), r, "centered");
  const double captured = parse_real(header_value(r, "captured_energy"), r, "captured_energy");
  if (file.manifold == ManifoldKind::Sphere && samples != 3) r.fail("header field 'samples': sphere points have 3 coordinates");
  if (file.manifold == ManifoldKind::Shape && samples < kMinSamples) r.fail("header field 'samples': must be at least 8");
  if (frames < 2) r.fail("header field 'frames': must be at least 2");
  if (dim < 1 || dim > samples) r.fail("header field 'dim': must be between 1 and samples");
  if (centered != 0 && centered != 1) r.fail("header field 'centered': must be 0 or 1");

  auto& e = file.embedding;
  e.centered = centered == 1;
  e.captured_energy = captured;
  expect_keyword(r, "x0");
  e.x0 = parse_row(r, samples, "x0");
  expect_keyword(r, "frame0");
  e.frame0.base_index = 0;
  e.frame0.vectors.resize(samples, dim);
  for (long i = 0; i < dim; ++i) e.frame0.vectors.col(i) = parse_row(r, samples, "frame0");
  expect_keyword(r, "z");
  e.z.resize(frames, dim);
  for (long t = 0; t < frames; ++t) e.z.row(t) = parse_row(r, dim, "z").transpose();

  const auto toks = split(r.next("'spectrum'"));
  if (toks.size() != 2 || toks[0] != "spectrum") r.fail("expected header field 'spectrum'");
  const long rank = parse_int(toks[1], r, "spectrum");
  if (rank < 0) r.fail("header field 'spectrum': count must be nonnegative");
  e.spectrum.eigenvalues = parse_row(r, rank, "spectrum");
  e.spectrum.energy_fraction.resize(rank);
  const double total = e.spectrum.eigenvalues.sum();
  double running = 0.0;
  for (long i = 0; i < rank; ++i) {
    running += e.spectrum.eigenvalues[i];
    e.spectrum.energy_fraction[i] = total > 0.0 ? running / total : 1.0;
  }
  if (rank > 0) e.spectrum.energy_fraction[rank - 1] = 1.0;
  expect_keyword(r, "end");

  const auto m = make_manifold(file.manifold, samples);
  validate_embedding(e, *m);
  return file;
}

EmbeddingFile read_embedding_file(const std::string& path) {
  auto in = open_input(path);
  try {
    return read_embedding(in);
  } catch (Error& e) {
    e.add_context(path);
    throw;
  }
}

void write_embedding(std::ostream& out, const EmbeddingFile& file) {
  const auto& e = file.embedding;
  out << kMagic << " embedding\n";
  out << "manifold " << (file.manifold == ManifoldKind::Sphere ? "sphere" : "shape") << '\n';
  out << "samples " << e.x0.size() << '\n';
  out << "frames " << e.z.rows() << '\n';
  out << "dim " << e.z.cols() << '\n';
  out << "centered " << (e.centered ? 1 : 0) << '\n';
  out << "captured_energy " << format_real(e.captured_energy) << '\n';
  out << "x0\n";
  write_row(out, e.x0);
  out << "frame0\n";
  for (Index i = 0; i < e.frame0.vectors.cols(); ++i) write_row(out, e.frame0.vectors.col(i));
  out << "z\n";
  for (Index t = 0; t < e.z.rows(); ++t) write_row(out, e.z.row(t).transpose());
  out << "spectrum " << e.spectrum.eigenvalues.size() << '\n';
  write_row(out, e.spectrum.eigenvalues);
  out << "end\n";
}

void write_embedding_file(const std::string& path, const EmbeddingFile& file) {
  auto out = open_output(path);
  write_embedding(out, file);
  if (!out) throw FormatError("failed writing '" + path + "'");
}

}  // namespace framewalk
