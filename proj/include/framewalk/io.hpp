#pragma once

// Versioned text formats. Every file starts with a "fw1 <type>" magic line,
// followed by "key value" header lines, then the payload. Reals are written
// with 17 significant digits so doubles round-trip exactly.
//
//   fw1 sequence                 fw1 embedding
//   kind thetas|contours|sphere  manifold shape|sphere
//   samples <N or points P>      samples <N>
//   frames <T>                   frames <T>
//   dt <real>                    dim <L>
//   data                         centered 0|1
//   <T lines>                    captured_energy <real>
//   end                          x0 / <N reals>
//                                frame0 / <L lines of N reals>
//                                z / <T lines of L reals>
//                                spectrum <K> / <K reals>
//                                end
//
// Contour records hold x0 y0 x1 y1 ... on one line. Plain CSV with columns
// frame,x,y is accepted as a contour sequence on input.

#include "framewalk/embedding.hpp"
#include "framewalk/shape.hpp"

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace framewalk {

enum class SequenceKind { Thetas, Contours, Sphere };

const char* to_string(SequenceKind kind);

struct SequenceFile {
  SequenceKind kind = SequenceKind::Thetas;
  double dt = 1.0;
  std::vector<Vector> records;    // thetas or sphere points
  std::vector<Contour> contours;  // contours kind only

  [[nodiscard]] Index frames() const;
};

enum class ManifoldKind { Shape, Sphere };

struct EmbeddingFile {
  ManifoldKind manifold = ManifoldKind::Shape;
  EmbeddedCurve embedding;
};

SequenceFile read_sequence(std::istream& in);
SequenceFile read_sequence_csv(std::istream& in);
// Dispatches on extension: .csv is read as a contour point list.
SequenceFile read_sequence_file(const std::string& path);
void write_sequence(std::ostream& out, const SequenceFile& seq);
void write_sequence_file(const std::string& path, const SequenceFile& seq);

// Reading validates frame0 orthonormality (1e-6) and z[0] = 0.
EmbeddingFile read_embedding(std::istream& in);
EmbeddingFile read_embedding_file(const std::string& path);
void write_embedding(std::ostream& out, const EmbeddingFile& file);
void write_embedding_file(const std::string& path, const EmbeddingFile& file);

std::unique_ptr<Manifold> make_manifold(ManifoldKind kind, Index samples);

// Manifold points for a sequence; contours are converted to shapes with the
// given sample count (warnings from the conversion are appended).
std::vector<Vector> sequence_points(const SequenceFile& seq, Index contour_samples,
                                    std::vector<std::string>* warnings = nullptr);
ManifoldKind manifold_kind(SequenceKind kind);

// 17 significant digits, general notation.
std::string format_real(double value);

}  // namespace framewalk
