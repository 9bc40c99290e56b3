// framewalk: embed shape sequences into R^L by curve development and
// reconstruct them. Subcommands: embed, reconstruct, roundtrip, synth, spectrum.

#include "framewalk/embedding.hpp"
#include "framewalk/error.hpp"
#include "framewalk/io.hpp"
#include "framewalk/report.hpp"
#include "framewalk/sphere.hpp"
#include "framewalk/svg.hpp"
#include "framewalk/synth.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fw = framewalk;

namespace {

struct Loaded {
  fw::SequenceFile file;
  fw::ManifoldKind kind = fw::ManifoldKind::Shape;
  std::unique_ptr<fw::Manifold> manifold;
  std::vector<fw::Vector> points;
};

void warn(const std::string& msg) { std::cerr << "warning: " << msg << '\n'; }

Loaded load_sequence(const std::string& path, fw::Index contour_samples) {
  Loaded in;
  in.file = fw::read_sequence_file(path);
  in.kind = fw::manifold_kind(in.file.kind);
  std::vector<std::string> warnings;
  in.points = fw::sequence_points(in.file, contour_samples, &warnings);
  for (const auto& w : warnings) warn(w);
  const fw::Index n = in.points.front().size();
  in.manifold = fw::make_manifold(in.kind, n);
  if (in.kind == fw::ManifoldKind::Shape) {
    fw::validate_shape_curve(fw::ShapeCurve::from_points(in.points, in.file.dt));
  } else {
    for (std::size_t t = 0; t < in.points.size(); ++t) {
      if (std::abs(in.points[t].norm() - 1.0) > fw::kShapeTolerance) {
        throw fw::DegenerateInputError("frame " + std::to_string(t) + ": point is not on the unit sphere");
      }
    }
  }
  return in;
}

std::ofstream open_text(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw fw::FormatError("cannot open output file '" + path + "'");
  return out;
}

std::vector<fw::Index> parse_dims(const std::string& text) {
  std::vector<fw::Index> dims;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      dims.push_back(v);
    } catch (const std::exception&) {
      throw fw::ParameterError("--dims: '" + tok + "' is not an integer");
    }
  }
  if (dims.empty()) throw fw::ParameterError("--dims: no dimensions given");
  return dims;
}

void write_spectrum_csv(std::ostream& out, const fw::Spectrum& s) {
  out << "eigenvalue,cum_energy\n";
  for (fw::Index i = 0; i < s.eigenvalues.size(); ++i) {
    out << fw::format_real(s.eigenvalues[i]) << ',' << fw::format_real(s.energy_fraction[i]) << '\n';
  }
}

struct EmbedArgs {
  std::string input, output, report;
  long dim = 0;
  bool centered = false;
  long samples = 128;
};

int run_embed(const EmbedArgs& a) {
  if (a.dim < 1) throw fw::ParameterError("--dim must be at least 1");
  const Loaded in = load_sequence(a.input, a.samples);
  fw::EmbedOptions options;
  options.centered = a.centered;
  fw::EmbeddingFile file;
  file.manifold = in.kind;
  file.embedding = fw::embed(*in.manifold, in.points, a.dim, options);
  fw::write_embedding_file(a.output, file);
  const auto& e = file.embedding;
  std::cout << "frames " << e.frames() << " dim " << e.dim() << " captured_energy " << fw::format_real(e.captured_energy)
            << '\n';
  if (!a.report.empty()) {
    auto out = open_text(a.report);
    out << "# dim=" << e.dim() << " captured_energy=" << fw::format_real(e.captured_energy) << '\n';
    write_spectrum_csv(out, e.spectrum);
  }
  return 0;
}

struct ReconstructArgs {
  std::string input, output;
  bool contours = false;
};

int run_reconstruct(const ReconstructArgs& a) {
  const fw::EmbeddingFile file = fw::read_embedding_file(a.input);
  const auto m = fw::make_manifold(file.manifold, file.embedding.x0.size());
  const std::vector<fw::Vector> points = fw::reconstruct(*m, file.embedding);

  fw::SequenceFile seq;
  if (file.manifold == fw::ManifoldKind::Sphere) {
    if (a.contours) throw fw::ParameterError("--contours only applies to shape embeddings");
    seq.kind = fw::SequenceKind::Sphere;
    seq.records = points;
  } else if (a.contours) {
    seq.kind = fw::SequenceKind::Contours;
    for (const auto& p : points) seq.contours.push_back(fw::to_contour(p));
  } else {
    seq.kind = fw::SequenceKind::Thetas;
    seq.records = points;
  }
  fw::write_sequence_file(a.output, seq);
  std::cout << "frames " << points.size() << '\n';
  return 0;
}

struct RoundtripArgs {
  std::string input, dims, csv, svg;
  bool centered = false;
  long samples = 128;
};

int run_roundtrip(const RoundtripArgs& a) {
  const std::vector<fw::Index> dims = parse_dims(a.dims);
  const Loaded in = load_sequence(a.input, a.samples);
  const fw::RoundtripReport report = fw::roundtrip_report(*in.manifold, in.points, dims, a.centered);

  const char* header = "dim,captured_energy,spectrum_energy,mean_error,max_error,mean_relative_error,hausdorff_mean,hausdorff_max";
  std::printf("%4s %16s %16s %12s %12s %14s %14s %14s\n", "dim", "captured_energy", "spectrum_energy", "mean_error",
              "max_error", "mean_rel_error", "hausdorff_mean", "hausdorff_max");
  for (const auto& row : report.rows) {
    std::printf("%4ld %16.12f %16.12f %12.4e %12.4e %14.4e %14.4e %14.4e\n", static_cast<long>(row.dim),
                row.captured_energy, row.spectrum_energy, row.error.mean_absolute, row.error.max_absolute,
                row.error.mean_relative, row.hausdorff_mean, row.hausdorff_max);
  }
  if (!report.errors_nonincreasing) warn("reconstruction error grows with dim beyond 5% jitter");

  if (!a.csv.empty()) {
    auto out = open_text(a.csv);
    out << header << '\n';
    for (const auto& row : report.rows) {
      out << row.dim << ',' << fw::format_real(row.captured_energy) << ',' << fw::format_real(row.spectrum_energy) << ','
          << fw::format_real(row.error.mean_absolute) << ',' << fw::format_real(row.error.max_absolute) << ','
          << fw::format_real(row.error.mean_relative) << ',' << fw::format_real(row.hausdorff_mean) << ','
          << fw::format_real(row.hausdorff_max) << '\n';
    }
  }
  if (!a.svg.empty()) {
    // largest requested dim that still draws as a planar polyline
    fw::Index plot_dim = *std::min_element(dims.begin(), dims.end());
    for (fw::Index l : dims) {
      if (l <= 3) plot_dim = std::max(plot_dim, l);
    }
    const fw::EmbeddedCurve e = fw::embed(*in.manifold, in.points, plot_dim, fw::EmbedOptions{a.centered, {}});
    fw::RoundtripFigure figure;
    figure.z = e.z;
    if (in.kind == fw::ManifoldKind::Shape) {
      const auto rec = fw::reconstruct(*in.manifold, e);
      figure.original = fw::to_contour(in.points.back());
      figure.reconstructed = fw::to_contour(rec.back());
    }
    auto out = open_text(a.svg);
    out << fw::roundtrip_svg(report, figure);
  }
  return 0;
}

struct SynthArgs {
  std::string kind, output;
  long frames = 30;
  long samples = 128;
  long modes = 3;
  double amplitude = 0.1;
  unsigned long long seed = 1;
};

int run_synth(const SynthArgs& a) {
  if (a.frames < 2) throw fw::ParameterError("--frames must be at least 2");
  fw::SequenceFile seq;
  if (a.kind == "ellipse-morph") {
    fw::EllipseMorphOptions o;
    o.frames = a.frames;
    o.samples = a.samples;
    seq.kind = fw::SequenceKind::Thetas;
    seq.records = fw::ellipse_morph(o).points();
  } else if (a.kind == "fourier-wobble") {
    fw::WobbleOptions o;
    o.frames = a.frames;
    o.samples = a.samples;
    o.modes = static_cast<int>(a.modes);
    o.amplitude = a.amplitude;
    o.seed = a.seed;
    seq.kind = fw::SequenceKind::Thetas;
    seq.records = fw::fourier_wobble(o).points();
  } else if (a.kind == "sphere-geodesic") {
    fw::GeodesicOptions o;
    o.frames = a.frames;
    o.seed = a.seed;
    seq.kind = fw::SequenceKind::Sphere;
    seq.records = fw::sphere_geodesic(o);
  } else {
    throw fw::ParameterError("--kind must be ellipse-morph, fourier-wobble or sphere-geodesic");
  }
  fw::write_sequence_file(a.output, seq);
  std::cout << "frames " << seq.frames() << '\n';
  return 0;
}

struct SpectrumArgs {
  std::string input, csv;
  long samples = 128;
};

int run_spectrum(const SpectrumArgs& a) {
  const Loaded in = load_sequence(a.input, a.samples);
  const fw::TangentSet ts = fw::pull_back_tangents(*in.manifold, in.points);
  const fw::PcaResult pca = fw::pca_frame(ts, *in.manifold, in.points.front(), 1);
  const auto& s = pca.spectrum;
  if (s.eigenvalues.size() == 0 || s.eigenvalues.maxCoeff() <= 1e-12) {
    warn("all eigenvalues are below 1e-12; the sequence is constant");
  }
  std::printf("%6s %24s %20s\n", "index", "eigenvalue", "cum_energy");
  for (fw::Index i = 0; i < s.eigenvalues.size(); ++i) {
    std::printf("%6ld %24.17g %20.17g\n", static_cast<long>(i + 1), s.eigenvalues[i], s.energy_fraction[i]);
  }
  if (!a.csv.empty()) {
    auto out = open_text(a.csv);
    write_spectrum_csv(out, s);
  }
  return 0;
}

int fail(int code, const std::string& message) {
  std::string line = message;
  std::replace(line.begin(), line.end(), '\n', ' ');
  std::cerr << "error[" << code << "]: " << line << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"framewalk: invertible low-dimensional development of shape sequences"};
  app.require_subcommand(1);

  EmbedArgs embed_args;
  auto* embed = app.add_subcommand("embed", "embed a sequence into R^L");
  embed->add_option("--input", embed_args.input, "sequence file (.fw or .csv contours)")->required();
  embed->add_option("--output", embed_args.output, "embedding file to write")->required();
  embed->add_option("--dim", embed_args.dim, "embedding dimension L")->required();
  embed->add_flag("--centered", embed_args.centered, "subtract the mean tangent before PCA");
  embed->add_option("--report", embed_args.report, "CSV spectrum report");
  embed->add_option("--samples", embed_args.samples, "samples per shape when converting contours");

  ReconstructArgs rec_args;
  auto* rec = app.add_subcommand("reconstruct", "reconstruct a sequence from an embedding");
  rec->add_option("--input", rec_args.input, "embedding file")->required();
  rec->add_option("--output", rec_args.output, "sequence file to write")->required();
  rec->add_flag("--contours", rec_args.contours, "write contours instead of direction functions");

  RoundtripArgs rt_args;
  auto* rt = app.add_subcommand("roundtrip", "embed and reconstruct at several dimensions");
  rt->add_option("--input", rt_args.input, "sequence file")->required();
  rt->add_option("--dims", rt_args.dims, "comma separated list of L")->required();
  rt->add_option("--csv", rt_args.csv, "CSV table");
  rt->add_option("--svg", rt_args.svg, "SVG plots");
  rt->add_flag("--centered", rt_args.centered, "subtract the mean tangent before PCA");
  rt->add_option("--samples", rt_args.samples, "samples per shape when converting contours");

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "write a synthetic sequence");
  synth->add_option("--kind", synth_args.kind, "ellipse-morph | fourier-wobble | sphere-geodesic")->required();
  synth->add_option("--frames", synth_args.frames, "number of frames T");
  synth->add_option("--samples", synth_args.samples, "samples per shape N");
  synth->add_option("--seed", synth_args.seed, "random seed");
  synth->add_option("--modes", synth_args.modes, "fourier-wobble: number of modes");
  synth->add_option("--amplitude", synth_args.amplitude, "fourier-wobble: mode amplitude");
  synth->add_option("--output", synth_args.output, "sequence file to write")->required();

  SpectrumArgs spec_args;
  auto* spectrum = app.add_subcommand("spectrum", "print the PCA spectrum of the pulled-back tangents");
  spectrum->add_option("--input", spec_args.input, "sequence file")->required();
  spectrum->add_option("--csv", spec_args.csv, "CSV output");
  spectrum->add_option("--samples", spec_args.samples, "samples per shape when converting contours");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(2, e.what());
  }

  try {
    if (*embed) return run_embed(embed_args);
    if (*rec) return run_reconstruct(rec_args);
    if (*rt) return run_roundtrip(rt_args);
    if (*synth) return run_synth(synth_args);
    if (*spectrum) return run_spectrum(spec_args);
  } catch (const fw::Error& e) {
    const int code = fw::exit_code(e.kind());
    return fail(code, std::string(fw::to_string(e.kind())) + ": " + e.what());
  } catch (const std::exception& e) {
    return fail(1, std::string("internal: ") + e.what());
  }
  return 0;
}
