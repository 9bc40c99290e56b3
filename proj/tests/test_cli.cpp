#include "cli_support.hpp"
#include "support.hpp"

#include <doctest.h>

#include <framewalk/io.hpp>
#include <framewalk/shape.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>

using namespace framewalk;
using testing::RunResult;
using testing::Sandbox;

namespace {

void expect_error(const RunResult& r, int code) {
  CHECK(r.code == code);
  const auto ls = testing::lines(r.err);
  REQUIRE(!ls.empty());
  CHECK(ls.back().rfind("error[" + std::to_string(code) + "]:", 0) == 0);
}

double mean_l2_error(const std::vector<Vector>& a, const std::vector<Vector>& b) {
  double sum = 0;
  for (std::size_t t = 0; t < a.size(); ++t) sum += testing::l2(a[t] - b[t]);
  return sum / static_cast<double>(a.size());
}

}  // namespace

TEST_CASE("cli synth") {
  Sandbox box("synth");
  for (const char* kind : {"ellipse-morph", "fourier-wobble", "sphere-geodesic"}) {
    const std::string a = box.path(std::string(kind) + "_a.fw"), b = box.path(std::string(kind) + "_b.fw");
    REQUIRE(box.run(std::string("synth --kind ") + kind + " --frames 12 --samples 64 --seed 5 --output " + a).code == 0);
    REQUIRE(box.run(std::string("synth --kind ") + kind + " --frames 12 --samples 64 --seed 5 --output " + b).code == 0);
    CHECK(Sandbox::read(a) == Sandbox::read(b));
    const SequenceFile seq = read_sequence_file(a);
    CHECK(seq.frames() == 12);
    if (seq.kind == SequenceKind::Thetas)
      for (const auto& p : seq.records) CHECK(testing::phi_oracle_residual(p) <= 1e-8);
  }
  const std::string c = box.path("c.fw");
  REQUIRE(box.run("synth --kind fourier-wobble --seed 6 --output " + c).code == 0);
  CHECK(Sandbox::read(c) != Sandbox::read(box.path("fourier-wobble_a.fw")));
  expect_error(box.run("synth --kind fourier-wobble --frames 1 --output " + box.path("x.fw")), 2);
  expect_error(box.run("synth --kind spiral --output " + box.path("x.fw")), 2);
  expect_error(box.run("synth --kind fourier-wobble"), 2);
}

TEST_CASE("cli embed") {
  Sandbox box("embed");
  const std::string seq = box.path("ellipse.fw");
  REQUIRE(box.run("synth --kind ellipse-morph --output " + seq).code == 0);

  const std::string e1 = box.path("e1.fw"), e2 = box.path("e2.fw"), report = box.path("report.csv");
  const RunResult r = box.run("embed --input " + seq + " --output " + e1 + " --dim 3 --report " + report);
  REQUIRE(r.code == 0);
  const EmbeddingFile f = read_embedding_file(e1);
  CHECK(f.embedding.dim() == 3);
  CHECK(f.embedding.captured_energy >= 0.99);
  CHECK(f.embedding.spectrum.captured(3) >= 0.99);

  REQUIRE(box.run("embed --input " + seq + " --output " + e2 + " --dim 3").code == 0);
  CHECK(Sandbox::read(e1) == Sandbox::read(e2));

  const auto rows = testing::lines(Sandbox::read(report));
  REQUIRE(rows.size() >= 3);
  CHECK(rows[0].rfind("# dim=3", 0) == 0);
  CHECK(rows[1] == "eigenvalue,cum_energy");
  CHECK(testing::split_csv(rows[2]).size() == 2);

  expect_error(box.run("embed --input " + seq + " --output " + e2 + " --dim 0"), 2);
  const RunResult rank = box.run("embed --input " + seq + " --output " + e2 + " --dim 100");
  expect_error(rank, 3);
  CHECK(rank.err.find("max L = ") != std::string::npos);
  expect_error(box.run("embed --input " + box.path("nope.fw") + " --output " + e2 + " --dim 2"), 2);
  expect_error(box.run("embed --input " + seq + " --output " + e2), 2);

  // a header problem is reported with the field name
  {
    std::string text = Sandbox::read(seq);
    text.replace(text.find("frames 30"), 9, "frames xx");
    std::ofstream(box.path("bad.fw")) << text;
    const RunResult bad = box.run("embed --input " + box.path("bad.fw") + " --output " + e2 + " --dim 2");
    expect_error(bad, 2);
    CHECK(bad.err.find("'frames'") != std::string::npos);
  }
  // off-manifold frames are rejected
  {
    SequenceFile s = read_sequence_file(seq);
    s.records[3](0) += 1e-3;
    write_sequence_file(box.path("off.fw"), s);
    const RunResult off = box.run("embed --input " + box.path("off.fw") + " --output " + e2 + " --dim 2");
    expect_error(off, 2);
    CHECK(off.err.find("shape 3") != std::string::npos);
  }
}

TEST_CASE("cli embed accepts csv contours") {
  Sandbox box("csv");
  {
    std::ofstream csv(box.path("in.csv"));
    csv << "frame,x,y\n";
    for (int t = 0; t < 6; ++t)
      for (const auto& p : testing::ellipse_contour(1.5 + 0.05 * t, 1, 60).points)
        csv << t << ',' << format_real(p.x()) << ',' << format_real(p.y()) << '\n';
  }
  const RunResult r = box.run("embed --input " + box.path("in.csv") + " --output " + box.path("e.fw") + " --dim 1 --samples 64");
  REQUIRE(r.code == 0);
  CHECK(read_embedding_file(box.path("e.fw")).embedding.x0.size() == 64);
}

TEST_CASE("cli reconstruct") {
  Sandbox box("reconstruct");
  const std::string seq = box.path("w.fw"), emb = box.path("e.fw"), out = box.path("r.fw");
  REQUIRE(box.run("synth --kind fourier-wobble --output " + seq).code == 0);
  const SequenceFile original = read_sequence_file(seq);

  // full rank
  const RunResult listing = box.run("spectrum --input " + seq + " --csv " + box.path("s.csv"));
  REQUIRE(listing.code == 0);
  const long rank = static_cast<long>(testing::lines(Sandbox::read(box.path("s.csv"))).size()) - 1;
  REQUIRE(box.run("embed --input " + seq + " --output " + emb + " --dim " + std::to_string(rank)).code == 0);
  REQUIRE(box.run("reconstruct --input " + emb + " --output " + out).code == 0);
  const SequenceFile rec = read_sequence_file(out);
  REQUIRE(rec.frames() == original.frames());
  CHECK(mean_l2_error(original.records, rec.records) <= 1e-2);
  for (const auto& p : rec.records) CHECK(testing::phi_oracle_residual(p) <= 1e-10);

  // zero z gives a constant sequence
  {
    EmbeddingFile f = read_embedding_file(emb);
    f.embedding.z.setZero();
    write_embedding_file(box.path("zero.fw"), f);
    REQUIRE(box.run("reconstruct --input " + box.path("zero.fw") + " --output " + box.path("zero_out.fw")).code == 0);
    const SequenceFile z = read_sequence_file(box.path("zero_out.fw"));
    for (const auto& p : z.records) CHECK((p - f.embedding.x0).cwiseAbs().maxCoeff() <= 1e-12);
  }
  // corrupted frame0
  {
    // bump the first value of frame0 so it leaves the manifold
    std::string text = Sandbox::read(emb);
    const auto at = text.find("frame0\n") + 7;
    const auto space = text.find(' ', at);
    text.replace(at, space - at, "0.5");
    std::ofstream(box.path("corrupt.fw")) << text;
    const RunResult bad = box.run("reconstruct --input " + box.path("corrupt.fw") + " --output " + box.path("x.fw"));
    expect_error(bad, 2);
    CHECK(bad.err.find("frame0") != std::string::npos);
  }
  // contours
  {
    REQUIRE(box.run("reconstruct --input " + emb + " --output " + box.path("c.fw") + " --contours").code == 0);
    const SequenceFile c = read_sequence_file(box.path("c.fw"));
    CHECK(c.kind == SequenceKind::Contours);
    CHECK(c.frames() == original.frames());
  }
  expect_error(box.run("reconstruct --input " + box.path("missing.fw") + " --output " + out), 2);
}

TEST_CASE("cli sphere round trip") {
  Sandbox box("sphere");
  REQUIRE(box.run("synth --kind sphere-geodesic --frames 20 --output " + box.path("g.fw")).code == 0);
  REQUIRE(box.run("embed --input " + box.path("g.fw") + " --output " + box.path("e.fw") + " --dim 1").code == 0);
  const EmbeddingFile e = read_embedding_file(box.path("e.fw"));
  CHECK(e.manifold == ManifoldKind::Sphere);
  REQUIRE(box.run("reconstruct --input " + box.path("e.fw") + " --output " + box.path("r.fw")).code == 0);
  const SequenceFile a = read_sequence_file(box.path("g.fw")), b = read_sequence_file(box.path("r.fw"));
  CHECK(b.kind == SequenceKind::Sphere);
  double worst = 0;
  for (std::size_t t = 0; t < a.records.size(); ++t) worst = std::max(worst, (a.records[t] - b.records[t]).norm());
  CHECK(worst <= 1e-2);
  expect_error(box.run("reconstruct --input " + box.path("e.fw") + " --output " + box.path("x.fw") + " --contours"), 2);
}

TEST_CASE("cli roundtrip") {
  Sandbox box("roundtrip");
  const std::string seq = box.path("w.fw");
  REQUIRE(box.run("synth --kind fourier-wobble --frames 4 --output " + seq).code == 0);
  const std::string csv = box.path("rt.csv"), svg = box.path("rt.svg");
  const RunResult r = box.run("roundtrip --input " + seq + " --dims 1,2,3 --csv " + csv + " --svg " + svg);
  REQUIRE(r.code == 0);
  CHECK(testing::lines(r.out).size() == 4);

  const auto rows = testing::lines(Sandbox::read(csv));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "dim,captured_energy,spectrum_energy,mean_error,max_error,mean_relative_error,hausdorff_mean,hausdorff_max");
  double prev_captured = -1, prev_spectrum = -1;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto cols = testing::split_csv(rows[i]);
    REQUIRE(cols.size() == 8);
    const double captured = std::stod(cols[1]), spectrum = std::stod(cols[2]);
    CHECK(captured > prev_captured);
    CHECK(spectrum > prev_spectrum);
    prev_captured = captured;
    prev_spectrum = spectrum;
  }
  CHECK(prev_spectrum >= 1 - 1e-9);
  CHECK(prev_captured >= 1 - 1e-9);

  const std::string doc = Sandbox::read(svg);
  std::vector<std::string> elements;
  CHECK(testing::well_formed_xml(doc, &elements));
  CHECK(elements.front() == "svg");
  CHECK(std::count(elements.begin(), elements.end(), "polyline") == 2);
  CHECK(std::count(elements.begin(), elements.end(), "polygon") == 2);

  // the same call again gives the same files
  REQUIRE(box.run("roundtrip --input " + seq + " --dims 1,2,3 --csv " + box.path("rt2.csv") + " --svg " + box.path("rt2.svg")).code == 0);
  CHECK(Sandbox::read(box.path("rt2.csv")) == Sandbox::read(csv));
  CHECK(Sandbox::read(box.path("rt2.svg")) == doc);

  expect_error(box.run("roundtrip --input " + box.path("missing.fw") + " --dims 1,2"), 2);
  expect_error(box.run("roundtrip --input " + seq + " --dims 1,x"), 2);
  expect_error(box.run("roundtrip --input " + seq + " --dims 0,1"), 2);
  expect_error(box.run("roundtrip --input " + seq + " --dims 1,9"), 3);
}

TEST_CASE("cli spectrum") {
  Sandbox box("spectrum");
  SUBCASE("rank one") {
    REQUIRE(box.run("synth --kind fourier-wobble --modes 1 --amplitude 0.05 --output " + box.path("r1.fw")).code == 0);
    const RunResult r = box.run("spectrum --input " + box.path("r1.fw") + " --csv " + box.path("s.csv"));
    REQUIRE(r.code == 0);
    const auto rows = testing::lines(Sandbox::read(box.path("s.csv")));
    CHECK(rows[0] == "eigenvalue,cum_energy");
    REQUIRE(rows.size() >= 2);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(testing::split_csv(rows[i]).size() == 2);
    const double first = std::stod(testing::split_csv(rows[1])[0]);
    const double second = rows.size() > 2 ? std::stod(testing::split_csv(rows[2])[0]) : 0.0;
    CHECK(first >= 1e6 * second);
  }
  SUBCASE("constant sequence") {
    REQUIRE(box.run("synth --kind fourier-wobble --amplitude 0 --frames 5 --output " + box.path("c.fw")).code == 0);
    const RunResult r = box.run("spectrum --input " + box.path("c.fw") + " --csv " + box.path("s.csv"));
    REQUIRE(r.code == 0);
    CHECK(r.err.find("warning") != std::string::npos);
    const auto rows = testing::lines(Sandbox::read(box.path("s.csv")));
    CHECK(rows[0] == "eigenvalue,cum_energy");
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::abs(std::stod(testing::split_csv(rows[i])[0])) <= 1e-12);
  }
  SUBCASE("errors") {
    expect_error(box.run("spectrum --input " + box.path("missing.fw")), 2);
    expect_error(box.run("spectrum"), 2);
    expect_error(box.run("frobnicate"), 2);
  }
}
