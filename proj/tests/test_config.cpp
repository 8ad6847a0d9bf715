#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"

using namespace twoedge;

namespace {

const std::string kReferenceGraph = R"("m1": 16, "m2": 1, "l1": 2.718281828459045, "l2": 3.141592653589793)";

std::string config(const std::string &body) { return "{\n  " + kReferenceGraph + ",\n  " + body + "\n}\n"; }

template <class E>
E expect_throw(const std::string &text) {
  try {
    parse_config(text);
  } catch (const E &e) {
    return e;
  }
  ADD_FAILURE() << "no exception for:\n" << text;
  throw std::logic_error("unreachable");
}

std::string unitary_json(const Mat4 &u) {
  std::ostringstream os;
  os.precision(17);
  os << "[";
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) os << (i + j ? ", " : "") << "[" << u(i, j).real() << ", " << u(i, j).imag() << "]";
  os << "]";
  return os.str();
}

std::string read_file(const std::filesystem::path &p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), {}};
}

} // namespace

TEST(Config, ReferenceParameters) {
  const auto c = parse_config(config(R"("task": "spectrum", "preset": "segment", "kappa_max": 10)"));
  EXPECT_EQ(c.task, Task::spectrum);
  EXPECT_EQ(c.preset, PresetTag::segment);
  EXPECT_EQ(c.graph.m1, 16.0);
  EXPECT_DOUBLE_EQ(c.graph.l1, oracle::e);
  EXPECT_EQ(c.graph.hbar, 1.0);
  EXPECT_EQ(c.format, OutputFormat::csv);
  EXPECT_EQ(c.bins, 64);
  EXPECT_NEAR(config_frequencies(c).omega1, oracle::frozen::omega1, 1e-13);
}

TEST(Config, UnitaryRoundTrip) {
  std::mt19937_64 rng(2);
  const Mat4 u = oracle::random_unitary(rng);
  const auto c = parse_config(config(R"("task": "spectrum", "kappa_max": 5, "unitary": )" + unitary_json(u)));
  ASSERT_TRUE(c.unitary.has_value());
  EXPECT_LT((*c.unitary - u).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(c.bc_label(), "unitary");
}

TEST(Config, MissingMass) {
  const auto e = expect_throw<ValidationError>(R"({"task": "spectrum", "m1": 1, "l1": 1, "l2": 1, "preset": "segment"})");
  EXPECT_EQ(e.field(), "m2");
}

TEST(Config, NonUnitary) {
  Mat4 u = Mat4::Identity();
  u(0, 1) = 1e-6;
  const auto e = expect_throw<ValidationError>(config(R"("task": "spectrum", "unitary": )" + unitary_json(u)));
  EXPECT_EQ(e.field(), "unitarity");
}

TEST(Config, ValidationFields) {
  EXPECT_EQ(expect_throw<ValidationError>(config(R"("task": "spectrum", "preset": "star")")).field(), "preset");
  EXPECT_EQ(expect_throw<ValidationError>(config(R"("task": "plot", "preset": "ring")")).field(), "task");
  EXPECT_EQ(expect_throw<ValidationError>(config(R"("task": "bg", "preset": "ring", "format": "xml")")).field(),
            "format");
  EXPECT_EQ(expect_throw<ValidationError>(config(R"("task": "bg")")).field(), "bc");
  EXPECT_EQ(expect_throw<ValidationError>(config(R"("task": "bg", "preset": "ring", "bins": 4)")).field(), "bins");
  EXPECT_EQ(expect_throw<ValidationError>(config(R"("task": "bg", "preset": "ring", "hbar": -1)")).field(), "hbar");
  EXPECT_EQ(
      expect_throw<ValidationError>(config(R"("task": "bg", "preset": "ring", "unitary": )" + unitary_json(Mat4::Identity())))
          .field(),
      "bc");
}

TEST(Config, ParseErrorsCarryLineAndField) {
  const auto unknown = expect_throw<ParseError>(config(R"("task": "bg",
  "preset": "ring",
  "colour": "red")"));
  EXPECT_EQ(unknown.field(), "colour");
  EXPECT_EQ(unknown.line(), 5);

  const auto type = expect_throw<ParseError>(config(R"("task": "bg", "preset": "ring",
  "bins": "many")"));
  EXPECT_EQ(type.field(), "bins");
  EXPECT_EQ(type.line(), 4);

  const auto syntax = expect_throw<ParseError>("{\n  \"task\": \"bg\",\n  \"m1\": 1,,\n}\n");
  EXPECT_EQ(syntax.line(), 3);
  EXPECT_EQ(expect_throw<ParseError>("[1, 2]").line(), 1);
}

TEST(Run, SpectrumMatchesDirichletRoots) {
  const auto c = parse_config(config(R"("task": "spectrum", "preset": "dirichlet", "kappa_max": 10)"));
  const auto r = compute(c);
  ASSERT_EQ(r.status, 0);
  ASSERT_EQ(r.files.size(), 2u);
  EXPECT_EQ(r.files[0].name, "roots.csv");
  std::istringstream is(r.files[0].content);
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "kappa,energy,residual,multiplicity");
  const auto want = oracle::dirichlet_roots(oracle::frozen::omega1, oracle::pi, 10.0);
  std::size_t n = 0;
  while (std::getline(is, line)) {
    ASSERT_LT(n, want.size());
    EXPECT_NEAR(std::stod(line.substr(0, line.find(','))), want[n], 1e-9 * want[n]);
    ++n;
  }
  EXPECT_EQ(n, want.size());
}

TEST(Run, VerifyPassesForPresets) {
  for (const char *p : {"dirichlet", "segment", "pendant"}) {
    const auto c = parse_config(config(std::string(R"("task": "verify", "roots": 150, "preset": ")") + p + "\""));
    for (const auto &s : detail::verify_suites(c)) EXPECT_TRUE(s.passed) << p << " " << s.suite << " " << s.value;
    EXPECT_EQ(compute(c).status, 0) << p;
  }
}

TEST(Run, DeterministicOutputs) {
  for (const char *body : {R"("task": "leaning", "preset": "ring", "roots": 120, "threads": 1)",
                           R"("task": "leaning", "preset": "ring", "roots": 120, "threads": 3, "format": "json")",
                           R"("task": "bg", "preset": "rose", "roots": 300, "bins": 16)",
                           R"("task": "wigner", "preset": "segment", "root_index": 3, "nx": 21, "np": 17)"}) {
    const auto c = parse_config(config(body));
    const auto a = compute(c), b = compute(c);
    ASSERT_EQ(a.files.size(), b.files.size());
    for (std::size_t i = 0; i < a.files.size(); ++i) {
      EXPECT_EQ(a.files[i].name, b.files[i].name);
      EXPECT_EQ(a.files[i].content, b.files[i].content) << body;
    }
  }
}

TEST(Run, ThreadCountDoesNotChangeResults) {
  const auto one = compute(parse_config(config(R"("task": "leaning", "preset": "pendant", "roots": 100, "threads": 1)")));
  const auto four = compute(parse_config(config(R"("task": "leaning", "preset": "pendant", "roots": 100, "threads": 4)")));
  ASSERT_EQ(one.files.size(), four.files.size());
  for (std::size_t i = 0; i < one.files.size(); ++i)
    if (one.files[i].name != "summary.json") {
      EXPECT_EQ(one.files[i].content, four.files[i].content);
    }
}

TEST(Run, WriteOutputs) {
  const auto dir = std::filesystem::temp_directory_path() / "twoedge_test_write";
  std::filesystem::remove_all(dir);
  write_outputs({{"a.csv", "x\n1\n"}, {"b.json", "{}\n"}}, dir);
  EXPECT_EQ(read_file(dir / "a.csv"), "x\n1\n");
  EXPECT_EQ(read_file(dir / "b.json"), "{}\n");
  // a failing write removes the files written before it
  EXPECT_ANY_THROW(write_outputs({{"c.csv", "1\n"}, {"missing/d.csv", "2\n"}}, dir));
  EXPECT_FALSE(std::filesystem::exists(dir / "c.csv"));
  std::filesystem::remove_all(dir);
}

TEST(Run, Fmt17RoundTrips) {
  for (double v : {oracle::pi, -1e-300, 0.1, 12345.678901234567}) EXPECT_EQ(std::stod(fmt17(v)), v);
}
