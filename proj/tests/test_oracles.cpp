// Compares the library against values frozen from tests/oracles/majorant_oracle.py,
// which recomputes everything from the defining products and subset sums.

#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <sstream>

#include "hypercert/asymptotics.hpp"

using namespace hypercert;

namespace {

struct Record {
  Variant variant = Variant::rational_base;
  Rat c{3};
  int dim = 0;
  std::string key;
  std::string value;
};

std::vector<Record> load() {
  std::ifstream in(HYPERCERT_ORACLE);
  if (!in) throw std::runtime_error("cannot open " HYPERCERT_ORACLE);
  std::vector<Record> out;
  Record ctx;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != ' ') ctx = Record{};
    std::istringstream tokens(line);
    std::string tok;
    while (tokens >> tok) {
      if (tok == "rational" || tok == "ceil") {
        ctx.variant = tok == "ceil" ? Variant::ceil_base : Variant::rational_base;
        continue;
      }
      const auto eq = tok.find('=');
      const std::string key = tok.substr(0, eq), value = tok.substr(eq + 1);
      if (key == "c") {
        ctx.c = Rat::parse(value);
      } else if (key == "dim") {
        ctx.dim = std::stoi(value);
      } else {
        Record r = ctx;
        r.key = key;
        r.value = value;
        out.push_back(r);
      }
    }
  }
  return out;
}

const std::vector<Record>& records() {
  static const std::vector<Record> r = load();
  return r;
}

// The oracle prints 20 significant digits; allow one unit in the last place.
void expect_encloses(const RatInterval& x, const std::string& decimal, const std::string& what) {
  const Rat v = Rat::parse(decimal);
  const Rat slack = abs(v) * rat_pow(Rat(10), -18);
  EXPECT_LE(x.lo, v + slack) << what;
  EXPECT_GE(x.hi, v - slack) << what;
}

}  // namespace

TEST(Oracle, FileIsComplete) { EXPECT_EQ(records().size(), 30u); }

TEST(Oracle, ExactMajorants) {
  int seen = 0;
  for (const Record& r : records()) {
    if (r.key != "c_hat" && r.key != "c_plain" && r.key != "c_minus_ub") continue;
    const WeightSequence w = build_weights(r.dim, r.c, r.variant);
    const MajorantPair m = c_pair_power(w);
    const Rat& got = r.key == "c_hat" ? m.c_hat : r.key == "c_plain" ? m.c_plain : m.c_minus_ub;
    EXPECT_EQ(got, Rat::parse(r.value)) << r.key << " dim " << r.dim << " " << to_string(r.variant);
    if (r.key == "c_hat") EXPECT_EQ(c_hat_general(w), got);
    ++seen;
  }
  EXPECT_EQ(seen, 11);
}

TEST(Oracle, ElementarySymmetricAndTildeRatios) {
  int seen = 0;
  for (const Record& r : records()) {
    if (r.key.size() < 3 || (r.key[0] != 'e' && r.key[0] != 'T') || r.key[1] != '_') continue;
    const int p = std::stoi(r.key.substr(2));
    const WeightSequence w = build_weights(r.dim, r.c, r.variant);
    const Rat got = r.key[0] == 'e' ? elem_sym_inverse(w, p) : tilde_ratio(w, p);
    EXPECT_EQ(got, Rat::parse(r.value)) << r.key << " dim " << r.dim;
    ++seen;
  }
  EXPECT_EQ(seen, 9);
}

TEST(Oracle, HighDimensionalDecimals) {
  const CertificationMode mode = paper_mode(Rat(1));
  std::map<int, SweepSample> c_hat;
  int seen = 0;
  for (const Record& r : records()) {
    const auto open = r.key.find('(');
    if (open != std::string::npos) {
      const int dim = std::stoi(r.key.substr(open + 1));
      c_hat[dim] = sample_quantity(parse_quantity(r.key.substr(0, open)), dim, Rat(3), Variant::rational_base, mode);
      expect_encloses(c_hat[dim].enclosure, r.value, r.key);
    } else if (r.key == "richardson") {
      expect_encloses(richardson(c_hat.at(200), c_hat.at(400)), r.value, r.key);
    } else if (r.key == "e3") {
      expect_encloses(exp_enclosure(Rat(3), rat_pow(Rat(10), -25)), r.value, r.key);
    } else if (r.dim >= 200) {
      const SweepSample s = sample_quantity(parse_quantity(r.key), r.dim, Rat(3), Variant::rational_base, mode);
      ASSERT_FALSE(s.error);
      expect_encloses(s.enclosure, r.value, r.key + " dim " + std::to_string(r.dim));
    } else {
      continue;
    }
    ++seen;
  }
  EXPECT_EQ(seen, 10);
}
