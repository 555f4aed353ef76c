#ifndef NCOP_IO_HPP
#define NCOP_IO_HPP

// JSON file formats. Complex numbers are [re, im]; words use the "1.2" / "e"
// spelling. Every reader validates the schema before building anything and
// names the offending key on failure.

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ncop/core.hpp"
#include "ncop/functional.hpp"
#include "ncop/operator_tuple.hpp"
#include "ncop/orthopoly.hpp"
#include "ncop/recurrence.hpp"
#include "ncop/words.hpp"

namespace ncop::io {

using Json = nlohmann::json;

class SchemaError : public InvalidInput {
 public:
  SchemaError(std::string key, const std::string& what)
      : InvalidInput("key '" + key + "': " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

inline Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

namespace detail {

inline std::string join(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

inline const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path.empty() ? "<root>" : path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(join(path, key), "missing");
  return *it;
}

inline int int_field(const Json& j, const std::string& key, const std::string& path, int min_value) {
  const Json& v = field(j, key, path);
  if (!v.is_number_integer()) throw SchemaError(join(path, key), "expected an integer");
  const auto x = v.get<long long>();
  if (x < min_value || x > 1'000'000)
    throw SchemaError(join(path, key), "value " + std::to_string(x) + " out of range");
  return static_cast<int>(x);
}

inline Word word_key(const std::string& s, const std::string& path) {
  try {
    return Word::parse(s);
  } catch (const InvalidInput& e) {
    throw SchemaError(path, e.what());
  }
}

}  // namespace detail

inline Json to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

inline Complex complex_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw SchemaError(path, "expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Dense matrix of [re, im] entries; shape checked when rows/cols ≥ 0.
inline Matrix matrix_from_json(const Json& j, const std::string& path, Eigen::Index rows = -1,
                               Eigen::Index cols = -1) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of rows");
  const auto r = static_cast<Eigen::Index>(j.size());
  if (rows >= 0 && r != rows)
    throw SchemaError(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(r));
  Eigen::Index c = cols;
  if (c < 0) c = r == 0 ? 0 : static_cast<Eigen::Index>(j[0].is_array() ? j[0].size() : 0);
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    const std::string rp = path + "[" + std::to_string(i) + "]";
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != c)
      throw SchemaError(rp, "expected a row of " + std::to_string(c) + " entries");
    for (Eigen::Index k = 0; k < c; ++k)
      m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)], rp + "[" + std::to_string(k) + "]");
  }
  return m;
}

// ---- moment files ----

inline Json moments_to_json(const MomentFunctional& f) {
  Json j;
  j["n_generators"] = f.n_generators();
  j["kind"] = to_string(f.kind());
  j["max_degree"] = f.max_degree();
  Json m = Json::object();
  for (const auto& [w, s] : f.moments()) m[w.str()] = to_json(s);
  j["moments"] = std::move(m);
  if (!f.kernel().empty()) {
    Json k = Json::object();
    for (const auto& [key, v] : f.kernel()) k[key.first.str() + "|" + key.second.str()] = to_json(v);
    j["kernel"] = std::move(k);
  }
  return j;
}

inline MomentFunctional moments_from_json(const Json& j) {
  const int n = detail::int_field(j, "n_generators", "", 1);
  const Json& kind_j = detail::field(j, "kind", "");
  if (!kind_j.is_string()) throw SchemaError("kind", "expected a string");
  MomentKind kind;
  try {
    kind = parse_kind(kind_j.get<std::string>());
  } catch (const InvalidInput& e) {
    throw SchemaError("kind", e.what());
  }
  const int max_degree = detail::int_field(j, "max_degree", "", 0);
  const Json& mj = detail::field(j, "moments", "");
  if (!mj.is_object()) throw SchemaError("moments", "expected an object keyed by words");
  MomentMap moments;
  for (const auto& [key, val] : mj.items()) {
    const std::string path = "moments." + key;
    Word w = detail::word_key(key, path);
    if (!w.empty() && *std::max_element(w.letters().begin(), w.letters().end()) > n)
      throw SchemaError(path, "letter exceeds n_generators");
    if (static_cast<int>(w.size()) > max_degree) throw SchemaError(path, "word longer than max_degree");
    moments[std::move(w)] = complex_from_json(val, path);
  }
  KernelMap kernel;
  if (auto it = j.find("kernel"); it != j.end()) {
    if (kind != MomentKind::generic) throw SchemaError("kernel", "only allowed for kind \"generic\"");
    if (!it->is_object()) throw SchemaError("kernel", "expected an object keyed by \"s|t\"");
    for (const auto& [key, val] : it->items()) {
      const std::string path = "kernel." + key;
      const auto bar = key.find('|');
      if (bar == std::string::npos) throw SchemaError(path, "expected a \"s|t\" word pair");
      Word s = detail::word_key(key.substr(0, bar), path);
      Word t = detail::word_key(key.substr(bar + 1), path);
      for (const Word* w : std::initializer_list<const Word*>{&s, &t})
        if (!w->empty() && *std::max_element(w->letters().begin(), w->letters().end()) > n)
          throw SchemaError(path, "letter exceeds n_generators");
      kernel[{std::move(s), std::move(t)}] = complex_from_json(val, path);
    }
  }
  if (!moments.contains(Word{}) && kernel.empty()) throw SchemaError("moments.e", "missing");
  return MomentFunctional(n, kind, max_degree, std::move(moments), std::move(kernel));
}

// ---- basis files ----

inline Json basis_to_json(const OrthoBasis& b) {
  Json j;
  j["n_generators"] = b.n_generators();
  j["level"] = b.level();
  Json c = Json::object();
  for (Eigen::Index s = 0; s < b.size(); ++s) {
    Json row = Json::object();
    for (Eigen::Index t = 0; t <= s; ++t)
      if (b.coeffs()(s, t) != Complex(0.0))
        row[word_at(static_cast<std::size_t>(t), b.n_generators()).str()] = to_json(b.coeffs()(s, t));
    c[word_at(static_cast<std::size_t>(s), b.n_generators()).str()] = std::move(row);
  }
  j["coeffs"] = std::move(c);
  return j;
}

/// "n_generators" is optional; when absent it is the largest letter seen (at least 1).
inline OrthoBasis basis_from_json(const Json& j) {
  const int level = detail::int_field(j, "level", "", 0);
  const Json& cj = detail::field(j, "coeffs", "");
  if (!cj.is_object()) throw SchemaError("coeffs", "expected an object keyed by words");
  std::vector<std::pair<std::pair<Word, Word>, Complex>> entries;
  int seen = 1;
  for (const auto& [sk, row] : cj.items()) {
    const std::string rp = "coeffs." + sk;
    const Word s = detail::word_key(sk, rp);
    if (static_cast<int>(s.size()) > level) throw SchemaError(rp, "word longer than level");
    if (!row.is_object()) throw SchemaError(rp, "expected an object keyed by words");
    for (const auto& [tk, val] : row.items()) {
      const std::string p = rp + "." + tk;
      Word t = detail::word_key(tk, p);
      if (t > s) throw SchemaError(p, "coefficient above the diagonal");
      for (const Word* w : std::initializer_list<const Word*>{&s, &t})
        if (!w->empty()) seen = std::max(seen, *std::max_element(w->letters().begin(), w->letters().end()));
      entries.push_back({{s, std::move(t)}, complex_from_json(val, p)});
    }
  }
  int n = seen;
  if (j.contains("n_generators")) {
    n = detail::int_field(j, "n_generators", "", 1);
    if (seen > n) throw SchemaError("coeffs", "letter exceeds n_generators");
  }
  const auto m = static_cast<Eigen::Index>(words_up_to_count(static_cast<std::size_t>(level), n));
  Matrix a = Matrix::Zero(m, m);
  for (const auto& [key, v] : entries)
    a(static_cast<Eigen::Index>(global_index(key.first, n)),
      static_cast<Eigen::Index>(global_index(key.second, n))) = v;
  for (Eigen::Index i = 0; i < m; ++i)
    if (a(i, i) == Complex(0.0))
      throw SchemaError("coeffs." + word_at(static_cast<std::size_t>(i), n).str(), "missing leading coefficient");
  return OrthoBasis(n, level, std::move(a));
}

// ---- recurrence coefficient files ----

inline Json coeffs_to_json(const RecurrenceCoeffs& rc) {
  Json j;
  j["n_generators"] = rc.n_generators;
  j["levels"] = rc.levels;
  Json a = Json::object(), b = Json::object();
  for (int n = 0; n < rc.levels; ++n)
    for (int k = 1; k <= rc.n_generators; ++k) {
      const std::string key = std::to_string(n) + "," + std::to_string(k);
      a[key] = to_json(rc.a(n, k));
      b[key] = to_json(rc.b(n, k));
    }
  j["A"] = std::move(a);
  j["B"] = std::move(b);
  return j;
}

inline RecurrenceCoeffs coeffs_from_json(const Json& j) {
  RecurrenceCoeffs rc;
  rc.n_generators = detail::int_field(j, "n_generators", "", 1);
  rc.levels = detail::int_field(j, "levels", "", 0);
  const Json& aj = detail::field(j, "A", "");
  const Json& bj = detail::field(j, "B", "");
  for (const char* name : {"A", "B"})
    if (!j[name].is_object()) throw SchemaError(name, "expected an object keyed by \"n,k\"");
  const int n_gen = rc.n_generators;
  for (const auto* obj : {&aj, &bj})
    for (const auto& [key, _] : obj->items()) {
      const std::string path = std::string(obj == &aj ? "A." : "B.") + key;
      int n = -1, k = -1;
      char comma = 0;
      std::istringstream ss(key);
      if (!(ss >> n >> comma >> k) || comma != ',' || !ss.eof() || n < 0 || k < 1 || k > n_gen ||
          n >= rc.levels)
        throw SchemaError(path, "expected \"n,k\" with 0 <= n < levels and 1 <= k <= n_generators");
    }
  for (int n = 0; n < rc.levels; ++n) {
    const auto sn = static_cast<Eigen::Index>(level_size(static_cast<std::size_t>(n), n_gen));
    const auto sn1 = static_cast<Eigen::Index>(level_size(static_cast<std::size_t>(n + 1), n_gen));
    std::vector<Matrix> as, bs;
    for (int k = 1; k <= n_gen; ++k) {
      const std::string key = std::to_string(n) + "," + std::to_string(k);
      as.push_back(matrix_from_json(detail::field(aj, key, "A"), "A." + key, sn, sn));
      bs.push_back(matrix_from_json(detail::field(bj, key, "B"), "B." + key, sn1, sn));
    }
    rc.A.push_back(std::move(as));
    rc.B.push_back(std::move(bs));
  }
  return rc;
}

// ---- point files ----

inline Json point_to_json(const OperatorTuple& t) {
  Json j;
  j["N"] = t.n();
  j["d"] = t.dim();
  j["region"] = to_string(t.region() == Region::unchecked ? Region::ball : t.region());
  Json mats = Json::array();
  for (const Matrix& m : t.matrices()) mats.push_back(to_json(m));
  j["matrices"] = std::move(mats);
  return j;
}

inline OperatorTuple point_from_json(const Json& j) {
  const int n = detail::int_field(j, "N", "", 1);
  const int d = detail::int_field(j, "d", "", 1);
  const Json& rj = detail::field(j, "region", "");
  if (!rj.is_string()) throw SchemaError("region", "expected \"ball\" or \"siegel\"");
  Region region;
  try {
    region = parse_region(rj.get<std::string>());
    if (region == Region::unchecked) throw InvalidInput("expected \"ball\" or \"siegel\"");
  } catch (const InvalidInput& e) {
    throw SchemaError("region", e.what());
  }
  const Json& mj = detail::field(j, "matrices", "");
  if (!mj.is_array() || static_cast<int>(mj.size()) != n)
    throw SchemaError("matrices", "expected an array of N = " + std::to_string(n) + " matrices");
  std::vector<Matrix> mats;
  for (int k = 0; k < n; ++k)
    mats.push_back(matrix_from_json(mj[static_cast<std::size_t>(k)], "matrices[" + std::to_string(k) + "]", d, d));
  return OperatorTuple(std::move(mats), region);
}

}  // namespace ncop::io

#endif  // NCOP_IO_HPP
