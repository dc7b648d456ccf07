#include "mub/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mub {

namespace {

using json = nlohmann::ordered_json;

json complex_to_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

json ket_to_json(const Ket& v) {
  json arr = json::array();
  for (const Complex& c : v.coords) arr.push_back(complex_to_json(c));
  return arr;
}

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Complex complex_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw FileFormatError(path + ": expected a [re, im] pair");
  return Complex{j[0].get<double>(), j[1].get<double>()};
}

CMatrix matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty())
    throw FileFormatError(path + ": expected a matrix (array of rows)");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[static_cast<std::size_t>(i)].is_array() ||
        static_cast<int>(j[static_cast<std::size_t>(i)].size()) != cols)
      throw FileFormatError(path + "[" + std::to_string(i) + "]: ragged matrix");
    for (int c = 0; c < cols; ++c)
      m(i, c) = complex_from_json(
          j[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)],
          path + "[" + std::to_string(i) + "][" + std::to_string(c) + "]");
  }
  return m;
}

}  // namespace

std::string mubset_to_json_text(const MubSet& s) {
  json doc;
  doc["format"] = "mub.basis-set";
  doc["tool"] = kToolName;
  doc["version"] = kToolVersion;
  doc["signature"] = s.sig.dims;
  doc["tolerance"] = s.tol;
  doc["seed"] = s.seed;
  doc["provenance"] = s.provenance;
  json bases = json::array();
  for (std::size_t k = 0; k < s.bases.size(); ++k) {
    json basis;
    basis["name"] = "B" + std::to_string(k);
    json vectors = json::array();
    for (const ProductKet& v : s.bases[k].vectors) {
      json factors = json::array();
      for (const Ket& f : v.factors) factors.push_back(ket_to_json(f));
      vectors.push_back(std::move(factors));
    }
    basis["vectors"] = std::move(vectors);
    bases.push_back(std::move(basis));
  }
  doc["bases"] = std::move(bases);
  return doc.dump(2) + "\n";
}

MubSet mubset_from_json_text(const std::string& text,
                             const LoadOptions& options) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FileFormatError(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("format") ||
      doc["format"] != "mub.basis-set")
    throw FileFormatError("format: expected \"mub.basis-set\"");
  if (!doc.contains("signature") || !doc["signature"].is_array())
    throw FileFormatError("signature: expected an array of dimensions");

  std::vector<int> dims;
  for (std::size_t i = 0; i < doc["signature"].size(); ++i) {
    const json& e = doc["signature"][i];
    if (!e.is_number_integer() || e.get<int>() < 2)
      throw FileFormatError("signature[" + std::to_string(i) +
                            "]: expected an integer >= 2");
    dims.push_back(e.get<int>());
  }

  MubSet s;
  try {
    s.sig = DimensionSignature(dims);
  } catch (const std::invalid_argument& e) {
    throw FileFormatError(std::string("signature: ") + e.what());
  }
  const int d = s.sig.total();
  const int n = s.sig.n();

  s.tol = doc.value("tolerance", kDefaultTol);
  s.seed = doc.value("seed", static_cast<std::uint64_t>(0));
  s.provenance = doc.value("provenance", std::string{});

  if (!doc.contains("bases") || !doc["bases"].is_array() || doc["bases"].empty())
    throw FileFormatError("bases: expected a nonempty array");

  for (std::size_t k = 0; k < doc["bases"].size(); ++k) {
    const std::string bpath = "bases[" + std::to_string(k) + "]";
    const json& jb = doc["bases"][k];
    if (!jb.is_object() || !jb.contains("vectors") || !jb["vectors"].is_array())
      throw FileFormatError(bpath + ": expected an object with \"vectors\"");
    if (static_cast<int>(jb["vectors"].size()) != d)
      throw FileFormatError(bpath + ".vectors: expected " + std::to_string(d) +
                            " vectors, got " + std::to_string(jb["vectors"].size()));
    ProductBasis basis;
    basis.sig = s.sig;
    for (std::size_t i = 0; i < jb["vectors"].size(); ++i) {
      const std::string vpath = bpath + ".vectors[" + std::to_string(i) + "]";
      const json& jv = jb["vectors"][i];
      if (!jv.is_array() || static_cast<int>(jv.size()) != n)
        throw FileFormatError(vpath + ": expected " + std::to_string(n) +
                              " factors");
      ProductKet v;
      for (int r = 0; r < n; ++r) {
        const std::string fpath = vpath + ".factors[" + std::to_string(r) + "]";
        const json& jf = jv[static_cast<std::size_t>(r)];
        const int dr = s.sig.dims[static_cast<std::size_t>(r)];
        if (!jf.is_array() || static_cast<int>(jf.size()) != dr)
          throw FileFormatError(fpath + ": expected " + std::to_string(dr) +
                                " coordinates, got " + std::to_string(jf.size()));
        Ket f;
        for (int c = 0; c < dr; ++c)
          f.coords.push_back(complex_from_json(
              jf[static_cast<std::size_t>(c)],
              fpath + "[" + std::to_string(c) + "]"));
        const double norm = f.norm();
        if (std::abs(norm - 1.0) > options.norm_tol) {
          if (!options.normalize)
            throw FileFormatError(
                fpath + ": factor norm " + std::to_string(norm) +
                " deviates from 1 by more than " +
                std::to_string(options.norm_tol) +
                " (pass --normalize to renormalize)");
          f = f.normalized();
        }
        v.factors.push_back(std::move(f));
      }
      basis.vectors.push_back(std::move(v));
    }
    s.bases.push_back(std::move(basis));
  }
  return s;
}

void save_mubset(const MubSet& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FileFormatError(path + ": cannot open for writing");
  out << mubset_to_json_text(s);
  if (!out) throw FileFormatError(path + ": write failed");
}

MubSet load_mubset(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw FileFormatError(path + ": cannot open");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return mubset_from_json_text(buf.str(), options);
  } catch (const FileFormatError& e) {
    throw FileFormatError(path + ": " + e.what());
  }
}

std::string moves_to_json_text(const std::vector<EquivalenceMove>& moves) {
  json arr = json::array();
  for (const EquivalenceMove& m : moves) {
    json jm;
    if (const auto* lu = std::get_if<LocalUnitaryMove>(&m)) {
      jm["type"] = "local-unitary";
      json us = json::array();
      for (const CMatrix& u : lu->unitaries) us.push_back(matrix_to_json(u));
      jm["unitaries"] = std::move(us);
    } else if (const auto* pv = std::get_if<PerVectorPhaseMove>(&m)) {
      jm["type"] = "per-vector-phase";
      jm["basis"] = pv->basis;
      jm["phases"] = pv->phases;
    } else if (const auto* pb = std::get_if<PermuteWithinBasisMove>(&m)) {
      jm["type"] = "permute-within-basis";
      jm["basis"] = pb->basis;
      jm["perm"] = pb->perm;
    } else if (const auto* lc = std::get_if<LocalConjugateMove>(&m)) {
      jm["type"] = "local-conjugate";
      jm["subsystem"] = lc->subsystem;
    } else {
      const auto& rb = std::get<ReorderBasesMove>(m);
      jm["type"] = "reorder-bases";
      jm["perm"] = rb.perm;
    }
    arr.push_back(std::move(jm));
  }
  return arr.dump(2) + "\n";
}

std::vector<EquivalenceMove> moves_from_json_text(const std::string& text) {
  json arr;
  try {
    arr = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FileFormatError(std::string("not valid JSON: ") + e.what());
  }
  if (!arr.is_array()) throw FileFormatError("moves: expected an array");
  std::vector<EquivalenceMove> moves;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = "moves[" + std::to_string(i) + "]";
    const json& jm = arr[i];
    const std::string type = jm.value("type", std::string{});
    if (type == "local-unitary") {
      LocalUnitaryMove mv;
      for (std::size_t u = 0; u < jm["unitaries"].size(); ++u)
        mv.unitaries.push_back(matrix_from_json(
            jm["unitaries"][u], path + ".unitaries[" + std::to_string(u) + "]"));
      moves.push_back(std::move(mv));
    } else if (type == "per-vector-phase") {
      moves.push_back(PerVectorPhaseMove{jm["basis"].get<int>(),
                                         jm["phases"].get<std::vector<double>>()});
    } else if (type == "permute-within-basis") {
      moves.push_back(PermuteWithinBasisMove{jm["basis"].get<int>(),
                                             jm["perm"].get<std::vector<int>>()});
    } else if (type == "local-conjugate") {
      moves.push_back(LocalConjugateMove{jm["subsystem"].get<int>()});
    } else if (type == "reorder-bases") {
      moves.push_back(ReorderBasesMove{jm["perm"].get<std::vector<int>>()});
    } else {
      throw FileFormatError(path + ": unknown move type \"" + type + "\"");
    }
  }
  return moves;
}

}  // namespace mub
