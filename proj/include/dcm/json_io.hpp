#pragma once

// JSON medium documents and canonical serialization. Complex numbers are
// [re, im] pairs; plain numbers are accepted on input as real scalars.
// Canonical output sorts keys (nlohmann's default object map) and formats
// every number with 17 significant digits so that serialize -> parse ->
// serialize is byte-identical.

#include "dcm/convert3d.hpp"
#include "dcm/media.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>

namespace dcm {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

namespace jsonio {

inline Json from_scalar(Scalar s) { return Json::array({s.real(), s.imag()}); }

template <typename M>
Json from_matrix(const M& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(from_scalar(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

template <typename V>
Json from_vector(const V& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(from_scalar(v[i]));
  return out;
}

inline Scalar to_scalar(const Json& j, const std::string& path) {
  if (j.is_number()) return Scalar(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Scalar(j[0].get<double>(), j[1].get<double>());
  throw std::invalid_argument(path + ": expected a number or an [re, im] pair");
}

template <typename M>
M to_matrix(const Json& j, const std::string& path) {
  M m;
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != m.rows())
    throw std::invalid_argument(path + ": expected " + std::to_string(m.rows()) + " rows");
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != m.cols())
      throw std::invalid_argument(path + ": expected " + std::to_string(m.cols()) +
                                  " columns per row");
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      m(r, c) = to_scalar(row[static_cast<std::size_t>(c)],
                          path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return m;
}

template <typename V>
V to_vector(const Json& j, const std::string& path) {
  V v;
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != v.size())
    throw std::invalid_argument(path + ": expected " + std::to_string(v.size()) + " entries");
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v[i] = to_scalar(j[static_cast<std::size_t>(i)], path + "[" + std::to_string(i) + "]");
  return v;
}

inline const Json& field(const Json& j, const std::string& name, const std::string& path) {
  if (!j.contains(name)) throw std::invalid_argument(path + ": missing field '" + name + "'");
  return j.at(name);
}

inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

inline void dump_canonical(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        dump_canonical(it.value(), out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump_canonical(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float:
      out += format_number(j.get<double>());
      break;
    case Json::value_t::number_integer:
    case Json::value_t::number_unsigned:
      out += format_number(static_cast<double>(j.get<std::int64_t>()));
      break;
    default:
      out += j.dump();
  }
}

}  // namespace jsonio

inline std::string canonical_dump(const Json& j) {
  std::string out;
  jsonio::dump_canonical(j, out);
  out += '\n';
  return out;
}

// Parsed medium document: the medium plus its re-serializable form.
struct MediumDocument {
  std::string kind;
  Medium medium;
  Json metadata = Json::object();
};

inline MediumDocument parse_medium_document(const Json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("document: expected a JSON object");
  const std::string kind = jsonio::field(doc, "kind", "document").get<std::string>();
  const Json& p = jsonio::field(doc, "parameters", "document");
  using namespace jsonio;
  MediumDocument out;
  out.kind = kind;
  if (doc.contains("metadata")) out.metadata = doc.at("metadata");
  const std::string pp = "parameters";
  if (kind == "raw6x6") {
    out.medium = Medium(to_matrix<Mat6>(field(p, "m", pp), pp + ".m"));
  } else if (kind == "qdcm") {
    out.medium = construct_qdcm(to_scalar(field(p, "alpha", pp), pp + ".alpha"),
                                to_scalar(field(p, "scale", pp), pp + ".scale"),
                                to_matrix<Mat4>(field(p, "q", pp), pp + ".q"),
                                to_vector<Vec6>(field(p, "d", pp), pp + ".d"),
                                to_vector<Vec6>(field(p, "c", pp), pp + ".c"));
  } else if (kind == "pdcm") {
    out.medium = construct_pdcm(to_scalar(field(p, "alpha", pp), pp + ".alpha"),
                                to_scalar(field(p, "scale", pp), pp + ".scale"),
                                to_matrix<Mat4>(field(p, "p", pp), pp + ".p"),
                                to_vector<Vec6>(field(p, "d", pp), pp + ".d"),
                                to_vector<Vec6>(field(p, "c", pp), pp + ".c"));
  } else if (kind == "sdcm") {
    out.medium = construct_sdcm(to_scalar(field(p, "alpha", pp), pp + ".alpha"),
                                to_matrix<Mat4>(field(p, "bo", pp), pp + ".bo"),
                                to_vector<Vec6>(field(p, "a", pp), pp + ".a"),
                                to_vector<Vec6>(field(p, "b", pp), pp + ".b"));
  } else if (kind == "q_medium") {
    out.medium = construct_q_medium(to_scalar(field(p, "scale", pp), pp + ".scale"),
                                    to_matrix<Mat4>(field(p, "q", pp), pp + ".q"));
  } else if (kind == "p_medium") {
    out.medium = construct_p_medium(to_scalar(field(p, "scale", pp), pp + ".scale"),
                                    to_matrix<Mat4>(field(p, "p", pp), pp + ".p"));
  } else if (kind == "gibbsian") {
    GibbsianMedium g;
    g.eps_g = to_matrix<Mat3>(field(p, "eps_g", pp), pp + ".eps_g");
    g.xi_g = to_matrix<Mat3>(field(p, "xi_g", pp), pp + ".xi_g");
    g.zeta_g = to_matrix<Mat3>(field(p, "zeta_g", pp), pp + ".zeta_g");
    g.mu_g = to_matrix<Mat3>(field(p, "mu_g", pp), pp + ".mu_g");
    out.medium = fourd_from_gibbsian(g);
  } else if (kind == "uniaxial") {
    const auto u = uniaxial_gibbsian(to_scalar(field(p, "eps_t", pp), pp + ".eps_t"),
                                     to_scalar(field(p, "eps_z", pp), pp + ".eps_z"),
                                     to_scalar(field(p, "mu_t", pp), pp + ".mu_t"),
                                     to_scalar(field(p, "mu_z", pp), pp + ".mu_z"));
    out.medium = fourd_from_gibbsian(u.medium);
    if (u.degenerate) out.metadata["degenerate_te_tm"] = true;
  } else if (kind == "axion") {
    out.medium = construct_axion(to_scalar(field(p, "alpha", pp), pp + ".alpha"));
  } else {
    throw std::invalid_argument("document: unknown kind '" + kind + "'");
  }
  return out;
}

// Re-serialize the document from the constructed medium (canonical numeric
// form; provenance parameters preserved).
inline Json serialize_medium_document(const MediumDocument& doc) {
  using namespace jsonio;
  Json p = Json::object();
  const Provenance& prov = doc.medium.provenance();
  if (const auto* q = std::get_if<QdcmParams>(&prov)) {
    p["alpha"] = from_scalar(q->alpha);
    p["scale"] = from_scalar(q->scale);
    p["q"] = from_matrix(q->q);
    p["d"] = from_vector(q->d);
    p["c"] = from_vector(q->c);
  } else if (const auto* q = std::get_if<PdcmParams>(&prov)) {
    p["alpha"] = from_scalar(q->alpha);
    p["scale"] = from_scalar(q->scale);
    p["p"] = from_matrix(q->p);
    p["d"] = from_vector(q->d);
    p["c"] = from_vector(q->c);
  } else if (const auto* s = std::get_if<SdcmParams>(&prov)) {
    p["alpha"] = from_scalar(s->alpha);
    p["bo"] = from_matrix(s->bo);
    p["a"] = from_vector(s->a);
    p["b"] = from_vector(s->b);
  } else if (const auto* q = std::get_if<QMediumParams>(&prov)) {
    p["scale"] = from_scalar(q->scale);
    p["q"] = from_matrix(q->q);
  } else if (const auto* q = std::get_if<PMediumParams>(&prov)) {
    p["scale"] = from_scalar(q->scale);
    p["p"] = from_matrix(q->p);
  } else if (const auto* a = std::get_if<AxionParams>(&prov)) {
    p["alpha"] = from_scalar(a->alpha);
  } else {
    p["m"] = from_matrix(doc.medium.m());
  }
  Json out = Json::object();
  out["schema_version"] = kSchemaVersion;
  // raw6x6 is the canonical kind for provenance-free media
  out["kind"] = std::holds_alternative<std::monostate>(prov) ? "raw6x6" : doc.kind;
  out["parameters"] = p;
  out["metadata"] = doc.metadata;
  return out;
}

}  // namespace dcm
