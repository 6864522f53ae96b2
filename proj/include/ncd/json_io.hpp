#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncd/module_deform.hpp"

namespace ncd {

using Json = nlohmann::json;

/// Malformed or inconsistent input document.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid ") + what + ": " + e.what());
  }
}

inline std::int64_t as_int(const Json& j) {
  if (!j.is_number_integer()) throw ParseError("expected an integer, got " + j.dump());
  return j.get<std::int64_t>();
}

inline std::vector<std::int64_t> as_int_vector(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an integer array, got " + j.dump());
  std::vector<std::int64_t> v;
  for (const auto& e : j) v.push_back(as_int(e));
  return v;
}

}  // namespace detail

inline Json to_json(const FgAbelianGroup& g) { return Json{{"rank", g.rank()}, {"torsion", g.torsion()}}; }

inline FgAbelianGroup group_from_json(const Json& j) {
  return detail::guarded("group", [&] {
    auto rank = detail::as_int(detail::field(j, "rank"));
    if (rank < 0) throw ParseError("negative rank");
    std::vector<std::int64_t> torsion;
    if (j.contains("torsion")) torsion = detail::as_int_vector(j.at("torsion"));
    return FgAbelianGroup(static_cast<std::size_t>(rank), torsion);
  });
}

inline Json to_json(const GroupElement& x) { return Json{{"coords", x.coords}}; }

inline GroupElement element_from_json(const Json& j) {
  return detail::guarded("element", [&] { return GroupElement(detail::as_int_vector(detail::field(j, "coords"))); });
}

inline Json to_json(const CirclePoint& p) {
  if (p.is_exact()) return Json{{"exact", {p.numerator(), p.denominator()}}};
  return Json{{"real", p.value()}};
}

inline CirclePoint circle_from_json(const Json& j) {
  return detail::guarded("circle point", [&] {
    if (j.is_object() && j.contains("exact")) {
      auto v = detail::as_int_vector(j.at("exact"));
      if (v.size() != 2) throw ParseError("exact circle point needs [num, den]");
      return CirclePoint::exact(v[0], v[1]);
    }
    if (j.is_object() && j.contains("real")) {
      if (!j.at("real").is_number()) throw ParseError("real circle point needs a number");
      return CirclePoint::real(j.at("real").get<double>());
    }
    throw ParseError("circle point must have 'exact' or 'real'");
  });
}

inline Json to_json(const CircleMatrix& m) {
  Json rows = Json::array();
  for (const auto& r : m) {
    Json row = Json::array();
    for (const auto& c : r) row.push_back(to_json(c));
    rows.push_back(row);
  }
  return rows;
}

inline CircleMatrix circle_matrix_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("matrix must be an array of rows");
  CircleMatrix m;
  for (const auto& r : j) {
    if (!r.is_array()) throw ParseError("matrix row must be an array");
    std::vector<CirclePoint> row;
    for (const auto& c : r) row.push_back(circle_from_json(c));
    m.push_back(row);
  }
  return m;
}

inline Json to_json(const Bicharacter& b) { return Json{{"group", to_json(b.group())}, {"matrix", to_json(b.matrix())}}; }

inline Json to_json(const CohomologyClass& c) {
  Json j = to_json(c.form());
  j["alternating"] = true;
  return j;
}

inline Json to_json(const Multiplier& m) {
  Json j = to_json(m.bicharacter());
  if (m.coboundary()) {
    Json lin = Json::array();
    for (const auto& c : m.coboundary()->linear()) lin.push_back(to_json(c));
    j["coboundary"] = Json{{"quadratic", to_json(m.coboundary()->quadratic())}, {"linear", lin}};
  }
  return j;
}

inline bool is_class_document(const Json& j) { return j.is_object() && j.value("alternating", false); }

inline Bicharacter bicharacter_from_json(const Json& j) {
  return detail::guarded("bicharacter", [&] {
    return Bicharacter(group_from_json(detail::field(j, "group")), circle_matrix_from_json(detail::field(j, "matrix")));
  });
}

inline CohomologyClass class_from_json(const Json& j) {
  return detail::guarded("class", [&] {
    return CohomologyClass(group_from_json(detail::field(j, "group")), circle_matrix_from_json(detail::field(j, "matrix")));
  });
}

inline Multiplier multiplier_from_json(const Json& j) {
  return detail::guarded("multiplier", [&] {
    Bicharacter b = bicharacter_from_json(j);
    if (!j.contains("coboundary")) return Multiplier(b);
    const Json& c = j.at("coboundary");
    std::vector<CirclePoint> lin;
    for (const auto& e : detail::field(c, "linear")) lin.push_back(circle_from_json(e));
    return Multiplier(b, CoboundaryData(b.group(), circle_matrix_from_json(detail::field(c, "quadratic")), lin));
  });
}

/// Reads either a class document or a multiplier, returning its class.
inline CohomologyClass any_class_from_json(const Json& j) {
  if (is_class_document(j)) return class_from_json(j);
  return antisymmetrize(multiplier_from_json(j));
}

inline Json to_json(const AlgebraElement& a) {
  Json coeffs = Json::array();
  for (const auto& [x, c] : a.terms()) {
    Json value = Json::array();
    for (const auto& z : c.entries()) value.push_back({z.real(), z.imag()});
    coeffs.push_back(Json{{"index", x.coords}, {"value", value}});
  }
  return Json{{"group", to_json(a.group())}, {"dim", a.dim()}, {"coeffs", coeffs}};
}

inline AlgebraElement algebra_element_from_json(const Json& j) {
  return detail::guarded("algebra element", [&] {
    FgAbelianGroup g = group_from_json(detail::field(j, "group"));
    std::int64_t dim = j.contains("dim") ? detail::as_int(j.at("dim")) : 1;
    if (dim < 1) throw ParseError("dim must be positive");
    AlgebraElement a(g, static_cast<std::size_t>(dim));
    const Json& coeffs = detail::field(j, "coeffs");
    if (!coeffs.is_array()) throw ParseError("coeffs must be an array");
    for (const auto& t : coeffs) {
      GroupElement x(detail::as_int_vector(detail::field(t, "index")));
      g.check_shape(x);
      const Json& v = detail::field(t, "value");
      if (!v.is_array() || v.size() != static_cast<std::size_t>(dim * dim)) throw ParseError("value must hold dim*dim complex numbers");
      CoeffMatrix<Complex> c(static_cast<std::size_t>(dim));
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (!v[k].is_array() || v[k].size() != 2 || !v[k][0].is_number() || !v[k][1].is_number())
          throw ParseError("complex numbers are written [re, im]");
        c(k / static_cast<std::size_t>(dim), k % static_cast<std::size_t>(dim)) = Complex(v[k][0].get<double>(), v[k][1].get<double>());
      }
      a.add_term(x, c);
    }
    return a;
  });
}

inline Json to_json(const WeightedFrame& f) {
  Json w = Json::array();
  for (const auto& x : f.weights) w.push_back(x.coords);
  return Json{{"group", to_json(f.group)}, {"weights", w}};
}

inline WeightedFrame frame_from_json(const Json& j) {
  return detail::guarded("frame", [&] {
    WeightedFrame f;
    f.group = group_from_json(detail::field(j, "group"));
    for (const auto& w : detail::field(j, "weights")) {
      GroupElement x(detail::as_int_vector(w));
      f.group.check_shape(x);
      f.weights.push_back(x);
    }
    return f;
  });
}

inline Json to_json(const InvariantProjection<Complex>& p) {
  Json rows = Json::array();
  for (const auto& r : p.entries) {
    Json row = Json::array();
    for (const auto& e : r) row.push_back(to_json(e));
    rows.push_back(row);
  }
  return Json{{"frame", to_json(p.frame)}, {"entries", rows}};
}

inline InvariantProjection<Complex> projection_from_json(const Json& j) {
  return detail::guarded("projection", [&] {
    InvariantProjection<Complex> p;
    p.frame = frame_from_json(detail::field(j, "frame"));
    const Json& rows = detail::field(j, "entries");
    if (!rows.is_array() || rows.size() != p.frame.size()) throw ParseError("entries must be a square array matching the frame");
    for (const auto& r : rows) {
      if (!r.is_array() || r.size() != p.frame.size()) throw ParseError("entries must be a square array matching the frame");
      std::vector<AlgebraElement> row;
      for (const auto& e : r) {
        AlgebraElement a = algebra_element_from_json(e);
        if (!(a.group() == p.frame.group) || a.dim() != 1) throw ParseError("projection entries must be scalar elements over the frame group");
        row.push_back(a);
      }
      p.entries.push_back(row);
    }
    return p;
  });
}

}  // namespace ncd
